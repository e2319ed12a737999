/*
Copyright 2026 The svxinpaint Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS-IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#include "svx/synth.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <set>

#include "svx/nifti.hpp"
#include "svx/parallel.hpp"
#include "svx/svol.hpp"
#include "svx/volume_ops.hpp"

namespace svx {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

bool is_nifti(const fs::path& path) {
  const std::string s = path.string();
  const auto ends = [&](std::string_view suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
  };
  return ends(".nii") || ends(".nii.gz");
}

struct ImageResult {
  std::vector<SynthRecord> records;
  std::optional<ManifestWarning> warning;
};

ImageResult process_image(const TrainingEntry& entry, const SynthParams& params,
                          const fs::path& out_dir, int slic_threads) {
  const MultiModalVolume image = load_image(entry.image);
  const LabelVolume labels = load_labels(entry.label);
  if (image.dims() != labels.dims()) {
    throw ConstraintError("image " + entry.image.string() + " (" + to_string(image.dims()) +
                          ") and label " + entry.label.string() + " (" +
                          to_string(labels.dims()) + ") differ in size");
  }
  const MultiModalVolume target = normalize_intensities(image);
  const RoiMask roi = binarize_segmentation(labels);

  std::optional<SupervoxelMap> svx;
  if (is_supervoxel_strategy(params.strategy)) {
    SlicParams slic = params.slic;
    slic.threads = slic_threads;
    svx = run_slic(target, slic);
  }

  const std::uint64_t seed = epoch_seed(params.seed, params.epoch);
  const Rng image_rng = Rng(seed).child(entry.id);

  CandidateOptions options;
  options.strategy = params.strategy;
  options.min_volume = params.min_volume;
  options.min_overlap = params.min_overlap;
  options.count = params.cap;
  options.min_edge = params.min_edge;
  options.max_edge = params.max_edge;
  options.strict = params.strict;
  CandidateResult candidates =
      candidate_regions(svx ? &*svx : nullptr, roi, options, image_rng);

  ImageResult result;
  if (!candidates.ok()) {
    result.warning = ManifestWarning{entry.id, std::string(to_string(candidates.reason))};
    return result;
  }

  // (draw index, region)
  std::vector<std::pair<int, Region>> chosen;
  std::vector<Region>& pool = candidates.set.regions;
  if (is_supervoxel_strategy(params.strategy)) {
    Rng select = image_rng.child("select");
    const std::size_t take = std::min<std::size_t>(pool.size(), static_cast<std::size_t>(params.cap));
    for (std::size_t j = 0; j < take; ++j) {
      const std::size_t pick = j + select.uniform_index(pool.size() - j);
      std::swap(pool[j], pool[pick]);
      chosen.emplace_back(static_cast<int>(j), pool[j]);
    }
  } else {
    for (Region& r : pool) chosen.emplace_back(r.draw, std::move(r));
  }

  const fs::path image_dir = out_dir / entry.id;
  fs::create_directories(image_dir);
  for (const auto& [draw, region] : chosen) {
    const SynthPair pair = synthesize_pair(target, region);
    const std::string stem = std::to_string(draw);
    save_svol(pair.masked, image_dir / (stem + ".masked"));
    save_svol(pair.target, image_dir / (stem + ".target"));
    save_svol(pair.mask, image_dir / (stem + ".mask"));

    SynthRecord rec;
    rec.source_id = entry.id;
    rec.draw = draw;
    rec.strategy = params.strategy;
    rec.masked_path = entry.id + "/" + stem + ".masked.json";
    rec.target_path = entry.id + "/" + stem + ".target.json";
    rec.mask_path = entry.id + "/" + stem + ".mask.json";
    rec.region = RegionDescriptor::from(region);
    rec.relaxed = candidates.set.relaxed;
    rec.seed_path = SeedPath{seed, entry.id, draw};
    result.records.push_back(std::move(rec));
  }
  std::sort(result.records.begin(), result.records.end(),
            [](const SynthRecord& a, const SynthRecord& b) { return a.draw < b.draw; });
  return result;
}

}  // namespace

TrainingSet read_training_set(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("missing file: " + path.string());
  TrainingSet set;
  try {
    const json j = json::parse(in);
    const std::string schema = j.value("schema", std::string(kTrainingSetSchema));
    if (schema != kTrainingSetSchema) {
      throw FormatError("unsupported training-set schema \"" + schema + "\"");
    }
    const fs::path base = path.parent_path();
    for (const json& e : j.at("entries")) {
      TrainingEntry entry;
      entry.id = e.at("id").get<std::string>();
      entry.image = base / e.at("image").get<std::string>();
      entry.label = base / e.at("label").get<std::string>();
      set.entries.push_back(std::move(entry));
    }
  } catch (const json::exception& e) {
    throw FormatError("malformed training set " + path.string() + ": " + e.what());
  }
  if (set.entries.empty()) throw ConstraintError("training set " + path.string() + " is empty");
  std::set<std::string> ids;
  for (const auto& e : set.entries) {
    if (e.id.empty() || e.id.find_first_of("/\\") != std::string::npos) {
      throw FormatError("invalid image id \"" + e.id + "\" in " + path.string());
    }
    if (!ids.insert(e.id).second) {
      throw FormatError("duplicate image id \"" + e.id + "\" in " + path.string());
    }
  }
  return set;
}

void write_training_set(const TrainingSet& set, const fs::path& path) {
  const fs::path base = path.parent_path().empty() ? fs::path(".") : path.parent_path();
  json entries = json::array();
  for (const auto& e : set.entries) {
    entries.push_back({{"id", e.id},
                       {"image", fs::relative(e.image, base).generic_string()},
                       {"label", fs::relative(e.label, base).generic_string()}});
  }
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << json{{"schema", kTrainingSetSchema}, {"entries", std::move(entries)}}.dump(2) << '\n';
  if (!out) throw IoError("cannot write " + path.string());
}

MultiModalVolume load_image(const fs::path& path) {
  return is_nifti(path) ? load_nifti_image(path) : load_image_svol(path);
}

LabelVolume load_labels(const fs::path& path) {
  return is_nifti(path) ? load_nifti_labels(path) : load_label_svol(path);
}

SynthPair synthesize_pair(const MultiModalVolume& vol, const Region& region) {
  SynthPair pair;
  pair.mask = region_mask(region, vol.dims());
  pair.mask.set_spacing(vol.spacing());
  pair.masked = apply_mask(vol, pair.mask);
  pair.target = vol;
  return pair;
}

std::uint64_t epoch_seed(std::uint64_t seed, int epoch) {
  if (epoch == 0) return seed;
  return mix64(seed ^ mix64(static_cast<std::uint64_t>(epoch)));
}

SynthManifest synthesize_dataset(const TrainingSet& train, const SynthParams& params,
                                 const fs::path& out_dir, int threads, const RecordSink& sink) {
  if (params.cap < 1) throw ConstraintError("cap must be >= 1");
  if (train.entries.empty()) throw ConstraintError("training set is empty");
  params.slic.validate();

  std::vector<TrainingEntry> entries = train.entries;
  std::sort(entries.begin(), entries.end(),
            [](const TrainingEntry& a, const TrainingEntry& b) { return a.id < b.id; });
  fs::create_directories(out_dir);

  threads = std::max(1, threads);
  const int slic_threads = entries.size() == 1 ? threads : 1;
  SynthManifest manifest;
  manifest.tool_version = tool_version();
  manifest.params = params;

  // Batches of `threads` images; records leave each batch in id order.
  for (std::size_t start = 0; start < entries.size(); start += static_cast<std::size_t>(threads)) {
    const std::size_t stop = std::min(entries.size(), start + static_cast<std::size_t>(threads));
    std::vector<ImageResult> results(stop - start);
    parallel_for(results.size(), threads, [&](std::size_t i) {
      results[i] = process_image(entries[start + i], params, out_dir, slic_threads);
    });
    for (ImageResult& r : results) {
      for (SynthRecord& rec : r.records) {
        if (sink) sink(rec);
        manifest.records.push_back(std::move(rec));
      }
      if (r.warning) manifest.warnings.push_back(std::move(*r.warning));
    }
  }
  write_manifest(manifest, out_dir / "manifest.json");
  return manifest;
}

}  // namespace svx
