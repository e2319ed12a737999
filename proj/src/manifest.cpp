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

#include "svx/manifest.hpp"

#include <fstream>

#include "svx/svol.hpp"

namespace svx {

namespace fs = std::filesystem;
using nlohmann::json;

std::string tool_version() { return std::string("svxinpaint ") + SVX_VERSION; }

bool operator==(const SynthParams& a, const SynthParams& b) {
  const auto slic = [](const SlicParams& p) {
    return std::tie(p.max_supervoxels, p.compactness, p.iterations, p.connectivity,
                    p.min_fragment_factor, p.seed);
  };
  return a.strategy == b.strategy && a.min_volume == b.min_volume &&
         a.min_overlap == b.min_overlap && a.cap == b.cap && a.strict == b.strict &&
         a.min_edge == b.min_edge && a.max_edge == b.max_edge && a.seed == b.seed &&
         a.epoch == b.epoch && slic(a.slic) == slic(b.slic);
}

RegionDescriptor RegionDescriptor::from(const Region& region) {
  RegionDescriptor d;
  d.kind = region.kind;
  d.id = region.label;
  d.extent = region.extent;
  d.volume = region.volume;
  d.roi_overlap = region.roi_overlap;
  return d;
}

namespace {

json region_json(const RegionDescriptor& r) {
  json j;
  if (r.kind == RegionKind::kSupervoxel) {
    j["kind"] = "supervoxel";
    j["id"] = r.id;
  } else {
    j["kind"] = "cuboid";
    j["extent"] = {r.extent.x0, r.extent.y0, r.extent.z0, r.extent.dx, r.extent.dy, r.extent.dz};
  }
  j["volume"] = r.volume;
  j["roi_overlap"] = r.roi_overlap;
  return j;
}

RegionDescriptor region_from(const json& j) {
  RegionDescriptor r;
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "supervoxel") {
    r.kind = RegionKind::kSupervoxel;
    r.id = j.at("id").get<std::uint32_t>();
  } else if (kind == "cuboid") {
    r.kind = RegionKind::kCuboid;
    const auto& e = j.at("extent");
    if (!e.is_array() || e.size() != 6) throw FormatError("cuboid extent must have 6 entries");
    r.extent = CuboidExtent{e[0].get<int>(), e[1].get<int>(), e[2].get<int>(),
                            e[3].get<int>(), e[4].get<int>(), e[5].get<int>()};
  } else {
    throw FormatError("unknown region kind \"" + kind + "\"");
  }
  r.volume = j.at("volume").get<std::int64_t>();
  r.roi_overlap = j.at("roi_overlap").get<std::int64_t>();
  return r;
}

Strategy strategy_from(const json& j) {
  const auto name = j.get<std::string>();
  const auto s = parse_strategy(name);
  if (!s) throw FormatError("unknown strategy \"" + name + "\"");
  return *s;
}

}  // namespace

json to_json(const SynthManifest& m) {
  const SynthParams& p = m.params;
  json params = {
      {"strategy", std::string(to_string(p.strategy))},
      {"min_volume", p.min_volume},
      {"min_overlap", p.min_overlap},
      {"cap", p.cap},
      {"strict", p.strict},
      {"min_edge", p.min_edge},
      {"max_edge", p.max_edge},
      {"seed", p.seed},
      {"epoch", p.epoch},
      {"slic",
       {{"max_supervoxels", p.slic.max_supervoxels},
        {"compactness", p.slic.compactness},
        {"iterations", p.slic.iterations},
        {"connectivity", p.slic.connectivity},
        {"min_fragment_factor", p.slic.min_fragment_factor},
        {"seed", p.slic.seed}}},
  };
  json records = json::array();
  for (const SynthRecord& r : m.records) {
    records.push_back({
        {"source_id", r.source_id},
        {"draw", r.draw},
        {"strategy", std::string(to_string(r.strategy))},
        {"masked", r.masked_path},
        {"target", r.target_path},
        {"mask", r.mask_path},
        {"region", region_json(r.region)},
        {"relaxed", r.relaxed},
        {"seed_path",
         {{"seed", r.seed_path.seed}, {"image_id", r.seed_path.image_id}, {"draw", r.seed_path.draw}}},
    });
  }
  json warnings = json::array();
  for (const ManifestWarning& w : m.warnings) {
    warnings.push_back({{"source_id", w.source_id}, {"reason", w.reason}});
  }
  return json{{"schema", kManifestSchema},
              {"tool_version", m.tool_version},
              {"params", std::move(params)},
              {"records", std::move(records)},
              {"warnings", std::move(warnings)}};
}

SynthManifest manifest_from_json(const json& j) {
  SynthManifest m;
  try {
    const std::string schema = j.at("schema").get<std::string>();
    if (schema != kManifestSchema) {
      throw FormatError("unsupported manifest schema \"" + schema + "\" (expected " +
                        kManifestSchema + ")");
    }
    m.tool_version = j.at("tool_version").get<std::string>();
    const json& p = j.at("params");
    m.params.strategy = strategy_from(p.at("strategy"));
    m.params.min_volume = p.at("min_volume").get<std::int64_t>();
    m.params.min_overlap = p.at("min_overlap").get<std::int64_t>();
    m.params.cap = p.at("cap").get<int>();
    m.params.strict = p.at("strict").get<bool>();
    m.params.min_edge = p.at("min_edge").get<int>();
    m.params.max_edge = p.at("max_edge").get<int>();
    m.params.seed = p.at("seed").get<std::uint64_t>();
    m.params.epoch = p.value("epoch", 0);
    const json& s = p.at("slic");
    m.params.slic.max_supervoxels = s.at("max_supervoxels").get<int>();
    m.params.slic.compactness = s.at("compactness").get<double>();
    m.params.slic.iterations = s.at("iterations").get<int>();
    m.params.slic.connectivity = s.at("connectivity").get<int>();
    m.params.slic.min_fragment_factor = s.at("min_fragment_factor").get<double>();
    m.params.slic.seed = s.at("seed").get<std::uint64_t>();
    for (const json& r : j.at("records")) {
      SynthRecord rec;
      rec.source_id = r.at("source_id").get<std::string>();
      rec.draw = r.at("draw").get<int>();
      rec.strategy = strategy_from(r.at("strategy"));
      rec.masked_path = r.at("masked").get<std::string>();
      rec.target_path = r.at("target").get<std::string>();
      rec.mask_path = r.at("mask").get<std::string>();
      rec.region = region_from(r.at("region"));
      rec.relaxed = r.at("relaxed").get<bool>();
      const json& sp = r.at("seed_path");
      rec.seed_path = SeedPath{sp.at("seed").get<std::uint64_t>(),
                               sp.at("image_id").get<std::string>(), sp.at("draw").get<int>()};
      m.records.push_back(std::move(rec));
    }
    for (const json& w : j.value("warnings", json::array())) {
      m.warnings.push_back({w.at("source_id").get<std::string>(), w.at("reason").get<std::string>()});
    }
  } catch (const json::exception& e) {
    throw FormatError(std::string("malformed manifest: ") + e.what());
  }
  return m;
}

void write_manifest(const SynthManifest& manifest, const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << to_json(manifest).dump(2) << '\n';
  if (!out) throw IoError("cannot write " + path.string());
}

void validate_manifest_files(const SynthManifest& manifest, const fs::path& base_dir) {
  for (const SynthRecord& r : manifest.records) {
    for (const std::string* rel : {&r.masked_path, &r.target_path, &r.mask_path}) {
      const fs::path p = base_dir / *rel;
      for (const fs::path& f : {svol_header_path(p), svol_payload_path(p)}) {
        if (!fs::exists(f)) throw IoError("manifest references missing file: " + f.string());
      }
    }
  }
}

SynthManifest read_manifest(const fs::path& path, bool validate) {
  std::ifstream in(path);
  if (!in) throw IoError("missing file: " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw FormatError("malformed manifest " + path.string() + ": " + e.what());
  }
  SynthManifest m = manifest_from_json(j);
  if (validate) validate_manifest_files(m, path.parent_path());
  return m;
}

}  // namespace svx
