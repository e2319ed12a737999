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

#ifndef SVX_SYNTH_HPP_
#define SVX_SYNTH_HPP_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "svx/manifest.hpp"
#include "svx/roi.hpp"
#include "svx/volume.hpp"

namespace svx {

struct TrainingEntry {
  std::string id;
  std::filesystem::path image;
  std::filesystem::path label;
};

// Listing file: {"schema":"svx-trainset/1","entries":[{"id","image","label"}]}
// with paths relative to the listing's directory.
struct TrainingSet {
  std::vector<TrainingEntry> entries;
};

TrainingSet read_training_set(const std::filesystem::path& path);
void write_training_set(const TrainingSet& set, const std::filesystem::path& path);

// Dispatches on extension: `.nii` / `.nii.gz` go through the NIfTI reader,
// anything else is treated as SVOL.
MultiModalVolume load_image(const std::filesystem::path& path);
LabelVolume load_labels(const std::filesystem::path& path);

struct SynthPair {
  MultiModalVolume masked;
  MultiModalVolume target;
  MaskVolume mask;
};

// target = vol, mask = region_mask(region), masked = apply_mask(vol, mask).
SynthPair synthesize_pair(const MultiModalVolume& vol, const Region& region);

// Seed used for a given pass over the data; epoch 0 is the seed itself.
std::uint64_t epoch_seed(std::uint64_t seed, int epoch);

using RecordSink = std::function<void(const SynthRecord&)>;

// For each image (in ascending id order): normalize, supervoxelize when the
// strategy needs it, collect candidates, then draw min(cap, |candidates|)
// supervoxels without replacement or up to `cap` cuboids. Writes
// out_dir/<id>/<draw>.{masked,target,mask}.{json,bin} and
// out_dir/manifest.json. Images without candidates are skipped with a
// warning entry. `sink`, when set, sees every record in manifest order as
// soon as its image is done. The output does not depend on `threads`.
SynthManifest synthesize_dataset(const TrainingSet& train, const SynthParams& params,
                                 const std::filesystem::path& out_dir, int threads = 1,
                                 const RecordSink& sink = {});

}  // namespace svx

#endif  // SVX_SYNTH_HPP_
