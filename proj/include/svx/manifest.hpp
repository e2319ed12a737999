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

#ifndef SVX_MANIFEST_HPP_
#define SVX_MANIFEST_HPP_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "svx/roi.hpp"
#include "svx/slic.hpp"

namespace svx {

inline constexpr const char* kManifestSchema = "svx-manifest/1";
inline constexpr const char* kTrainingSetSchema = "svx-trainset/1";

std::string tool_version();

struct RegionDescriptor {
  RegionKind kind = RegionKind::kSupervoxel;
  std::uint32_t id = 0;  // supervoxel label
  CuboidExtent extent;   // cuboid
  std::int64_t volume = 0;
  std::int64_t roi_overlap = 0;

  static RegionDescriptor from(const Region& region);
  friend bool operator==(const RegionDescriptor&, const RegionDescriptor&) = default;
};

// Reproduces a draw: child stream (seed, image_id, draw).
struct SeedPath {
  std::uint64_t seed = 0;
  std::string image_id;
  int draw = 0;

  friend bool operator==(const SeedPath&, const SeedPath&) = default;
};

// One (masked, target) inpainting pair. Paths point at SVOL headers and are
// relative to the manifest's directory.
struct SynthRecord {
  std::string source_id;
  int draw = 0;
  Strategy strategy = Strategy::kRoiSupervoxel;
  std::string masked_path;
  std::string target_path;
  std::string mask_path;
  RegionDescriptor region;
  bool relaxed = false;
  SeedPath seed_path;

  friend bool operator==(const SynthRecord&, const SynthRecord&) = default;
};

struct ManifestWarning {
  std::string source_id;
  std::string reason;

  friend bool operator==(const ManifestWarning&, const ManifestWarning&) = default;
};

struct SynthParams {
  Strategy strategy = Strategy::kRoiSupervoxel;
  std::int64_t min_volume = 1500;
  std::int64_t min_overlap = 1;
  int cap = 10;
  bool strict = true;
  int min_edge = 12;
  int max_edge = 24;
  std::uint64_t seed = 17;
  int epoch = 0;
  SlicParams slic;

  friend bool operator==(const SynthParams& a, const SynthParams& b);
};

struct SynthManifest {
  std::string tool_version;
  SynthParams params;
  std::vector<SynthRecord> records;
  std::vector<ManifestWarning> warnings;

  friend bool operator==(const SynthManifest&, const SynthManifest&) = default;
};

nlohmann::json to_json(const SynthManifest& manifest);
SynthManifest manifest_from_json(const nlohmann::json& j);

void write_manifest(const SynthManifest& manifest, const std::filesystem::path& path);

// Throws FormatError on an unknown schema. With `validate`, every referenced
// SVOL header and payload must exist (IoError naming the first missing path).
SynthManifest read_manifest(const std::filesystem::path& path, bool validate = false);

void validate_manifest_files(const SynthManifest& manifest,
                             const std::filesystem::path& base_dir);

}  // namespace svx

#endif  // SVX_MANIFEST_HPP_
