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

#ifndef SVX_ROI_HPP_
#define SVX_ROI_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "svx/rng.hpp"
#include "svx/slic.hpp"
#include "svx/volume.hpp"

namespace svx {

// 1 = segmentation foreground (any nonzero label), 0 = background.
using RoiMask = MaskVolume;

enum class Strategy { kRoiSupervoxel, kNoroiSupervoxel, kRoiGrid, kNoroiGrid };

std::string_view to_string(Strategy strategy);
std::optional<Strategy> parse_strategy(std::string_view name);
// "roi-supervoxel, noroi-supervoxel, roi-grid, noroi-grid"
std::string strategy_names();
inline bool is_supervoxel_strategy(Strategy s) {
  return s == Strategy::kRoiSupervoxel || s == Strategy::kNoroiSupervoxel;
}
inline bool is_roi_strategy(Strategy s) {
  return s == Strategy::kRoiSupervoxel || s == Strategy::kRoiGrid;
}

enum class RegionKind { kSupervoxel, kCuboid };

struct CuboidExtent {
  int x0 = 0, y0 = 0, z0 = 0;
  int dx = 0, dy = 0, dz = 0;

  bool contains(int x, int y, int z) const {
    return x >= x0 && x < x0 + dx && y >= y0 && y < y0 + dy && z >= z0 && z < z0 + dz;
  }
  friend bool operator==(const CuboidExtent&, const CuboidExtent&) = default;
};

// One mask candidate. Supervoxel regions carry their full voxel set (sorted
// voxel indices), not only the part that touches the ROI.
struct Region {
  RegionKind kind = RegionKind::kSupervoxel;
  std::uint32_t label = 0;  // kSupervoxel
  CuboidExtent extent;      // kCuboid
  std::int64_t volume = 0;
  std::int64_t roi_overlap = 0;
  std::vector<std::uint32_t> voxels;  // kSupervoxel only
  int draw = -1;                      // kCuboid: index of the draw that made it
  std::array<int, 3> centre{};        // kCuboid: sampled centre, before clipping
};

struct RegionSet {
  std::string source_id;
  Strategy strategy = Strategy::kRoiSupervoxel;
  std::vector<Region> regions;
  bool relaxed = false;
};

nlohmann::json region_to_json(const Region& region);
nlohmann::json region_set_to_json(const RegionSet& set);

RoiMask binarize_segmentation(const LabelVolume& labels);

// Every supervoxel with at least `min_overlap` ROI voxels, ascending by label.
RegionSet roi_guided_supervoxels(const SupervoxelMap& svx, const RoiMask& roi,
                                 std::int64_t min_overlap = 1);

// Edge lengths uniform in [min_edge, max_edge] per axis. The centre is uniform
// over the volume, or over `roi_voxels` when given; the box is shifted back
// inside the volume without shrinking. roi_overlap is left at 0.
Region sample_cuboid(const Dims& dims, Rng& rng, int min_edge, int max_edge,
                     std::optional<std::span<const std::uint32_t>> roi_voxels = std::nullopt);

// 0 inside the region, 1 elsewhere.
MaskVolume region_mask(const Region& region, const Dims& dims);

std::int64_t cuboid_roi_overlap(const CuboidExtent& extent, const RoiMask& roi);

struct CandidateOptions {
  Strategy strategy = Strategy::kRoiSupervoxel;
  std::int64_t min_volume = 1500;
  std::int64_t min_overlap = 1;
  int count = 10;  // cuboids generated by the grid strategies; fallback size
  int min_edge = 12;
  int max_edge = 24;
  // When false, roi-supervoxel falls back to the `count` largest ROI-touching
  // supervoxels if none reaches min_volume, and flags the set as relaxed.
  bool strict = true;
};

enum class NoCandidates { kNone, kEmptyRoi, kBelowMinVolume };

std::string_view to_string(NoCandidates reason);

struct CandidateResult {
  RegionSet set;
  NoCandidates reason = NoCandidates::kNone;

  bool ok() const { return reason == NoCandidates::kNone; }
};

// Supervoxel strategies return the whole filtered set, ascending by label;
// grid strategies return up to options.count distinct cuboids, cuboid j drawn
// from rng.child(j). `svx` may be null for grid strategies.
CandidateResult candidate_regions(const SupervoxelMap* svx, const RoiMask& roi,
                                  const CandidateOptions& options, const Rng& rng);

}  // namespace svx

#endif  // SVX_ROI_HPP_
