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

#include "svx/roi.hpp"

#include <algorithm>
#include <array>

namespace svx {

using nlohmann::json;

namespace {

constexpr std::array<std::pair<Strategy, std::string_view>, 4> kStrategies = {{
    {Strategy::kRoiSupervoxel, "roi-supervoxel"},
    {Strategy::kNoroiSupervoxel, "noroi-supervoxel"},
    {Strategy::kRoiGrid, "roi-grid"},
    {Strategy::kNoroiGrid, "noroi-grid"},
}};

// Cuboid redraws allowed per draw before the draw is dropped as a duplicate.
constexpr int kMaxCuboidAttempts = 64;

void require_same_dims(const Dims& a, const Dims& b) {
  if (a != b) {
    throw ConstraintError("dimension mismatch: " + to_string(a) + " vs " + to_string(b));
  }
}

// Index i holds supervoxel label i + 1.
std::vector<Region> all_supervoxels(const SupervoxelMap& svx, const RoiMask& roi) {
  require_same_dims(svx.labels.dims(), roi.dims());
  std::vector<Region> regions(svx.count);
  for (std::uint32_t i = 0; i < svx.count; ++i) regions[i].label = i + 1;
  const auto& labels = svx.labels.data();
  const auto& fg = roi.data();
  for (Eigen::Index v = 0; v < labels.size(); ++v) {
    const std::uint32_t label = labels[v];
    if (label == 0 || label > svx.count) {
      throw ConstraintError("supervoxel label " + std::to_string(label) +
                            " outside 1.." + std::to_string(svx.count));
    }
    Region& r = regions[label - 1];
    ++r.volume;
    if (fg[v] != 0) ++r.roi_overlap;
    r.voxels.push_back(static_cast<std::uint32_t>(v));
  }
  return regions;
}

std::vector<std::uint32_t> roi_voxel_list(const RoiMask& roi) {
  std::vector<std::uint32_t> voxels;
  for (Eigen::Index v = 0; v < roi.data().size(); ++v) {
    if (roi.data()[v] != 0) voxels.push_back(static_cast<std::uint32_t>(v));
  }
  return voxels;
}

}  // namespace

std::string_view to_string(Strategy strategy) {
  for (const auto& [s, name] : kStrategies) {
    if (s == strategy) return name;
  }
  return "?";
}

std::optional<Strategy> parse_strategy(std::string_view name) {
  for (const auto& [s, n] : kStrategies) {
    if (n == name) return s;
  }
  return std::nullopt;
}

std::string strategy_names() {
  std::string out;
  for (const auto& [s, name] : kStrategies) {
    if (!out.empty()) out += ", ";
    out += name;
  }
  return out;
}

std::string_view to_string(NoCandidates reason) {
  switch (reason) {
    case NoCandidates::kNone:
      return "none";
    case NoCandidates::kEmptyRoi:
      return "empty-roi";
    case NoCandidates::kBelowMinVolume:
      return "below-min-volume";
  }
  return "?";
}

json region_to_json(const Region& region) {
  json j;
  if (region.kind == RegionKind::kSupervoxel) {
    j["kind"] = "supervoxel";
    j["id"] = region.label;
  } else {
    const auto& e = region.extent;
    j["kind"] = "cuboid";
    j["extent"] = {e.x0, e.y0, e.z0, e.dx, e.dy, e.dz};
  }
  j["volume"] = region.volume;
  j["roi_overlap"] = region.roi_overlap;
  return j;
}

json region_set_to_json(const RegionSet& set) {
  json regions = json::array();
  for (const auto& r : set.regions) regions.push_back(region_to_json(r));
  return json{{"source_id", set.source_id},
              {"strategy", std::string(to_string(set.strategy))},
              {"relaxed", set.relaxed},
              {"regions", std::move(regions)}};
}

RoiMask binarize_segmentation(const LabelVolume& labels) {
  RoiMask roi(labels.dims(), 1, labels.spacing());
  roi.data() = (labels.data() != 0u).cast<std::uint8_t>();
  return roi;
}

RegionSet roi_guided_supervoxels(const SupervoxelMap& svx, const RoiMask& roi,
                                 std::int64_t min_overlap) {
  RegionSet set;
  set.strategy = Strategy::kRoiSupervoxel;
  for (Region& r : all_supervoxels(svx, roi)) {
    if (r.roi_overlap >= std::max<std::int64_t>(1, min_overlap)) {
      set.regions.push_back(std::move(r));
    }
  }
  return set;
}

Region sample_cuboid(const Dims& dims, Rng& rng, int min_edge, int max_edge,
                     std::optional<std::span<const std::uint32_t>> roi_voxels) {
  if (min_edge < 1 || min_edge > max_edge) {
    throw ConstraintError("cuboid edges need 1 <= min_edge <= max_edge, got " +
                          std::to_string(min_edge) + ".." + std::to_string(max_edge));
  }
  if (max_edge > std::min({dims.x, dims.y, dims.z})) {
    throw ConstraintError("max cuboid edge " + std::to_string(max_edge) +
                          " exceeds volume " + to_string(dims));
  }
  if (roi_voxels && roi_voxels->empty()) {
    throw ConstraintError("ROI-centred cuboid requested but the ROI is empty");
  }
  std::array<int, 3> edge{};
  for (int a = 0; a < 3; ++a) edge[a] = rng.uniform_int(min_edge, max_edge);

  std::array<int, 3> centre{};
  if (roi_voxels) {
    const auto pick = rng.uniform_index(roi_voxels->size());
    centre = voxel_coords(dims, (*roi_voxels)[pick]);
  } else {
    for (int a = 0; a < 3; ++a) centre[a] = rng.uniform_int(0, dims[a] - 1);
  }

  std::array<int, 3> origin{};
  for (int a = 0; a < 3; ++a) {
    origin[a] = std::clamp(centre[a] - edge[a] / 2, 0, dims[a] - edge[a]);
  }
  Region r;
  r.kind = RegionKind::kCuboid;
  r.extent = CuboidExtent{origin[0], origin[1], origin[2], edge[0], edge[1], edge[2]};
  r.volume = static_cast<std::int64_t>(edge[0]) * edge[1] * edge[2];
  r.centre = centre;
  return r;
}

MaskVolume region_mask(const Region& region, const Dims& dims) {
  MaskVolume mask = MaskVolume::Constant(dims, 1, 1);
  if (region.kind == RegionKind::kSupervoxel) {
    for (std::uint32_t v : region.voxels) {
      if (v >= mask.data().size()) {
        throw ConstraintError("region voxel outside volume " + to_string(dims));
      }
      mask.data()[v] = 0;
    }
    return mask;
  }
  const CuboidExtent& e = region.extent;
  if (e.x0 < 0 || e.y0 < 0 || e.z0 < 0 || e.x0 + e.dx > dims.x || e.y0 + e.dy > dims.y ||
      e.z0 + e.dz > dims.z) {
    throw ConstraintError("cuboid outside volume " + to_string(dims));
  }
  for (int z = e.z0; z < e.z0 + e.dz; ++z) {
    for (int y = e.y0; y < e.y0 + e.dy; ++y) {
      mask.data().segment(mask.voxel_index(e.x0, y, z), e.dx).setZero();
    }
  }
  return mask;
}

std::int64_t cuboid_roi_overlap(const CuboidExtent& e, const RoiMask& roi) {
  std::int64_t overlap = 0;
  for (int z = e.z0; z < e.z0 + e.dz; ++z) {
    for (int y = e.y0; y < e.y0 + e.dy; ++y) {
      overlap += (roi.data().segment(roi.voxel_index(e.x0, y, z), e.dx) != 0).count();
    }
  }
  return overlap;
}

CandidateResult candidate_regions(const SupervoxelMap* svx, const RoiMask& roi,
                                  const CandidateOptions& options, const Rng& rng) {
  if (options.min_volume < 1) throw ConstraintError("min_volume must be >= 1");
  CandidateResult result;
  result.set.strategy = options.strategy;
  const bool use_roi = is_roi_strategy(options.strategy);
  const std::int64_t min_overlap = std::max<std::int64_t>(1, options.min_overlap);

  if (is_supervoxel_strategy(options.strategy)) {
    if (svx == nullptr) throw ConstraintError("supervoxel strategy requires a supervoxel map");
    std::vector<Region> all = all_supervoxels(*svx, roi);
    std::vector<Region> touching;
    for (Region& r : all) {
      if (!use_roi || r.roi_overlap >= min_overlap) touching.push_back(std::move(r));
    }
    if (touching.empty()) {
      result.reason = NoCandidates::kEmptyRoi;
      return result;
    }
    for (const Region& r : touching) {
      if (r.volume >= options.min_volume) result.set.regions.push_back(r);
    }
    if (!result.set.regions.empty()) return result;

    if (use_roi && !options.strict) {
      std::stable_sort(touching.begin(), touching.end(), [](const Region& a, const Region& b) {
        return a.volume > b.volume;
      });
      const auto keep = std::min<std::size_t>(touching.size(),
                                              static_cast<std::size_t>(std::max(1, options.count)));
      touching.resize(keep);
      std::sort(touching.begin(), touching.end(),
                [](const Region& a, const Region& b) { return a.label < b.label; });
      result.set.regions = std::move(touching);
      result.set.relaxed = true;
      return result;
    }
    result.reason = NoCandidates::kBelowMinVolume;
    return result;
  }

  std::vector<std::uint32_t> roi_voxels;
  if (use_roi) {
    roi_voxels = roi_voxel_list(roi);
    if (roi_voxels.empty()) {
      result.reason = NoCandidates::kEmptyRoi;
      return result;
    }
  }
  const auto centres = use_roi ? std::optional<std::span<const std::uint32_t>>(roi_voxels)
                               : std::nullopt;
  for (int j = 0; j < options.count; ++j) {
    Rng draw = rng.child(static_cast<std::uint64_t>(j));
    for (int attempt = 0; attempt < kMaxCuboidAttempts; ++attempt) {
      Region r = sample_cuboid(roi.dims(), draw, options.min_edge, options.max_edge, centres);
      const bool duplicate =
          std::any_of(result.set.regions.begin(), result.set.regions.end(),
                      [&](const Region& other) { return other.extent == r.extent; });
      if (duplicate) continue;
      r.roi_overlap = cuboid_roi_overlap(r.extent, roi);
      if (use_roi && r.roi_overlap < min_overlap) continue;
      r.draw = j;
      result.set.regions.push_back(std::move(r));
      break;
    }
  }
  if (result.set.regions.empty()) result.reason = NoCandidates::kBelowMinVolume;
  return result;
}

}  // namespace svx
