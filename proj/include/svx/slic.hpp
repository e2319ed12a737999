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

#ifndef SVX_SLIC_HPP_
#define SVX_SLIC_HPP_

#include <array>
#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "svx/volume.hpp"

namespace svx {

struct SlicParams {
  int max_supervoxels = 400;
  double compactness = 0.15;
  int iterations = 10;
  int connectivity = 6;  // 6 or 26
  // Connected fragments smaller than this fraction of the mean supervoxel
  // size are merged into a neighbour.
  double min_fragment_factor = 0.25;
  // Recorded with outputs. Seeding is a deterministic grid, so the clustering
  // itself never draws from it.
  std::uint64_t seed = 0;
  // Worker count for the assignment step; never changes the result.
  int threads = 1;

  // Throws ConstraintError.
  void validate() const;
};

struct ClusterCenter {
  Eigen::Vector3d spatial;    // (x, y, z) in voxel units
  Eigen::VectorXd intensity;  // per-channel mean
  std::int64_t count = 0;
};

// Per-voxel labels in 1..count, each label one connected component.
struct SupervoxelMap {
  LabelVolume labels;
  std::uint32_t count = 0;
};

// Grid interval S = (X*Y*Z / max_supervoxels)^(1/3).
double grid_interval(const Dims& dims, int max_supervoxels);

// Seeds per axis. Starts from floor(dim / S), then greedily refines the
// coarsest axis while the product stays <= max_supervoxels.
std::array<int, 3> seed_grid_shape(const Dims& dims, int max_supervoxels);

// Seeds at the centres of a regular grid of cells; intensities sampled at the
// voxel containing each seed. Throws ConstraintError when max_supervoxels
// exceeds the voxel count.
std::vector<ClusterCenter> init_seeds(const MultiModalVolume& vol, const SlicParams& params);

// Localized k-means over (intensity, position). For each voxel the squared
// distance to a center is
//   D^2 = d_c^2 + d_s^2 * m^2 / S^2
// with d_c the Euclidean distance over channel intensities and d_s the
// spatial distance. Each center only competes for voxels within +-S of it on
// every axis; a voxel no center reaches falls back to the nearest center
// overall. Ties go to the lower center index. Input must be normalized to
// [0, 1] per channel.
SupervoxelMap run_slic(const MultiModalVolume& vol, const SlicParams& params);

// The clustering stage of run_slic alone: per-voxel 0-based cluster index
// before connectivity enforcement.
LabelVolume slic_assignment(const MultiModalVolume& vol, const SlicParams& params);

// Splits every label into connected components (under params.connectivity),
// merges components smaller than min_fragment_factor * mean label size into
// the adjacent component with the most contacts (ties: lower input label,
// then earlier component), and relabels 1..K in raster order of first
// appearance.
SupervoxelMap enforce_connectivity(const LabelVolume& labels, const SlicParams& params);

// Naive per-voxel, all-centers scan with the same contract as run_slic.
// Test oracle only; refuses volumes above 64^3 voxels.
SupervoxelMap slic_reference(const MultiModalVolume& vol, const SlicParams& params);
LabelVolume slic_reference_assignment(const MultiModalVolume& vol, const SlicParams& params);

}  // namespace svx

#endif  // SVX_SLIC_HPP_
