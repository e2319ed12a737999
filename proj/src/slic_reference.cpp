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

#include <cmath>
#include <limits>
#include <vector>

#include "svx/slic.hpp"
#include "svx/volume_ops.hpp"

namespace svx {

namespace {
constexpr Eigen::Index kOracleLimit = 64 * 64 * 64;
}

// Every voxel against every center, one scalar at a time. Shares only seeding
// and connectivity with run_slic.
LabelVolume slic_reference_assignment(const MultiModalVolume& vol, const SlicParams& params) {
  params.validate();
  if (vol.voxel_count() > kOracleLimit) {
    throw ConstraintError("slic_reference is limited to 64^3 voxels, got " +
                          to_string(vol.dims()));
  }
  if (!is_normalized(vol)) {
    throw ConstraintError("SLIC input must be normalized to [0, 1] per channel");
  }

  std::vector<ClusterCenter> seeds = init_seeds(vol, params);
  const std::size_t k_count = seeds.size();
  const int channels = vol.channels();
  const Dims& dims = vol.dims();
  const double s = grid_interval(dims, params.max_supervoxels);
  const double weight = (params.compactness * params.compactness) / (s * s);

  std::vector<double> cx(k_count), cy(k_count), cz(k_count);
  std::vector<std::vector<double>> ci(k_count, std::vector<double>(channels));
  for (std::size_t k = 0; k < k_count; ++k) {
    cx[k] = seeds[k].spatial.x();
    cy[k] = seeds[k].spatial.y();
    cz[k] = seeds[k].spatial.z();
    for (int c = 0; c < channels; ++c) ci[k][c] = seeds[k].intensity[c];
  }

  const auto distance2 = [&](std::size_t k, int x, int y, int z) {
    double dc2 = 0.0;
    for (int c = 0; c < channels; ++c) {
      const double d = static_cast<double>(vol(c, x, y, z)) - ci[k][c];
      dc2 += d * d;
    }
    const double dx = x - cx[k];
    const double dy = y - cy[k];
    const double dz = z - cz[k];
    const double ds2 = dx * dx + dy * dy + dz * dz;
    return dc2 + ds2 * weight;
  };
  const auto in_window = [&](std::size_t k, int x, int y, int z) {
    return x >= cx[k] - s && x <= cx[k] + s && y >= cy[k] - s && y <= cy[k] + s &&
           z >= cz[k] - s && z <= cz[k] + s;
  };

  LabelVolume assignment(dims, 1, vol.spacing());
  for (int it = 0; it < params.iterations; ++it) {
    for (int z = 0; z < dims.z; ++z) {
      for (int y = 0; y < dims.y; ++y) {
        for (int x = 0; x < dims.x; ++x) {
          double best = std::numeric_limits<double>::infinity();
          std::size_t best_k = k_count;
          for (std::size_t k = 0; k < k_count; ++k) {
            if (!in_window(k, x, y, z)) continue;
            const double d2 = distance2(k, x, y, z);
            if (d2 < best) {
              best = d2;
              best_k = k;
            }
          }
          if (best_k == k_count) {
            for (std::size_t k = 0; k < k_count; ++k) {
              const double d2 = distance2(k, x, y, z);
              if (d2 < best) {
                best = d2;
                best_k = k;
              }
            }
          }
          assignment.at(x, y, z) = static_cast<std::uint32_t>(best_k);
        }
      }
    }

    std::vector<double> sx(k_count, 0.0), sy(k_count, 0.0), sz(k_count, 0.0);
    std::vector<std::vector<double>> si(k_count, std::vector<double>(channels, 0.0));
    std::vector<std::int64_t> count(k_count, 0);
    for (int z = 0; z < dims.z; ++z) {
      for (int y = 0; y < dims.y; ++y) {
        for (int x = 0; x < dims.x; ++x) {
          const std::uint32_t k = assignment.at(x, y, z);
          sx[k] += x;
          sy[k] += y;
          sz[k] += z;
          for (int c = 0; c < channels; ++c) si[k][c] += static_cast<double>(vol(c, x, y, z));
          ++count[k];
        }
      }
    }
    for (std::size_t k = 0; k < k_count; ++k) {
      if (count[k] == 0) continue;
      const double n = static_cast<double>(count[k]);
      cx[k] = sx[k] / n;
      cy[k] = sy[k] / n;
      cz[k] = sz[k] / n;
      for (int c = 0; c < channels; ++c) ci[k][c] = si[k][c] / n;
    }
  }
  return assignment;
}

SupervoxelMap slic_reference(const MultiModalVolume& vol, const SlicParams& params) {
  return enforce_connectivity(slic_reference_assignment(vol, params), params);
}

}  // namespace svx
