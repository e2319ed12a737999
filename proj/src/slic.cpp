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

#include "svx/slic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "svx/parallel.hpp"
#include "svx/volume_ops.hpp"

namespace svx {

namespace {

constexpr std::uint32_t kUnassigned = std::numeric_limits<std::uint32_t>::max();

// Center state in flat arrays for the hot loop.
struct CenterTable {
  int channels = 0;
  std::vector<double> x, y, z;
  std::vector<double> intensity;  // k * channels + c

  explicit CenterTable(const std::vector<ClusterCenter>& centers) {
    channels = centers.empty() ? 0 : static_cast<int>(centers.front().intensity.size());
    for (const auto& c : centers) {
      x.push_back(c.spatial.x());
      y.push_back(c.spatial.y());
      z.push_back(c.spatial.z());
      for (int ch = 0; ch < channels; ++ch) intensity.push_back(c.intensity[ch]);
    }
  }
  std::size_t size() const { return x.size(); }
};

struct Window {
  int lo[3];
  int hi[3];  // inclusive; empty when lo > hi
};

Window window_of(const CenterTable& t, std::size_t k, double interval, const Dims& dims) {
  const double c[3] = {t.x[k], t.y[k], t.z[k]};
  Window w{};
  for (int a = 0; a < 3; ++a) {
    w.lo[a] = std::max(0, static_cast<int>(std::ceil(c[a] - interval)));
    w.hi[a] = std::min(dims[a] - 1, static_cast<int>(std::floor(c[a] + interval)));
  }
  return w;
}

void assign(const MultiModalVolume& vol, const CenterTable& centers, double interval,
            double spatial_weight, int threads, std::vector<std::uint32_t>& labels,
            std::vector<double>& best) {
  const Dims& dims = vol.dims();
  const Eigen::Index n = vol.voxel_count();
  const int channels = vol.channels();
  const float* data = vol.data().data();
  const std::size_t k_count = centers.size();

  std::vector<Window> windows(k_count);
  for (std::size_t k = 0; k < k_count; ++k) {
    windows[k] = window_of(centers, k, interval, dims);
  }

  // One z-slice per task: each voxel is owned by exactly one task, and within
  // it centers are visited in ascending order with a strict comparison.
  parallel_for(static_cast<std::size_t>(dims.z), threads, [&](std::size_t zi) {
    const int z = static_cast<int>(zi);
    const Eigen::Index slice = static_cast<Eigen::Index>(z) * dims.x * dims.y;
    std::fill(best.begin() + slice, best.begin() + slice + dims.x * dims.y,
              std::numeric_limits<double>::infinity());
    std::fill(labels.begin() + slice, labels.begin() + slice + dims.x * dims.y,
              kUnassigned);
    for (std::size_t k = 0; k < k_count; ++k) {
      const Window& w = windows[k];
      if (z < w.lo[2] || z > w.hi[2]) continue;
      const double dz = z - centers.z[k];
      const double dz2 = dz * dz;
      const double* ck = centers.intensity.data() + k * channels;
      for (int y = w.lo[1]; y <= w.hi[1]; ++y) {
        const double dy = y - centers.y[k];
        const double dy2 = dy * dy;
        const Eigen::Index row = slice + static_cast<Eigen::Index>(y) * dims.x;
        for (int x = w.lo[0]; x <= w.hi[0]; ++x) {
          const Eigen::Index v = row + x;
          double dc2 = 0.0;
          for (int c = 0; c < channels; ++c) {
            const double d = static_cast<double>(data[c * n + v]) - ck[c];
            dc2 += d * d;
          }
          const double dx = x - centers.x[k];
          const double ds2 = dx * dx + dy2 + dz2;
          const double d2 = dc2 + ds2 * spatial_weight;
          if (d2 < best[v]) {
            best[v] = d2;
            labels[v] = static_cast<std::uint32_t>(k);
          }
        }
      }
    }
    // Voxels outside every window go to the nearest center overall.
    for (Eigen::Index v = slice; v < slice + dims.x * dims.y; ++v) {
      if (labels[v] != kUnassigned) continue;
      const auto [x, y, zz] = voxel_coords(dims, v);
      for (std::size_t k = 0; k < k_count; ++k) {
        const double* ck = centers.intensity.data() + k * channels;
        double dc2 = 0.0;
        for (int c = 0; c < channels; ++c) {
          const double d = static_cast<double>(data[c * n + v]) - ck[c];
          dc2 += d * d;
        }
        const double dx = x - centers.x[k];
        const double dy = y - centers.y[k];
        const double dz = zz - centers.z[k];
        const double ds2 = dx * dx + dy * dy + dz * dz;
        const double d2 = dc2 + ds2 * spatial_weight;
        if (d2 < best[v]) {
          best[v] = d2;
          labels[v] = static_cast<std::uint32_t>(k);
        }
      }
    }
  });
}

// Member means, accumulated in raster order so the sums are reproducible.
void update_centers(const MultiModalVolume& vol, const std::vector<std::uint32_t>& labels,
                    std::vector<ClusterCenter>& centers) {
  const std::size_t k_count = centers.size();
  const int channels = vol.channels();
  const Dims& dims = vol.dims();
  Eigen::Matrix3Xd spatial_sum = Eigen::Matrix3Xd::Zero(3, static_cast<Eigen::Index>(k_count));
  Eigen::MatrixXd intensity_sum =
      Eigen::MatrixXd::Zero(channels, static_cast<Eigen::Index>(k_count));
  std::vector<std::int64_t> counts(k_count, 0);

  Eigen::Index v = 0;
  for (int z = 0; z < dims.z; ++z) {
    for (int y = 0; y < dims.y; ++y) {
      for (int x = 0; x < dims.x; ++x, ++v) {
        const std::uint32_t k = labels[v];
        spatial_sum(0, k) += x;
        spatial_sum(1, k) += y;
        spatial_sum(2, k) += z;
        ++counts[k];
      }
    }
  }
  for (int c = 0; c < channels; ++c) {
    const auto chan = vol.channel(c);
    for (Eigen::Index i = 0; i < vol.voxel_count(); ++i) {
      intensity_sum(c, labels[i]) += static_cast<double>(chan[i]);
    }
  }
  for (std::size_t k = 0; k < k_count; ++k) {
    centers[k].count = counts[k];
    if (counts[k] == 0) continue;
    const double n = static_cast<double>(counts[k]);
    centers[k].spatial = spatial_sum.col(static_cast<Eigen::Index>(k)) / n;
    centers[k].intensity = intensity_sum.col(static_cast<Eigen::Index>(k)) / n;
  }
}

}  // namespace

void SlicParams::validate() const {
  if (max_supervoxels < 1) throw ConstraintError("max_supervoxels must be positive");
  if (!(compactness > 0.0) || !std::isfinite(compactness)) {
    throw ConstraintError("compactness must be positive");
  }
  if (iterations < 1) throw ConstraintError("iterations must be positive");
  if (connectivity != 6 && connectivity != 26) {
    throw ConstraintError("connectivity must be 6 or 26");
  }
  if (!(min_fragment_factor > 0.0 && min_fragment_factor <= 1.0)) {
    throw ConstraintError("min_fragment_factor must lie in (0, 1]");
  }
}

double grid_interval(const Dims& dims, int max_supervoxels) {
  return std::cbrt(static_cast<double>(dims.voxels()) / max_supervoxels);
}

std::array<int, 3> seed_grid_shape(const Dims& dims, int max_supervoxels) {
  const double interval = grid_interval(dims, max_supervoxels);
  std::array<int, 3> n{};
  for (int a = 0; a < 3; ++a) {
    n[a] = std::clamp(static_cast<int>(std::floor(dims[a] / interval + 1e-9)), 1, dims[a]);
  }
  const auto product = [&] { return static_cast<std::int64_t>(n[0]) * n[1] * n[2]; };
  const auto cell = [&](int a) { return static_cast<double>(dims[a]) / n[a]; };

  // Axes shorter than S force n=1 there and can push the product over the
  // budget; shed seeds from the finest axis first.
  while (product() > max_supervoxels) {
    int finest = -1;
    for (int a = 0; a < 3; ++a) {
      if (n[a] > 1 && (finest < 0 || cell(a) < cell(finest))) finest = a;
    }
    --n[finest];
  }
  for (;;) {
    std::array<int, 3> order{0, 1, 2};
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return cell(a) > cell(b); });
    bool grown = false;
    for (int a : order) {
      if (n[a] >= dims[a]) continue;
      if (product() / n[a] * (n[a] + 1) <= max_supervoxels) {
        ++n[a];
        grown = true;
        break;
      }
    }
    if (!grown) break;
  }
  return n;
}

std::vector<ClusterCenter> init_seeds(const MultiModalVolume& vol, const SlicParams& params) {
  params.validate();
  const Dims& dims = vol.dims();
  if (params.max_supervoxels > dims.voxels()) {
    throw ConstraintError("max_supervoxels " + std::to_string(params.max_supervoxels) +
                          " exceeds voxel count " + std::to_string(dims.voxels()));
  }
  const std::array<int, 3> n = seed_grid_shape(dims, params.max_supervoxels);
  std::vector<ClusterCenter> centers;
  centers.reserve(static_cast<std::size_t>(n[0]) * n[1] * n[2]);
  for (int k = 0; k < n[2]; ++k) {
    for (int j = 0; j < n[1]; ++j) {
      for (int i = 0; i < n[0]; ++i) {
        ClusterCenter c;
        const int idx[3] = {i, j, k};
        int voxel[3];
        for (int a = 0; a < 3; ++a) {
          const double step = static_cast<double>(dims[a]) / n[a];
          c.spatial[a] = (idx[a] + 0.5) * step - 0.5;
          voxel[a] = std::clamp(static_cast<int>(std::floor(c.spatial[a] + 0.5)), 0, dims[a] - 1);
        }
        c.intensity.resize(vol.channels());
        for (int ch = 0; ch < vol.channels(); ++ch) {
          c.intensity[ch] = vol(ch, voxel[0], voxel[1], voxel[2]);
        }
        centers.push_back(std::move(c));
      }
    }
  }
  return centers;
}

LabelVolume slic_assignment(const MultiModalVolume& vol, const SlicParams& params) {
  params.validate();
  if (!is_normalized(vol)) {
    throw ConstraintError("SLIC input must be normalized to [0, 1] per channel");
  }
  std::vector<ClusterCenter> centers = init_seeds(vol, params);
  const double interval = grid_interval(vol.dims(), params.max_supervoxels);
  const double spatial_weight =
      (params.compactness * params.compactness) / (interval * interval);

  const auto n = static_cast<std::size_t>(vol.voxel_count());
  std::vector<std::uint32_t> labels(n, kUnassigned);
  std::vector<double> best(n);
  for (int it = 0; it < params.iterations; ++it) {
    assign(vol, CenterTable(centers), interval, spatial_weight, params.threads, labels, best);
    update_centers(vol, labels, centers);
  }

  LabelVolume raw(vol.dims(), 1, vol.spacing());
  std::copy(labels.begin(), labels.end(), raw.data().data());
  return raw;
}

SupervoxelMap run_slic(const MultiModalVolume& vol, const SlicParams& params) {
  return enforce_connectivity(slic_assignment(vol, params), params);
}

}  // namespace svx
