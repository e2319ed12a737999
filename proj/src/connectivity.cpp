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

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <set>
#include <vector>

#include "svx/slic.hpp"

namespace svx {

namespace {

std::vector<std::array<int, 3>> neighbour_offsets(int connectivity) {
  std::vector<std::array<int, 3>> offsets;
  for (int dz = -1; dz <= 1; ++dz) {
    for (int dy = -1; dy <= 1; ++dy) {
      for (int dx = -1; dx <= 1; ++dx) {
        const int manhattan = std::abs(dx) + std::abs(dy) + std::abs(dz);
        if (manhattan == 0) continue;
        if (connectivity == 6 && manhattan != 1) continue;
        offsets.push_back({dx, dy, dz});
      }
    }
  }
  return offsets;
}

struct Component {
  std::uint32_t label;
  std::int64_t size;
};

}  // namespace

SupervoxelMap enforce_connectivity(const LabelVolume& labels, const SlicParams& params) {
  params.validate();
  const Dims& dims = labels.dims();
  const Eigen::Index n = labels.voxel_count();
  const auto offsets = neighbour_offsets(params.connectivity);

  const auto for_each_neighbour = [&](Eigen::Index v, auto&& fn) {
    const auto [x, y, z] = voxel_coords(dims, v);
    for (const auto& o : offsets) {
      const int nx = x + o[0], ny = y + o[1], nz = z + o[2];
      if (nx < 0 || ny < 0 || nz < 0 || nx >= dims.x || ny >= dims.y || nz >= dims.z) continue;
      fn(labels.voxel_index(nx, ny, nz));
    }
  };

  // Connected components in raster order of their first voxel.
  std::vector<std::int32_t> component(static_cast<std::size_t>(n), -1);
  std::vector<Component> components;
  std::vector<std::vector<Eigen::Index>> members;
  std::vector<Eigen::Index> stack;
  for (Eigen::Index seed = 0; seed < n; ++seed) {
    if (component[seed] >= 0) continue;
    const auto id = static_cast<std::int32_t>(components.size());
    const std::uint32_t label = labels.data()[seed];
    std::vector<Eigen::Index> voxels;
    component[seed] = id;
    stack.push_back(seed);
    while (!stack.empty()) {
      const Eigen::Index v = stack.back();
      stack.pop_back();
      voxels.push_back(v);
      for_each_neighbour(v, [&](Eigen::Index u) {
        if (component[u] < 0 && labels.data()[u] == label) {
          component[u] = id;
          stack.push_back(u);
        }
      });
    }
    components.push_back({label, static_cast<std::int64_t>(voxels.size())});
    members.push_back(std::move(voxels));
  }

  std::set<std::uint32_t> distinct;
  for (const auto& c : components) distinct.insert(c.label);
  const double mean_size = static_cast<double>(n) / static_cast<double>(distinct.size());
  const double threshold = params.min_fragment_factor * mean_size;

  std::vector<std::int32_t> parent(components.size());
  std::iota(parent.begin(), parent.end(), 0);
  const auto find = [&](std::int32_t c) {
    while (parent[c] != c) {
      parent[c] = parent[parent[c]];
      c = parent[c];
    }
    return c;
  };

  for (std::size_t ci = 0; ci < components.size(); ++ci) {
    const auto c = static_cast<std::int32_t>(ci);
    if (find(c) != c) continue;
    if (static_cast<double>(components[c].size) >= threshold) continue;

    std::map<std::int32_t, std::int64_t> contacts;
    for (Eigen::Index v : members[c]) {
      for_each_neighbour(v, [&](Eigen::Index u) {
        const std::int32_t g = find(component[u]);
        if (g != c) ++contacts[g];
      });
    }
    if (contacts.empty()) continue;

    std::int32_t target = -1;
    std::int64_t most = -1;
    for (const auto& [g, count] : contacts) {
      const bool better = count > most ||
                          (count == most && components[g].label < components[target].label);
      if (better) {
        target = g;
        most = count;
      }
    }
    parent[c] = target;
    components[target].size += components[c].size;
    auto& dst = members[target];
    dst.insert(dst.end(), members[c].begin(), members[c].end());
    members[c].clear();
    members[c].shrink_to_fit();
  }

  SupervoxelMap out;
  out.labels = LabelVolume(dims, 1, labels.spacing());
  std::vector<std::uint32_t> relabel(components.size(), 0);
  std::uint32_t next = 0;
  for (Eigen::Index v = 0; v < n; ++v) {
    const std::int32_t g = find(component[v]);
    if (relabel[g] == 0) relabel[g] = ++next;
    out.labels.data()[v] = relabel[g];
  }
  out.count = next;
  return out;
}

}  // namespace svx
