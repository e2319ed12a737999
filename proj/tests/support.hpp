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

// Shared helpers for the unit tests and the acceptance binary.

#ifndef SVX_TESTS_SUPPORT_HPP_
#define SVX_TESTS_SUPPORT_HPP_

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <unistd.h>

#include "svx/phantom.hpp"
#include "svx/rng.hpp"
#include "svx/slic.hpp"
#include "svx/volume.hpp"

namespace svx::test {

namespace fs = std::filesystem;

class TempDir {
 public:
  TempDir() {
    static std::atomic<int> serial{0};
    path_ = fs::temp_directory_path() /
            ("svx-test-" + std::to_string(::getpid()) + "-" + std::to_string(serial++));
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const fs::path& path() const { return path_; }
  fs::path operator/(const std::string& name) const { return path_ / name; }

 private:
  fs::path path_;
};

inline std::string read_bytes(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

inline void write_bytes(const fs::path& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

// Hash over relative paths and contents of every file below `root`.
inline std::uint64_t hash_tree(const fs::path& root) {
  std::vector<fs::path> files;
  for (const auto& e : fs::recursive_directory_iterator(root)) {
    if (e.is_regular_file()) files.push_back(fs::relative(e.path(), root));
  }
  std::sort(files.begin(), files.end());
  std::uint64_t h = 0;
  for (const fs::path& f : files) {
    h = mix64(h ^ hash_string(f.generic_string()));
    h = mix64(h ^ hash_string(read_bytes(root / f)));
  }
  return h;
}

// Small brats-like phantom scaled to the given grid.
inline Phantom small_phantom(Dims dims, std::uint64_t seed, int channels = 2) {
  PhantomSpec spec;
  spec.dims = dims;
  spec.channels = channels;
  spec.lesion_contrast.assign(channels, 0.4);
  spec.background_level.assign(channels, 0.3);
  const int smallest = std::min({dims.x, dims.y, dims.z});
  spec.lesion_radius_min = std::max(1.5, smallest / 8.0);
  spec.lesion_radius_max = std::max(2.0, smallest / 5.0);
  spec.lesion_count_min = 1;
  spec.lesion_count_max = 2;
  spec.seed = seed;
  return generate_phantom(spec);
}

// Flood-fill component count per label, independent of the library.
inline std::map<std::uint32_t, int> components_per_label(const LabelVolume& labels,
                                                         int connectivity) {
  const Dims d = labels.dims();
  std::vector<char> seen(static_cast<std::size_t>(d.voxels()), 0);
  std::map<std::uint32_t, int> out;
  std::vector<std::array<int, 3>> stack;
  for (int z = 0; z < d.z; ++z) {
    for (int y = 0; y < d.y; ++y) {
      for (int x = 0; x < d.x; ++x) {
        const auto v = labels.voxel_index(x, y, z);
        if (seen[v]) continue;
        const std::uint32_t l = labels.at(x, y, z);
        ++out[l];
        seen[v] = 1;
        stack.push_back({x, y, z});
        while (!stack.empty()) {
          auto [cx, cy, cz] = stack.back();
          stack.pop_back();
          for (int dz = -1; dz <= 1; ++dz) {
            for (int dy = -1; dy <= 1; ++dy) {
              for (int dx = -1; dx <= 1; ++dx) {
                const int manhattan = std::abs(dx) + std::abs(dy) + std::abs(dz);
                if (manhattan == 0 || (connectivity == 6 && manhattan != 1)) continue;
                const int nx = cx + dx, ny = cy + dy, nz = cz + dz;
                if (nx < 0 || ny < 0 || nz < 0 || nx >= d.x || ny >= d.y || nz >= d.z) continue;
                const auto n = labels.voxel_index(nx, ny, nz);
                if (seen[n] || labels.at(nx, ny, nz) != l) continue;
                seen[n] = 1;
                stack.push_back({nx, ny, nz});
              }
            }
          }
        }
      }
    }
  }
  return out;
}

// Labels are exactly {1..K} and each is a single connected component.
inline bool is_valid_supervoxel_map(const SupervoxelMap& map, int connectivity) {
  const auto comps = components_per_label(map.labels, connectivity);
  if (comps.size() != map.count) return false;
  std::uint32_t expect = 1;
  for (const auto& [label, n] : comps) {
    if (label != expect++ || n != 1) return false;
  }
  return true;
}

inline double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace svx::test

#endif  // SVX_TESTS_SUPPORT_HPP_
