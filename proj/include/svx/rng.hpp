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

#ifndef SVX_RNG_HPP_
#define SVX_RNG_HPP_

#include <cstdint>
#include <string_view>

namespace svx {

std::uint64_t mix64(std::uint64_t x);
std::uint64_t hash_string(std::string_view text);  // FNV-1a, 64 bit

// Counter-based generator. A stream is identified by a 64-bit key; child
// streams are derived from (key, index), so a draw is reproducible from its
// path alone, e.g. (global seed, image id, draw index), independent of how
// work is scheduled. Distributions are implemented here rather than taken
// from <random> so outputs are identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : key_(mix64(seed ^ 0x5851f42d4c957f2dULL)) {}

  Rng child(std::uint64_t index) const;
  Rng child(std::string_view name) const { return child(hash_string(name)); }

  std::uint64_t key() const { return key_; }

  std::uint64_t next_u64();
  // Uniform in [0, n), n >= 1.
  std::uint64_t uniform_index(std::uint64_t n);
  // Uniform in [lo, hi].
  int uniform_int(int lo, int hi);
  // Uniform in [0, 1) with 53 random bits.
  double uniform01();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
  // Standard normal (Box-Muller, one value per call).
  double normal();

 private:
  struct FromKey {};
  Rng(FromKey, std::uint64_t key) : key_(key) {}

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace svx

#endif  // SVX_RNG_HPP_
