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

#include "svx/phantom.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "svx/parallel.hpp"
#include "svx/rng.hpp"
#include "svx/svol.hpp"

namespace svx {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kMaxPlacementAttempts = 1000;
constexpr int kBiasWaves = 3;

struct Lesion {
  std::array<double, 3> centre;
  std::array<double, 3> semi_axes;
};

double max_axis(const Lesion& l) { return *std::max_element(l.semi_axes.begin(), l.semi_axes.end()); }

}  // namespace

void PhantomSpec::validate() const {
  if (!dims.positive()) throw ConstraintError("phantom dims must be positive");
  if (channels < 1) throw ConstraintError("phantom needs at least one channel");
  if (lesion_count_min < 0 || lesion_count_min > lesion_count_max) {
    throw ConstraintError("lesion count range must satisfy 0 <= min <= max");
  }
  if (!(lesion_radius_min > 0.0) || lesion_radius_min > lesion_radius_max) {
    throw ConstraintError("lesion radius range must satisfy 0 < min <= max");
  }
  if (lesion_contrast.size() != static_cast<std::size_t>(channels) ||
      background_level.size() != static_cast<std::size_t>(channels)) {
    throw ConstraintError("lesion_contrast and background_level need one value per channel");
  }
  for (double c : lesion_contrast) {
    if (!std::isfinite(c)) throw ConstraintError("lesion contrast must be finite");
  }
  for (double b : background_level) {
    if (!std::isfinite(b)) throw ConstraintError("background level must be finite");
  }
  if (!(noise_sigma >= 0.0) || !(bias_strength >= 0.0)) {
    throw ConstraintError("noise sigma and bias strength must be non-negative");
  }
  if (lesion_count_max > 0) {
    const int smallest = std::min({dims.x, dims.y, dims.z});
    if (2.0 * lesion_radius_min * 0.8 + 1.0 > smallest) {
      throw ConstraintError("lesion radius " + std::to_string(lesion_radius_min) +
                            " does not fit inside " + to_string(dims));
    }
  }
}

PhantomSpec brats_like_preset() { return PhantomSpec{}; }

PhantomSpec wmh_like_preset() {
  PhantomSpec spec;
  spec.lesion_count_min = 8;
  spec.lesion_count_max = 16;
  spec.lesion_radius_min = 2.0;
  spec.lesion_radius_max = 4.0;
  spec.lesion_contrast = {0.40, 0.25};
  return spec;
}

std::optional<PhantomSpec> phantom_preset(std::string_view name) {
  if (name == "brats-like") return brats_like_preset();
  if (name == "wmh-like") return wmh_like_preset();
  return std::nullopt;
}

json to_json(const PhantomSpec& s) {
  return json{{"dims", {s.dims.x, s.dims.y, s.dims.z}},
              {"channels", s.channels},
              {"lesion_count", {s.lesion_count_min, s.lesion_count_max}},
              {"lesion_radius", {s.lesion_radius_min, s.lesion_radius_max}},
              {"lesion_contrast", s.lesion_contrast},
              {"background_level", s.background_level},
              {"noise_sigma", s.noise_sigma},
              {"bias_strength", s.bias_strength},
              {"seed", s.seed}};
}

PhantomSpec phantom_spec_from_json(const json& j, PhantomSpec s) {
  try {
    if (j.contains("dims")) {
      const auto& d = j.at("dims");
      s.dims = Dims{d.at(0).get<int>(), d.at(1).get<int>(), d.at(2).get<int>()};
    }
    s.channels = j.value("channels", s.channels);
    if (j.contains("lesion_count")) {
      s.lesion_count_min = j.at("lesion_count").at(0).get<int>();
      s.lesion_count_max = j.at("lesion_count").at(1).get<int>();
    }
    if (j.contains("lesion_radius")) {
      s.lesion_radius_min = j.at("lesion_radius").at(0).get<double>();
      s.lesion_radius_max = j.at("lesion_radius").at(1).get<double>();
    }
    s.lesion_contrast = j.value("lesion_contrast", s.lesion_contrast);
    s.background_level = j.value("background_level", s.background_level);
    s.noise_sigma = j.value("noise_sigma", s.noise_sigma);
    s.bias_strength = j.value("bias_strength", s.bias_strength);
    s.seed = j.value("seed", s.seed);
  } catch (const json::exception& e) {
    throw FormatError(std::string("malformed phantom spec: ") + e.what());
  }
  return s;
}

Phantom generate_phantom(const PhantomSpec& spec) {
  spec.validate();
  const Dims& dims = spec.dims;
  const Rng root(spec.seed);

  // Low-frequency bias: mean of a few plane waves, in [-1, 1].
  Rng bias_rng = root.child("bias");
  std::array<std::array<double, 4>, kBiasWaves> waves{};
  for (auto& w : waves) {
    for (int a = 0; a < 3; ++a) w[a] = bias_rng.uniform(-1.5, 1.5) / dims[a];
    w[3] = bias_rng.uniform(0.0, 2.0 * std::numbers::pi);
  }

  Phantom out{MultiModalVolume(dims, spec.channels), LabelVolume(dims, 1)};
  Rng noise_rng = root.child("noise");
  for (int c = 0; c < spec.channels; ++c) {
    for (int z = 0; z < dims.z; ++z) {
      for (int y = 0; y < dims.y; ++y) {
        for (int x = 0; x < dims.x; ++x) {
          double bias = 0.0;
          for (const auto& w : waves) {
            bias += std::cos(2.0 * std::numbers::pi * (w[0] * x + w[1] * y + w[2] * z) + w[3]);
          }
          bias /= kBiasWaves;
          out.image(c, x, y, z) = static_cast<float>(spec.background_level[c] +
                                                     spec.bias_strength * bias +
                                                     spec.noise_sigma * noise_rng.normal());
        }
      }
    }
  }

  Rng lesion_rng = root.child("lesions");
  const int lesion_count = lesion_rng.uniform_int(spec.lesion_count_min, spec.lesion_count_max);
  std::vector<Lesion> lesions;
  for (int i = 0; i < lesion_count; ++i) {
    bool placed = false;
    for (int attempt = 0; attempt < kMaxPlacementAttempts && !placed; ++attempt) {
      const double r = lesion_rng.uniform(spec.lesion_radius_min, spec.lesion_radius_max);
      // Volume-preserving jitter; the flattest axis goes to z, the thin axis
      // of typical slabs.
      const double s1 = lesion_rng.uniform(0.9, 1.1);
      const double s2 = lesion_rng.uniform(0.9, 1.1);
      std::array<double, 3> scales = {s1, s2, 1.0 / (s1 * s2)};
      std::sort(scales.begin(), scales.end(), std::greater<>());
      Lesion l;
      bool fits = true;
      for (int a = 0; a < 3; ++a) {
        l.semi_axes[a] = r * scales[a];
        const double lo = l.semi_axes[a];
        const double hi = dims[a] - 1 - l.semi_axes[a];
        if (lo > hi) {
          fits = false;
          break;
        }
        l.centre[a] = lesion_rng.uniform(lo, hi);
      }
      if (!fits) continue;
      const bool overlaps = std::any_of(lesions.begin(), lesions.end(), [&](const Lesion& o) {
        double d2 = 0.0;
        for (int a = 0; a < 3; ++a) d2 += (l.centre[a] - o.centre[a]) * (l.centre[a] - o.centre[a]);
        const double reach = max_axis(l) + max_axis(o) + 1.0;
        return d2 < reach * reach;
      });
      if (overlaps) continue;
      lesions.push_back(l);
      placed = true;
    }
    if (!placed) {
      throw ConstraintError("could not place lesion " + std::to_string(i + 1) + " of " +
                            std::to_string(lesion_count) + " in " + to_string(dims) +
                            " after " + std::to_string(kMaxPlacementAttempts) +
                            " attempts: lesions must fit inside the volume without overlapping");
    }
  }

  for (const Lesion& l : lesions) {
    int lo[3], hi[3];
    for (int a = 0; a < 3; ++a) {
      lo[a] = std::max(0, static_cast<int>(std::floor(l.centre[a] - l.semi_axes[a])));
      hi[a] = std::min(dims[a] - 1, static_cast<int>(std::ceil(l.centre[a] + l.semi_axes[a])));
    }
    for (int z = lo[2]; z <= hi[2]; ++z) {
      for (int y = lo[1]; y <= hi[1]; ++y) {
        for (int x = lo[0]; x <= hi[0]; ++x) {
          const double ex = (x - l.centre[0]) / l.semi_axes[0];
          const double ey = (y - l.centre[1]) / l.semi_axes[1];
          const double ez = (z - l.centre[2]) / l.semi_axes[2];
          if (ex * ex + ey * ey + ez * ez <= 1.0) out.labels.at(x, y, z) = 1;
        }
      }
    }
  }

  for (int c = 0; c < spec.channels; ++c) {
    auto chan = out.image.channel(c);
    const auto lesion = out.labels.data() != 0u;
    chan = lesion.select(chan + static_cast<float>(spec.lesion_contrast[c]), chan);
    chan = chan.max(0.0f).min(1.0f);
  }
  return out;
}

TrainingSet generate_corpus(int n, const PhantomSpec& spec, const fs::path& out_dir,
                            std::uint64_t seed, int threads) {
  if (n < 1) throw ConstraintError("corpus size must be >= 1");
  spec.validate();
  fs::create_directories(out_dir);
  TrainingSet set;
  set.entries.resize(static_cast<std::size_t>(n));
  const Rng root(seed);
  parallel_for(set.entries.size(), threads, [&](std::size_t i) {
    char id[32];
    std::snprintf(id, sizeof(id), "case%03zu", i);
    PhantomSpec s = spec;
    s.seed = root.child(i).next_u64();
    const Phantom p = generate_phantom(s);
    TrainingEntry& e = set.entries[i];
    e.id = id;
    e.image = out_dir / (e.id + "_image.json");
    e.label = out_dir / (e.id + "_label.json");
    save_svol(p.image, e.image);
    save_svol(p.labels, e.label);
  });
  write_training_set(set, out_dir / "train.json");
  return set;
}

}  // namespace svx
