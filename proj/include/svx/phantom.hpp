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

#ifndef SVX_PHANTOM_HPP_
#define SVX_PHANTOM_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "svx/synth.hpp"
#include "svx/volume.hpp"

namespace svx {

// Procedural stand-in for labelled multi-modal brain MRI: a smooth biased
// background with Gaussian noise plus non-overlapping ellipsoidal lesions that
// add a per-channel contrast. Values are clamped to [0, 1].
struct PhantomSpec {
  Dims dims{96, 96, 32};
  int channels = 2;
  int lesion_count_min = 1;
  int lesion_count_max = 3;
  double lesion_radius_min = 8.0;
  double lesion_radius_max = 14.0;
  std::vector<double> lesion_contrast = {0.45, 0.35};
  std::vector<double> background_level = {0.30, 0.40};
  double noise_sigma = 0.03;
  double bias_strength = 0.08;
  std::uint64_t seed = 17;

  void validate() const;  // throws ConstraintError
};

// Few large lesions (radius 8-14) in 96x96x32.
PhantomSpec brats_like_preset();
// Many small lesions (radius 2-4) in 96x96x32.
PhantomSpec wmh_like_preset();
std::optional<PhantomSpec> phantom_preset(std::string_view name);

nlohmann::json to_json(const PhantomSpec& spec);
// Keys absent from `j` keep their value from `base`.
PhantomSpec phantom_spec_from_json(const nlohmann::json& j, PhantomSpec base = {});

struct Phantom {
  MultiModalVolume image;
  LabelVolume labels;  // 1 inside lesions, 0 elsewhere
};

// Deterministic in spec.seed. Throws ConstraintError when a lesion cannot be
// placed within 1000 attempts.
Phantom generate_phantom(const PhantomSpec& spec);

// Writes n phantoms (`<id>_image`, `<id>_label` SVOL pairs, ids case000...)
// and `train.json` into out_dir. Phantom i uses a seed derived from (seed, i).
TrainingSet generate_corpus(int n, const PhantomSpec& spec, const std::filesystem::path& out_dir,
                            std::uint64_t seed, int threads = 1);

}  // namespace svx

#endif  // SVX_PHANTOM_HPP_
