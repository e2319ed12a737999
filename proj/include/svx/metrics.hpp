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

#ifndef SVX_METRICS_HPP_
#define SVX_METRICS_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "svx/manifest.hpp"
#include "svx/volume.hpp"

namespace svx {

// 2|A n B| / (|A| + |B|) over nonzero voxels; 1.0 when both are empty.
double dice(const MaskVolume& pred, const MaskVolume& truth);

// Mean squared difference over all scalars or, with `mask`, over every
// channel of the voxels where mask == 0 (the inpainted region). An empty
// selection yields 0.
double mse(const MultiModalVolume& a, const MultiModalVolume& b,
           const MaskVolume* mask = nullptr);

struct DiceReport {
  std::vector<std::string> cases;
  std::vector<double> values;
  double mean = 0.0;
  double stddev = 0.0;  // population standard deviation
};

DiceReport summarize_dice(std::vector<std::string> cases, std::vector<double> values);

// "0.814 (.030)": mean and standard deviation, three decimals each, the
// deviation without its leading zero.
std::string format_mean_std(double mean, double stddev);

nlohmann::json to_json(const DiceReport& report);

struct MaskStats {
  std::int64_t records = 0;
  std::int64_t warnings = 0;
  std::map<std::string, std::int64_t> per_strategy;
  // Lower bin edge (power of two) -> count.
  std::map<std::int64_t, std::int64_t> volume_histogram;
  std::int64_t roi_hits = 0;
  std::int64_t relaxed = 0;
  std::int64_t min_volume = 0;
  std::int64_t max_volume = 0;
  double mean_volume = 0.0;

  double roi_hit_rate() const { return records ? static_cast<double>(roi_hits) / records : 0.0; }
  double relaxed_rate() const { return records ? static_cast<double>(relaxed) / records : 0.0; }
};

MaskStats mask_statistics(const SynthManifest& manifest);
nlohmann::json to_json(const MaskStats& stats);
std::string format_table(const MaskStats& stats);

}  // namespace svx

#endif  // SVX_METRICS_HPP_
