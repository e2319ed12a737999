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

#include "svx/metrics.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace svx {

using nlohmann::json;

double dice(const MaskVolume& pred, const MaskVolume& truth) {
  if (pred.dims() != truth.dims()) {
    throw ConstraintError("dimension mismatch: " + to_string(pred.dims()) + " vs " +
                          to_string(truth.dims()));
  }
  const auto a = pred.data() != std::uint8_t{0};
  const auto b = truth.data() != std::uint8_t{0};
  const auto size_a = a.count();
  const auto size_b = b.count();
  if (size_a + size_b == 0) return 1.0;
  const auto both = (a && b).count();
  return 2.0 * static_cast<double>(both) / static_cast<double>(size_a + size_b);
}

double mse(const MultiModalVolume& a, const MultiModalVolume& b, const MaskVolume* mask) {
  if (a.dims() != b.dims() || a.channels() != b.channels()) {
    throw ConstraintError("dimension mismatch: " + to_string(a.dims()) + " vs " +
                          to_string(b.dims()));
  }
  const Eigen::ArrayXd diff2 =
      (a.data().cast<double>() - b.data().cast<double>()).square();
  if (mask == nullptr) return diff2.size() ? diff2.mean() : 0.0;
  if (mask->dims() != a.dims()) {
    throw ConstraintError("mask dimension mismatch: " + to_string(mask->dims()));
  }
  const auto inside = mask->data() == std::uint8_t{0};
  const Eigen::Index selected = inside.count() * a.channels();
  if (selected == 0) return 0.0;
  double total = 0.0;
  const Eigen::Index n = a.voxel_count();
  for (int c = 0; c < a.channels(); ++c) {
    total += inside.select(diff2.segment(c * n, n), 0.0).sum();
  }
  return total / static_cast<double>(selected);
}

DiceReport summarize_dice(std::vector<std::string> cases, std::vector<double> values) {
  DiceReport r;
  r.cases = std::move(cases);
  r.values = std::move(values);
  if (r.values.empty()) return r;
  const Eigen::Map<const Eigen::ArrayXd> v(r.values.data(), static_cast<Eigen::Index>(r.values.size()));
  r.mean = v.mean();
  r.stddev = std::sqrt((v - r.mean).square().mean());
  return r;
}

std::string format_mean_std(double mean, double stddev) {
  char m[32], s[32];
  std::snprintf(m, sizeof(m), "%.3f", mean);
  std::snprintf(s, sizeof(s), "%.3f", stddev);
  std::string sd = s;
  if (sd.rfind("0.", 0) == 0) sd.erase(0, 1);
  return std::string(m) + " (" + sd + ")";
}

json to_json(const DiceReport& report) {
  json cases = json::array();
  for (std::size_t i = 0; i < report.values.size(); ++i) {
    cases.push_back({{"case", i < report.cases.size() ? report.cases[i] : std::to_string(i)},
                     {"dice", report.values[i]}});
  }
  return json{{"cases", std::move(cases)},
              {"mean", report.mean},
              {"std", report.stddev},
              {"n", report.values.size()}};
}

MaskStats mask_statistics(const SynthManifest& manifest) {
  MaskStats s;
  s.warnings = static_cast<std::int64_t>(manifest.warnings.size());
  double volume_sum = 0.0;
  for (const SynthRecord& r : manifest.records) {
    ++s.records;
    ++s.per_strategy[std::string(to_string(r.strategy))];
    if (r.region.roi_overlap >= 1) ++s.roi_hits;
    if (r.relaxed) ++s.relaxed;
    const std::int64_t v = r.region.volume;
    const auto bin = v > 0 ? static_cast<std::int64_t>(std::bit_floor(static_cast<std::uint64_t>(v))) : 0;
    ++s.volume_histogram[bin];
    s.min_volume = s.records == 1 ? v : std::min(s.min_volume, v);
    s.max_volume = std::max(s.max_volume, v);
    volume_sum += static_cast<double>(v);
  }
  if (s.records) s.mean_volume = volume_sum / static_cast<double>(s.records);
  return s;
}

json to_json(const MaskStats& s) {
  json histogram = json::array();
  for (const auto& [lo, count] : s.volume_histogram) {
    histogram.push_back({{"min", lo}, {"max_exclusive", lo * 2}, {"count", count}});
  }
  return json{{"records", s.records},
              {"warnings", s.warnings},
              {"per_strategy", s.per_strategy},
              {"roi_hit_rate", s.roi_hit_rate()},
              {"relaxed_rate", s.relaxed_rate()},
              {"volume", {{"min", s.min_volume}, {"max", s.max_volume}, {"mean", s.mean_volume}}},
              {"volume_histogram", std::move(histogram)}};
}

std::string format_table(const MaskStats& s) {
  std::ostringstream out;
  char line[128];
  const auto row = [&](const char* key, const std::string& value) {
    std::snprintf(line, sizeof(line), "%-16s %s\n", key, value.c_str());
    out << line;
  };
  const auto fixed = [](double v) {
    char b[32];
    std::snprintf(b, sizeof(b), "%.4f", v);
    return std::string(b);
  };
  row("records", std::to_string(s.records));
  row("warnings", std::to_string(s.warnings));
  for (const auto& [name, count] : s.per_strategy) row(("  " + name).c_str(), std::to_string(count));
  row("roi_hit_rate", fixed(s.roi_hit_rate()));
  row("relaxed_rate", fixed(s.relaxed_rate()));
  row("volume_min", std::to_string(s.min_volume));
  row("volume_max", std::to_string(s.max_volume));
  std::snprintf(line, sizeof(line), "%.1f", s.mean_volume);
  row("volume_mean", line);
  out << "volume histogram\n";
  for (const auto& [lo, count] : s.volume_histogram) {
    std::snprintf(line, sizeof(line), "  [%8lld, %8lld) %8lld\n", static_cast<long long>(lo),
                  static_cast<long long>(lo * 2), static_cast<long long>(count));
    out << line;
  }
  return out.str();
}

}  // namespace svx
