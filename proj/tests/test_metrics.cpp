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


#include <doctest.h>

#include <cmath>
#include <set>

#include "support.hpp"
#include "svx/error.hpp"
#include "svx/metrics.hpp"
#include "svx/volume_ops.hpp"

using namespace svx;

namespace {

MaskVolume random_mask(Rng& rng, Dims d, double p) {
  MaskVolume m(d);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = rng.uniform01() < p;
  return m;
}

double set_dice(const MaskVolume& a, const MaskVolume& b) {
  std::set<Eigen::Index> sa, sb, both;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a.data()[i]) sa.insert(i);
    if (b.data()[i]) sb.insert(i);
  }
  std::set_intersection(sa.begin(), sa.end(), sb.begin(), sb.end(),
                        std::inserter(both, both.begin()));
  if (sa.empty() && sb.empty()) return 1.0;
  return 2.0 * both.size() / (sa.size() + sb.size());
}

}  // namespace

TEST_CASE("dice") {
  SUBCASE("hand-counted example") {
    MaskVolume a({10, 1, 1}), b({10, 1, 1});
    a.data() << 1, 1, 1, 1, 0, 0, 0, 0, 0, 0;
    b.data() << 0, 1, 1, 1, 1, 1, 1, 0, 0, 0;
    CHECK(dice(a, b) == 0.6);
  }
  SUBCASE("identity, disjoint and empty") {
    MaskVolume a({4, 4, 1}), b({4, 4, 1});
    a.data().head(5).setOnes();
    b.data().tail(5).setOnes();
    CHECK(dice(a, a) == 1.0);
    CHECK(dice(a, b) == 0.0);
    CHECK(dice(MaskVolume({2, 2, 2}), MaskVolume({2, 2, 2})) == 1.0);
    CHECK_THROWS_AS(dice(a, MaskVolume({4, 4, 2})), Error);
  }
  SUBCASE("symmetric and equal to the set oracle") {
    Rng rng(3);
    for (int i = 0; i < 100; ++i) {
      const double p = rng.uniform(0.0, 0.6);
      const MaskVolume a = random_mask(rng, {7, 6, 5}, p);
      const MaskVolume b = random_mask(rng, {7, 6, 5}, p);
      CHECK(dice(a, b) == dice(b, a));
      CHECK(std::abs(dice(a, b) - set_dice(a, b)) <= 1e-12);
      if (count_nonzero(a) > 0) CHECK(dice(a, a) == 1.0);
    }
  }
}

TEST_CASE("mse") {
  Rng rng(5);
  MultiModalVolume a({6, 5, 4}, 2);
  for (Eigen::Index i = 0; i < a.size(); ++i) a.data()[i] = static_cast<float>(rng.uniform01());
  SUBCASE("identity and constant offset") {
    CHECK(mse(a, a) == 0.0);
    MultiModalVolume b = a;
    b.data() += 0.5f;
    CHECK(mse(a, b) == doctest::Approx(0.25).epsilon(1e-6));
  }
  SUBCASE("symmetric, non-negative, zero only when equal") {
    for (int i = 0; i < 100; ++i) {
      MultiModalVolume b = a;
      const Eigen::Index k = static_cast<Eigen::Index>(rng.uniform_index(b.size()));
      b.data()[k] += static_cast<float>(rng.uniform(0.01, 1.0));
      CHECK(mse(a, b) == mse(b, a));
      CHECK(mse(a, b) > 0.0);
    }
  }
  SUBCASE("masked-region error of an untouched masked input") {
    MaskVolume m = MaskVolume::Constant(a.dims(), 1, 1);
    for (int x = 1; x < 4; ++x) m.at(x, 2, 1) = 0;
    const MultiModalVolume masked = apply_mask(a, m);
    double expect = 0.0;
    for (int c = 0; c < 2; ++c)
      for (int x = 1; x < 4; ++x) expect += static_cast<double>(a(c, x, 2, 1)) * a(c, x, 2, 1);
    expect /= 6.0;
    CHECK(mse(masked, a, &m) == doctest::Approx(expect).epsilon(1e-12));
  }
  SUBCASE("dimension mismatch") {
    CHECK_THROWS_AS(mse(a, MultiModalVolume({6, 5, 4}, 1)), Error);
  }
}

TEST_CASE("dice report") {
  const DiceReport r = summarize_dice({"a", "b", "c"}, {0.5, 0.75, 1.0});
  CHECK(r.mean == doctest::Approx(0.75));
  CHECK(r.stddev == doctest::Approx(std::sqrt((0.0625 + 0 + 0.0625) / 3.0)));
  CHECK(format_mean_std(1.0, 0.0) == "1.000 (.000)");
  CHECK(format_mean_std(0.814, 0.0913) == "0.814 (.091)");
}

TEST_CASE("mask statistics") {
  SUBCASE("empty manifest") {
    const MaskStats s = mask_statistics(SynthManifest{});
    CHECK(s.records == 0);
    CHECK(s.roi_hit_rate() == 0.0);
    CHECK(s.relaxed_rate() == 0.0);
    CHECK(to_json(s).at("roi_hit_rate") == 0.0);
    CHECK(!format_table(s).empty());
  }
  SUBCASE("counts and rates") {
    SynthManifest m;
    for (int i = 0; i < 4; ++i) {
      SynthRecord r;
      r.source_id = "x";
      r.draw = i;
      r.strategy = Strategy::kNoroiGrid;
      r.region.kind = RegionKind::kCuboid;
      r.region.volume = 1000 + i;
      r.region.roi_overlap = i % 2;
      r.relaxed = i == 0;
      m.records.push_back(r);
    }
    const MaskStats s = mask_statistics(m);
    CHECK(s.records == 4);
    CHECK(s.roi_hit_rate() == 0.5);
    CHECK(s.relaxed_rate() == 0.25);
    CHECK(s.per_strategy.at("noroi-grid") == 4);
    CHECK(s.min_volume == 1000);
    CHECK(s.max_volume == 1003);
    CHECK(format_table(s).find("roi_hit_rate") != std::string::npos);
  }
}
