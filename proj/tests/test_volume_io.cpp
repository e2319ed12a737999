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
#include <cstring>
#include <limits>

#include <json.hpp>

#include "support.hpp"
#include "svx/error.hpp"
#include "svx/nifti.hpp"
#include "svx/svol.hpp"
#include "svx/volume_ops.hpp"

using namespace svx;
using svx::test::TempDir;
namespace fs = std::filesystem;

namespace {

const fs::path kFixtures = SVX_FIXTURE_DIR;

void write_header(const fs::path& path, const nlohmann::json& j) {
  std::ofstream(path) << j.dump();
}

MultiModalVolume ramp(Dims d, int channels, float scale = 1.0f) {
  MultiModalVolume v(d, channels);
  for (Eigen::Index i = 0; i < v.size(); ++i) v.data()[i] = scale * static_cast<float>(i % 97);
  return v;
}

}  // namespace

TEST_CASE("svol fixture layout is channel-major, x fastest") {
  const MultiModalVolume v = load_image_svol(kFixtures / "svol_2ch");
  REQUIRE(v.dims() == Dims{4, 4, 4});
  REQUIRE(v.channels() == 2);
  CHECK(v.spacing() == Spacing{1.0, 1.0, 2.5});
  auto flat = [&](int c, int x, int y, int z) { return v.data()[((c * 4 + z) * 4 + y) * 4 + x]; };
  CHECK(flat(0, 0, 0, 0) == 0.0f);
  CHECK(flat(1, 3, 3, 3) == 1333.0f);
  CHECK(flat(0, 3, 0, 2) == 203.0f);
  CHECK(v(1, 1, 2, 3) == 1321.0f);
}

TEST_CASE("svol loader errors") {
  TempDir tmp;
  const std::string payload(4 * 4 * 4 * 4, '\0');

  SUBCASE("missing file") {
    CHECK_THROWS_AS(load_svol(tmp / "nothing"), IoError);
  }
  SUBCASE("non-positive dimension") {
    write_header(tmp / "a.json", {{"dims", {0, 4, 4}}, {"channels", 1}, {"dtype", "f32"}});
    test::write_bytes(tmp / "a.bin", "");
    CHECK_THROWS_WITH_AS(load_svol(tmp / "a"), doctest::Contains("non-positive dimension"),
                         FormatError);
  }
  SUBCASE("body one byte short") {
    write_header(tmp / "b.json", {{"dims", {4, 4, 4}}, {"channels", 1}, {"dtype", "f32"}});
    test::write_bytes(tmp / "b.bin", payload.substr(1));
    CHECK_THROWS_WITH_AS(load_svol(tmp / "b"), doctest::Contains("payload length mismatch"),
                         FormatError);
  }
  SUBCASE("unknown dtype") {
    write_header(tmp / "c.json", {{"dims", {4, 4, 4}}, {"channels", 1}, {"dtype", "f64"}});
    test::write_bytes(tmp / "c.bin", payload);
    CHECK_THROWS_WITH_AS(load_svol(tmp / "c"), doctest::Contains("unknown dtype"), FormatError);
  }
  SUBCASE("non-finite f32") {
    write_header(tmp / "d.json", {{"dims", {4, 4, 4}}, {"channels", 1}, {"dtype", "f32"}});
    std::string bad = payload;
    const float nan = std::numeric_limits<float>::quiet_NaN();
    std::memcpy(bad.data() + 8, &nan, sizeof nan);
    test::write_bytes(tmp / "d.bin", bad);
    CHECK_THROWS_WITH_AS(load_svol(tmp / "d"), doctest::Contains("non-finite"), FormatError);
  }
  SUBCASE("malformed json") {
    test::write_bytes(tmp / "e.json", "{\"dims\": [4,");
    test::write_bytes(tmp / "e.bin", payload);
    CHECK_THROWS_AS(load_svol(tmp / "e"), FormatError);
  }
  SUBCASE("mask values above one") {
    write_header(tmp / "m.json", {{"dims", {2, 1, 1}}, {"channels", 1}, {"dtype", "u8"}});
    test::write_bytes(tmp / "m.bin", std::string("\x01\x02", 2));
    CHECK_THROWS_AS(load_mask_svol(tmp / "m"), FormatError);
  }
}

TEST_CASE("svol round trip is bit exact") {
  TempDir tmp;
  SUBCASE("phantom image and labels") {
    const Phantom p = test::small_phantom({20, 18, 10}, 5);
    save_svol(p.image, tmp / "img");
    save_svol(p.labels, tmp / "lab");
    CHECK(load_image_svol(tmp / "img") == p.image);
    CHECK(load_label_svol(tmp / "lab") == p.labels);
    // Re-saving the loaded volume reproduces the payload byte for byte.
    save_svol(load_image_svol(tmp / "img"), tmp / "img2");
    CHECK(test::read_bytes(tmp / "img.bin") == test::read_bytes(tmp / "img2.bin"));
  }
  SUBCASE("mask stays binary") {
    MaskVolume m({5, 4, 3});
    for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = (i * 7) % 3 == 0;
    save_svol(m, tmp / "mask");
    const MaskVolume back = load_mask_svol(tmp / "mask");
    CHECK(back == m);
    CHECK(((back.data() == 0) || (back.data() == 1)).all());
  }
  SUBCASE("1x1x1 volume has a 4-byte body") {
    MultiModalVolume one({1, 1, 1}, 1);
    one.data()[0] = -2.5f;
    save_svol(one, tmp / "one");
    CHECK(fs::file_size(tmp / "one.bin") == 4);
    CHECK(load_image_svol(tmp / "one") == one);
  }
  SUBCASE("extras survive in the header") {
    LabelVolume l({2, 2, 2});
    save_svol(l, tmp / "l", {{"supervoxel_count", 3}});
    CHECK(read_svol_header(tmp / "l.json").extras.at("supervoxel_count") == 3);
  }
  SUBCASE("u8 labels widen to u32") {
    MaskVolume m({3, 1, 1});
    m.data() << 0, 1, 1;
    save_svol(m, tmp / "u8");
    const LabelVolume l = load_label_svol(tmp / "u8");
    CHECK(l.data()[1] == 1u);
  }
}

TEST_CASE("nifti decoding") {
  SUBCASE("scl_slope and scl_inter are applied") {
    for (const char* name : {"f32_scaled.nii", "f32_scaled_be.nii"}) {
      CAPTURE(name);
      const MultiModalVolume v = load_nifti_image(kFixtures / name);
      REQUIRE(v.dims() == Dims{4, 3, 2});
      CHECK(v.at(1, 2, 1) == 7.0f);
      for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (i == (1 * 3 + 2) * 4 + 1) continue;
        CHECK(v.data()[i] == 2.0f * static_cast<float>(i) + 1.0f);
      }
    }
  }
  SUBCASE("gzipped int16 labels") {
    const LabelVolume l = load_nifti_labels(kFixtures / "labels_i16.nii.gz");
    REQUIRE(l.dims() == Dims{5, 4, 3});
    const std::uint32_t ids[] = {0, 1, 2, 4, 0};
    for (Eigen::Index i = 0; i < l.size(); ++i) CHECK(l.data()[i] == ids[(7 * i) % 5]);
  }
  SUBCASE("4-D uint8 becomes channels") {
    const MultiModalVolume v = load_nifti_image(kFixtures / "u8_4d.nii");
    REQUIRE(v.dims() == Dims{3, 2, 2});
    REQUIRE(v.channels() == 2);
    for (int c = 0; c < 2; ++c) {
      for (Eigen::Index i = 0; i < 12; ++i) CHECK(v.data()[c * 12 + i] == 10.0f * c + i);
    }
  }
  SUBCASE("two-file variant is refused") {
    CHECK_THROWS_WITH_AS(load_nifti_image(kFixtures / "ni1_magic.nii"),
                         doctest::Contains("unsupported NIfTI variant"), FormatError);
  }
  SUBCASE("truncated payload") {
    CHECK_THROWS_WITH_AS(load_nifti_image(kFixtures / "truncated.nii"),
                         doctest::Contains("truncated payload"), FormatError);
  }
  SUBCASE("bad magic") {
    TempDir tmp;
    std::string bytes = test::read_bytes(kFixtures / "f32_scaled.nii");
    bytes.replace(344, 4, std::string("abc\0", 4));
    test::write_bytes(tmp / "bad.nii", bytes);
    CHECK_THROWS_WITH_AS(load_nifti_image(tmp / "bad.nii"), doctest::Contains("bad magic"),
                         FormatError);
  }
  SUBCASE("unsupported datatype") {
    TempDir tmp;
    std::string bytes = test::read_bytes(kFixtures / "f32_scaled.nii");
    const std::int16_t complex64 = 32;
    std::memcpy(bytes.data() + 70, &complex64, 2);
    test::write_bytes(tmp / "cplx.nii", bytes);
    CHECK_THROWS_AS(load_nifti_image(tmp / "cplx.nii"), FormatError);
  }
  SUBCASE("missing file") {
    CHECK_THROWS_AS(load_nifti_image(kFixtures / "absent.nii"), IoError);
  }
}

TEST_CASE("normalize_intensities") {
  SUBCASE("linear map") {
    MultiModalVolume v({3, 1, 1}, 1);
    v.data() << 2, 4, 6;
    const MultiModalVolume n = normalize_intensities(v);
    CHECK(n.data()[0] == 0.0f);
    CHECK(n.data()[1] == 0.5f);
    CHECK(n.data()[2] == 1.0f);
  }
  SUBCASE("constant channel maps to zeros") {
    const auto n = normalize_intensities(MultiModalVolume::Constant({4, 3, 2}, 1, 5.0f));
    CHECK((n.data() == 0.0f).all());
  }
  SUBCASE("channels are independent") {
    MultiModalVolume v = ramp({6, 5, 4}, 2);
    v.channel(1) = v.channel(1) * -3.0f + 100.0f;
    const MultiModalVolume n = normalize_intensities(v);
    for (int c = 0; c < 2; ++c) {
      CHECK(n.channel(c).minCoeff() == 0.0f);
      CHECK(n.channel(c).maxCoeff() == 1.0f);
    }
    CHECK(is_normalized(n));
    CHECK_FALSE(is_normalized(v));
  }
  SUBCASE("idempotent") {
    const MultiModalVolume once = normalize_intensities(ramp({7, 5, 3}, 2, 0.37f));
    CHECK(normalize_intensities(once) == once);
  }
}

TEST_CASE("apply_mask") {
  const MultiModalVolume v = ramp({5, 4, 3}, 2, 0.25f);
  SUBCASE("all ones is the identity") {
    CHECK(apply_mask(v, MaskVolume::Constant(v.dims(), 1, 1)) == v);
  }
  SUBCASE("all zeros clears everything") {
    CHECK((apply_mask(v, MaskVolume({5, 4, 3})).data() == 0.0f).all());
  }
  SUBCASE("one masked voxel changes exactly C scalars") {
    MaskVolume m = MaskVolume::Constant(v.dims(), 1, 1);
    m.at(2, 1, 1) = 0;
    MultiModalVolume w = v;
    w.data() += 1.0f;  // every scalar nonzero
    CHECK((apply_mask(w, m).data() != w.data()).count() == 2);
  }
  SUBCASE("idempotent and complementary") {
    MaskVolume m(v.dims());
    for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = (i % 5) < 2;
    const MultiModalVolume once = apply_mask(v, m);
    CHECK(apply_mask(once, m) == once);
    const MaskVolume inv = invert_mask(m);
    CHECK(count_zeros(m) + count_zeros(inv) == m.size());
    MultiModalVolume sum = once;
    sum.data() += apply_mask(v, inv).data();
    CHECK(sum == v);
  }
  SUBCASE("dimension mismatch") {
    CHECK_THROWS_AS(apply_mask(v, MaskVolume({5, 4, 2})), Error);
  }
}

TEST_CASE("center_crop") {
  MultiModalVolume v = ramp({10, 8, 6}, 2);
  const MultiModalVolume c = center_crop(v, {4, 4, 2});
  CHECK(c.dims() == Dims{4, 4, 2});
  CHECK(c(1, 0, 0, 0) == v(1, 3, 2, 2));
  CHECK(c(0, 3, 3, 1) == v(0, 6, 5, 3));
  CHECK_THROWS_AS(center_crop(v, {11, 8, 6}), ConstraintError);
}
