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

#include "svx/volume_ops.hpp"

#include <cmath>
#include <limits>

namespace svx {

std::string to_string(const Dims& dims) {
  return std::to_string(dims.x) + "x" + std::to_string(dims.y) + "x" +
         std::to_string(dims.z);
}

std::string_view to_string(DType dtype) {
  switch (dtype) {
    case DType::kF32:
      return "f32";
    case DType::kU32:
      return "u32";
    case DType::kU8:
      return "u8";
  }
  return "?";
}

DType parse_dtype(std::string_view name) {
  if (name == "f32") return DType::kF32;
  if (name == "u32") return DType::kU32;
  if (name == "u8") return DType::kU8;
  throw FormatError("unknown dtype \"" + std::string(name) + "\"");
}

int dtype_size(DType dtype) { return dtype == DType::kU8 ? 1 : 4; }

void VolumeMeta::validate() const {
  if (!dims.positive()) {
    throw FormatError("non-positive dimension " + to_string(dims));
  }
  if (channels < 1) {
    throw FormatError("non-positive channel count " + std::to_string(channels));
  }
  if (dims.voxels() > std::numeric_limits<std::uint32_t>::max()) {
    throw FormatError("volume " + to_string(dims) + " exceeds 32-bit voxel addressing");
  }
}

MultiModalVolume normalize_intensities(const MultiModalVolume& vol) {
  MultiModalVolume out = vol;
  for (int c = 0; c < vol.channels(); ++c) {
    auto in = vol.channel(c);
    auto dst = out.channel(c);
    const double lo = in.minCoeff();
    const double hi = in.maxCoeff();
    if (!(hi > lo)) {
      dst.setZero();
      continue;
    }
    const double range = hi - lo;
    dst = ((in.template cast<double>() - lo) / range).template cast<float>();
  }
  return out;
}

bool is_normalized(const MultiModalVolume& vol, double tolerance) {
  if (vol.size() == 0) return true;
  const double lo = vol.data().minCoeff();
  const double hi = vol.data().maxCoeff();
  return lo >= -tolerance && hi <= 1.0 + tolerance;
}

MultiModalVolume apply_mask(const MultiModalVolume& vol, const MaskVolume& mask) {
  if (vol.dims() != mask.dims()) {
    throw ConstraintError("dimension mismatch: volume " + to_string(vol.dims()) +
                          " vs mask " + to_string(mask.dims()));
  }
  MultiModalVolume out(vol.dims(), vol.channels(), vol.spacing());
  const auto keep = mask.data() != std::uint8_t{0};
  for (int c = 0; c < vol.channels(); ++c) {
    out.channel(c) = keep.select(vol.channel(c), 0.0f);
  }
  return out;
}

MaskVolume invert_mask(const MaskVolume& mask) {
  MaskVolume out(mask.dims(), 1, mask.spacing());
  out.data() = (mask.data() == std::uint8_t{0}).cast<std::uint8_t>();
  return out;
}

Eigen::Index count_zeros(const MaskVolume& mask) {
  return (mask.data() == std::uint8_t{0}).count();
}

Eigen::Index count_nonzero(const MaskVolume& mask) {
  return (mask.data() != std::uint8_t{0}).count();
}

}  // namespace svx
