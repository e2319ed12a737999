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

#ifndef SVX_VOLUME_HPP_
#define SVX_VOLUME_HPP_

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>

#include <Eigen/Core>

#include "svx/error.hpp"

namespace svx {

struct Dims {
  int x = 0;
  int y = 0;
  int z = 0;

  Eigen::Index voxels() const {
    return static_cast<Eigen::Index>(x) * y * z;
  }
  bool positive() const { return x > 0 && y > 0 && z > 0; }
  int operator[](int axis) const { return axis == 0 ? x : (axis == 1 ? y : z); }

  friend bool operator==(const Dims&, const Dims&) = default;
};

std::string to_string(const Dims& dims);

using Spacing = std::array<double, 3>;

enum class DType { kF32, kU32, kU8 };

std::string_view to_string(DType dtype);
DType parse_dtype(std::string_view name);  // throws FormatError
int dtype_size(DType dtype);

template <typename Scalar>
struct DTypeOf;
template <>
struct DTypeOf<float> {
  static constexpr DType value = DType::kF32;
};
template <>
struct DTypeOf<std::uint32_t> {
  static constexpr DType value = DType::kU32;
};
template <>
struct DTypeOf<std::uint8_t> {
  static constexpr DType value = DType::kU8;
};

struct VolumeMeta {
  Dims dims;
  int channels = 1;
  DType dtype = DType::kF32;
  Spacing spacing = {1.0, 1.0, 1.0};

  Eigen::Index scalar_count() const { return dims.voxels() * channels; }

  // Throws FormatError naming the violated invariant.
  void validate() const;

  friend bool operator==(const VolumeMeta&, const VolumeMeta&) = default;
};

// Dense C-channel scalar field. Storage is channel-major, then z, then y, with
// x fastest: index ((c*Z + z)*Y + y)*X + x.
template <typename Scalar>
class Volume {
 public:
  using Storage = Eigen::Array<Scalar, Eigen::Dynamic, 1>;
  using ChannelMap = Eigen::Map<Storage>;
  using ConstChannelMap = Eigen::Map<const Storage>;

  Volume() = default;

  explicit Volume(Dims dims, int channels = 1, Spacing spacing = {1.0, 1.0, 1.0})
      : dims_(dims), channels_(channels), spacing_(spacing) {
    meta().validate();
    data_ = Storage::Zero(meta().scalar_count());
  }

  Volume(Dims dims, int channels, Spacing spacing, Storage data)
      : dims_(dims), channels_(channels), spacing_(spacing), data_(std::move(data)) {
    meta().validate();
    if (data_.size() != meta().scalar_count()) {
      throw FormatError("payload length mismatch: expected " +
                        std::to_string(meta().scalar_count()) + " scalars, got " +
                        std::to_string(data_.size()));
    }
  }

  static Volume Constant(Dims dims, int channels, Scalar value) {
    Volume v(dims, channels);
    v.data_.setConstant(value);
    return v;
  }

  const Dims& dims() const { return dims_; }
  int channels() const { return channels_; }
  const Spacing& spacing() const { return spacing_; }
  void set_spacing(const Spacing& spacing) { spacing_ = spacing; }
  VolumeMeta meta() const {
    return VolumeMeta{dims_, channels_, DTypeOf<Scalar>::value, spacing_};
  }

  Eigen::Index voxel_count() const { return dims_.voxels(); }
  Eigen::Index size() const { return data_.size(); }

  Eigen::Index voxel_index(int x, int y, int z) const {
    return (static_cast<Eigen::Index>(z) * dims_.y + y) * dims_.x + x;
  }
  Eigen::Index index(int c, int x, int y, int z) const {
    return static_cast<Eigen::Index>(c) * voxel_count() + voxel_index(x, y, z);
  }

  Scalar& operator()(int c, int x, int y, int z) { return data_[index(c, x, y, z)]; }
  Scalar operator()(int c, int x, int y, int z) const {
    return data_[index(c, x, y, z)];
  }
  // Single-channel shorthand.
  Scalar& at(int x, int y, int z) { return data_[voxel_index(x, y, z)]; }
  Scalar at(int x, int y, int z) const { return data_[voxel_index(x, y, z)]; }

  ChannelMap channel(int c) {
    return ChannelMap(data_.data() + c * voxel_count(), voxel_count());
  }
  ConstChannelMap channel(int c) const {
    return ConstChannelMap(data_.data() + c * voxel_count(), voxel_count());
  }

  Storage& data() { return data_; }
  const Storage& data() const { return data_; }

  friend bool operator==(const Volume& a, const Volume& b) {
    return a.dims_ == b.dims_ && a.channels_ == b.channels_ &&
           a.spacing_ == b.spacing_ && a.data_.size() == b.data_.size() &&
           (a.data_ == b.data_).all();
  }

 private:
  Dims dims_;
  int channels_ = 1;
  Spacing spacing_ = {1.0, 1.0, 1.0};
  Storage data_;
};

using MultiModalVolume = Volume<float>;
using LabelVolume = Volume<std::uint32_t>;
// Binary field; the inpainting convention is 0 inside the masked region.
using MaskVolume = Volume<std::uint8_t>;

// Decomposes a voxel index into (x, y, z).
inline std::array<int, 3> voxel_coords(const Dims& dims, Eigen::Index v) {
  const int x = static_cast<int>(v % dims.x);
  const Eigen::Index rest = v / dims.x;
  return {x, static_cast<int>(rest % dims.y), static_cast<int>(rest / dims.y)};
}

}  // namespace svx

#endif  // SVX_VOLUME_HPP_
