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

#ifndef SVX_VOLUME_OPS_HPP_
#define SVX_VOLUME_OPS_HPP_

#include "svx/volume.hpp"

namespace svx {

// Per-channel min-max rescale to [0, 1]. A constant channel maps to zeros.
MultiModalVolume normalize_intensities(const MultiModalVolume& vol);

// True when every value lies in [-tolerance, 1 + tolerance].
bool is_normalized(const MultiModalVolume& vol, double tolerance = 1e-6);

// Keeps voxels where mask == 1 and zeroes them, in every channel, where
// mask == 0.
MultiModalVolume apply_mask(const MultiModalVolume& vol, const MaskVolume& mask);

MaskVolume invert_mask(const MaskVolume& mask);

Eigen::Index count_zeros(const MaskVolume& mask);
Eigen::Index count_nonzero(const MaskVolume& mask);

// Crops the central `size` block. Odd leftovers go to the high side.
template <typename Scalar>
Volume<Scalar> center_crop(const Volume<Scalar>& vol, Dims size) {
  const Dims& in = vol.dims();
  if (!size.positive() || size.x > in.x || size.y > in.y || size.z > in.z) {
    throw ConstraintError("crop size " + to_string(size) + " does not fit in " +
                          to_string(in));
  }
  const int ox = (in.x - size.x) / 2;
  const int oy = (in.y - size.y) / 2;
  const int oz = (in.z - size.z) / 2;
  Volume<Scalar> out(size, vol.channels(), vol.spacing());
  for (int c = 0; c < vol.channels(); ++c) {
    for (int z = 0; z < size.z; ++z) {
      for (int y = 0; y < size.y; ++y) {
        const Eigen::Index src = vol.index(c, ox, oy + y, oz + z);
        const Eigen::Index dst = out.index(c, 0, y, z);
        out.data().segment(dst, size.x) = vol.data().segment(src, size.x);
      }
    }
  }
  return out;
}

}  // namespace svx

#endif  // SVX_VOLUME_OPS_HPP_
