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

#ifndef SVX_NIFTI_HPP_
#define SVX_NIFTI_HPP_

#include <filesystem>

#include "svx/volume.hpp"

namespace svx {

// Read-only NIfTI-1 support for single-file images (`.nii`, `.nii.gz`).
// Honors dim, datatype, bitpix, vox_offset, pixdim and scl_slope/scl_inter;
// qform/sform are ignored and the raw grid order is kept. A 4-D image maps its
// fourth axis onto channels. Supported datatypes: uint8 (2), int16 (4),
// int32 (8), float32 (16), float64 (64).
MultiModalVolume load_nifti_image(const std::filesystem::path& path);

// As above but yields integer labels. Every (scaled) value must be a
// non-negative integer.
LabelVolume load_nifti_labels(const std::filesystem::path& path);

}  // namespace svx

#endif  // SVX_NIFTI_HPP_
