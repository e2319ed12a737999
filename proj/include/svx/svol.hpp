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

#ifndef SVX_SVOL_HPP_
#define SVX_SVOL_HPP_

#include <filesystem>
#include <variant>

#include <json.hpp>

#include "svx/volume.hpp"

namespace svx {

// SVOL: a `<name>.json` header ({"dims":[X,Y,Z], "channels":C,
// "dtype":"f32"|"u32"|"u8", "spacing":[sx,sy,sz]}, plus optional extra keys)
// next to a `<name>.bin` little-endian payload in volume storage order.

struct SvolHeader {
  VolumeMeta meta;
  nlohmann::json extras = nlohmann::json::object();  // keys beyond the core four
};

using AnyVolume = std::variant<MultiModalVolume, LabelVolume, MaskVolume>;

// Accepts `<name>`, `<name>.json` or `<name>.bin` and returns `<name>`.
std::filesystem::path svol_stem(const std::filesystem::path& path);
std::filesystem::path svol_header_path(const std::filesystem::path& path);
std::filesystem::path svol_payload_path(const std::filesystem::path& path);

SvolHeader read_svol_header(const std::filesystem::path& path);

AnyVolume load_svol(const std::filesystem::path& path);

// Typed loaders. load_label_svol widens u8 to u32; the others require the
// stored dtype to match.
MultiModalVolume load_image_svol(const std::filesystem::path& path);
LabelVolume load_label_svol(const std::filesystem::path& path);
MaskVolume load_mask_svol(const std::filesystem::path& path);

template <typename Scalar>
void save_svol(const Volume<Scalar>& vol, const std::filesystem::path& path,
               const nlohmann::json& extras = nlohmann::json::object());

}  // namespace svx

#endif  // SVX_SVOL_HPP_
