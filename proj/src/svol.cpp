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

#include "svx/svol.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <limits>
#include <vector>

namespace svx {

namespace fs = std::filesystem;
using nlohmann::json;

static_assert(std::endian::native == std::endian::little,
              "SVOL payloads are read and written in host byte order");

namespace {

constexpr const char* kCoreKeys[] = {"dims", "channels", "dtype", "spacing"};

std::vector<char> read_bytes(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("missing file: " + path.string());
  return std::vector<char>(std::istreambuf_iterator<char>(in), {});
}

json parse_json_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("missing file: " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw FormatError("malformed SVOL header " + path.string() + ": " + e.what());
  }
}

template <typename Scalar>
Volume<Scalar> decode(const VolumeMeta& meta, const std::vector<char>& bytes,
                      const fs::path& payload) {
  const auto expected = static_cast<std::size_t>(meta.scalar_count()) * sizeof(Scalar);
  if (bytes.size() != expected) {
    throw FormatError("payload length mismatch in " + payload.string() + ": expected " +
                      std::to_string(expected) + " bytes, found " +
                      std::to_string(bytes.size()));
  }
  typename Volume<Scalar>::Storage data(meta.scalar_count());
  std::memcpy(data.data(), bytes.data(), expected);
  if constexpr (std::is_floating_point_v<Scalar>) {
    if (!data.isFinite().all()) {
      throw FormatError("non-finite value in f32 payload " + payload.string());
    }
  }
  return Volume<Scalar>(meta.dims, meta.channels, meta.spacing, std::move(data));
}

}  // namespace

fs::path svol_stem(const fs::path& path) {
  const auto ext = path.extension();
  if (ext == ".json" || ext == ".bin") {
    fs::path stem = path;
    stem.replace_extension();
    return stem;
  }
  return path;
}

fs::path svol_header_path(const fs::path& path) {
  fs::path p = svol_stem(path);
  p += ".json";
  return p;
}

fs::path svol_payload_path(const fs::path& path) {
  fs::path p = svol_stem(path);
  p += ".bin";
  return p;
}

SvolHeader read_svol_header(const fs::path& path) {
  const fs::path header_path = svol_header_path(path);
  const json j = parse_json_file(header_path);
  SvolHeader header;
  try {
    const auto& dims = j.at("dims");
    if (!dims.is_array() || dims.size() != 3) {
      throw FormatError("SVOL header " + header_path.string() +
                        ": \"dims\" must be a 3-element array");
    }
    for (const auto& d : dims) {
      if (!d.is_number_integer()) {
        throw FormatError("SVOL header " + header_path.string() +
                          ": \"dims\" must hold integers");
      }
    }
    const auto as_axis = [&](const json& d) {
      const auto v = d.get<std::int64_t>();
      if (v <= 0) throw FormatError("non-positive dimension in " + header_path.string());
      if (v > std::numeric_limits<int>::max()) {
        throw FormatError("dimension exceeds 32-bit addressing in " + header_path.string());
      }
      return static_cast<int>(v);
    };
    header.meta.dims = Dims{as_axis(dims[0]), as_axis(dims[1]), as_axis(dims[2])};
    header.meta.channels = j.at("channels").get<int>();
    header.meta.dtype = parse_dtype(j.at("dtype").get<std::string>());
    if (j.contains("spacing")) {
      const auto& sp = j.at("spacing");
      if (!sp.is_array() || sp.size() != 3) {
        throw FormatError("SVOL header " + header_path.string() +
                          ": \"spacing\" must be a 3-element array");
      }
      header.meta.spacing = {sp[0].get<double>(), sp[1].get<double>(), sp[2].get<double>()};
    }
  } catch (const json::exception& e) {
    throw FormatError("malformed SVOL header " + header_path.string() + ": " + e.what());
  }
  header.meta.validate();
  for (const auto& [key, value] : j.items()) {
    if (std::find(std::begin(kCoreKeys), std::end(kCoreKeys), key) == std::end(kCoreKeys)) {
      header.extras[key] = value;
    }
  }
  return header;
}

AnyVolume load_svol(const fs::path& path) {
  const SvolHeader header = read_svol_header(path);
  const fs::path payload = svol_payload_path(path);
  const std::vector<char> bytes = read_bytes(payload);
  switch (header.meta.dtype) {
    case DType::kF32:
      return decode<float>(header.meta, bytes, payload);
    case DType::kU32:
      return decode<std::uint32_t>(header.meta, bytes, payload);
    case DType::kU8:
      return decode<std::uint8_t>(header.meta, bytes, payload);
  }
  throw FormatError("unknown dtype in " + path.string());
}

MultiModalVolume load_image_svol(const fs::path& path) {
  AnyVolume any = load_svol(path);
  if (auto* v = std::get_if<MultiModalVolume>(&any)) return std::move(*v);
  throw FormatError("expected an f32 intensity volume: " + path.string());
}

LabelVolume load_label_svol(const fs::path& path) {
  AnyVolume any = load_svol(path);
  if (auto* v = std::get_if<LabelVolume>(&any)) {
    if (v->channels() != 1) throw FormatError("label volume must have 1 channel: " + path.string());
    return std::move(*v);
  }
  if (auto* v = std::get_if<MaskVolume>(&any)) {
    if (v->channels() != 1) throw FormatError("label volume must have 1 channel: " + path.string());
    return LabelVolume(v->dims(), 1, v->spacing(), v->data().cast<std::uint32_t>());
  }
  throw FormatError("expected an integer label volume: " + path.string());
}

MaskVolume load_mask_svol(const fs::path& path) {
  AnyVolume any = load_svol(path);
  if (auto* v = std::get_if<MaskVolume>(&any)) {
    if ((v->data() > std::uint8_t{1}).any()) {
      throw FormatError("mask holds values other than 0/1: " + path.string());
    }
    return std::move(*v);
  }
  throw FormatError("expected a u8 mask volume: " + path.string());
}

template <typename Scalar>
void save_svol(const Volume<Scalar>& vol, const fs::path& path, const json& extras) {
  const VolumeMeta meta = vol.meta();
  json header = extras.is_object() ? extras : json::object();
  header["dims"] = {meta.dims.x, meta.dims.y, meta.dims.z};
  header["channels"] = meta.channels;
  header["dtype"] = std::string(to_string(meta.dtype));
  header["spacing"] = {meta.spacing[0], meta.spacing[1], meta.spacing[2]};

  const fs::path header_path = svol_header_path(path);
  const fs::path payload_path = svol_payload_path(path);
  {
    std::ofstream out(header_path);
    if (!out) throw IoError("cannot write " + header_path.string());
    out << header.dump(2) << '\n';
    if (!out) throw IoError("cannot write " + header_path.string());
  }
  std::ofstream out(payload_path, std::ios::binary);
  if (!out) throw IoError("cannot write " + payload_path.string());
  out.write(reinterpret_cast<const char*>(vol.data().data()),
            static_cast<std::streamsize>(vol.data().size() * sizeof(Scalar)));
  if (!out) throw IoError("cannot write " + payload_path.string());
}

template void save_svol(const MultiModalVolume&, const fs::path&, const json&);
template void save_svol(const LabelVolume&, const fs::path&, const json&);
template void save_svol(const MaskVolume&, const fs::path&, const json&);

}  // namespace svx
