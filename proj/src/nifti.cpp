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

#include "svx/nifti.hpp"

#include <zlib.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <limits>
#include <vector>

namespace svx {

namespace fs = std::filesystem;

namespace {

constexpr std::size_t kHeaderSize = 348;

enum NiftiType : std::int16_t {
  kUint8 = 2,
  kInt16 = 4,
  kInt32 = 8,
  kFloat32 = 16,
  kFloat64 = 64,
};

struct RawNifti {
  Dims dims;
  int channels = 1;
  Spacing spacing = {1.0, 1.0, 1.0};
  std::vector<double> values;  // scaled, storage order
};

bool ends_with(const std::string& s, std::string_view suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

std::vector<unsigned char> read_file(const fs::path& path) {
  if (!fs::exists(path)) throw IoError("missing file: " + path.string());
  if (ends_with(path.string(), ".gz")) {
    gzFile gz = gzopen(path.string().c_str(), "rb");
    if (gz == nullptr) throw IoError("cannot open " + path.string());
    std::vector<unsigned char> bytes;
    unsigned char buffer[1 << 16];
    int n = 0;
    while ((n = gzread(gz, buffer, sizeof(buffer))) > 0) {
      bytes.insert(bytes.end(), buffer, buffer + n);
    }
    int errnum = Z_OK;
    const char* message = gzerror(gz, &errnum);
    gzclose(gz);
    if (n < 0 || (errnum != Z_OK && errnum != Z_STREAM_END)) {
      throw FormatError("corrupt gzip stream in " + path.string() + ": " + message);
    }
    return bytes;
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return std::vector<unsigned char>(std::istreambuf_iterator<char>(in), {});
}

class HeaderReader {
 public:
  HeaderReader(const unsigned char* bytes, bool swap) : bytes_(bytes), swap_(swap) {}

  template <typename T>
  T get(std::size_t offset) const {
    unsigned char raw[sizeof(T)];
    std::memcpy(raw, bytes_ + offset, sizeof(T));
    if (swap_) std::reverse(raw, raw + sizeof(T));
    T value;
    std::memcpy(&value, raw, sizeof(T));
    return value;
  }

 private:
  const unsigned char* bytes_;
  bool swap_;
};

template <typename T>
double read_scalar(const unsigned char* p, bool swap) {
  unsigned char raw[sizeof(T)];
  std::memcpy(raw, p, sizeof(T));
  if (swap) std::reverse(raw, raw + sizeof(T));
  T value;
  std::memcpy(&value, raw, sizeof(T));
  return static_cast<double>(value);
}

RawNifti read_nifti(const fs::path& path) {
  const std::vector<unsigned char> bytes = read_file(path);
  if (bytes.size() < kHeaderSize) {
    throw FormatError("truncated NIfTI header in " + path.string());
  }

  std::int32_t sizeof_hdr = 0;
  std::memcpy(&sizeof_hdr, bytes.data(), sizeof(sizeof_hdr));
  bool swap = false;
  if (sizeof_hdr != static_cast<std::int32_t>(kHeaderSize)) {
    std::int32_t swapped = 0;
    unsigned char raw[4];
    std::memcpy(raw, bytes.data(), 4);
    std::reverse(raw, raw + 4);
    std::memcpy(&swapped, raw, 4);
    if (swapped != static_cast<std::int32_t>(kHeaderSize)) {
      throw FormatError("bad magic: sizeof_hdr is not 348 in " + path.string());
    }
    swap = true;
  }

  const char* magic = reinterpret_cast<const char*>(bytes.data() + 344);
  if (std::memcmp(magic, "ni1\0", 4) == 0) {
    throw FormatError("unsupported NIfTI variant (two-file .hdr/.img) in " + path.string());
  }
  if (std::memcmp(magic, "n+1\0", 4) != 0) {
    throw FormatError("bad magic in " + path.string());
  }

  const HeaderReader h(bytes.data(), swap);
  std::int16_t dim[8];
  for (int i = 0; i < 8; ++i) dim[i] = h.get<std::int16_t>(40 + 2 * i);
  if (dim[0] != 3 && dim[0] != 4) {
    throw FormatError("unsupported dimensionality dim[0]=" + std::to_string(dim[0]) +
                      " in " + path.string());
  }
  const std::int16_t datatype = h.get<std::int16_t>(70);
  const std::int16_t bitpix = h.get<std::int16_t>(72);
  const float vox_offset = h.get<float>(108);
  const float slope = h.get<float>(112);
  const float inter = h.get<float>(116);

  int bytes_per_voxel = 0;
  switch (datatype) {
    case kUint8: bytes_per_voxel = 1; break;
    case kInt16: bytes_per_voxel = 2; break;
    case kInt32: bytes_per_voxel = 4; break;
    case kFloat32: bytes_per_voxel = 4; break;
    case kFloat64: bytes_per_voxel = 8; break;
    default:
      throw FormatError("unsupported datatype " + std::to_string(datatype) + " in " +
                        path.string());
  }
  if (bitpix != 8 * bytes_per_voxel) {
    throw FormatError("bitpix " + std::to_string(bitpix) + " disagrees with datatype " +
                      std::to_string(datatype) + " in " + path.string());
  }

  RawNifti raw;
  raw.dims = Dims{dim[1], dim[2], dim[3]};
  raw.channels = dim[0] == 4 ? dim[4] : 1;
  if (!raw.dims.positive() || raw.channels < 1) {
    throw FormatError("non-positive dimension in " + path.string());
  }
  for (int a = 0; a < 3; ++a) {
    const float p = h.get<float>(76 + 4 * (a + 1));
    if (std::isfinite(p) && p > 0.0f) raw.spacing[a] = p;
  }

  if (!std::isfinite(vox_offset) || vox_offset < static_cast<float>(kHeaderSize)) {
    throw FormatError("invalid vox_offset in " + path.string());
  }
  const auto offset = static_cast<std::size_t>(vox_offset);
  const auto count = static_cast<std::size_t>(raw.dims.voxels()) * raw.channels;
  if (offset + count * bytes_per_voxel > bytes.size()) {
    throw FormatError("truncated payload in " + path.string() + ": need " +
                      std::to_string(offset + count * bytes_per_voxel) + " bytes, have " +
                      std::to_string(bytes.size()));
  }

  const bool scaled = std::isfinite(slope) && slope != 0.0f;
  raw.values.resize(count);
  const unsigned char* p = bytes.data() + offset;
  for (std::size_t i = 0; i < count; ++i, p += bytes_per_voxel) {
    double v = 0.0;
    switch (datatype) {
      case kUint8: v = *p; break;
      case kInt16: v = read_scalar<std::int16_t>(p, swap); break;
      case kInt32: v = read_scalar<std::int32_t>(p, swap); break;
      case kFloat32: v = read_scalar<float>(p, swap); break;
      case kFloat64: v = read_scalar<double>(p, swap); break;
    }
    if (scaled) v = v * slope + inter;
    raw.values[i] = v;
  }
  return raw;
}

}  // namespace

MultiModalVolume load_nifti_image(const fs::path& path) {
  RawNifti raw = read_nifti(path);
  MultiModalVolume::Storage data(static_cast<Eigen::Index>(raw.values.size()));
  for (std::size_t i = 0; i < raw.values.size(); ++i) {
    const auto v = static_cast<float>(raw.values[i]);
    if (!std::isfinite(v)) throw FormatError("non-finite intensity in " + path.string());
    data[static_cast<Eigen::Index>(i)] = v;
  }
  return MultiModalVolume(raw.dims, raw.channels, raw.spacing, std::move(data));
}

LabelVolume load_nifti_labels(const fs::path& path) {
  RawNifti raw = read_nifti(path);
  if (raw.channels != 1) {
    throw FormatError("label image must be 3-D, got " + std::to_string(raw.channels) +
                      " volumes in " + path.string());
  }
  LabelVolume::Storage data(static_cast<Eigen::Index>(raw.values.size()));
  for (std::size_t i = 0; i < raw.values.size(); ++i) {
    const double v = raw.values[i];
    if (!(v >= 0.0) || v != std::floor(v) ||
        v > std::numeric_limits<std::uint32_t>::max()) {
      throw FormatError("label value " + std::to_string(v) +
                        " is not a non-negative integer in " + path.string());
    }
    data[static_cast<Eigen::Index>(i)] = static_cast<std::uint32_t>(v);
  }
  return LabelVolume(raw.dims, 1, raw.spacing, std::move(data));
}

}  // namespace svx
