// Copyright 2026 The netcm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "netcm/ncmx.hpp"

#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace netcm {

namespace {

constexpr std::array<char, 4> kMagic{'N', 'C', 'M', 'X'};
// Guards against absurd headers before allocating.
constexpr std::uint64_t kMaxEntries = std::uint64_t{1} << 32;

template <class U>
void put_le(std::ostream& out, U value) {
  std::array<char, sizeof(U)> bytes;
  for (std::size_t k = 0; k < sizeof(U); ++k) {
    bytes[k] = static_cast<char>(value & 0xFF);
    value = static_cast<U>(value >> 8);
  }
  out.write(bytes.data(), bytes.size());
}

template <class U>
U get_le(std::istream& in) {
  std::array<unsigned char, sizeof(U)> bytes;
  if (!in.read(reinterpret_cast<char*>(bytes.data()), bytes.size()))
    throw FormatError("NCMX: truncated stream");
  U value = 0;
  for (std::size_t k = sizeof(U); k-- > 0;) value = static_cast<U>((value << 8) | bytes[k]);
  return value;
}

void put_f64(std::ostream& out, double v) { put_le(out, std::bit_cast<std::uint64_t>(v)); }
double get_f64(std::istream& in) { return std::bit_cast<double>(get_le<std::uint64_t>(in)); }

}  // namespace

void write_ncmx(std::ostream& out, const ComplexMatrix& m) {
  out.write(kMagic.data(), kMagic.size());
  put_le<std::uint32_t>(out, kNcmxVersion);
  put_le<std::uint64_t>(out, m.rows());
  put_le<std::uint64_t>(out, m.cols());
  for (const auto& v : m.values()) {
    put_f64(out, v.real());
    put_f64(out, v.imag());
  }
  if (!out) throw IoError("NCMX: write failed");
}

ComplexMatrix read_ncmx(std::istream& in) {
  std::array<char, 4> magic{};
  if (!in.read(magic.data(), magic.size()) || magic != kMagic)
    throw FormatError("NCMX: bad magic bytes");
  const auto version = get_le<std::uint32_t>(in);
  if (version != kNcmxVersion)
    throw FormatError("NCMX: unsupported version " + std::to_string(version));
  const auto rows = get_le<std::uint64_t>(in);
  const auto cols = get_le<std::uint64_t>(in);
  if (cols != 0 && rows > kMaxEntries / cols) throw FormatError("NCMX: dimensions too large");
  ComplexMatrix m(rows, cols);
  for (auto& v : m.values()) {
    const double re = get_f64(in);
    const double im = get_f64(in);
    v = {re, im};
  }
  return m;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + tmp.string() + "' for writing");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw IoError("write to '" + tmp.string() + "' failed");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("cannot move '" + tmp.string() + "' into place: " + ec.message());
}

void save_ncmx(const std::filesystem::path& path, const ComplexMatrix& m) {
  std::ostringstream buf(std::ios::binary);
  write_ncmx(buf, m);
  write_file_atomic(path, buf.str());
}

ComplexMatrix load_ncmx(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  return read_ncmx(in);
}

}  // namespace netcm
