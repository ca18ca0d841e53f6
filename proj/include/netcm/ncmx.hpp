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

// NCMX binary matrix format:
//   "NCMX" | u32 version = 1 | u64 rows | u64 cols | rows*cols x (f64 re, f64 im)
// All integers and floats little-endian; entries row-major.

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include "netcm/matrix.hpp"

namespace netcm {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed NCMX content (bad magic, unsupported version, truncated data).
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::uint32_t kNcmxVersion = 1;

void write_ncmx(std::ostream& out, const ComplexMatrix& m);
ComplexMatrix read_ncmx(std::istream& in);

/// Written to a temporary sibling and renamed into place.
void save_ncmx(const std::filesystem::path& path, const ComplexMatrix& m);
ComplexMatrix load_ncmx(const std::filesystem::path& path);

/// Replace `path` with `contents` via a temporary file and rename.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

}  // namespace netcm
