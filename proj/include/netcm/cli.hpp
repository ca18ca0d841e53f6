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

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace netcm::cli {

// Process exit codes.
inline constexpr int kExitSatisfied = 0;
inline constexpr int kExitViolated = 1;
inline constexpr int kExitInconclusive = 2;
inline constexpr int kExitUsage = 64;     // malformed spec or flags
inline constexpr int kExitData = 65;      // input data violates an invariant
inline constexpr int kExitInternal = 70;
inline constexpr int kExitIo = 74;

/// Runs one command line (args excludes the program name). Reports go to
/// `out` unless --output names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// NETCM_THREADS if set (must be a positive integer), else the hardware
/// concurrency (at least 1). Throws SpecError on a malformed value.
unsigned thread_budget();

}  // namespace netcm::cli
