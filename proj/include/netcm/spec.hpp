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

#include <filesystem>
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "netcm/states.hpp"
#include "netcm/topology.hpp"

namespace netcm {

using Json = nlohmann::ordered_json;

/// A state, observable or topology spec that does not follow its grammar.
class SpecError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// State spec grammar:
///   {"family": "ghz|w|dicke|cluster4|bell|btn|file", "params": {...}, "visibility": v}
/// params per family
///   ghz:  parties (3), dim (2), levels ([0,1], or "all")
///   dicke: k (required)
///   bell: dim (2)
///   btn:  sources {"a": src, "b": src, "c": src}, each a bipartite spec:
///         bell, file with two dims, or {"family": "random", "params": {"dim", "seed"}}
///   file: path (NCMX), dims (per node: an int, or a list of factor dims), labels (optional)
///   w, cluster4: none
/// Unknown keys are rejected. Returns the spec with every default filled in.
Json normalize_state_spec(const Json& spec);

/// Builds the state of a (normalized or raw) spec. Relative file paths
/// resolve against base_dir.
DensityOperator build_state(const Json& spec, const std::filesystem::path& base_dir = {});

/// The three BTN sources of a btn spec (a, b, c), with per-source visibility
/// applied; the global visibility must be 1.
std::vector<DensityOperator> build_btn_sources(const Json& spec, const std::filesystem::path& base_dir = {});

/// parse_topology with SpecError on failure.
NetworkTopology parse_topology_spec(const std::string& text);

/// "2x2" -> {2, 2}.
std::pair<std::size_t, std::size_t> parse_split(const std::string& text);

}  // namespace netcm
