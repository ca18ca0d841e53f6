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

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace netcm {

/// Topology is not NCDS where an operation requires it.
class NotNcdsError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Nodes plus sources, each source being the set of nodes it connects.
/// Construction enforces: every source names >= 2 distinct known nodes and no
/// source reaches all nodes.
class NetworkTopology {
 public:
  struct Source {
    std::string name;
    std::vector<std::string> nodes;
  };

  NetworkTopology(std::vector<std::string> nodes, std::vector<Source> sources);

  /// Nodes A, B, C; a = {B, C}, b = {C, A}, c = {A, B}.
  static NetworkTopology triangle();
  /// One bipartite source for every node pair, named "s<i><j>".
  static NetworkTopology pairwise(const std::vector<std::string>& nodes);

  const std::vector<std::string>& nodes() const { return nodes_; }
  const std::vector<Source>& sources() const { return sources_; }
  std::size_t node_index(const std::string& node) const;
  bool source_contains(std::size_t source, const std::string& node) const;

  /// Compact text form, e.g. "A,B,C|B,C;C,A;A,B".
  std::string describe() const;

 private:
  std::vector<std::string> nodes_;
  std::vector<Source> sources_;
};

/// True iff every node pair shares at most one source.
bool is_ncds(const NetworkTopology& topology);

/// Parses "triangle", "pairwise:<N>" / "pairwise:<a,b,...>", or an explicit
/// "<nodes>|<src>;<src>;..." with comma-separated node lists.
NetworkTopology parse_topology(const std::string& text);

}  // namespace netcm
