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

#include "netcm/topology.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace netcm {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  return out;
}

std::string join(const std::vector<std::string>& v, char sep) {
  std::string out;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (k != 0) out += sep;
    out += v[k];
  }
  return out;
}

}  // namespace

NetworkTopology::NetworkTopology(std::vector<std::string> nodes, std::vector<Source> sources)
    : nodes_(std::move(nodes)), sources_(std::move(sources)) {
  std::set<std::string> node_set(nodes_.begin(), nodes_.end());
  if (node_set.size() != nodes_.size()) throw std::invalid_argument("topology: duplicate node label");
  for (const auto& s : sources_) {
    std::set<std::string> members(s.nodes.begin(), s.nodes.end());
    if (members.size() != s.nodes.size())
      throw std::invalid_argument("topology: source '" + s.name + "' repeats a node");
    if (members.size() < 2)
      throw std::invalid_argument("topology: source '" + s.name + "' must connect >= 2 nodes");
    for (const auto& n : members)
      if (node_set.count(n) == 0)
        throw std::invalid_argument("topology: source '" + s.name + "' names unknown node '" + n + "'");
    if (members.size() == nodes_.size())
      throw std::invalid_argument("topology: source '" + s.name +
                                  "' reaches every node; sources may reach at most N-1 nodes");
  }
}

NetworkTopology NetworkTopology::triangle() {
  return {{"A", "B", "C"}, {{"a", {"B", "C"}}, {"b", {"C", "A"}}, {"c", {"A", "B"}}}};
}

NetworkTopology NetworkTopology::pairwise(const std::vector<std::string>& nodes) {
  std::vector<Source> sources;
  for (std::size_t i = 0; i < nodes.size(); ++i)
    for (std::size_t j = i + 1; j < nodes.size(); ++j)
      sources.push_back({"s" + nodes[i] + nodes[j], {nodes[i], nodes[j]}});
  return {nodes, std::move(sources)};
}

std::size_t NetworkTopology::node_index(const std::string& node) const {
  const auto it = std::find(nodes_.begin(), nodes_.end(), node);
  if (it == nodes_.end()) throw std::out_of_range("topology: unknown node '" + node + "'");
  return static_cast<std::size_t>(it - nodes_.begin());
}

bool NetworkTopology::source_contains(std::size_t source, const std::string& node) const {
  const auto& members = sources_.at(source).nodes;
  return std::find(members.begin(), members.end(), node) != members.end();
}

std::string NetworkTopology::describe() const {
  std::string out = join(nodes_, ',') + "|";
  for (std::size_t k = 0; k < sources_.size(); ++k) {
    if (k != 0) out += ';';
    out += join(sources_[k].nodes, ',');
  }
  return out;
}

bool is_ncds(const NetworkTopology& topology) {
  const auto& nodes = topology.nodes();
  for (std::size_t i = 0; i < nodes.size(); ++i)
    for (std::size_t j = i + 1; j < nodes.size(); ++j) {
      std::size_t shared = 0;
      for (std::size_t s = 0; s < topology.sources().size(); ++s)
        if (topology.source_contains(s, nodes[i]) && topology.source_contains(s, nodes[j])) ++shared;
      if (shared > 1) return false;
    }
  return true;
}

NetworkTopology parse_topology(const std::string& text) {
  if (text == "triangle") return NetworkTopology::triangle();
  if (text.rfind("pairwise:", 0) == 0) {
    const std::string arg = text.substr(9);
    std::vector<std::string> nodes;
    if (!arg.empty() && std::all_of(arg.begin(), arg.end(), ::isdigit)) {
      const int n = std::stoi(arg);
      if (n < 3) throw std::invalid_argument("topology: pairwise needs at least 3 nodes");
      for (int k = 1; k <= n; ++k) nodes.push_back(std::to_string(k));
    } else {
      nodes = split(arg, ',');
    }
    return NetworkTopology::pairwise(nodes);
  }
  const auto bar = text.find('|');
  if (bar == std::string::npos)
    throw std::invalid_argument("topology: expected 'triangle', 'pairwise:N' or 'nodes|src;src'");
  const auto nodes = split(text.substr(0, bar), ',');
  std::vector<NetworkTopology::Source> sources;
  const auto parts = split(text.substr(bar + 1), ';');
  for (std::size_t k = 0; k < parts.size(); ++k) {
    std::string name(1, static_cast<char>('a' + static_cast<int>(k % 26)));
    if (k >= 26) name += std::to_string(k / 26);
    sources.push_back({name, split(parts[k], ',')});
  }
  return {nodes, std::move(sources)};
}

}  // namespace netcm
