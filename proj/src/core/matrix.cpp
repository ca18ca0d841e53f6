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

#include "netcm/matrix.hpp"

#include <numeric>
#include <set>

namespace netcm {

RealMatrix real_part(const ComplexMatrix& m) {
  RealMatrix r(m.rows(), m.cols());
  for (std::size_t k = 0; k < m.size(); ++k) r.values()[k] = m.values()[k].real();
  return r;
}

RealMatrix imag_part(const ComplexMatrix& m) {
  RealMatrix r(m.rows(), m.cols());
  for (std::size_t k = 0; k < m.size(); ++k) r.values()[k] = m.values()[k].imag();
  return r;
}

ComplexMatrix to_complex(const RealMatrix& m) {
  ComplexMatrix c(m.rows(), m.cols());
  for (std::size_t k = 0; k < m.size(); ++k) c.values()[k] = m.values()[k];
  return c;
}

BlockLayout::BlockLayout(std::vector<std::size_t> block_sizes) : sizes_(std::move(block_sizes)) {
  offsets_.resize(sizes_.size() + 1, 0);
  for (std::size_t b = 0; b < sizes_.size(); ++b) {
    if (sizes_[b] == 0) throw std::invalid_argument("BlockLayout: block sizes must be positive");
    offsets_[b + 1] = offsets_[b] + sizes_[b];
  }
}

SubsystemLayout::SubsystemLayout(std::vector<std::size_t> dims, std::vector<std::string> labels)
    : SubsystemLayout(dims, labels, labels) {}

SubsystemLayout::SubsystemLayout(std::vector<std::size_t> dims, std::vector<std::string> labels,
                                 std::vector<std::string> nodes)
    : dims_(std::move(dims)), labels_(std::move(labels)), nodes_(std::move(nodes)) {
  if (dims_.size() != labels_.size() || dims_.size() != nodes_.size())
    throw DimensionError("SubsystemLayout: dims, labels and nodes must have equal length");
  std::set<std::string> seen;
  for (std::size_t k = 0; k < dims_.size(); ++k) {
    if (dims_[k] == 0) throw std::invalid_argument("SubsystemLayout: zero dimension");
    if (!seen.insert(labels_[k]).second)
      throw std::invalid_argument("SubsystemLayout: duplicate label '" + labels_[k] + "'");
  }
}

std::size_t SubsystemLayout::total_dim() const {
  return std::accumulate(dims_.begin(), dims_.end(), std::size_t{1}, std::multiplies<>());
}

std::size_t SubsystemLayout::index_of(const std::string& label) const {
  for (std::size_t k = 0; k < labels_.size(); ++k)
    if (labels_[k] == label) return k;
  throw std::out_of_range("unknown subsystem label '" + label + "'");
}

bool SubsystemLayout::has_label(const std::string& label) const {
  return std::find(labels_.begin(), labels_.end(), label) != labels_.end();
}

std::vector<std::string> SubsystemLayout::node_labels() const {
  std::vector<std::string> out;
  for (const auto& n : nodes_)
    if (std::find(out.begin(), out.end(), n) == out.end()) out.push_back(n);
  return out;
}

std::vector<std::string> SubsystemLayout::node_factors(const std::string& node) const {
  std::vector<std::string> out;
  for (std::size_t k = 0; k < nodes_.size(); ++k)
    if (nodes_[k] == node) out.push_back(labels_[k]);
  if (out.empty()) throw std::out_of_range("unknown node '" + node + "'");
  return out;
}

std::size_t SubsystemLayout::node_dim(const std::string& node) const {
  std::size_t d = 1;
  for (const auto& f : node_factors(node)) d *= dims_[index_of(f)];
  return d;
}

SubsystemLayout SubsystemLayout::subset(const std::vector<std::string>& keep) const {
  for (const auto& k : keep) (void)index_of(k);
  std::vector<std::size_t> d;
  std::vector<std::string> l, n;
  for (std::size_t k = 0; k < labels_.size(); ++k) {
    if (std::find(keep.begin(), keep.end(), labels_[k]) == keep.end()) continue;
    d.push_back(dims_[k]);
    l.push_back(labels_[k]);
    n.push_back(nodes_[k]);
  }
  return {std::move(d), std::move(l), std::move(n)};
}

SubsystemLayout SubsystemLayout::reordered(const std::vector<std::string>& new_order) const {
  if (new_order.size() != labels_.size())
    throw std::invalid_argument("reordered: new order is not a permutation of the layout labels");
  std::vector<std::size_t> d;
  std::vector<std::string> n;
  std::set<std::string> seen;
  for (const auto& l : new_order) {
    if (!seen.insert(l).second || !has_label(l))
      throw std::invalid_argument("reordered: new order is not a permutation of the layout labels");
    const auto k = index_of(l);
    d.push_back(dims_[k]);
    n.push_back(nodes_[k]);
  }
  return {std::move(d), new_order, std::move(n)};
}

}  // namespace netcm
