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

#include "netcm/observables.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "netcm/linalg.hpp"

namespace netcm {

namespace {

std::vector<std::string> others(const std::vector<std::string>& all, const std::vector<std::string>& drop) {
  std::vector<std::string> out;
  for (const auto& l : all)
    if (std::find(drop.begin(), drop.end(), l) == drop.end()) out.push_back(l);
  return out;
}

std::size_t dim_of(const SubsystemLayout& layout, const std::vector<std::string>& labels) {
  std::size_t d = 1;
  for (const auto& l : labels) d *= layout.dims()[layout.index_of(l)];
  return d;
}

// Operator given on `first` factors, padded with identity on every other
// factor of `scope`, returned in scope's layout order.
ComplexMatrix pad_and_permute(const ComplexMatrix& op, const SubsystemLayout& scope,
                              const std::vector<std::string>& first) {
  const auto rest = others(scope.labels(), first);
  std::vector<std::string> order = first;
  order.insert(order.end(), rest.begin(), rest.end());
  const ComplexMatrix full = kron(op, ComplexMatrix::identity(dim_of(scope, rest)));
  if (order == scope.labels()) return full;
  return permute_subsystems(full, scope.reordered(order), scope.labels());
}

}  // namespace

Observable::Observable(ComplexMatrix m, std::string node_label, std::vector<std::string> support,
                       std::string label)
    : matrix(std::move(m)), node(std::move(node_label)), factor_support(std::move(support)), name(std::move(label)) {
  if (!matrix.is_square()) throw DimensionError("Observable: matrix not square");
  const double e = hermiticity_error(matrix);
  if (e > kHermitianTol)
    throw NotHermitianError("Observable '" + name + "' on node " + node + " is not Hermitian (" +
                            std::to_string(e) + ")");
}

ObservableSet::ObservableSet(std::vector<Observable> observables) : obs_(std::move(observables)) {
  std::vector<std::size_t> counts;
  for (const auto& o : obs_) {
    if (nodes_.empty() || nodes_.back() != o.node) {
      if (std::find(nodes_.begin(), nodes_.end(), o.node) != nodes_.end())
        throw std::invalid_argument("ObservableSet: observables of node " + o.node + " are not contiguous");
      nodes_.push_back(o.node);
      counts.push_back(0);
    }
    ++counts.back();
  }
  layout_ = BlockLayout(counts);
}

std::vector<Observable> ObservableSet::node_observables(const std::string& node) const {
  std::vector<Observable> out;
  for (const auto& o : obs_)
    if (o.node == node) out.push_back(o);
  return out;
}

ObservableSet concat(const std::vector<ObservableSet>& parts) {
  std::vector<Observable> all;
  for (const auto& p : parts) all.insert(all.end(), p.observables().begin(), p.observables().end());
  return ObservableSet(std::move(all));
}

OrthogonalBasis::OrthogonalBasis(std::vector<ComplexMatrix> elements) : elems_(std::move(elements)) {
  if (elems_.empty()) throw std::invalid_argument("OrthogonalBasis: empty");
  const std::size_t d = elems_.front().rows();
  if (elems_.size() != d * d) throw DimensionError("OrthogonalBasis: need d^2 elements");
  if (max_abs_diff(elems_.front(), ComplexMatrix::identity(d)) > kTol)
    throw std::invalid_argument("OrthogonalBasis: first element must be the identity");
  for (std::size_t a = 0; a < elems_.size(); ++a) {
    if (elems_[a].rows() != d || !elems_[a].is_square()) throw DimensionError("OrthogonalBasis: shape");
    if (hermiticity_error(elems_[a]) > kTol) throw NotHermitianError("OrthogonalBasis: element not Hermitian");
    for (std::size_t b = a; b < elems_.size(); ++b) {
      const cplx t = trace_of_product(elems_[a], elems_[b]);
      const double want = a == b ? static_cast<double>(d) : 0.0;
      if (std::abs(t - want) > kTol * static_cast<double>(d))
        throw std::invalid_argument("OrthogonalBasis: tr(G_a G_b) != d delta_ab");
    }
  }
}

std::vector<double> OrthogonalBasis::coefficients(const ComplexMatrix& m) const {
  std::vector<double> out;
  out.reserve(elems_.size());
  for (const auto& g : elems_) out.push_back(trace_of_product(g, m).real());
  return out;
}

ComplexMatrix pauli_x() { return {{0, 1}, {1, 0}}; }
ComplexMatrix pauli_y() { return {{0, cplx(0, -1)}, {cplx(0, 1), 0}}; }
ComplexMatrix pauli_z() { return {{1, 0}, {0, -1}}; }

OrthogonalBasis pauli_basis() {
  return OrthogonalBasis({ComplexMatrix::identity(2), pauli_x(), pauli_y(), pauli_z()});
}

OrthogonalBasis orthogonal_basis(std::size_t d) {
  if (d < 2) throw std::invalid_argument("orthogonal_basis: d must be >= 2");
  const double scale = std::sqrt(static_cast<double>(d) / 2.0);
  std::vector<ComplexMatrix> el{ComplexMatrix::identity(d)};
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t k = j + 1; k < d; ++k) {
      ComplexMatrix m(d, d);
      m(j, k) = m(k, j) = scale;
      el.push_back(std::move(m));
    }
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t k = j + 1; k < d; ++k) {
      ComplexMatrix m(d, d);
      m(j, k) = cplx(0, -scale);
      m(k, j) = cplx(0, scale);
      el.push_back(std::move(m));
    }
  for (std::size_t l = 1; l < d; ++l) {
    ComplexMatrix m(d, d);
    const double c = scale * std::sqrt(2.0 / static_cast<double>(l * (l + 1)));
    for (std::size_t j = 0; j < l; ++j) m(j, j) = c;
    m(l, l) = -c * static_cast<double>(l);
    el.push_back(std::move(m));
  }
  return OrthogonalBasis(std::move(el));
}

OrthogonalBasis product_basis(const std::vector<OrthogonalBasis>& factors) {
  if (factors.empty()) throw std::invalid_argument("product_basis: no factors");
  std::vector<ComplexMatrix> el = factors.front().elements();
  for (std::size_t f = 1; f < factors.size(); ++f) {
    std::vector<ComplexMatrix> next;
    for (const auto& a : el)
      for (const auto& b : factors[f].elements()) next.push_back(kron(a, b));
    el = std::move(next);
  }
  return OrthogonalBasis(std::move(el));
}

ComplexMatrix node_operator(const Observable& obs, const SubsystemLayout& layout) {
  const auto factors = layout.node_factors(obs.node);
  const SubsystemLayout scope = layout.subset(factors);
  const auto support = obs.factor_support.empty() ? factors : obs.factor_support;
  for (const auto& f : support)
    if (std::find(factors.begin(), factors.end(), f) == factors.end())
      throw std::invalid_argument("Observable: factor " + f + " does not belong to node " + obs.node);
  if (obs.matrix.rows() != dim_of(layout, support))
    throw DimensionError("Observable on node " + obs.node + " has dimension " +
                         std::to_string(obs.matrix.rows()) + ", expected " +
                         std::to_string(dim_of(layout, support)));
  return pad_and_permute(obs.matrix, scope, support);
}

ComplexMatrix embed(const Observable& obs, const SubsystemLayout& layout) {
  return pad_and_permute(node_operator(obs, layout), layout, layout.node_factors(obs.node));
}

ObservableSet product_observable_set(const std::vector<OrthogonalBasis>& bases, const std::string& node,
                                     const std::vector<std::string>& factors) {
  if (!factors.empty() && factors.size() != bases.size())
    throw DimensionError("product_observable_set: one basis per factor required");
  const OrthogonalBasis b = bases.size() == 1 ? bases.front() : product_basis(bases);
  std::vector<Observable> obs;
  for (std::size_t k = 0; k < b.size(); ++k)
    obs.emplace_back(b[k], node, factors, node + "#" + std::to_string(k));
  return ObservableSet(std::move(obs));
}

ObservableSet full_product_set(const SubsystemLayout& layout) {
  std::vector<ObservableSet> parts;
  for (const auto& node : layout.node_labels()) {
    std::vector<OrthogonalBasis> bases;
    const auto factors = layout.node_factors(node);
    for (const auto& f : factors) bases.push_back(orthogonal_basis(layout.dims()[layout.index_of(f)]));
    parts.push_back(product_observable_set(bases, node, factors));
  }
  return concat(parts);
}

ComplexMatrix reduced_operator(const ComplexMatrix& obs, std::size_t d1, std::size_t d2,
                               const ComplexMatrix& marginal, int keep) {
  if (obs.rows() != d1 * d2 || !obs.is_square()) throw DimensionError("reduced_operator: obs dimension");
  if (keep == 2) {
    if (marginal.rows() != d1) throw DimensionError("reduced_operator: marginal dimension");
    ComplexMatrix out(d2, d2);
    for (std::size_t i = 0; i < d2; ++i)
      for (std::size_t j = 0; j < d2; ++j) {
        cplx s = 0;
        for (std::size_t a = 0; a < d1; ++a)
          for (std::size_t b = 0; b < d1; ++b) s += obs(a * d2 + i, b * d2 + j) * marginal(b, a);
        out(i, j) = s;
      }
    return out;
  }
  if (keep == 1) {
    if (marginal.rows() != d2) throw DimensionError("reduced_operator: marginal dimension");
    ComplexMatrix out(d1, d1);
    for (std::size_t a = 0; a < d1; ++a)
      for (std::size_t b = 0; b < d1; ++b) {
        cplx s = 0;
        for (std::size_t i = 0; i < d2; ++i)
          for (std::size_t j = 0; j < d2; ++j) s += obs(a * d2 + i, b * d2 + j) * marginal(j, i);
        out(a, b) = s;
      }
    return out;
  }
  throw std::invalid_argument("reduced_operator: keep must be 1 or 2");
}

Observable reduced_observable(const Observable& obs, const SubsystemLayout& layout,
                              const DensityOperator& marginal, int keep) {
  const auto support = obs.factor_support.empty() ? layout.node_factors(obs.node) : obs.factor_support;
  if (support.size() != 2) throw DimensionError("reduced_observable: observable must act on two factors");
  const std::size_t d1 = layout.dims()[layout.index_of(support[0])];
  const std::size_t d2 = layout.dims()[layout.index_of(support[1])];
  ComplexMatrix r = reduced_operator(obs.matrix, d1, d2, marginal.matrix(), keep);
  return {hermitian_part(r), obs.node, {support[keep == 2 ? 1 : 0]}, obs.name};
}

RealMatrix orthogonal_from_unitary(const ComplexMatrix& u, const OrthogonalBasis& basis) {
  const std::size_t d = basis.dim();
  if (u.rows() != d || !u.is_square()) throw DimensionError("orthogonal_from_unitary: dimension mismatch");
  if (max_abs_diff(matmul(u.adjoint(), u), ComplexMatrix::identity(d)) > 1e-9)
    throw std::invalid_argument("orthogonal_from_unitary: input is not unitary");
  RealMatrix o(basis.size(), basis.size());
  for (std::size_t a = 0; a < basis.size(); ++a) {
    const ComplexMatrix conj = matmul(u.adjoint(), matmul(basis[a], u));
    for (std::size_t b = 0; b < basis.size(); ++b)
      o(a, b) = trace_of_product(conj, basis[b]).real() / static_cast<double>(d);
  }
  return o;
}

BlockCovarianceMatrix recombine_cm(const BlockCovarianceMatrix& gamma, const RealMatrix& c) {
  if (c.rows() != gamma.dim()) throw DimensionError("recombine_cm: C rows must match the CM dimension");
  const RealMatrix out = congruence(gamma.matrix(), c);
  const auto& lay = gamma.layout();

  std::vector<std::size_t> counts(lay.count(), 0);
  std::size_t current = 0;
  bool per_node = true;
  for (std::size_t j = 0; j < c.cols() && per_node; ++j) {
    std::set<std::size_t> hit;
    for (std::size_t b = 0; b < lay.count(); ++b)
      for (std::size_t i = lay.offset(b); i < lay.offset(b) + lay.size(b); ++i)
        if (c(i, j) != 0.0) hit.insert(b);
    if (hit.size() > 1 || (hit.size() == 1 && *hit.begin() < current)) {
      per_node = false;
    } else {
      if (hit.size() == 1) current = *hit.begin();
      ++counts[current];
    }
  }
  if (per_node && std::all_of(counts.begin(), counts.end(), [](std::size_t n) { return n > 0; }))
    return {out, BlockLayout(counts), gamma.node_labels()};
  std::string joined;
  for (const auto& l : gamma.node_labels()) joined += l;
  return {out, BlockLayout({c.cols()}), {joined}};
}

ObservableSet named_observable_set(const std::string& name, const SubsystemLayout& layout) {
  const auto nodes = layout.node_labels();
  const auto require_qubits = [&] {
    for (const auto& n : nodes)
      if (layout.node_dim(n) != 2)
        throw std::invalid_argument("observable set '" + name + "' needs a qubit at every node; node " + n +
                                    " has dimension " + std::to_string(layout.node_dim(n)));
  };
  std::vector<Observable> obs;
  if (name == "pauli-z") {
    require_qubits();
    for (const auto& n : nodes) obs.emplace_back(pauli_z(), n, std::vector<std::string>{}, "Z" + n);
  } else if (name == "w-set") {
    require_qubits();
    for (const auto& n : nodes) {
      obs.emplace_back(pauli_x(), n, std::vector<std::string>{}, "X" + n);
      obs.emplace_back(pauli_y(), n, std::vector<std::string>{}, "Y" + n);
    }
  } else if (name == "full-product") {
    return full_product_set(layout);
  } else if (name == "cluster-set") {
    require_qubits();
    if (nodes.size() != 4) throw std::invalid_argument("observable set 'cluster-set' needs four nodes");
    const ComplexMatrix ops[4] = {pauli_x(), pauli_z(), pauli_z(), pauli_x()};
    for (std::size_t k = 0; k < 4; ++k) obs.emplace_back(ops[k], nodes[k], std::vector<std::string>{}, nodes[k]);
  } else {
    throw std::invalid_argument("unknown observable set '" + name + "'");
  }
  return ObservableSet(std::move(obs));
}

}  // namespace netcm
