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

// Local observables, orthogonal operator bases and their recombinations.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "netcm/block_cm.hpp"
#include "netcm/matrix.hpp"
#include "netcm/states.hpp"

namespace netcm {

/// Hermitian operator on one node. With an empty factor_support it acts on
/// the whole node (all of the node's factors, layout order); otherwise on the
/// listed factors of that node, in the listed order.
struct Observable {
  ComplexMatrix matrix;
  std::string node;
  std::vector<std::string> factor_support;
  std::string name;

  Observable(ComplexMatrix m, std::string node_label, std::vector<std::string> support = {},
             std::string label = {});
};

/// Observables grouped contiguously by node.
class ObservableSet {
 public:
  ObservableSet() = default;
  explicit ObservableSet(std::vector<Observable> observables);

  const std::vector<Observable>& observables() const { return obs_; }
  const BlockLayout& layout() const { return layout_; }
  const std::vector<std::string>& node_labels() const { return nodes_; }
  std::size_t size() const { return obs_.size(); }
  const Observable& operator[](std::size_t k) const { return obs_[k]; }

  /// Observables of one node, in set order.
  std::vector<Observable> node_observables(const std::string& node) const;

 private:
  std::vector<Observable> obs_;
  BlockLayout layout_;
  std::vector<std::string> nodes_;
};

ObservableSet concat(const std::vector<ObservableSet>& parts);

/// d^2 Hermitian d x d matrices, identity first, tr(G G') = d delta.
class OrthogonalBasis {
 public:
  static constexpr double kTol = 1e-10;

  /// Throws if the normalization or orthogonality fails.
  explicit OrthogonalBasis(std::vector<ComplexMatrix> elements);

  const std::vector<ComplexMatrix>& elements() const { return elems_; }
  std::size_t dim() const { return elems_.front().rows(); }
  std::size_t size() const { return elems_.size(); }
  const ComplexMatrix& operator[](std::size_t k) const { return elems_[k]; }

  /// Coefficients tr(G_a m) (the Bloch vector for a state).
  std::vector<double> coefficients(const ComplexMatrix& m) const;

 private:
  std::vector<ComplexMatrix> elems_;
};

/// {1, sigma_x, sigma_y, sigma_z}.
OrthogonalBasis pauli_basis();
/// Identity, then symmetric, antisymmetric and diagonal Gell-Mann matrices
/// scaled by sqrt(d/2). d = 2 gives pauli_basis().
OrthogonalBasis orthogonal_basis(std::size_t d);
/// Elements kron(G_a, G'_b, ...), first factor outermost; again tr(GG') = D delta.
OrthogonalBasis product_basis(const std::vector<OrthogonalBasis>& factors);

ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();

/// The observable as an operator on the node's full space (layout order of
/// the node's factors).
ComplexMatrix node_operator(const Observable& obs, const SubsystemLayout& layout);
/// Identity-padded global operator.
ComplexMatrix embed(const Observable& obs, const SubsystemLayout& layout);

/// All products G_a (x) G_b (x) ... on the given node factors, lexicographic
/// with the first factor outermost. Empty `factors` means one basis for the
/// whole node.
ObservableSet product_observable_set(const std::vector<OrthogonalBasis>& bases, const std::string& node,
                                     const std::vector<std::string>& factors = {});

/// Full product basis (orthogonal_basis per factor) on every node of the layout.
ObservableSet full_product_set(const SubsystemLayout& layout);

/// Effective operator on one factor of a two-factor operator: keep = 2 gives
/// tr_1(obs (marginal (x) 1)), keep = 1 gives tr_2(obs (1 (x) marginal)).
ComplexMatrix reduced_operator(const ComplexMatrix& obs, std::size_t d1, std::size_t d2,
                               const ComplexMatrix& marginal, int keep);
/// Observable version: obs must act on exactly two factors (its support, or
/// the node's two factors). The result acts on the kept factor.
Observable reduced_observable(const Observable& obs, const SubsystemLayout& layout,
                              const DensityOperator& marginal, int keep);

/// O_ab = tr(U^dagger G_a U G_b) / d. Orthogonal for unitary U, and
/// O(U1 U2) = O(U1) O(U2).
RealMatrix orthogonal_from_unitary(const ComplexMatrix& u, const OrthogonalBasis& basis);

/// C^T Gamma C. When C only mixes observables within a node the node blocks
/// are kept (with the new per-node counts); otherwise the result is a single
/// block.
BlockCovarianceMatrix recombine_cm(const BlockCovarianceMatrix& gamma, const RealMatrix& c);

/// Named sets: "pauli-z", "w-set", "full-product", "cluster-set".
/// Nodes are taken from the layout in order of appearance.
ObservableSet named_observable_set(const std::string& name, const SubsystemLayout& layout);

}  // namespace netcm
