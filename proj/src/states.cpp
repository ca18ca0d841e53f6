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

#include "netcm/states.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numeric>

#include "netcm/linalg.hpp"

namespace netcm {

namespace {

using EigenC = Eigen::MatrixXcd;

ComplexMatrix from_eigen(const EigenC& e) {
  ComplexMatrix m(static_cast<std::size_t>(e.rows()), static_cast<std::size_t>(e.cols()));
  for (Eigen::Index i = 0; i < e.rows(); ++i)
    for (Eigen::Index j = 0; j < e.cols(); ++j)
      m(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = e(i, j);
  return m;
}

EigenC gaussian(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  EigenC g(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (Eigen::Index i = 0; i < g.rows(); ++i)
    for (Eigen::Index j = 0; j < g.cols(); ++j) {
      const double re = n(rng);
      const double im = n(rng);
      g(i, j) = cplx(re, im);
    }
  return g;
}

// Orthonormal columns spanning the Gaussian's column space, phases fixed so
// the distribution is Haar.
EigenC haar_isometry(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  const EigenC g = gaussian(rows, cols, rng);
  Eigen::HouseholderQR<EigenC> qr(g);
  EigenC q = qr.householderQ() * EigenC::Identity(g.rows(), g.cols());
  const EigenC r = qr.matrixQR();
  for (Eigen::Index k = 0; k < q.cols(); ++k) {
    const cplx d = r(k, k);
    const double a = std::abs(d);
    if (a > 0) q.col(k) *= d / a;
  }
  return q;
}

ComplexMatrix identity_like(std::size_t n) { return ComplexMatrix::identity(n); }

bool is_unitary(const ComplexMatrix& u, double tol) {
  if (!u.is_square()) return false;
  return max_abs_diff(matmul(u.adjoint(), u), identity_like(u.rows())) <= tol;
}

// Factor order grouping each node's factors together, node order by first appearance.
std::vector<std::string> node_major_order(const SubsystemLayout& layout) {
  std::vector<std::string> order;
  for (const auto& node : layout.node_labels())
    for (const auto& f : layout.node_factors(node)) order.push_back(f);
  return order;
}

}  // namespace

DensityOperator::DensityOperator(ComplexMatrix matrix, SubsystemLayout layout)
    : layout_(std::move(layout)) {
  if (!matrix.is_square()) throw DimensionError("DensityOperator: matrix not square");
  if (layout_.total_dim() != matrix.rows())
    throw DimensionError("DensityOperator: layout dimension " + std::to_string(layout_.total_dim()) +
                         " does not match matrix dimension " + std::to_string(matrix.rows()));
  if (!matrix.all_finite()) throw InvalidStateError("DensityOperator: non-finite entries");
  const double herm = hermiticity_error(matrix);
  if (herm > kHermitianTol)
    throw InvalidStateError("DensityOperator: not Hermitian (deviation " + std::to_string(herm) + ")");
  matrix_ = hermitian_part(matrix);
  const double tr = matrix_.trace().real();
  if (std::abs(tr - 1.0) > kTraceTol)
    throw InvalidStateError("DensityOperator: trace " + std::to_string(tr) + " != 1");
  const double lo = min_eigenvalue(matrix_);
  if (lo < -kEigenTol)
    throw InvalidStateError("DensityOperator: negative eigenvalue " + std::to_string(lo));
}

DensityOperator DensityOperator::marginal(const std::vector<std::string>& keep) const {
  return {partial_trace(matrix_, layout_, keep), layout_.subset(keep)};
}

DensityOperator DensityOperator::marginal_of_node(const std::string& node) const {
  return marginal(layout_.node_factors(node));
}

DensityOperator DensityOperator::reordered(const std::vector<std::string>& new_order) const {
  return {permute_subsystems(matrix_, layout_, new_order), layout_.reordered(new_order)};
}

DensityOperator DensityOperator::relabeled(SubsystemLayout layout) const {
  return {matrix_, std::move(layout)};
}

cplx DensityOperator::expectation(const ComplexMatrix& op) const {
  return trace_of_product(matrix_, op);
}

KrausChannel::KrausChannel(std::vector<ComplexMatrix> kraus_ops) : ops_(std::move(kraus_ops)) {
  if (ops_.empty()) throw InvalidStateError("KrausChannel: no Kraus operators");
  const auto rows = ops_.front().rows();
  const auto cols = ops_.front().cols();
  ComplexMatrix sum(cols, cols);
  for (const auto& k : ops_) {
    if (k.rows() != rows || k.cols() != cols)
      throw DimensionError("KrausChannel: Kraus operators differ in shape");
    sum += matmul(k.adjoint(), k);
  }
  const double err = max_abs_diff(sum, ComplexMatrix::identity(cols));
  if (err > kCompletenessTol)
    throw InvalidStateError("KrausChannel: completeness violated by " + std::to_string(err));
}

KrausChannel KrausChannel::identity(std::size_t dim) { return KrausChannel({ComplexMatrix::identity(dim)}); }

KrausChannel KrausChannel::unitary(const ComplexMatrix& u) { return KrausChannel({u}); }

KrausChannel KrausChannel::fully_depolarizing(std::size_t dim) {
  std::vector<ComplexMatrix> ops;
  const double s = 1.0 / std::sqrt(static_cast<double>(dim));
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) {
      ComplexMatrix k(dim, dim);
      k(i, j) = s;
      ops.push_back(std::move(k));
    }
  return KrausChannel(std::move(ops));
}

std::vector<std::string> default_party_labels(std::size_t parties) {
  std::vector<std::string> out;
  for (std::size_t k = 0; k < parties; ++k)
    out.push_back(parties <= 26 ? std::string(1, static_cast<char>('A' + k)) : std::to_string(k + 1));
  return out;
}

ComplexMatrix projector(const std::vector<cplx>& amplitudes) {
  double norm2 = 0.0;
  for (const auto& a : amplitudes) norm2 += std::norm(a);
  if (norm2 <= 0.0) throw InvalidStateError("projector: zero vector");
  ComplexMatrix p(amplitudes.size(), amplitudes.size());
  for (std::size_t i = 0; i < amplitudes.size(); ++i)
    for (std::size_t j = 0; j < amplitudes.size(); ++j)
      p(i, j) = amplitudes[i] * std::conj(amplitudes[j]) / norm2;
  return p;
}

DensityOperator ghz_state(std::size_t parties, std::size_t local_dim,
                          std::optional<std::pair<std::size_t, std::size_t>> levels) {
  if (parties < 2) throw std::invalid_argument("ghz_state: need at least 2 parties");
  if (local_dim < 2) throw std::invalid_argument("ghz_state: local dimension must be >= 2");
  std::size_t dim = 1, repunit = 0;
  for (std::size_t k = 0; k < parties; ++k) {
    repunit = repunit * local_dim + 1;
    dim *= local_dim;
  }
  std::vector<cplx> amp(dim);
  if (levels) {
    const auto [i, j] = *levels;
    if (i >= local_dim || j >= local_dim || i == j)
      throw std::invalid_argument("ghz_state: invalid level indices");
    amp[i * repunit] = 1.0;
    amp[j * repunit] = 1.0;
  } else {
    for (std::size_t k = 0; k < local_dim; ++k) amp[k * repunit] = 1.0;
  }
  const auto labels = default_party_labels(parties);
  return {projector(amp), SubsystemLayout(std::vector<std::size_t>(parties, local_dim), labels)};
}

DensityOperator w_state() {
  std::vector<cplx> amp(8);
  amp[0b100] = amp[0b010] = amp[0b001] = 1.0;
  return {projector(amp), SubsystemLayout({2, 2, 2}, {"A", "B", "C"})};
}

DensityOperator dicke_state(int excitation) {
  if (excitation < 1 || excitation > 9)
    throw std::invalid_argument("dicke_state: excitation must be in 1..9");
  std::vector<cplx> amp(64);
  for (int i1 = 0; i1 < 4; ++i1)
    for (int i2 = 0; i2 < 4; ++i2)
      for (int i3 = 0; i3 < 4; ++i3)
        if (i1 + i2 + i3 == excitation) amp[static_cast<std::size_t>(16 * i1 + 4 * i2 + i3)] = 1.0;
  return {projector(amp), SubsystemLayout({4, 4, 4}, {"A", "B", "C"})};
}

DensityOperator cluster4_state() {
  const double h = 1.0 / std::sqrt(2.0);
  const std::vector<cplx> plus{h, h}, minus{h, -h}, zero{1.0, 0.0}, one{0.0, 1.0};
  const auto prod = [](const std::vector<std::vector<cplx>>& vs) {
    std::vector<cplx> out{1.0};
    for (const auto& v : vs) {
      std::vector<cplx> next;
      for (const auto& a : out)
        for (const auto& b : v) next.push_back(a * b);
      out = std::move(next);
    }
    return out;
  };
  // |+0+0> + |+0-1> + |-1-0> + |-1+1>
  const std::vector<std::vector<std::vector<cplx>>> terms{
      {plus, zero, plus, zero}, {plus, zero, minus, one}, {minus, one, minus, zero}, {minus, one, plus, one}};
  std::vector<cplx> amp(16);
  for (const auto& t : terms) {
    const auto v = prod(t);
    for (std::size_t k = 0; k < 16; ++k) amp[k] += v[k];
  }
  return {projector(amp), SubsystemLayout({2, 2, 2, 2}, {"A", "B", "C", "D"})};
}

DensityOperator bell_pair(std::size_t local_dim) {
  if (local_dim < 2) throw std::invalid_argument("bell_pair: local dimension must be >= 2");
  std::vector<cplx> amp(local_dim * local_dim);
  for (std::size_t k = 0; k < local_dim; ++k) amp[k * local_dim + k] = 1.0;
  return {projector(amp), SubsystemLayout({local_dim, local_dim}, {"A", "B"})};
}

DensityOperator mix_white_noise(const DensityOperator& rho, double v) {
  if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument("mix_white_noise: visibility outside [0, 1]");
  const auto n = rho.dim();
  ComplexMatrix m = rho.matrix() * cplx(v);
  for (std::size_t i = 0; i < n; ++i) m(i, i) += (1.0 - v) / static_cast<double>(n);
  return {std::move(m), rho.layout()};
}

DensityOperator btn_assemble(const DensityOperator& rho_a, const DensityOperator& rho_b,
                             const DensityOperator& rho_c) {
  for (const auto* s : {&rho_a, &rho_b, &rho_c})
    if (s->layout().factor_count() != 2)
      throw std::invalid_argument("btn_assemble: every source must be bipartite");
  const auto& da = rho_a.layout().dims();
  const auto& db = rho_b.layout().dims();
  const auto& dc = rho_c.layout().dims();
  // Source order: b on (C2, A1), c on (A2, B1), a on (B2, C1).
  const SubsystemLayout source_major({db[0], db[1], dc[0], dc[1], da[0], da[1]},
                                     {"C2", "A1", "A2", "B1", "B2", "C1"},
                                     {"C", "A", "A", "B", "B", "C"});
  const ComplexMatrix m = kron(kron(rho_b.matrix(), rho_c.matrix()), rho_a.matrix());
  const std::vector<std::string> node_major{"A1", "A2", "B1", "B2", "C1", "C2"};
  return {permute_subsystems(m, source_major, node_major), source_major.reordered(node_major)};
}

DensityOperator network_assemble(const NetworkTopology& topology,
                                 const std::vector<DensityOperator>& sources) {
  const auto& srcs = topology.sources();
  if (sources.size() != srcs.size())
    throw std::invalid_argument("network_assemble: need one state per source");
  std::vector<std::size_t> dims;
  std::vector<std::string> labels, nodes;
  ComplexMatrix m = ComplexMatrix::identity(1);
  for (std::size_t s = 0; s < srcs.size(); ++s) {
    const auto& lay = sources[s].layout();
    if (lay.factor_count() != srcs[s].nodes.size())
      throw std::invalid_argument("network_assemble: source '" + srcs[s].name +
                                  "' state has the wrong number of factors");
    for (std::size_t k = 0; k < srcs[s].nodes.size(); ++k) {
      dims.push_back(lay.dims()[k]);
      labels.push_back(srcs[s].nodes[k] + "." + srcs[s].name);
      nodes.push_back(srcs[s].nodes[k]);
    }
    m = kron(m, sources[s].matrix());
  }
  const SubsystemLayout source_major(dims, labels, nodes);
  std::vector<std::string> order;
  for (const auto& node : topology.nodes())
    for (std::size_t s = 0; s < srcs.size(); ++s)
      if (topology.source_contains(s, node)) order.push_back(node + "." + srcs[s].name);
  if (order.size() != labels.size())
    throw std::invalid_argument("network_assemble: every node must receive at least one factor");
  return {permute_subsystems(m, source_major, order), source_major.reordered(order)};
}

DensityOperator apply_local_unitaries(const DensityOperator& rho,
                                      const std::map<std::string, ComplexMatrix>& unitaries) {
  const auto& layout = rho.layout();
  const auto order = node_major_order(layout);
  const bool permuted = order != layout.labels();
  const DensityOperator work = permuted ? rho.reordered(order) : rho;
  for (const auto& [node, u] : unitaries) {
    const auto n = layout.node_dim(node);
    if (u.rows() != n || !u.is_square())
      throw DimensionError("apply_local_unitaries: unitary for node '" + node + "' has wrong dimension");
    if (!is_unitary(u, 1e-9))
      throw std::invalid_argument("apply_local_unitaries: operator for node '" + node + "' is not unitary");
  }
  ComplexMatrix global = ComplexMatrix::identity(1);
  for (const auto& node : layout.node_labels()) {
    const auto it = unitaries.find(node);
    global = kron(global, it != unitaries.end() ? it->second : identity_like(layout.node_dim(node)));
  }
  DensityOperator out(conjugate_by(global, work.matrix()), work.layout());
  return permuted ? out.reordered(layout.labels()) : out;
}

DensityOperator apply_local_channels(const DensityOperator& rho,
                                     const std::map<std::string, KrausChannel>& channels) {
  const auto order = node_major_order(rho.layout());
  DensityOperator work = order != rho.layout().labels() ? rho.reordered(order) : rho;
  for (const auto& [node, ch] : channels)
    if (ch.input_dim() != rho.layout().node_dim(node))
      throw DimensionError("apply_local_channels: channel for node '" + node + "' has wrong input dimension");

  for (const auto& node : rho.layout().node_labels()) {
    const auto it = channels.find(node);
    if (it == channels.end()) continue;
    const auto& lay = work.layout();
    std::size_t left = 1, right = 1;
    bool seen = false;
    for (std::size_t k = 0; k < lay.factor_count(); ++k) {
      if (lay.factor_nodes()[k] == node) {
        seen = true;
      } else {
        (seen ? right : left) *= lay.dims()[k];
      }
    }
    const auto out_dim = it->second.output_dim();
    const std::size_t dim = left * out_dim * right;
    ComplexMatrix next(dim, dim);
    for (const auto& k : it->second.kraus_ops()) {
      const ComplexMatrix g = kron(kron(identity_like(left), k), identity_like(right));
      next += matmul(g, matmul(work.matrix(), g.adjoint()));
    }
    std::vector<std::size_t> dims;
    std::vector<std::string> labels, nodes;
    bool replaced = false;
    for (std::size_t k = 0; k < lay.factor_count(); ++k) {
      if (lay.factor_nodes()[k] != node || out_dim == lay.node_dim(node)) {
        dims.push_back(lay.dims()[k]);
        labels.push_back(lay.labels()[k]);
        nodes.push_back(lay.factor_nodes()[k]);
      } else if (!replaced) {
        dims.push_back(out_dim);
        labels.push_back(node);
        nodes.push_back(node);
        replaced = true;
      }
    }
    work = DensityOperator(std::move(next), SubsystemLayout(dims, labels, nodes));
  }
  return work;
}

DensityOperator convex_mix(const std::vector<DensityOperator>& states,
                           const std::vector<double>& weights) {
  if (states.empty() || states.size() != weights.size())
    throw std::invalid_argument("convex_mix: need one weight per state");
  double total = 0.0;
  for (const double w : weights) {
    if (!(w >= 0.0)) throw std::invalid_argument("convex_mix: negative weight");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12) throw std::invalid_argument("convex_mix: weights do not sum to 1");
  ComplexMatrix m(states.front().dim(), states.front().dim());
  for (std::size_t k = 0; k < states.size(); ++k) {
    if (!(states[k].layout() == states.front().layout()))
      throw DimensionError("convex_mix: layouts differ");
    m += states[k].matrix() * cplx(weights[k]);
  }
  return {std::move(m), states.front().layout()};
}

ComplexMatrix random_density_matrix(std::size_t dim, std::mt19937_64& rng) {
  const EigenC g = gaussian(dim, dim, rng);
  EigenC r = g * g.adjoint();
  r /= r.trace().real();
  return hermitian_part(from_eigen(r));
}

DensityOperator random_state(const SubsystemLayout& layout, std::mt19937_64& rng) {
  return {random_density_matrix(layout.total_dim(), rng), layout};
}

ComplexMatrix random_unitary(std::size_t dim, std::mt19937_64& rng) {
  return from_eigen(haar_isometry(dim, dim, rng));
}

ComplexMatrix random_hermitian(std::size_t dim, std::mt19937_64& rng) {
  const EigenC g = gaussian(dim, dim, rng);
  return from_eigen(EigenC((g + g.adjoint()) * 0.5));
}

KrausChannel random_channel(std::size_t input_dim, std::size_t output_dim, std::size_t kraus_count,
                            std::mt19937_64& rng) {
  if (output_dim * kraus_count < input_dim)
    throw std::invalid_argument("random_channel: output_dim * kraus_count must be >= input_dim");
  const EigenC v = haar_isometry(output_dim * kraus_count, input_dim, rng);
  std::vector<ComplexMatrix> ops;
  for (std::size_t k = 0; k < kraus_count; ++k)
    ops.push_back(from_eigen(v.block(static_cast<Eigen::Index>(k * output_dim), 0,
                                     static_cast<Eigen::Index>(output_dim),
                                     static_cast<Eigen::Index>(input_dim))));
  return KrausChannel(std::move(ops));
}

}  // namespace netcm
