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

#include "netcm/covariance.hpp"

#include <algorithm>

#include "netcm/kernels.hpp"
#include "netcm/linalg.hpp"

namespace netcm {

BlockCovarianceMatrix::BlockCovarianceMatrix(RealMatrix matrix, BlockLayout layout,
                                             std::vector<std::string> node_labels)
    : matrix_(std::move(matrix)), layout_(std::move(layout)), labels_(std::move(node_labels)) {
  if (!matrix_.is_square()) throw DimensionError("BlockCovarianceMatrix: not square");
  if (layout_.total() != matrix_.rows())
    throw DimensionError("BlockCovarianceMatrix: layout covers " + std::to_string(layout_.total()) +
                         " rows, matrix has " + std::to_string(matrix_.rows()));
  if (labels_.size() != layout_.count()) throw DimensionError("BlockCovarianceMatrix: one label per block");
  if (!matrix_.all_finite()) throw std::invalid_argument("BlockCovarianceMatrix: non-finite entries");
  if (hermiticity_error(matrix_) > kSymmetryTol)
    throw NotHermitianError("BlockCovarianceMatrix: not symmetric");
  matrix_ = hermitian_part(matrix_);
  if (matrix_.rows() > 0) {
    const double lo = min_eigenvalue(matrix_);
    if (lo < -kPsdTol * (1.0 + spectral_norm(matrix_)))
      throw std::invalid_argument("BlockCovarianceMatrix: not PSD (min eigenvalue " + std::to_string(lo) + ")");
  }
}

std::size_t BlockCovarianceMatrix::node_index(const std::string& node) const {
  const auto it = std::find(labels_.begin(), labels_.end(), node);
  if (it == labels_.end()) throw std::out_of_range("BlockCovarianceMatrix: unknown node '" + node + "'");
  return static_cast<std::size_t>(it - labels_.begin());
}

RealMatrix block_of(const RealMatrix& m, const BlockLayout& layout, std::size_t x, std::size_t y) {
  return m.slice(layout.offset(x), layout.offset(y), layout.size(x), layout.size(y));
}

RealMatrix BlockCovarianceMatrix::block(std::size_t x, std::size_t y) const {
  return block_of(matrix_, layout_, x, y);
}

RealMatrix BlockCovarianceMatrix::block(const std::string& x, const std::string& y) const {
  return block(node_index(x), node_index(y));
}

RealMatrix block(const BlockCovarianceMatrix& gamma, const std::string& x, const std::string& y) {
  return gamma.block(x, y);
}

namespace {

// Row-major flattening of M^T.
std::vector<cplx> vec_transpose(const ComplexMatrix& m) {
  std::vector<cplx> v(m.size());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) v[j * m.rows() + i] = m(i, j);
  return v;
}

// Re tr(rho O_m O_n) - <O_m><O_n> for operators on one space.
RealMatrix local_cm(const std::vector<ComplexMatrix>& ops, const ComplexMatrix& rho, std::vector<double>& means) {
  const std::size_t n = ops.size();
  std::vector<ComplexMatrix> rho_o;
  std::vector<std::vector<cplx>> vt;
  means.assign(n, 0.0);
  for (std::size_t m = 0; m < n; ++m) {
    rho_o.push_back(matmul(rho, ops[m]));
    vt.push_back(vec_transpose(ops[m]));
    means[m] = rho_o.back().trace().real();
  }
  RealMatrix g(n, n);
  for (std::size_t m = 0; m < n; ++m)
    for (std::size_t k = m; k < n; ++k) {
      // tr(P O) = sum_ij P_ij O_ji = dotu(vec P, vec O^T)
      const double second = kernels::dotu(rho_o[m].values(), vt[k]).real();
      g(m, k) = g(k, m) = second - means[m] * means[k];
    }
  return g;
}

}  // namespace

RealMatrix operator_cm(const std::vector<ComplexMatrix>& obs, const ComplexMatrix& rho) {
  std::vector<double> means;
  return local_cm(obs, rho, means);
}

ComplexMatrix operator_cm_complex(const std::vector<ComplexMatrix>& obs, const ComplexMatrix& rho) {
  const std::size_t n = obs.size();
  std::vector<ComplexMatrix> rho_o;
  std::vector<std::vector<cplx>> vt;
  std::vector<double> means(n);
  for (std::size_t m = 0; m < n; ++m) {
    rho_o.push_back(matmul(rho, obs[m]));
    vt.push_back(vec_transpose(obs[m]));
    means[m] = rho_o.back().trace().real();
  }
  ComplexMatrix g(n, n);
  for (std::size_t m = 0; m < n; ++m)
    for (std::size_t k = m; k < n; ++k) {
      // tr(rho O_m O_n) = tr((rho O_m) O_n); the (k, m) entry is its conjugate
      const cplx v = kernels::dotu(rho_o[m].values(), vt[k]) - means[m] * means[k];
      g(m, k) = v;
      g(k, m) = std::conj(v);
    }
  for (std::size_t m = 0; m < n; ++m) g(m, m) = g(m, m).real();
  return g;
}

BlockCovarianceMatrix covariance_matrix(const ObservableSet& obs, const DensityOperator& rho) {
  const auto& layout = rho.layout();
  const auto& nodes = obs.node_labels();
  const auto& bl = obs.layout();
  for (const auto& n : nodes)
    if (layout.node_factors(n).empty()) throw std::invalid_argument("covariance_matrix: unknown node " + n);

  RealMatrix g(bl.total(), bl.total());
  std::vector<std::vector<double>> means(nodes.size());
  std::vector<std::vector<ComplexMatrix>> node_ops(nodes.size());
  std::vector<DensityOperator> marg;
  for (std::size_t x = 0; x < nodes.size(); ++x) {
    for (const auto& o : obs.node_observables(nodes[x])) node_ops[x].push_back(node_operator(o, layout));
    marg.push_back(rho.marginal_of_node(nodes[x]));
    const RealMatrix gx = local_cm(node_ops[x], marg.back().matrix(), means[x]);
    g.assign_slice(bl.offset(x), bl.offset(x), gx);
  }

  for (std::size_t x = 0; x < nodes.size(); ++x)
    for (std::size_t y = x + 1; y < nodes.size(); ++y) {
      auto fx = layout.node_factors(nodes[x]);
      const auto fy = layout.node_factors(nodes[y]);
      std::vector<std::string> keep = fx;
      keep.insert(keep.end(), fy.begin(), fy.end());
      const DensityOperator pair = rho.marginal(keep).reordered(keep);
      const std::size_t dx = marg[x].dim(), dy = marg[y].dim();
      // Realignment R[(i j), (l m)] = rho[(i l), (j m)], so that
      // tr(rho (A (x) B)) = vec(A^T)^T R vec(B^T).
      ComplexMatrix r(dx * dx, dy * dy);
      for (std::size_t i = 0; i < dx; ++i)
        for (std::size_t j = 0; j < dx; ++j)
          for (std::size_t l = 0; l < dy; ++l)
            for (std::size_t m = 0; m < dy; ++m) r(i * dx + j, l * dy + m) = pair.matrix()(i * dy + l, j * dy + m);
      ComplexMatrix va(node_ops[x].size(), dx * dx), vb(node_ops[y].size(), dy * dy);
      for (std::size_t a = 0; a < node_ops[x].size(); ++a) {
        const auto v = vec_transpose(node_ops[x][a]);
        std::copy(v.begin(), v.end(), va.row(a).begin());
      }
      for (std::size_t b = 0; b < node_ops[y].size(); ++b) {
        const auto v = vec_transpose(node_ops[y][b]);
        std::copy(v.begin(), v.end(), vb.row(b).begin());
      }
      const ComplexMatrix e = matmul(matmul(va, r), vb.transpose());
      for (std::size_t a = 0; a < e.rows(); ++a)
        for (std::size_t b = 0; b < e.cols(); ++b) {
          const double v = e(a, b).real() - means[x][a] * means[y][b];
          g(bl.offset(x) + a, bl.offset(y) + b) = v;
          g(bl.offset(y) + b, bl.offset(x) + a) = v;
        }
    }
  return {std::move(g), bl, nodes};
}

RealMatrix covariance_matrix_dense(const ObservableSet& obs, const DensityOperator& rho) {
  std::vector<ComplexMatrix> global;
  for (const auto& o : obs.observables()) global.push_back(embed(o, rho.layout()));
  const std::size_t n = global.size();
  std::vector<double> mean(n);
  for (std::size_t m = 0; m < n; ++m) mean[m] = trace_of_product(rho.matrix(), global[m]).real();
  RealMatrix g(n, n);
  for (std::size_t m = 0; m < n; ++m)
    for (std::size_t k = 0; k < n; ++k) {
      const ComplexMatrix mk = matmul(global[m], global[k]);
      const ComplexMatrix km = matmul(global[k], global[m]);
      g(m, k) = 0.5 * (trace_of_product(rho.matrix(), mk) + trace_of_product(rho.matrix(), km)).real() -
                mean[m] * mean[k];
    }
  return g;
}

BlockCovarianceMatrix product_state_cm(const std::vector<std::vector<ComplexMatrix>>& factor_obs,
                                       const std::vector<DensityOperator>& marginals, const std::string& node) {
  if (factor_obs.empty() || factor_obs.size() != marginals.size())
    throw DimensionError("product_state_cm: one observable list per marginal");
  ComplexMatrix sum = ComplexMatrix::identity(1);
  ComplexMatrix rank_one = ComplexMatrix::identity(1);
  for (std::size_t k = 0; k < factor_obs.size(); ++k) {
    for (const auto& o : factor_obs[k])
      if (o.rows() != marginals[k].dim()) throw DimensionError("product_state_cm: observable dimension");
    const ComplexMatrix gk = operator_cm_complex(factor_obs[k], marginals[k].matrix());
    const auto a = mean_vector(factor_obs[k], marginals[k]);
    ComplexMatrix aa(a.size(), a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < a.size(); ++j) aa(i, j) = a[i] * a[j];
    sum = kron(sum, aa + gk);
    rank_one = kron(rank_one, aa);
  }
  RealMatrix g = real_part(sum - rank_one);
  const std::size_t n = g.rows();
  return {std::move(g), BlockLayout({n}), {node}};
}

std::vector<double> mean_vector(const std::vector<ComplexMatrix>& obs, const DensityOperator& rho) {
  std::vector<double> out;
  for (const auto& o : obs) {
    if (o.rows() != rho.dim() || !o.is_square()) throw DimensionError("mean_vector: dimension mismatch");
    out.push_back(trace_of_product(rho.matrix(), o).real());
  }
  return out;
}

std::vector<double> mean_vector(const ObservableSet& obs, const DensityOperator& rho) {
  std::vector<double> out;
  for (const auto& node : obs.node_labels()) {
    const DensityOperator m = rho.marginal_of_node(node);
    for (const auto& o : obs.node_observables(node))
      out.push_back(trace_of_product(m.matrix(), node_operator(o, rho.layout())).real());
  }
  return out;
}

}  // namespace netcm
