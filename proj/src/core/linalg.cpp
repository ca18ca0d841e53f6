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

#include "netcm/linalg.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <set>

#include "netcm/kernels.hpp"

namespace netcm {

namespace {

using EigenCRow = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using EigenRRow = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

Eigen::Map<const EigenCRow> as_eigen(const ComplexMatrix& m) {
  return {m.data(), static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols())};
}
Eigen::Map<const EigenRRow> as_eigen(const RealMatrix& m) {
  return {m.data(), static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols())};
}

template <class T, class E>
Matrix<T> from_eigen(const E& e) {
  Matrix<T> m(static_cast<std::size_t>(e.rows()), static_cast<std::size_t>(e.cols()));
  for (Eigen::Index i = 0; i < e.rows(); ++i)
    for (Eigen::Index j = 0; j < e.cols(); ++j)
      m(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = e(i, j);
  return m;
}

template <class T>
Matrix<T> checked_hermitian(const Matrix<T>& m, const char* who) {
  if (!m.is_square()) throw DimensionError(std::string(who) + ": matrix not square");
  if (!m.all_finite()) throw std::invalid_argument(std::string(who) + ": non-finite entries");
  const double err = hermiticity_error(m);
  if (err > kHermitianTol)
    throw NotHermitianError(std::string(who) + ": input not Hermitian (deviation " +
                            std::to_string(err) + ")");
  return hermitian_part(m);
}

template <class T>
void require_square(const Matrix<T>& m, const char* who) {
  if (!m.is_square()) throw DimensionError(std::string(who) + ": matrix not square");
}

std::vector<std::size_t> strides_of(const std::vector<std::size_t>& dims) {
  std::vector<std::size_t> s(dims.size(), 1);
  for (std::size_t k = dims.size(); k-- > 1;) s[k - 1] = s[k] * dims[k];
  return s;
}

// Flat offsets of every multi-index over `positions` (row-major, first
// position most significant).
std::vector<std::size_t> offsets_over(const std::vector<std::size_t>& dims,
                                      const std::vector<std::size_t>& strides,
                                      const std::vector<std::size_t>& positions) {
  std::vector<std::size_t> out{0};
  for (const std::size_t p : positions) {
    std::vector<std::size_t> next;
    next.reserve(out.size() * dims[p]);
    for (const std::size_t base : out)
      for (std::size_t i = 0; i < dims[p]; ++i) next.push_back(base + i * strides[p]);
    out = std::move(next);
  }
  return out;
}

void require_layout(const ComplexMatrix& rho, const SubsystemLayout& layout, const char* who) {
  if (!rho.is_square()) throw DimensionError(std::string(who) + ": operator not square");
  if (layout.total_dim() != rho.rows())
    throw DimensionError(std::string(who) + ": layout dimension " +
                         std::to_string(layout.total_dim()) + " does not match operator dimension " +
                         std::to_string(rho.rows()));
}

template <class T>
Matrix<T> kron_impl(const Matrix<T>& a, const Matrix<T>& b) {
  Matrix<T> c(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < b.rows(); ++k) {
      auto crow = c.row(i * b.rows() + k);
      for (std::size_t j = 0; j < a.cols(); ++j) {
        const T aij = a(i, j);
        if (aij == T(0)) continue;
        kernels::axpy(aij, b.row(k), crow.subspan(j * b.cols(), b.cols()));
      }
    }
  return c;
}

template <class T>
Matrix<T> matmul_impl(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.rows())
    throw DimensionError("matmul: inner dimensions differ (" + std::to_string(a.cols()) + " vs " +
                         std::to_string(b.rows()) + ")");
  Matrix<T> c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto crow = c.row(i);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const T aik = a(i, k);
      if (aik == T(0)) continue;
      kernels::axpy(aik, b.row(k), crow);
    }
  }
  return c;
}

template <class T>
Matrix<T> khatri_rao_impl(const Matrix<T>& a, const BlockLayout& a_rows, const BlockLayout& a_cols,
                          const Matrix<T>& b, const BlockLayout& b_rows, const BlockLayout& b_cols) {
  if (a_rows.total() != a.rows() || a_cols.total() != a.cols() || b_rows.total() != b.rows() ||
      b_cols.total() != b.cols())
    throw DimensionError("khatri_rao: layout does not describe operand");
  if (a_rows.count() != b_rows.count() || a_cols.count() != b_cols.count())
    throw DimensionError("khatri_rao: block-count mismatch");
  std::vector<std::size_t> rs, cs;
  for (std::size_t i = 0; i < a_rows.count(); ++i) rs.push_back(a_rows.size(i) * b_rows.size(i));
  for (std::size_t j = 0; j < a_cols.count(); ++j) cs.push_back(a_cols.size(j) * b_cols.size(j));
  const BlockLayout out_rows(rs), out_cols(cs);
  Matrix<T> out(out_rows.total(), out_cols.total());
  for (std::size_t i = 0; i < rs.size(); ++i)
    for (std::size_t j = 0; j < cs.size(); ++j) {
      const auto ab = a.slice(a_rows.offset(i), a_cols.offset(j), a_rows.size(i), a_cols.size(j));
      const auto bb = b.slice(b_rows.offset(i), b_cols.offset(j), b_rows.size(i), b_cols.size(j));
      out.assign_slice(out_rows.offset(i), out_cols.offset(j), kron_impl(ab, bb));
    }
  return out;
}

}  // namespace

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) { return matmul_impl(a, b); }
RealMatrix matmul(const RealMatrix& a, const RealMatrix& b) { return matmul_impl(a, b); }

RealMatrix congruence(const RealMatrix& m, const RealMatrix& a) {
  return matmul(a.transpose(), matmul(m, a));
}

ComplexMatrix conjugate_by(const ComplexMatrix& u, const ComplexMatrix& m) {
  return matmul(u, matmul(m, u.adjoint()));
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) { return kron_impl(a, b); }
RealMatrix kron(const RealMatrix& a, const RealMatrix& b) { return kron_impl(a, b); }

ComplexMatrix kron_all(const std::vector<ComplexMatrix>& factors) {
  ComplexMatrix out = ComplexMatrix::identity(1);
  for (const auto& f : factors) out = kron(out, f);
  return out;
}

cplx trace_of_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows() || a.rows() != b.cols())
    throw DimensionError("trace_of_product: shapes not conformable");
  const ComplexMatrix bt = b.transpose();
  return kernels::dotu(a.values(), bt.values());
}

RealMatrix khatri_rao(const RealMatrix& a, const BlockLayout& a_rows, const BlockLayout& a_cols,
                      const RealMatrix& b, const BlockLayout& b_rows, const BlockLayout& b_cols) {
  return khatri_rao_impl(a, a_rows, a_cols, b, b_rows, b_cols);
}

ComplexMatrix khatri_rao(const ComplexMatrix& a, const BlockLayout& a_rows,
                         const BlockLayout& a_cols, const ComplexMatrix& b,
                         const BlockLayout& b_rows, const BlockLayout& b_cols) {
  return khatri_rao_impl(a, a_rows, a_cols, b, b_rows, b_cols);
}

ComplexMatrix partial_trace(const ComplexMatrix& rho, const SubsystemLayout& layout,
                            const std::vector<std::string>& keep) {
  require_layout(rho, layout, "partial_trace");
  std::set<std::size_t> keep_idx;
  for (const auto& l : keep) keep_idx.insert(layout.index_of(l));
  std::vector<std::size_t> kept, traced;
  for (std::size_t k = 0; k < layout.factor_count(); ++k)
    (keep_idx.count(k) != 0 ? kept : traced).push_back(k);

  const auto strides = strides_of(layout.dims());
  const auto off_k = offsets_over(layout.dims(), strides, kept);
  const auto off_t = offsets_over(layout.dims(), strides, traced);
  ComplexMatrix out(off_k.size(), off_k.size());
  for (std::size_t a = 0; a < off_k.size(); ++a)
    for (std::size_t b = 0; b < off_k.size(); ++b) {
      cplx s{};
      for (const std::size_t t : off_t) s += rho(off_k[a] + t, off_k[b] + t);
      out(a, b) = s;
    }
  return out;
}

ComplexMatrix permute_subsystems(const ComplexMatrix& rho, const SubsystemLayout& layout,
                                 const std::vector<std::string>& new_order) {
  require_layout(rho, layout, "permute_subsystems");
  (void)layout.reordered(new_order);  // validates the permutation
  std::vector<std::size_t> positions;
  for (const auto& l : new_order) positions.push_back(layout.index_of(l));
  const auto map = offsets_over(layout.dims(), strides_of(layout.dims()), positions);
  ComplexMatrix out(rho.rows(), rho.cols());
  for (std::size_t i = 0; i < map.size(); ++i)
    for (std::size_t j = 0; j < map.size(); ++j) out(i, j) = rho(map[i], map[j]);
  return out;
}

std::vector<double> eigvals_hermitian(const ComplexMatrix& m) {
  const auto h = checked_hermitian(m, "eigvals_hermitian");
  if (h.rows() == 0) return {};
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(as_eigen(h), Eigen::EigenvaluesOnly);
  const auto& v = es.eigenvalues();
  return {v.data(), v.data() + v.size()};
}

std::vector<double> eigvals_symmetric(const RealMatrix& m) {
  const auto h = checked_hermitian(m, "eigvals_symmetric");
  if (h.rows() == 0) return {};
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(as_eigen(h), Eigen::EigenvaluesOnly);
  const auto& v = es.eigenvalues();
  return {v.data(), v.data() + v.size()};
}

HermitianEigen eigh(const ComplexMatrix& m) {
  const auto h = checked_hermitian(m, "eigh");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(as_eigen(h));
  const auto& v = es.eigenvalues();
  return {{v.data(), v.data() + v.size()}, from_eigen<cplx>(es.eigenvectors())};
}

SymmetricEigen eigh(const RealMatrix& m) {
  const auto h = checked_hermitian(m, "eigh");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(as_eigen(h));
  const auto& v = es.eigenvalues();
  return {{v.data(), v.data() + v.size()}, from_eigen<double>(es.eigenvectors())};
}

double min_eigenvalue(const ComplexMatrix& m) {
  const auto v = eigvals_hermitian(m);
  return v.empty() ? 0.0 : v.front();
}

double min_eigenvalue(const RealMatrix& m) {
  const auto v = eigvals_symmetric(m);
  return v.empty() ? 0.0 : v.front();
}

std::vector<double> singular_values(const ComplexMatrix& m) {
  if (m.empty()) return {};
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(as_eigen(m));
  const auto& s = svd.singularValues();
  return {s.data(), s.data() + s.size()};
}

std::vector<double> singular_values(const RealMatrix& m) {
  if (m.empty()) return {};
  Eigen::BDCSVD<Eigen::MatrixXd> svd(as_eigen(m));
  const auto& s = svd.singularValues();
  return {s.data(), s.data() + s.size()};
}

double trace_norm(const ComplexMatrix& m) {
  double s = 0.0;
  for (const double v : singular_values(m)) s += v;
  return s;
}

double trace_norm(const RealMatrix& m) {
  double s = 0.0;
  for (const double v : singular_values(m)) s += v;
  return s;
}

double spectral_norm(const RealMatrix& m) {
  const auto s = singular_values(m);
  return s.empty() ? 0.0 : s.front();
}

bool is_psd(const ComplexMatrix& m, double tol) { return min_eigenvalue(m) >= -tol; }
bool is_psd(const RealMatrix& m, double tol) { return min_eigenvalue(m) >= -tol; }

ComplexMatrix psd_project(const ComplexMatrix& m) {
  const auto h = checked_hermitian(m, "psd_project");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(as_eigen(h));
  Eigen::MatrixXcd w = es.eigenvectors();
  for (Eigen::Index k = 0; k < w.cols(); ++k)
    w.col(k) *= std::sqrt(std::max(es.eigenvalues()(k), 0.0));
  return hermitian_part(from_eigen<cplx>(Eigen::MatrixXcd(w * w.adjoint())));
}

RealMatrix psd_project(const RealMatrix& m) {
  const auto h = checked_hermitian(m, "psd_project");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(as_eigen(h));
  Eigen::MatrixXd w = es.eigenvectors();
  for (Eigen::Index k = 0; k < w.cols(); ++k)
    w.col(k) *= std::sqrt(std::max(es.eigenvalues()(k), 0.0));
  return hermitian_part(from_eigen<double>(Eigen::MatrixXd(w * w.transpose())));
}

}  // namespace netcm
