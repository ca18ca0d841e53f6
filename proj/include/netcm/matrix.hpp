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

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace netcm {

using cplx = std::complex<double>;

/// Shape or dimension mismatch between operands.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Input expected to be Hermitian (or symmetric) is not, beyond tolerance.
class NotHermitianError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Max-abs tolerance on m - m^dagger for spectral routines.
inline constexpr double kHermitianTol = 1e-10;

namespace detail {
inline double abs_value(double v) { return std::abs(v); }
inline double abs_value(const cplx& v) { return std::abs(v); }
inline double conj_value(double v) { return v; }
inline cplx conj_value(const cplx& v) { return std::conj(v); }
inline bool finite_value(double v) { return std::isfinite(v); }
inline bool finite_value(const cplx& v) {
  return std::isfinite(v.real()) && std::isfinite(v.imag());
}
}  // namespace detail

/// Dense row-major matrix. Element type is double or std::complex<double>.
template <class T>
class Matrix {
 public:
  using value_type = T;

  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<T> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_) {
      throw DimensionError("Matrix: entry count " + std::to_string(data_.size()) +
                           " does not match " + std::to_string(rows_) + "x" +
                           std::to_string(cols_));
    }
  }
  Matrix(std::initializer_list<std::initializer_list<T>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) throw DimensionError("Matrix: ragged initializer");
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  static Matrix zeros(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }
  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }
  static Matrix diagonal(std::span<const T> values) {
    Matrix m(values.size(), values.size());
    for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
    return m;
  }
  static Matrix diagonal(std::initializer_list<T> values) {
    return diagonal(std::span<const T>(values.begin(), values.size()));
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }
  bool is_square() const { return rows_ == cols_; }
  bool empty() const { return data_.empty(); }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  T* data() { return data_.data(); }
  const T* data() const { return data_.data(); }
  std::span<T> values() { return data_; }
  std::span<const T> values() const { return data_; }
  std::span<T> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const T> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  Matrix& operator+=(const Matrix& o) {
    require_same_shape(o, "+=");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    require_same_shape(o, "-=");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  Matrix& operator*=(T s) {
    for (auto& v : data_) v *= s;
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, T s) { return a *= s; }
  friend Matrix operator*(T s, Matrix a) { return a *= s; }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  /// Conjugate transpose; plain transpose for real matrices.
  Matrix adjoint() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = detail::conj_value((*this)(i, j));
    return t;
  }

  T trace() const {
    T s{};
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) s += (*this)(i, i);
    return s;
  }

  double max_abs() const {
    double m = 0.0;
    for (const auto& v : data_) m = std::max(m, detail::abs_value(v));
    return m;
  }

  bool all_finite() const {
    return std::all_of(data_.begin(), data_.end(), [](const T& v) { return detail::finite_value(v); });
  }

  /// Sub-matrix copy of rows [r0, r0+nr) and columns [c0, c0+nc).
  Matrix slice(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    if (r0 + nr > rows_ || c0 + nc > cols_) throw DimensionError("Matrix::slice out of range");
    Matrix s(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
      std::copy_n(data_.begin() + static_cast<std::ptrdiff_t>((r0 + i) * cols_ + c0), nc,
                  s.data_.begin() + static_cast<std::ptrdiff_t>(i * nc));
    return s;
  }

  void assign_slice(std::size_t r0, std::size_t c0, const Matrix& src) {
    if (r0 + src.rows_ > rows_ || c0 + src.cols_ > cols_)
      throw DimensionError("Matrix::assign_slice out of range");
    for (std::size_t i = 0; i < src.rows_; ++i)
      std::copy_n(src.data_.begin() + static_cast<std::ptrdiff_t>(i * src.cols_), src.cols_,
                  data_.begin() + static_cast<std::ptrdiff_t>((r0 + i) * cols_ + c0));
  }

 private:
  void require_same_shape(const Matrix& o, const char* op) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw DimensionError(std::string("Matrix ") + op + ": shape mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using ComplexMatrix = Matrix<cplx>;
using RealMatrix = Matrix<double>;

template <class T>
double max_abs_diff(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionError("max_abs_diff: shape mismatch");
  double m = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k)
    m = std::max(m, detail::abs_value(a.values()[k] - b.values()[k]));
  return m;
}

template <class T>
double frobenius_norm(const Matrix<T>& a) {
  double s = 0.0;
  for (const auto& v : a.values()) s += detail::abs_value(v) * detail::abs_value(v);
  return std::sqrt(s);
}

/// Max-abs deviation of m from m^dagger.
template <class T>
double hermiticity_error(const Matrix<T>& m) {
  if (!m.is_square()) throw DimensionError("hermiticity_error: matrix not square");
  double e = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i; j < m.cols(); ++j)
      e = std::max(e, detail::abs_value(m(i, j) - detail::conj_value(m(j, i))));
  return e;
}

/// (m + m^dagger) / 2.
template <class T>
Matrix<T> hermitian_part(const Matrix<T>& m) {
  Matrix<T> h = m + m.adjoint();
  h *= T(0.5);
  return h;
}

RealMatrix real_part(const ComplexMatrix& m);
RealMatrix imag_part(const ComplexMatrix& m);
ComplexMatrix to_complex(const RealMatrix& m);

/// Partition of a matrix dimension into consecutive blocks (one per node).
class BlockLayout {
 public:
  BlockLayout() = default;
  explicit BlockLayout(std::vector<std::size_t> block_sizes);

  const std::vector<std::size_t>& block_sizes() const { return sizes_; }
  std::size_t count() const { return sizes_.size(); }
  std::size_t total() const { return offsets_.empty() ? 0 : offsets_.back(); }
  std::size_t offset(std::size_t block) const { return offsets_.at(block); }
  std::size_t size(std::size_t block) const { return sizes_.at(block); }

  friend bool operator==(const BlockLayout& a, const BlockLayout& b) { return a.sizes_ == b.sizes_; }

 private:
  std::vector<std::size_t> sizes_;
  std::vector<std::size_t> offsets_;  // count()+1 entries; last is total()
};

/// Tensor-factor layout of a Hilbert space. Each factor carries a unique label
/// and the node it belongs to (the label itself unless stated otherwise).
class SubsystemLayout {
 public:
  SubsystemLayout() = default;
  SubsystemLayout(std::vector<std::size_t> dims, std::vector<std::string> labels);
  SubsystemLayout(std::vector<std::size_t> dims, std::vector<std::string> labels,
                  std::vector<std::string> nodes);

  const std::vector<std::size_t>& dims() const { return dims_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<std::string>& factor_nodes() const { return nodes_; }
  std::size_t factor_count() const { return dims_.size(); }
  std::size_t total_dim() const;

  /// Throws std::out_of_range for an unknown label.
  std::size_t index_of(const std::string& label) const;
  bool has_label(const std::string& label) const;

  /// Node labels in order of first appearance.
  std::vector<std::string> node_labels() const;
  /// Factor labels of a node, layout order. Throws std::out_of_range for unknown node.
  std::vector<std::string> node_factors(const std::string& node) const;
  std::size_t node_dim(const std::string& node) const;

  /// Layout restricted to the given labels, keeping this layout's order.
  SubsystemLayout subset(const std::vector<std::string>& keep) const;
  /// Layout reordered to new_order (must be a permutation of labels()).
  SubsystemLayout reordered(const std::vector<std::string>& new_order) const;

  friend bool operator==(const SubsystemLayout& a, const SubsystemLayout& b) {
    return a.dims_ == b.dims_ && a.labels_ == b.labels_ && a.nodes_ == b.nodes_;
  }

 private:
  std::vector<std::size_t> dims_;
  std::vector<std::string> labels_;
  std::vector<std::string> nodes_;
};

}  // namespace netcm
