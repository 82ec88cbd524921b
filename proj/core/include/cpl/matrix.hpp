/*
 * Copyright 2026 The cpl Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <algorithm>
#include <cassert>
#include <initializer_list>
#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "cpl/errors.hpp"
#include "cpl/scalar.hpp"

namespace cpl {

/// Numerical thresholds for rank and containment decisions in floating point.
/// Ignored by the exact (rational) instantiations, which decide on exact zero.
struct Tolerance {
  /// Relative threshold for pivot acceptance and row-space residuals.
  double rank_rel = 1e-9;
  /// Absolute slack for entrywise comparisons.
  double compare_abs = 1e-12;

  void validate() const;
};

/// Dense row-major matrix. The shape is fixed at construction.
template <class T>
class Matrix {
 public:
  using value_type = T;

  Matrix() = default;
  Matrix(Index rows, Index cols, const T& fill = T{})
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::initializer_list<std::initializer_list<T>> rows);

  static Matrix identity(Index n);
  static Matrix from_rows(const std::vector<std::vector<T>>& rows);

  Index rows() const noexcept { return rows_; }
  Index cols() const noexcept { return cols_; }
  bool empty() const noexcept { return data_.empty(); }

  T& operator()(Index i, Index j) {
    assert(i < rows_ && j < cols_);
    return data_[i * cols_ + j];
  }
  const T& operator()(Index i, Index j) const {
    assert(i < rows_ && j < cols_);
    return data_[i * cols_ + j];
  }

  std::span<T> row(Index i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const T> row(Index i) const { return {data_.data() + i * cols_, cols_}; }
  std::span<const T> data() const noexcept { return data_; }

  Matrix transpose() const;
  std::vector<T> column(Index j) const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  Index rows_ = 0;
  Index cols_ = 0;
  std::vector<T> data_;
};

/// Compressed sparse row matrix assembled from coordinate triples.
/// Triples are sorted row-major; duplicate coordinates are summed.
template <class T>
class SparseMatrix {
 public:
  struct Triple {
    Index row;
    Index col;
    T value;
  };

  SparseMatrix() = default;
  SparseMatrix(Index rows, Index cols, std::vector<Triple> triples);
  explicit SparseMatrix(const Matrix<T>& dense);

  Index rows() const noexcept { return rows_; }
  Index cols() const noexcept { return cols_; }
  Index nnz() const noexcept { return values_.size(); }

  /// Column indices and values of row i.
  std::span<const Index> row_cols(Index i) const {
    return {col_idx_.data() + row_ptr_[i], row_ptr_[i + 1] - row_ptr_[i]};
  }
  std::span<const T> row_values(Index i) const {
    return {values_.data() + row_ptr_[i], row_ptr_[i + 1] - row_ptr_[i]};
  }

  T at(Index i, Index j) const;
  Matrix<T> to_dense() const;
  std::vector<Triple> triples() const;

  /// out = v * M (row vector times matrix); `out` is overwritten.
  void left_multiply(std::span<const T> v, std::span<T> out) const;

  SparseMatrix scaled(const T& factor) const;

 private:
  Index rows_ = 0;
  Index cols_ = 0;
  std::vector<Index> row_ptr_{0};
  std::vector<Index> col_idx_;
  std::vector<T> values_;
};

template <class T>
bool operator==(const SparseMatrix<T>& a, const Matrix<T>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Index i = 0; i < b.rows(); ++i)
    for (Index j = 0; j < b.cols(); ++j)
      if (a.at(i, j) != b(i, j)) return false;
  return true;
}

template <class T>
bool operator==(const SparseMatrix<T>& a, const SparseMatrix<T>& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() && a == b.to_dense();
}

// ---------------------------------------------------------------------------
// Elementwise helpers and products.

template <class T>
void require_same_shape(const Matrix<T>& a, const Matrix<T>& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw Error(ErrorCode::ShapeMismatch,
                std::string(what) + ": " + std::to_string(a.rows()) + "x" +
                    std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) +
                    "x" + std::to_string(b.cols()));
}

template <class T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.rows())
    throw Error(ErrorCode::ShapeMismatch, "matrix product: inner dimensions differ");
  Matrix<T> c(a.rows(), b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    auto out = c.row(i);
    for (Index k = 0; k < a.cols(); ++k) {
      const T& aik = a(i, k);
      if (aik == 0) continue;
      auto brow = b.row(k);
      for (Index j = 0; j < b.cols(); ++j) out[j] += aik * brow[j];
    }
  }
  return c;
}

template <class T>
Matrix<T> operator+(const Matrix<T>& a, const Matrix<T>& b) {
  require_same_shape(a, b, "matrix sum");
  Matrix<T> c = a;
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j) c(i, j) += b(i, j);
  return c;
}

template <class T>
Matrix<T> operator-(const Matrix<T>& a, const Matrix<T>& b) {
  require_same_shape(a, b, "matrix difference");
  Matrix<T> c = a;
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j) c(i, j) -= b(i, j);
  return c;
}

template <class T>
Matrix<T> operator*(const T& s, const Matrix<T>& a) {
  Matrix<T> c = a;
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j) c(i, j) *= s;
  return c;
}

/// y = M x.
template <class T>
std::vector<T> apply(const Matrix<T>& m, std::span<const T> x) {
  if (x.size() != m.cols()) throw Error(ErrorCode::ShapeMismatch, "matrix-vector product");
  std::vector<T> y(m.rows());
  for (Index i = 0; i < m.rows(); ++i) {
    T acc{};
    auto r = m.row(i);
    for (Index j = 0; j < m.cols(); ++j) acc += r[j] * x[j];
    y[i] = acc;
  }
  return y;
}

/// Largest absolute entry as a double.
template <class T>
double max_abs(const Matrix<T>& m) {
  double best = 0.0;
  for (const T& v : m.data())
    best = std::max(best, ScalarTraits<T>::to_double(ScalarTraits<T>::abs(v)));
  return best;
}

template <class T>
double max_abs_diff(const Matrix<T>& a, const Matrix<T>& b) {
  require_same_shape(a, b, "max_abs_diff");
  double best = 0.0;
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      best = std::max(best, ScalarTraits<T>::to_double(ScalarTraits<T>::abs(a(i, j) - b(i, j))));
  return best;
}

/// Throws NonFinite on NaN/Inf entries.
template <class T>
void require_finite(const Matrix<T>& m) {
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j)
      if (!ScalarTraits<T>::is_finite(m(i, j)))
        throw Error(ErrorCode::NonFinite, "matrix entry is not finite", Location{i, j});
}

template <class To, class From>
Matrix<To> convert(const Matrix<From>& m) {
  if constexpr (std::is_same_v<To, From>) {
    return m;
  } else {
    Matrix<To> out(m.rows(), m.cols());
    for (Index i = 0; i < m.rows(); ++i)
      for (Index j = 0; j < m.cols(); ++j) {
        if constexpr (std::is_same_v<To, double>)
          out(i, j) = ScalarTraits<From>::to_double(m(i, j));
        else
          out(i, j) = ScalarTraits<To>::from_double(ScalarTraits<From>::to_double(m(i, j)));
      }
    return out;
  }
}

// ---------------------------------------------------------------------------
// Matrix<T> members.

template <class T>
Matrix<T>::Matrix(std::initializer_list<std::initializer_list<T>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw Error(ErrorCode::ShapeMismatch, "ragged matrix literal");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

template <class T>
Matrix<T> Matrix<T>::identity(Index n) {
  Matrix m(n, n);
  for (Index i = 0; i < n; ++i) m(i, i) = T(1);
  return m;
}

template <class T>
Matrix<T> Matrix<T>::from_rows(const std::vector<std::vector<T>>& rows) {
  const Index r = rows.size();
  const Index c = r == 0 ? 0 : rows.front().size();
  Matrix m(r, c);
  for (Index i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw Error(ErrorCode::ShapeMismatch, "ragged matrix rows");
    std::copy(rows[i].begin(), rows[i].end(), m.row(i).begin());
  }
  return m;
}

template <class T>
Matrix<T> Matrix<T>::transpose() const {
  Matrix t(cols_, rows_);
  for (Index i = 0; i < rows_; ++i)
    for (Index j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

template <class T>
std::vector<T> Matrix<T>::column(Index j) const {
  std::vector<T> c(rows_);
  for (Index i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

// ---------------------------------------------------------------------------
// SparseMatrix<T> members.

template <class T>
SparseMatrix<T>::SparseMatrix(Index rows, Index cols, std::vector<Triple> triples)
    : rows_(rows), cols_(cols) {
  for (const auto& t : triples) {
    if (t.row >= rows || t.col >= cols)
      throw Error(ErrorCode::ShapeMismatch, "coordinate outside matrix shape", Location{t.row, t.col});
    if (!ScalarTraits<T>::is_finite(t.value))
      throw Error(ErrorCode::NonFinite, "matrix entry is not finite", Location{t.row, t.col});
  }
  std::stable_sort(triples.begin(), triples.end(), [](const Triple& a, const Triple& b) {
    return std::tie(a.row, a.col) < std::tie(b.row, b.col);
  });
  row_ptr_.assign(rows + 1, 0);
  for (Index p = 0; p < triples.size();) {
    Index q = p;
    T sum{};
    while (q < triples.size() && triples[q].row == triples[p].row &&
           triples[q].col == triples[p].col) {
      sum += triples[q].value;
      ++q;
    }
    if (sum != 0) {
      col_idx_.push_back(triples[p].col);
      values_.push_back(sum);
      ++row_ptr_[triples[p].row + 1];
    }
    p = q;
  }
  for (Index i = 0; i < rows; ++i) row_ptr_[i + 1] += row_ptr_[i];
}

template <class T>
SparseMatrix<T>::SparseMatrix(const Matrix<T>& dense)
    : rows_(dense.rows()), cols_(dense.cols()) {
  row_ptr_.assign(rows_ + 1, 0);
  for (Index i = 0; i < rows_; ++i) {
    for (Index j = 0; j < cols_; ++j) {
      if (dense(i, j) != 0) {
        col_idx_.push_back(j);
        values_.push_back(dense(i, j));
      }
    }
    row_ptr_[i + 1] = values_.size();
  }
}

template <class T>
T SparseMatrix<T>::at(Index i, Index j) const {
  auto cols = row_cols(i);
  auto it = std::lower_bound(cols.begin(), cols.end(), j);
  if (it == cols.end() || *it != j) return T{};
  return row_values(i)[static_cast<Index>(it - cols.begin())];
}

template <class T>
Matrix<T> SparseMatrix<T>::to_dense() const {
  Matrix<T> m(rows_, cols_);
  for (Index i = 0; i < rows_; ++i) {
    auto cols = row_cols(i);
    auto vals = row_values(i);
    for (Index p = 0; p < cols.size(); ++p) m(i, cols[p]) = vals[p];
  }
  return m;
}

template <class T>
std::vector<typename SparseMatrix<T>::Triple> SparseMatrix<T>::triples() const {
  std::vector<Triple> out;
  out.reserve(nnz());
  for (Index i = 0; i < rows_; ++i) {
    auto cols = row_cols(i);
    auto vals = row_values(i);
    for (Index p = 0; p < cols.size(); ++p) out.push_back({i, cols[p], vals[p]});
  }
  return out;
}

template <class T>
void SparseMatrix<T>::left_multiply(std::span<const T> v, std::span<T> out) const {
  assert(v.size() == rows_ && out.size() == cols_);
  std::fill(out.begin(), out.end(), T{});
  for (Index i = 0; i < rows_; ++i) {
    const T& vi = v[i];
    if (vi == 0) continue;
    const Index end = row_ptr_[i + 1];
    for (Index p = row_ptr_[i]; p < end; ++p) out[col_idx_[p]] += vi * values_[p];
  }
}

template <class T>
SparseMatrix<T> SparseMatrix<T>::scaled(const T& factor) const {
  SparseMatrix out = *this;
  for (auto& v : out.values_) v *= factor;
  return out;
}

}  // namespace cpl
