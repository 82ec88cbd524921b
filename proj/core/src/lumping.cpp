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

#include "cpl/lumping.hpp"

#include <algorithm>
#include <cmath>

namespace cpl {

TimeoutExceeded::TimeoutExceeded(std::vector<ClosureStep> partial, Index basis_size)
    : Error(ErrorCode::TimeoutExceeded,
            "closure budget exhausted with " + std::to_string(basis_size) + " basis rows"),
      partial_(std::move(partial)),
      basis_size_(basis_size) {}

namespace {

template <class T>
void check_inputs(Index gen_rows, Index gen_cols, Index n, const Matrix<T>& output) {
  if (gen_rows != n || gen_cols != n)
    throw Error(ErrorCode::ShapeMismatch, "generators must be square and share one dimension");
  (void)output;
}

template <class T>
bool is_zero_matrix(const Matrix<T>& m) {
  for (const T& v : m.data())
    if (v != 0) return false;
  return true;
}

// A Gram-Schmidt pass that keeps more than this share of the norm needs no
// second pass.
constexpr double kReorthogonalize = 0.7071;
// Basis rows whose products are reduced in one sweep over the basis.
constexpr Index kBatchHeads = 8;

/// Closure basis. Exact scalars keep an echelon basis: every row has a pivot
/// column, is scaled to 1 there, and is zero at the pivots of earlier rows.
/// Floating point keeps an orthonormal basis (modified Gram-Schmidt,
/// repeated when a pass cancels most of the vector).
template <class T>
class ClosureBasis {
 public:
  ClosureBasis(Index n, const Tolerance& tol) : n_(n), tol_(tol) {}

  Index size() const noexcept { return count_; }
  std::span<const T> row(Index i) const { return {rows_.data() + i * n_, n_}; }

  /// Reduces each candidate against the basis and adjoins the independent
  /// ones in order, calling decide(i, added) after each decision. Stops once
  /// the basis spans the whole space.
  template <class Decide>
  void adjoin(std::vector<std::vector<T>>& ws, Decide&& decide) {
    if constexpr (ScalarTraits<T>::exact) {
      for (Index i = 0; i < ws.size() && count_ < n_; ++i) decide(i, adjoin_echelon(ws[i]));
    } else {
      adjoin_orthonormal(ws, decide);
    }
  }

  Matrix<T> to_matrix() const {
    Matrix<T> m(size(), n_);
    std::copy(rows_.begin(), rows_.end(), m.row(0).begin());
    return m;
  }

 private:
  bool adjoin_echelon(std::vector<T>& w) {
    for (Index j = 0; j < pivots_.size(); ++j) {
      const T c = w[pivots_[j]];
      if (c == 0) continue;
      const T* b = rows_.data() + j * n_;
      for (Index t = 0; t < n_; ++t) w[t] -= c * b[t];
      w[pivots_[j]] = T(0);
    }
    Index pivot = n_;
    for (Index t = 0; t < n_; ++t)
      if (w[t] != 0) {
        pivot = t;
        break;
      }
    if (pivot == n_) return false;
    const T inv = T(1) / w[pivot];
    for (auto& x : w) x *= inv;
    w[pivot] = T(1);
    append(w);
    pivots_.push_back(pivot);
    return true;
  }

  /// Orthonormal batch step. The candidates are first projected out of the
  /// existing rows in one sweep (repeated when a pass cancels most of a
  /// candidate), then out of each other in order.
  template <class Decide>
  void adjoin_orthonormal(std::vector<std::vector<T>>& ws, Decide&& decide) {
    const Index m = ws.size();
    const Index base = count_;
    std::vector<double> before(m), after(m);
    std::vector<Index> active;
    for (Index i = 0; i < m; ++i) {
      before[i] = after[i] = norm(ws[i]);
      if (before[i] > 0.0) active.push_back(i);
    }
    for (int pass = 0; pass < 2 && !active.empty(); ++pass) {
      for (Index j = 0; j < base; ++j) {
        const T* q = rows_.data() + j * n_;
        for (Index i : active) subtract_projection(ws[i], q);
      }
      std::vector<Index> again;
      for (Index i : active) {
        const double start = after[i];
        after[i] = norm(ws[i]);
        if (!(after[i] > kReorthogonalize * start)) again.push_back(i);
      }
      active = std::move(again);
    }
    for (Index i = 0; i < m && count_ < n_; ++i) {
      auto& w = ws[i];
      bool added = false;
      if (before[i] > 0.0) {
        for (int pass = 0; pass < 2; ++pass)
          for (Index j = base; j < count_; ++j) subtract_projection(w, rows_.data() + j * n_);
        const double residual = norm(w);
        if (residual > tol_.rank_rel * before[i]) {
          for (auto& x : w) x /= residual;
          append(w);
          added = true;
        }
      }
      decide(i, added);
    }
  }

  void subtract_projection(std::vector<T>& w, const T* q) const {
    const T c = dot(w.data(), q, n_);
    if (c == 0) return;
    for (Index t = 0; t < n_; ++t) w[t] -= c * q[t];
  }

  static double dot(const double* a, const double* b, Index n) {
    double s[4] = {0.0, 0.0, 0.0, 0.0};
    Index t = 0;
    for (; t + 4 <= n; t += 4)
      for (int l = 0; l < 4; ++l) s[l] += a[t + l] * b[t + l];
    for (; t < n; ++t) s[0] += a[t] * b[t];
    return (s[0] + s[1]) + (s[2] + s[3]);
  }

  void append(const std::vector<T>& w) {
    rows_.insert(rows_.end(), w.begin(), w.end());
    ++count_;
  }

  static double norm(const std::vector<T>& v) {
    double s = 0.0;
    for (const T& x : v) {
      const double d = ScalarTraits<T>::to_double(x);
      s += d * d;
    }
    return std::sqrt(s);
  }

  Index n_;
  Tolerance tol_;
  Index count_ = 0;
  std::vector<T> rows_;
  std::vector<Index> pivots_;
};

}  // namespace

template <class T>
LumpingResult<T> minimal_constrained_lumping(std::span<const SparseMatrix<T>> generators,
                                             const Matrix<T>& output,
                                             const LumpingOptions& options) {
  options.tol.validate();
  const Index n = output.cols();
  for (const auto& g : generators) check_inputs(g.rows(), g.cols(), n, output);
  if (output.rows() == 0 || is_zero_matrix(output))
    throw Error(ErrorCode::InvalidArgument, "output matrix must be non-zero");

  using clock = std::chrono::steady_clock;
  const auto start = clock::now();
  auto expired = [&] { return options.budget && clock::now() - start > *options.budget; };

  LumpingResult<T> result;
  result.n = n;
  const auto seeds = rref(output, options.tol);

  ClosureBasis<T> basis(n, options.tol);
  std::vector<std::vector<T>> batch;
  for (Index r = 0; r < seeds.rank; ++r) {
    auto row = seeds.reduced.row(r);
    batch.emplace_back(row.begin(), row.end());
  }
  basis.adjoin(batch, [](Index, bool) {});

  const Index width = generators.size();
  std::vector<T> current(n);
  for (Index head = 0; head < basis.size() && basis.size() < n;) {
    const Index heads = std::min(kBatchHeads, basis.size() - head);
    batch.assign(heads * width, std::vector<T>(n));
    for (Index h = 0; h < heads; ++h) {
      auto row = basis.row(head + h);
      current.assign(row.begin(), row.end());
      for (Index g = 0; g < width; ++g) {
        if (expired()) throw TimeoutExceeded(std::move(result.closure_trace), basis.size());
        generators[g].left_multiply(current, batch[h * width + g]);
      }
    }
    basis.adjoin(batch, [&](Index i, bool added) {
      if (options.record_trace)
        result.closure_trace.push_back({i % width, head + i / width, basis.size(), added});
    });
    head += heads;
  }

  if (basis.size() == n) {
    result.L = Matrix<T>::identity(n);
    result.k = n;
    return result;
  }

  const std::function<bool()> stop = expired;
  auto canonical = rref_interruptible(basis.to_matrix(), options.tol, stop);
  if (!canonical) throw TimeoutExceeded(std::move(result.closure_trace), basis.size());
  result.k = canonical->rank;
  result.L = Matrix<T>(result.k, n);
  for (Index r = 0; r < result.k; ++r) {
    auto src = canonical->reduced.row(r);
    std::copy(src.begin(), src.end(), result.L.row(r).begin());
  }
  return result;
}

template <class T>
LumpingResult<T> minimal_constrained_lumping(const std::vector<Matrix<T>>& generators,
                                             const Matrix<T>& output,
                                             const LumpingOptions& options) {
  std::vector<SparseMatrix<T>> sparse;
  sparse.reserve(generators.size());
  for (const auto& g : generators) {
    check_inputs(g.rows(), g.cols(), output.cols(), output);
    sparse.emplace_back(g);
  }
  return minimal_constrained_lumping<T>(std::span<const SparseMatrix<T>>(sparse), output, options);
}

template <class T>
Index brute_force_lumping_oracle(const std::vector<Matrix<T>>& generators,
                                 const Matrix<T>& output, const Tolerance& tol) {
  const Index n = output.cols();
  if (n > kOracleMaxDimension)
    throw Error(ErrorCode::DimensionTooLarge,
                "oracle limited to n <= " + std::to_string(kOracleMaxDimension));
  for (const auto& g : generators) check_inputs(g.rows(), g.cols(), n, output);

  std::vector<std::vector<T>> basis;
  auto dot = [n](const std::vector<T>& a, const std::vector<T>& b) {
    T s{};
    for (Index i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
  };
  auto norm = [&](const std::vector<T>& a) {
    return std::sqrt(ScalarTraits<T>::to_double(dot(a, a)));
  };
  // Classical Gram-Schmidt, applied twice.
  auto absorb = [&](std::vector<T> w) {
    const double before = norm(w);
    if (before == 0.0) return false;
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& q : basis) {
        const T c = dot(w, q) / dot(q, q);
        for (Index i = 0; i < n; ++i) w[i] -= c * q[i];
      }
    if constexpr (ScalarTraits<T>::exact) {
      if (dot(w, w) == 0) return false;
    } else {
      const double after = norm(w);
      if (!(after > tol.rank_rel * before)) return false;
      for (auto& x : w) x /= after;
    }
    basis.push_back(std::move(w));
    return true;
  };

  for (Index r = 0; r < output.rows(); ++r) {
    auto row = output.row(r);
    absorb(std::vector<T>(row.begin(), row.end()));
  }

  bool grew = true;
  while (grew && basis.size() < n) {
    grew = false;
    const auto snapshot = basis;
    for (const auto& q : snapshot) {
      for (const auto& g : generators) {
        std::vector<T> w(n);
        for (Index i = 0; i < n; ++i) {
          if (q[i] == 0) continue;
          for (Index j = 0; j < n; ++j) w[j] += q[i] * g(i, j);
        }
        grew = absorb(std::move(w)) || grew;
      }
    }
  }
  return basis.size();
}

#define CPL_INSTANTIATE(T)                                                                    \
  template LumpingResult<T> minimal_constrained_lumping(std::span<const SparseMatrix<T>>,     \
                                                        const Matrix<T>&,                     \
                                                        const LumpingOptions&);               \
  template LumpingResult<T> minimal_constrained_lumping(const std::vector<Matrix<T>>&,        \
                                                        const Matrix<T>&,                     \
                                                        const LumpingOptions&);               \
  template Index brute_force_lumping_oracle(const std::vector<Matrix<T>>&, const Matrix<T>&, \
                                            const Tolerance&);

CPL_INSTANTIATE(double)
CPL_INSTANTIATE(Rational)

#undef CPL_INSTANTIATE

}  // namespace cpl
