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

#include "cpl/linalg.hpp"

#include <cmath>

namespace cpl {

void Tolerance::validate() const {
  if (!(rank_rel > 0.0) || !(compare_abs > 0.0) || !std::isfinite(rank_rel) ||
      !std::isfinite(compare_abs))
    throw Error(ErrorCode::InvalidArgument, "tolerances must be finite and strictly positive");
}

namespace {

template <class T>
double abs_d(const T& x) {
  return ScalarTraits<T>::to_double(ScalarTraits<T>::abs(x));
}

template <class T>
std::optional<RrefResult<T>> rref_impl(const Matrix<T>& m, const Tolerance& tol,
                                       const std::function<bool()>* should_stop) {
  constexpr bool exact = ScalarTraits<T>::exact;
  Matrix<T> r = m;
  const Index rows = r.rows();
  const Index cols = r.cols();

  std::vector<double> row_scale(rows, 0.0);
  if constexpr (!exact) {
    for (Index i = 0; i < rows; ++i)
      for (const double v : r.row(i)) row_scale[i] = std::max(row_scale[i], std::fabs(v));
  }

  RrefResult<T> out;
  Index lead = 0;
  for (Index c = 0; c < cols && lead < rows; ++c) {
    if (should_stop && (c % 16) == 0 && (*should_stop)()) return std::nullopt;

    Index best = rows;
    if constexpr (exact) {
      for (Index i = lead; i < rows; ++i)
        if (r(i, c) != 0) {
          best = i;
          break;
        }
    } else {
      double best_abs = 0.0;
      for (Index i = lead; i < rows; ++i) {
        const double a = std::fabs(r(i, c));
        if (a > tol.rank_rel * row_scale[i] && a > best_abs) {
          best = i;
          best_abs = a;
        }
      }
    }

    if (best == rows) {
      if constexpr (!exact)
        for (Index i = lead; i < rows; ++i) r(i, c) = 0.0;
      continue;
    }

    if (best != lead) {
      auto a = r.row(best);
      auto b = r.row(lead);
      std::swap_ranges(a.begin(), a.end(), b.begin());
      std::swap(row_scale[best], row_scale[lead]);
    }

    auto prow = r.row(lead);
    const T inv = T(1) / prow[c];
    for (Index j = c + 1; j < cols; ++j) prow[j] *= inv;
    prow[c] = T(1);

    for (Index i = 0; i < rows; ++i) {
      if (i == lead) continue;
      auto row = r.row(i);
      const T f = row[c];
      if (f == 0) continue;
      for (Index j = c + 1; j < cols; ++j) row[j] -= f * prow[j];
      row[c] = T(0);
    }
    if constexpr (!exact) {
      for (Index i = lead + 1; i < rows; ++i)
        if (std::fabs(r(i, c)) <= tol.rank_rel * row_scale[i]) r(i, c) = 0.0;
    }
    out.pivot_cols.push_back(c);
    ++lead;
  }

  if constexpr (!exact) {
    // Anything still present below `lead` is sub-threshold noise.
    for (Index i = lead; i < rows; ++i)
      for (auto& v : r.row(i)) v = 0.0;
    for (Index i = 0; i < lead; ++i) {
      auto row = r.row(i);
      double mx = 0.0;
      for (const double v : row) mx = std::max(mx, std::fabs(v));
      for (auto& v : row)
        if (std::fabs(v) <= tol.rank_rel * mx) v = 0.0;
    }
  }

  out.rank = lead;
  out.reduced = std::move(r);
  return out;
}

template <class T>
double norm2(std::span<const T> v) {
  double s = 0.0;
  for (const T& x : v) {
    const double d = ScalarTraits<T>::to_double(x);
    s += d * d;
  }
  return std::sqrt(s);
}

}  // namespace

template <class T>
RrefResult<T> rref(const Matrix<T>& m, const Tolerance& tol) {
  return *rref_impl(m, tol, nullptr);
}

template <class T>
std::optional<RrefResult<T>> rref_interruptible(const Matrix<T>& m, const Tolerance& tol,
                                                const std::function<bool()>& should_stop) {
  return rref_impl(m, tol, &should_stop);
}

template <class T>
bool has_disjoint_row_supports(const Matrix<T>& m) {
  for (Index j = 0; j < m.cols(); ++j) {
    int nonzero = 0;
    for (Index i = 0; i < m.rows(); ++i)
      if (m(i, j) != 0 && ++nonzero > 1) return false;
  }
  return true;
}

template <class T>
Matrix<T> solve_right(const Matrix<T>& b, const Matrix<T>& g, const Tolerance& tol) {
  constexpr bool exact = ScalarTraits<T>::exact;
  const Index k = g.rows();
  if (g.cols() != k) throw Error(ErrorCode::NotSquare, "solve_right: system matrix not square");
  if (b.cols() != k) throw Error(ErrorCode::ShapeMismatch, "solve_right: right-hand side width");
  // X G = B  <=>  G^T X^T = B^T.
  Matrix<T> a = g.transpose();
  Matrix<T> rhs = b.transpose();
  const Index p = rhs.cols();
  const double scale = max_abs(a);
  for (Index c = 0; c < k; ++c) {
    Index best = k;
    double best_abs = 0.0;
    for (Index i = c; i < k; ++i) {
      if constexpr (exact) {
        if (a(i, c) != 0) {
          best = i;
          break;
        }
      } else {
        const double v = std::fabs(a(i, c));
        if (v > best_abs) {
          best = i;
          best_abs = v;
        }
      }
    }
    if constexpr (!exact) {
      if (best != k && best_abs <= tol.rank_rel * scale) best = k;
    }
    if (best == k) throw Error(ErrorCode::RankDeficient, "solve_right: singular system");
    if (best != c) {
      auto x = a.row(best), y = a.row(c);
      std::swap_ranges(x.begin(), x.end(), y.begin());
      auto u = rhs.row(best), w = rhs.row(c);
      std::swap_ranges(u.begin(), u.end(), w.begin());
    }
    const T inv = T(1) / a(c, c);
    for (Index i = 0; i < k; ++i) {
      if (i == c) continue;
      const T f = a(i, c) * inv;
      if (f == 0) continue;
      for (Index j = c; j < k; ++j) a(i, j) -= f * a(c, j);
      for (Index j = 0; j < p; ++j) rhs(i, j) -= f * rhs(c, j);
    }
  }
  for (Index i = 0; i < k; ++i) {
    const T inv = T(1) / a(i, i);
    for (Index j = 0; j < p; ++j) rhs(i, j) *= inv;
  }
  return rhs.transpose();
}

template <class T>
Matrix<T> right_pseudo_inverse(const Matrix<T>& l, const Tolerance& tol) {
  const Index k = l.rows();
  const Index n = l.cols();
  if (rref(l, tol).rank < k)
    throw Error(ErrorCode::RankDeficient,
                "right pseudo-inverse needs full row rank (" + std::to_string(k) + " rows)");

  if (has_disjoint_row_supports(l)) {
    Matrix<T> pinv(n, k);
    for (Index r = 0; r < k; ++r) {
      T sq{};
      for (const T& v : l.row(r)) sq += v * v;
      for (Index j = 0; j < n; ++j)
        if (l(r, j) != 0) pinv(j, r) = l(r, j) / sq;
    }
    return pinv;
  }
  const Matrix<T> lt = l.transpose();
  return solve_right(lt, l * lt, tol);
}

template <class T>
double rowspan_residual(const Matrix<T>& l, const Matrix<T>& l_pinv, const Matrix<T>& v) {
  if (l.cols() != v.cols())
    throw Error(ErrorCode::ShapeMismatch, "rowspan test: column counts differ");
  const Index k = l.rows();
  const Index n = l.cols();
  double worst = 0.0;
  std::vector<T> coeff(k), resid(n);
  for (Index i = 0; i < v.rows(); ++i) {
    auto row = v.row(i);
    std::fill(coeff.begin(), coeff.end(), T{});
    for (Index j = 0; j < n; ++j) {
      if (row[j] == 0) continue;
      for (Index r = 0; r < k; ++r) coeff[r] += row[j] * l_pinv(j, r);
    }
    std::copy(row.begin(), row.end(), resid.begin());
    for (Index r = 0; r < k; ++r) {
      if (coeff[r] == 0) continue;
      auto lr = l.row(r);
      for (Index j = 0; j < n; ++j) resid[j] -= coeff[r] * lr[j];
    }
    if constexpr (ScalarTraits<T>::exact) {
      for (const T& x : resid)
        if (x != 0) return 1.0;
    } else {
      const double vn = norm2<T>(row);
      if (vn == 0.0) continue;
      worst = std::max(worst, norm2<T>(resid) / vn);
    }
  }
  return worst;
}

template <class T>
bool rowspan_contains(const Matrix<T>& l, const Matrix<T>& l_pinv, const Matrix<T>& v,
                      const Tolerance& tol) {
  const double res = rowspan_residual(l, l_pinv, v);
  if constexpr (ScalarTraits<T>::exact) return res == 0.0;
  return res <= tol.rank_rel;
}

template <class T>
bool rowspan_contains(const Matrix<T>& l, const Matrix<T>& v, const Tolerance& tol) {
  if (l.cols() != v.cols())
    throw Error(ErrorCode::ShapeMismatch, "rowspan test: column counts differ");
  return rowspan_contains(l, right_pseudo_inverse(l, tol), v, tol);
}

template <class T>
bool is_metzler(const Matrix<T>& m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::NotSquare, "Metzler test needs a square matrix");
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j)
      if (i != j && m(i, j) < 0) return false;
  return true;
}

template <class T>
bool is_constrained_lumping(const Matrix<T>& l, const Matrix<T>& a, const Matrix<T>& o,
                            const Tolerance& tol) {
  const Matrix<T> pinv = right_pseudo_inverse(l, tol);
  return rowspan_contains(l, pinv, o, tol) && rowspan_contains(l, pinv, l * a, tol);
}

#define CPL_INSTANTIATE(T)                                                                   \
  template RrefResult<T> rref(const Matrix<T>&, const Tolerance&);                           \
  template std::optional<RrefResult<T>> rref_interruptible(const Matrix<T>&, const Tolerance&, \
                                                           const std::function<bool()>&);    \
  template bool has_disjoint_row_supports(const Matrix<T>&);                                 \
  template Matrix<T> solve_right(const Matrix<T>&, const Matrix<T>&, const Tolerance&);      \
  template Matrix<T> right_pseudo_inverse(const Matrix<T>&, const Tolerance&);               \
  template double rowspan_residual(const Matrix<T>&, const Matrix<T>&, const Matrix<T>&);    \
  template bool rowspan_contains(const Matrix<T>&, const Matrix<T>&, const Matrix<T>&,       \
                                 const Tolerance&);                                          \
  template bool rowspan_contains(const Matrix<T>&, const Matrix<T>&, const Tolerance&);      \
  template bool is_metzler(const Matrix<T>&);                                                \
  template bool is_constrained_lumping(const Matrix<T>&, const Matrix<T>&, const Matrix<T>&, \
                                       const Tolerance&);

CPL_INSTANTIATE(double)
CPL_INSTANTIATE(Rational)

#undef CPL_INSTANTIATE

}  // namespace cpl
