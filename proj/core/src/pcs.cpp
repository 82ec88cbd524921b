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

#include "cpl/pcs.hpp"

#include <cmath>
#include <set>

namespace cpl {

template <class T>
bool IntervalMatrix<T>::contains(const Matrix<T>& a, double slack) const {
  if (a.rows() != lower.rows() || a.cols() != lower.cols()) return false;
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j) {
      const double v = ScalarTraits<T>::to_double(a(i, j));
      if constexpr (ScalarTraits<T>::exact) {
        if (a(i, j) < lower(i, j) || a(i, j) > upper(i, j)) return false;
      } else {
        if (v < lower(i, j) - slack || v > upper(i, j) + slack) return false;
      }
    }
  return true;
}

template <class T>
std::vector<std::vector<T>> ControlSet<T>::vertices() const {
  if (!is_box()) return points;
  std::vector<Index> free;
  for (Index i = 0; i < upper.size(); ++i)
    if (upper[i] != 0) free.push_back(i);
  if (free.size() > 20) throw Error(ErrorCode::BudgetExceeded, "control box has too many vertices");
  std::vector<std::vector<T>> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << free.size()); ++mask) {
    std::vector<T> v(upper.size(), T(0));
    for (Index b = 0; b < free.size(); ++b)
      if (mask & (std::size_t{1} << b)) v[free[b]] = upper[free[b]];
    out.push_back(std::move(v));
  }
  return out;
}

template <class T>
bool ControlSet<T>::contains(std::span<const T> u, double slack) const {
  if (u.size() != dimension()) return false;
  if (is_box()) {
    for (Index i = 0; i < u.size(); ++i) {
      if constexpr (ScalarTraits<T>::exact) {
        if (u[i] < 0 || u[i] > upper[i]) return false;
      } else {
        if (u[i] < -slack || u[i] > upper[i] + slack) return false;
      }
    }
    return true;
  }
  for (const auto& p : points) {
    bool same = true;
    for (Index i = 0; i < u.size() && same; ++i) {
      if constexpr (ScalarTraits<T>::exact) same = u[i] == p[i];
      else same = std::fabs(u[i] - p[i]) <= slack;
    }
    if (same) return true;
  }
  return false;
}

template <class T>
void validate_pcs(const Pcs<T>& p) {
  const Index n = p.bounds.lower.rows();
  auto shape = [](const char* what) { return Error(ErrorCode::ShapeMismatch, what); };
  if (n == 0) throw shape("system dimension must be positive");
  if (p.bounds.lower.cols() != n) throw Error(ErrorCode::NotSquare, "lower bound must be square");
  if (p.bounds.upper.rows() != n || p.bounds.upper.cols() != n)
    throw shape("upper bound shape differs from lower bound");
  if (p.O.cols() != n || p.O.rows() == 0) throw shape("output matrix must be l x n");
  if (p.B.rows() != n) throw shape("input matrix must have n rows");
  if (p.x0 && p.x0->size() != n) throw shape("initial condition must have length n");
  require_finite(p.bounds.lower);
  require_finite(p.bounds.upper);
  require_finite(p.O);
  require_finite(p.B);

  for (const auto* bound : {&p.bounds.lower, &p.bounds.upper})
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j)
        if (i != j && (*bound)(i, j) < 0)
          throw Error(ErrorCode::NotMetzler,
                      std::string(bound == &p.bounds.lower ? "lower" : "upper") +
                          " bound has a negative off-diagonal entry",
                      Location{i, j});
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      if (p.bounds.lower(i, j) > p.bounds.upper(i, j))
        throw Error(ErrorCode::BoundsInverted, "lower bound exceeds upper bound", Location{i, j});
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < p.B.cols(); ++j)
      if (p.B(i, j) < 0) throw Error(ErrorCode::NegativeInput, "input matrix entry is negative", Location{i, j});
  if (p.x0)
    for (Index i = 0; i < n; ++i)
      if ((*p.x0)[i] < 0) throw Error(ErrorCode::NegativeInitial, "initial condition entry is negative", Location{i, std::nullopt});

  const auto& U = p.U;
  if (U.is_box()) {
    if (U.upper.size() != p.B.cols()) throw shape("control box dimension must equal cols(B)");
    for (Index i = 0; i < U.upper.size(); ++i)
      if (U.upper[i] < 0)
        throw Error(ErrorCode::InvalidArgument, "control box upper bound is negative", Location{i, std::nullopt});
  } else {
    bool has_origin = false;
    for (const auto& pt : U.points) {
      if (pt.size() != p.B.cols()) throw shape("control point dimension must equal cols(B)");
      bool zero = true;
      for (const T& v : pt) {
        if (v < 0) throw Error(ErrorCode::InvalidArgument, "control points must be non-negative");
        zero = zero && v == 0;
      }
      has_origin = has_origin || zero;
    }
    if (!has_origin) throw Error(ErrorCode::InvalidArgument, "control set must contain the origin");
  }
}

template <class T>
ReducedPcs<T> reduce_pcs(const Pcs<T>& p, const Matrix<T>& l, const Tolerance& tol) {
  validate_pcs(p);
  if (l.cols() != p.n()) throw Error(ErrorCode::ShapeMismatch, "lumping width differs from system dimension");
  const auto verdict = check_proper(l, tol);
  if (verdict.kind == VerdictKind::GeneralLumping)
    throw Error(ErrorCode::NotProper, "reduction requires a proper lumping");

  ReducedPcs<T> r;
  r.L = l;
  r.L_pinv = right_pseudo_inverse(l, tol);
  r.partition = *verdict.partition;
  r.factors = *verdict.factors;

  auto require = [&](const Matrix<T>& v, const char* what) {
    const double res = rowspan_residual(l, r.L_pinv, v);
    const bool ok = ScalarTraits<T>::exact ? res == 0.0 : res <= tol.rank_rel;
    if (!ok)
      throw Error(ErrorCode::NotALumping,
                  std::string(what) + " leaves rowspan(L); relative residual " + std::to_string(res));
  };
  require(p.O, "output matrix");
  require(l * p.bounds.lower, "lower bound");
  require(l * p.bounds.upper, "upper bound");

  r.bounds.lower = l * p.bounds.lower * r.L_pinv;
  r.bounds.upper = l * p.bounds.upper * r.L_pinv;
  r.O = p.O * r.L_pinv;
  r.B = l * p.B;
  r.U = p.U;
  if (p.x0) r.y0 = apply(l, std::span<const T>(*p.x0));

  r.metzler_preserved = is_metzler(r.bounds.lower) && is_metzler(r.bounds.upper);
  r.order_preserved = true;
  for (Index i = 0; i < r.bounds.lower.rows(); ++i)
    for (Index j = 0; j < r.bounds.lower.cols(); ++j)
      if (r.bounds.lower(i, j) > r.bounds.upper(i, j)) r.order_preserved = false;
  if (!r.metzler_preserved || !r.order_preserved)
    throw Error(ErrorCode::InvalidArgument, "reduced bounds are not an ordered Metzler interval");
  return r;
}

template <class T>
LumpingResult<T> lump_pcs(const Pcs<T>& p, const LumpingOptions& options) {
  validate_pcs(p);
  return minimal_constrained_lumping<T>(std::vector<Matrix<T>>{p.bounds.lower, p.bounds.upper},
                                        p.O, options);
}

template <class To, class From>
Pcs<To> convert(const Pcs<From>& p) {
  auto vec = [](const std::vector<From>& v) {
    std::vector<To> out;
    for (const From& x : v) {
      if constexpr (std::is_same_v<To, double>) out.push_back(ScalarTraits<From>::to_double(x));
      else out.push_back(ScalarTraits<To>::from_double(ScalarTraits<From>::to_double(x)));
    }
    return out;
  };
  Pcs<To> q;
  q.bounds.lower = convert<To>(p.bounds.lower);
  q.bounds.upper = convert<To>(p.bounds.upper);
  q.O = convert<To>(p.O);
  q.B = convert<To>(p.B);
  q.U.upper = vec(p.U.upper);
  for (const auto& pt : p.U.points) q.U.points.push_back(vec(pt));
  if (p.x0) q.x0 = vec(*p.x0);
  return q;
}

#define CPL_INSTANTIATE(T)                                                                \
  template struct IntervalMatrix<T>;                                                      \
  template struct ControlSet<T>;                                                          \
  template void validate_pcs(const Pcs<T>&);                                              \
  template ReducedPcs<T> reduce_pcs(const Pcs<T>&, const Matrix<T>&, const Tolerance&);   \
  template LumpingResult<T> lump_pcs(const Pcs<T>&, const LumpingOptions&);

CPL_INSTANTIATE(double)
CPL_INSTANTIATE(Rational)

template Pcs<double> convert<double, Rational>(const Pcs<Rational>&);
template Pcs<Rational> convert<Rational, double>(const Pcs<double>&);
template Pcs<double> convert<double, double>(const Pcs<double>&);

#undef CPL_INSTANTIATE

}  // namespace cpl
