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

#include "cpl/reconstruct.hpp"

#include <algorithm>
#include <cmath>

namespace cpl {

template <class V>
void PiecewiseConstant<V>::validate() const {
  if (breakpoints.empty() || breakpoints.front() != 0.0)
    throw Error(ErrorCode::InvalidArgument, "schedules start at t = 0");
  for (Index q = 1; q < breakpoints.size(); ++q)
    if (!(breakpoints[q] > breakpoints[q - 1]))
      throw Error(ErrorCode::InvalidArgument, "breakpoints must increase strictly", Location{q, std::nullopt});
  if (values.size() != breakpoints.size())
    throw Error(ErrorCode::InvalidArgument, "one value per breakpoint is required");
}

template <class V>
Index PiecewiseConstant<V>::piece_index(double t) const {
  auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), t);
  if (it == breakpoints.begin()) return 0;
  return static_cast<Index>(it - breakpoints.begin()) - 1;
}

template <class V>
const V& PiecewiseConstant<V>::at(double t) const {
  return values[piece_index(t)];
}

template struct PiecewiseConstant<Matrix<double>>;
template struct PiecewiseConstant<Matrix<Rational>>;
template struct PiecewiseConstant<std::vector<double>>;

namespace {

template <class T>
bool above_floor(const T& den) {
  if constexpr (ScalarTraits<T>::exact) return den > 0;
  else return den > kReconstructionDenominatorFloor;
}

template <class T>
double to_d(const T& v) {
  return ScalarTraits<T>::to_double(v);
}

}  // namespace

template <class T>
PiecewiseMatrixControl<T> reconstruct_control(const PiecewiseMatrixControl<T>& r,
                                              const ReducedPcs<T>& reduced,
                                              const Pcs<T>& pcs, const Tolerance& tol) {
  r.validate();
  const auto& lo = pcs.bounds.lower;
  const auto& hi = pcs.bounds.upper;
  const Index n = lo.rows();
  const Index k = reduced.L.rows();
  const auto& block_of = reduced.partition.block_of;
  const auto& blocks = reduced.partition.blocks;
  const auto& lambda = reduced.factors.lambda;
  if (reduced.L.cols() != n) throw Error(ErrorCode::ShapeMismatch, "lumping does not match the system");

  // den(b, j) = sum_{k in H_b} (Mhi - Mlo)_{kj}, M = D A D^{-1}.
  Matrix<T> den(k, n);
  for (Index b = 0; b < k; ++b)
    for (Index j = 0; j < n; ++j) {
      T s{};
      for (const Index q : blocks[b]) s += lambda[q] * (hi(q, j) - lo(q, j));
      den(b, j) = s / lambda[j];
    }

  PiecewiseMatrixControl<T> out;
  out.breakpoints = r.breakpoints;
  for (Index piece = 0; piece < r.values.size(); ++piece) {
    const Matrix<T>& rv = r.values[piece];
    if (rv.rows() != k || rv.cols() != k)
      throw Error(ErrorCode::ShapeMismatch, "reduced control has the wrong shape");
    if (!reduced.bounds.contains(rv, tol.compare_abs))
      throw Error(ErrorCode::ControlOutOfBounds, "reduced control leaves [R_lo; R_hi]",
                  Location{piece, std::nullopt});

    Matrix<T> a = lo;
    for (Index i = 0; i < n; ++i) {
      const Index bi = block_of[i];
      if (bi == 0) continue;
      for (Index j = 0; j < n; ++j) {
        const Index bj = block_of[j];
        if (bj == 0) continue;
        const T& d = den(bi - 1, j);
        if (!above_floor(d)) continue;
        const T excess = rv(bi - 1, bj - 1) - reduced.bounds.lower(bi - 1, bj - 1);
        a(i, j) = lo(i, j) + (hi(i, j) - lo(i, j)) * excess / d;
      }
    }
    out.values.push_back(std::move(a));
  }
  return out;
}

template <class T>
ReconstructionReport verify_reconstruction(const PiecewiseMatrixControl<T>& a,
                                           const PiecewiseMatrixControl<T>& r,
                                           const ReducedPcs<T>& reduced, const Pcs<T>& pcs,
                                           double tol) {
  if (a.breakpoints != r.breakpoints || a.values.size() != r.values.size())
    throw Error(ErrorCode::GridMismatch, "schedules must share breakpoints");
  ReconstructionReport report;
  report.passed = true;
  const auto& lo = pcs.bounds.lower;
  const auto& hi = pcs.bounds.upper;
  for (Index q = 0; q < a.values.size(); ++q) {
    ReconstructionPieceReport piece;
    piece.start = a.breakpoints[q];
    const Matrix<T>& av = a.values[q];
    for (Index i = 0; i < av.rows(); ++i)
      for (Index j = 0; j < av.cols(); ++j) {
        piece.bound_violation = std::max(piece.bound_violation, to_d(T(lo(i, j) - av(i, j))));
        piece.bound_violation = std::max(piece.bound_violation, to_d(T(av(i, j) - hi(i, j))));
      }
    piece.within_bounds = piece.bound_violation <= tol;
    piece.reduced_within_bounds = reduced.bounds.contains(r.values[q], tol);
    const Matrix<T> projected = reduced.L * av * reduced.L_pinv;
    piece.projection_error = max_abs_diff(projected, r.values[q]);
    piece.lumping_residual = rowspan_residual(reduced.L, reduced.L_pinv, reduced.L * av);
    piece.passed = piece.within_bounds && piece.reduced_within_bounds &&
                   piece.projection_error <= tol && piece.lumping_residual <= tol;
    report.passed = report.passed && piece.passed;
    report.max_projection_error = std::max(report.max_projection_error, piece.projection_error);
    report.pieces.push_back(piece);
  }
  return report;
}

#define CPL_INSTANTIATE(T)                                                                     \
  template PiecewiseMatrixControl<T> reconstruct_control(const PiecewiseMatrixControl<T>&,     \
                                                         const ReducedPcs<T>&, const Pcs<T>&,  \
                                                         const Tolerance&);                    \
  template ReconstructionReport verify_reconstruction(const PiecewiseMatrixControl<T>&,       \
                                                      const PiecewiseMatrixControl<T>&,       \
                                                      const ReducedPcs<T>&, const Pcs<T>&,    \
                                                      double);

CPL_INSTANTIATE(double)
CPL_INSTANTIATE(Rational)

#undef CPL_INSTANTIATE

}  // namespace cpl
