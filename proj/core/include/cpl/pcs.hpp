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

#include <optional>
#include <vector>

#include "cpl/lumping.hpp"
#include "cpl/proper.hpp"

namespace cpl {

/// Entrywise interval [lower; upper] of equal-shape matrices.
template <class T>
struct IntervalMatrix {
  Matrix<T> lower;
  Matrix<T> upper;

  bool contains(const Matrix<T>& a, double slack = 0.0) const;
};

/// Admissible set U for the exogenous input: either the box [0, upper] or an
/// explicit finite point set that must contain the origin.
template <class T>
struct ControlSet {
  std::vector<T> upper;
  std::vector<std::vector<T>> points;

  static ControlSet box(std::vector<T> upper) { return {std::move(upper), {}}; }
  static ControlSet finite(std::vector<std::vector<T>> pts) { return {{}, std::move(pts)}; }
  /// U = {0} in dimension m.
  static ControlSet origin(Index m = 1) { return box(std::vector<T>(m, T(0))); }

  bool is_box() const noexcept { return points.empty(); }
  Index dimension() const noexcept { return is_box() ? upper.size() : points.front().size(); }
  /// Box corners (deduplicated for zero-width sides, in binary counting
  /// order with the origin first) or the listed points.
  std::vector<std::vector<T>> vertices() const;
  bool contains(std::span<const T> u, double slack = 0.0) const;
};

/// Positive controlled system dx/dt = A(t) x + B u(t), z = O x with
/// A(t) in [lower; upper] Metzler, B >= 0 and u(t) in U.
template <class T>
struct Pcs {
  IntervalMatrix<T> bounds;
  Matrix<T> O;
  Matrix<T> B;
  ControlSet<T> U;
  std::optional<std::vector<T>> x0;

  Index n() const noexcept { return bounds.lower.rows(); }
  Index m() const noexcept { return B.cols(); }
  Index l() const noexcept { return O.rows(); }
};

/// Throws on the first violated invariant: ShapeMismatch, NotMetzler(i,j),
/// BoundsInverted(i,j), NegativeInput(i,j), NegativeInitial(i), or
/// InvalidArgument for a malformed control set.
template <class T>
void validate_pcs(const Pcs<T>& p);

template <class T>
struct ReducedPcs {
  IntervalMatrix<T> bounds;  ///< [L lower L^+; L upper L^+]
  Matrix<T> O;               ///< O L^+
  Matrix<T> B;               ///< L B
  ControlSet<T> U;
  std::optional<std::vector<T>> y0;  ///< L x0

  Matrix<T> L;
  Matrix<T> L_pinv;
  BlockPartition partition;
  CdFactorization<T> factors;
  bool metzler_preserved = false;
  bool order_preserved = false;

  Pcs<T> as_pcs() const { return {bounds, O, B, U, y0}; }
};

/// Reduced PCS of `p` under the proper lumping L. Requires L to be proper
/// (NotProper otherwise), a constrained lumping of both bounds and to satisfy
/// O = O L^+ L (NotALumping otherwise, naming the failing bound and its
/// residual).
template <class T>
ReducedPcs<T> reduce_pcs(const Pcs<T>& p, const Matrix<T>& l, const Tolerance& tol = {});

template <class T>
ReducedPcs<T> reduce_pcs(const Pcs<T>& p, const LumpingResult<T>& lump,
                         const Tolerance& tol = {}) {
  return reduce_pcs(p, lump.L, tol);
}

/// Minimal constrained lumping of the two bounds with respect to O.
template <class T>
LumpingResult<T> lump_pcs(const Pcs<T>& p, const LumpingOptions& options = {});

template <class To, class From>
Pcs<To> convert(const Pcs<From>& p);

}  // namespace cpl
