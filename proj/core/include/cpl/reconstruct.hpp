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

#include <vector>

#include "cpl/pcs.hpp"

namespace cpl {

/// Right-continuous piecewise-constant schedule. `breakpoints` holds
/// t_0 = 0 < t_1 < ... < t_p and `values[q]` is the value on
/// [t_q, t_{q+1}); the last value is held from t_p on.
template <class V>
struct PiecewiseConstant {
  std::vector<double> breakpoints;
  std::vector<V> values;

  /// Throws InvalidArgument unless breakpoints start at 0, increase
  /// strictly and there is one value per breakpoint.
  void validate() const;
  const V& at(double t) const;
  Index piece_index(double t) const;
  static PiecewiseConstant constant(V value) { return {{0.0}, {std::move(value)}}; }
};

template <class T>
using PiecewiseMatrixControl = PiecewiseConstant<Matrix<T>>;
using PiecewiseVectorControl = PiecewiseConstant<std::vector<double>>;

/// Denominators at or below this value take the fallback branch.
inline constexpr double kReconstructionDenominatorFloor = 1e-14;

/// Original matrix control A(.) realising a reduced control R(.) under the
/// proper lumping of `reduced`. For blocks [i], [j] != 0 and
/// den = sum_{k in [i]} (Mhi - Mlo)_{kj} > floor, with M = D A D^{-1},
///
///   A_ij = lo_ij + (hi_ij - lo_ij) (R - Rlo)_{[i][j]} / den,
///
/// which is lambda_i^{-1} lambda_j (Mlo + (Mhi - Mlo)(R - Rlo)/den)_{ij};
/// all other entries take lo_ij. Breakpoints are kept.
/// Throws ControlOutOfBounds when a piece of R leaves the reduced bounds.
template <class T>
PiecewiseMatrixControl<T> reconstruct_control(const PiecewiseMatrixControl<T>& r,
                                              const ReducedPcs<T>& reduced,
                                              const Pcs<T>& pcs, const Tolerance& tol = {});

struct ReconstructionPieceReport {
  double start = 0.0;
  bool within_bounds = false;
  double bound_violation = 0.0;     ///< max amount by which A leaves [lo; hi]
  bool reduced_within_bounds = false;
  double projection_error = 0.0;    ///< |L A L^+ - R|_inf
  double lumping_residual = 0.0;    ///< relative rowspan residual of L A
  bool passed = false;
};

struct ReconstructionReport {
  std::vector<ReconstructionPieceReport> pieces;
  bool passed = false;
  double max_projection_error = 0.0;
};

/// Per-piece checks of a reconstructed control. `tol` is the absolute
/// tolerance for bounds and projection and the relative one for the lumping
/// residual.
template <class T>
ReconstructionReport verify_reconstruction(const PiecewiseMatrixControl<T>& a,
                                           const PiecewiseMatrixControl<T>& r,
                                           const ReducedPcs<T>& reduced, const Pcs<T>& pcs,
                                           double tol);

}  // namespace cpl
