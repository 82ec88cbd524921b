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

#include <chrono>
#include <functional>
#include <optional>
#include <vector>

#include "cpl/matrix.hpp"

namespace cpl {

template <class T>
struct RrefResult {
  Matrix<T> reduced;  ///< same shape as the input; zero rows at the bottom
  Index rank = 0;
  std::vector<Index> pivot_cols;
};

/// Reduced row echelon form with tolerance-based pivoting.
///
/// In floating point a candidate pivot in column c is accepted when its
/// magnitude exceeds `tol.rank_rel` times the largest absolute entry its row
/// had before elimination; rows are chosen by partial pivoting. Entries that
/// fall below the same threshold are flushed to exact zero, so repeated
/// application is bit-stable. The rational instantiation pivots on exact
/// non-zeros.
template <class T>
RrefResult<T> rref(const Matrix<T>& m, const Tolerance& tol = {});

/// Same as rref, but polls `should_stop` between pivot columns and returns
/// std::nullopt when it reports true.
template <class T>
std::optional<RrefResult<T>> rref_interruptible(const Matrix<T>& m, const Tolerance& tol,
                                                const std::function<bool()>& should_stop);

template <class T>
Index rank(const Matrix<T>& m, const Tolerance& tol = {}) {
  return rref(m, tol).rank;
}

/// L^+ = L^T (L L^T)^{-1}. When the rows of L have pairwise disjoint supports
/// L L^T is diagonal and the inverse is taken entrywise.
/// Throws RankDeficient when rank(L) < rows(L).
template <class T>
Matrix<T> right_pseudo_inverse(const Matrix<T>& l, const Tolerance& tol = {});

/// True when the rows of `m` have pairwise disjoint supports.
template <class T>
bool has_disjoint_row_supports(const Matrix<T>& m);

/// Largest relative residual max_v |v - v L^+ L| / |v| over the rows of V
/// (Euclidean norms; zero rows contribute 0). Exact instantiation returns
/// 0 or 1. Requires cols(L) == cols(V).
template <class T>
double rowspan_residual(const Matrix<T>& l, const Matrix<T>& l_pinv, const Matrix<T>& v);

/// rowspan(V) ⊆ rowspan(L), decided with `tol.rank_rel` as the relative
/// residual bound (exact in rational mode).
template <class T>
bool rowspan_contains(const Matrix<T>& l, const Matrix<T>& v, const Tolerance& tol = {});

/// As above with a precomputed pseudo-inverse of L.
template <class T>
bool rowspan_contains(const Matrix<T>& l, const Matrix<T>& l_pinv, const Matrix<T>& v,
                      const Tolerance& tol);

/// Off-diagonal entries non-negative. Throws NotSquare.
template <class T>
bool is_metzler(const Matrix<T>& m);

/// L is a constrained lumping of A with respect to O:
/// rowspan(O) ⊆ rowspan(L) and rowspan(L A) ⊆ rowspan(L).
template <class T>
bool is_constrained_lumping(const Matrix<T>& l, const Matrix<T>& a, const Matrix<T>& o,
                            const Tolerance& tol = {});

/// Solves X G = B for X where G is square and invertible (Gaussian elimination
/// with partial pivoting). Throws RankDeficient when G is singular.
template <class T>
Matrix<T> solve_right(const Matrix<T>& b, const Matrix<T>& g, const Tolerance& tol = {});

}  // namespace cpl
