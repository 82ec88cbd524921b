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
#include <optional>
#include <span>
#include <vector>

#include "cpl/linalg.hpp"

namespace cpl {

/// One closure step: basis row `iteration` multiplied by generator
/// `generator`; `adjoined` tells whether the product enlarged the span.
struct ClosureStep {
  Index generator = 0;
  Index iteration = 0;
  Index basis_size = 0;
  bool adjoined = false;
};

template <class T>
struct LumpingResult {
  Matrix<T> L;  ///< k x n, reduced row echelon form
  Index k = 0;
  Index n = 0;
  std::vector<ClosureStep> closure_trace;
};

struct LumpingOptions {
  Tolerance tol{};
  /// Cooperative budget checked between closure steps; unset means unlimited.
  std::optional<std::chrono::steady_clock::duration> budget;
  bool record_trace = true;
};

/// Raised when the closure exceeds its budget. Carries the trace so far.
class TimeoutExceeded : public Error {
 public:
  TimeoutExceeded(std::vector<ClosureStep> partial, Index basis_size);

  const std::vector<ClosureStep>& partial_trace() const noexcept { return partial_; }
  Index basis_size() const noexcept { return basis_size_; }

 private:
  std::vector<ClosureStep> partial_;
  Index basis_size_;
};

/// Smallest row space containing rowspan(O) and closed under right
/// multiplication by every generator, returned in reduced row echelon form.
///
/// The span is seeded with rref(O). Basis rows are processed FIFO; each is
/// multiplied by every generator in turn (round robin), the product is reduced
/// against the current basis, and the residual is adjoined when its norm
/// exceeds `tol.rank_rel` times the norm before reduction (exact scalars
/// adjoin any non-zero residual). Floating point keeps the basis orthonormal
/// and reduces the products of up to eight basis rows in one sweep; exact
/// scalars keep an echelon basis. The basis is canonicalised with a single
/// RREF pass at the end. Work is O(k * (e + k * n)) for e generator non-zeros.
///
/// Rounding error grows along long product chains, so a deep floating-point
/// closure can exceed the exact minimum by spurious directions. Rational
/// scalars give the exact closure.
///
/// Throws ShapeMismatch, InvalidArgument (zero O) or TimeoutExceeded.
template <class T>
LumpingResult<T> minimal_constrained_lumping(std::span<const SparseMatrix<T>> generators,
                                             const Matrix<T>& output,
                                             const LumpingOptions& options = {});

template <class T>
LumpingResult<T> minimal_constrained_lumping(const std::vector<Matrix<T>>& generators,
                                             const Matrix<T>& output,
                                             const LumpingOptions& options = {});

/// Independent check of the closure dimension for desk-scale inputs
/// (n <= 12): repeated full sweeps of all basis/generator products with
/// twice-applied Gram-Schmidt projection, until a sweep adds nothing.
/// Throws DimensionTooLarge for n > 12.
template <class T>
Index brute_force_lumping_oracle(const std::vector<Matrix<T>>& generators,
                                 const Matrix<T>& output, const Tolerance& tol = {});

inline constexpr Index kOracleMaxDimension = 12;

}  // namespace cpl
