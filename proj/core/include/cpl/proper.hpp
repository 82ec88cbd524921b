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
#include <variant>
#include <vector>

#include "cpl/linalg.hpp"

namespace cpl {

/// Blocks induced by a proper matrix. Indices are zero-based; `block_of[i]`
/// is 0 for deleted variables and r (1-based) for membership in blocks[r-1].
struct BlockPartition {
  std::vector<Index> deleted;              // H0
  std::vector<std::vector<Index>> blocks;  // H1..Hk
  std::vector<Index> block_of;
};

/// L = C diag(lambda) with binary block indicator C.
template <class T>
struct CdFactorization {
  Matrix<T> C;
  std::vector<T> lambda;
};

enum class VerdictKind { Proper, GeneralLumping, Identity };

std::string_view to_string(VerdictKind kind);

struct NegativeEntry {
  Index row;
  Index col;
};

struct OverlappingRows {
  Index first;
  Index second;
  Index col;
};

template <class T>
struct PropernessVerdict {
  VerdictKind kind = VerdictKind::GeneralLumping;
  /// Set for Proper and Identity.
  std::optional<BlockPartition> partition;
  std::optional<CdFactorization<T>> factors;
  /// Set for GeneralLumping.
  std::variant<std::monostate, NegativeEntry, OverlappingRows> violation;
};

/// Classifies a full-row-rank L. Identity means L == I_n (no reduction);
/// Proper means non-negative with pairwise disjoint row supports; otherwise a
/// certificate (first negative entry, else first overlapping row pair) is
/// attached. In floating point, entries with |x| <= tol.compare_abs count as
/// zero. Throws RankDeficient.
template <class T>
PropernessVerdict<T> check_proper(const Matrix<T>& l, const Tolerance& tol = {});

/// Block partition of a matrix whose rows have disjoint, non-negative support.
template <class T>
BlockPartition block_partition(const Matrix<T>& l, const Tolerance& tol = {});

/// Throws NotProper unless check_proper(L) is Proper or Identity.
template <class T>
CdFactorization<T> cd_decompose(const Matrix<T>& l, const Tolerance& tol = {});

struct ColumnClasses {
  std::vector<Index> nonzero;               // Z
  std::vector<std::vector<Index>> classes;  // Z / ~, ordered by smallest member
};

/// Partitions the non-zero columns of L into classes of mutually proportional
/// columns. Floating point: u ~ v iff |u/|u| -+ v/|v|| <= tol.rank_rel for one
/// sign choice; rational: exact proportionality.
template <class T>
ColumnClasses column_equivalence_classes(const Matrix<T>& l, const Tolerance& tol = {});

/// A matrix W with rowspan(W) = rowspan(L) and pairwise disjoint row
/// supports, when the number of column classes equals rows(L). Row r has
/// support equal to class r and W[r][j] = L[a][j] / L[a][i(r)], where i(r) is
/// the smallest index in the class and a the row holding the largest
/// magnitude of column i(r).
template <class T>
std::optional<Matrix<T>> construct_disjoint_support_basis(const Matrix<T>& l,
                                                          const Tolerance& tol = {});

}  // namespace cpl
