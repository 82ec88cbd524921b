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

#include "cpl/proper.hpp"

#include <cmath>

namespace cpl {

std::string_view to_string(VerdictKind kind) {
  switch (kind) {
    case VerdictKind::Proper: return "proper";
    case VerdictKind::GeneralLumping: return "general";
    case VerdictKind::Identity: return "identity";
  }
  return "unknown";
}

namespace {

template <class T>
bool is_nonzero(const T& v, const Tolerance& tol) {
  if constexpr (ScalarTraits<T>::exact) return v != 0;
  else return std::fabs(v) > tol.compare_abs;
}

template <class T>
bool is_negative(const T& v, const Tolerance& tol) {
  if constexpr (ScalarTraits<T>::exact) return v < 0;
  else return v < -tol.compare_abs;
}

}  // namespace

template <class T>
BlockPartition block_partition(const Matrix<T>& l, const Tolerance& tol) {
  BlockPartition p;
  p.blocks.resize(l.rows());
  p.block_of.assign(l.cols(), 0);
  for (Index j = 0; j < l.cols(); ++j) {
    for (Index r = 0; r < l.rows(); ++r) {
      if (!is_nonzero(l(r, j), tol)) continue;
      if (p.block_of[j] != 0)
        throw Error(ErrorCode::NotProper, "rows share column support", Location{r, j});
      p.block_of[j] = r + 1;
      p.blocks[r].push_back(j);
    }
    if (p.block_of[j] == 0) p.deleted.push_back(j);
  }
  return p;
}

template <class T>
PropernessVerdict<T> check_proper(const Matrix<T>& l, const Tolerance& tol) {
  if (rref(l, tol).rank < l.rows())
    throw Error(ErrorCode::RankDeficient, "properness is defined for full-row-rank matrices");

  PropernessVerdict<T> v;
  if (l.rows() == l.cols() && l == Matrix<T>::identity(l.cols())) {
    v.kind = VerdictKind::Identity;
    v.partition = block_partition(l, tol);
    v.factors = CdFactorization<T>{l, std::vector<T>(l.cols(), T(1))};
    return v;
  }

  for (Index r = 0; r < l.rows(); ++r)
    for (Index j = 0; j < l.cols(); ++j)
      if (is_negative(l(r, j), tol)) {
        v.kind = VerdictKind::GeneralLumping;
        v.violation = NegativeEntry{r, j};
        return v;
      }

  std::vector<Index> owner(l.cols(), l.rows());
  for (Index r = 0; r < l.rows(); ++r)
    for (Index j = 0; j < l.cols(); ++j) {
      if (!is_nonzero(l(r, j), tol)) continue;
      if (owner[j] != l.rows()) {
        v.kind = VerdictKind::GeneralLumping;
        v.violation = OverlappingRows{owner[j], r, j};
        return v;
      }
      owner[j] = r;
    }

  v.kind = VerdictKind::Proper;
  v.partition = block_partition(l, tol);
  v.factors = cd_decompose(l, tol);
  return v;
}

template <class T>
CdFactorization<T> cd_decompose(const Matrix<T>& l, const Tolerance& tol) {
  for (Index r = 0; r < l.rows(); ++r)
    for (Index j = 0; j < l.cols(); ++j)
      if (is_negative(l(r, j), tol))
        throw Error(ErrorCode::NotProper, "negative entry", Location{r, j});
  const BlockPartition p = block_partition(l, tol);

  CdFactorization<T> f{Matrix<T>(l.rows(), l.cols()), std::vector<T>(l.cols(), T(1))};
  for (Index j = 0; j < l.cols(); ++j) {
    const Index b = p.block_of[j];
    if (b == 0) continue;
    f.C(b - 1, j) = T(1);
    f.lambda[j] = l(b - 1, j);
  }
  return f;
}

template <class T>
ColumnClasses column_equivalence_classes(const Matrix<T>& l, const Tolerance& tol) {
  ColumnClasses out;
  std::vector<std::vector<T>> cols;
  for (Index j = 0; j < l.cols(); ++j) {
    auto c = l.column(j);
    bool any = false;
    for (const T& x : c) any = any || x != 0;
    if (!any) continue;
    out.nonzero.push_back(j);
  }

  auto proportional = [&](const std::vector<T>& u, const std::vector<T>& w) {
    if constexpr (ScalarTraits<T>::exact) {
      Index a = 0;
      while (u[a] == 0) ++a;
      const T ratio = w[a] / u[a];
      for (Index i = 0; i < u.size(); ++i)
        if (w[i] != ratio * u[i]) return false;
      return true;
    } else {
      double nu = 0.0, nw = 0.0;
      for (Index i = 0; i < u.size(); ++i) {
        nu += u[i] * u[i];
        nw += w[i] * w[i];
      }
      nu = std::sqrt(nu);
      nw = std::sqrt(nw);
      double plus = 0.0, minus = 0.0;
      for (Index i = 0; i < u.size(); ++i) {
        const double a = u[i] / nu, b = w[i] / nw;
        plus += (a + b) * (a + b);
        minus += (a - b) * (a - b);
      }
      return std::sqrt(std::min(plus, minus)) <= tol.rank_rel;
    }
  };

  std::vector<std::vector<T>> representatives;
  for (const Index j : out.nonzero) {
    const auto c = l.column(j);
    bool placed = false;
    for (Index k = 0; k < out.classes.size(); ++k) {
      if (proportional(representatives[k], c)) {
        out.classes[k].push_back(j);
        placed = true;
        break;
      }
    }
    if (!placed) {
      out.classes.push_back({j});
      representatives.push_back(c);
    }
  }
  return out;
}

template <class T>
std::optional<Matrix<T>> construct_disjoint_support_basis(const Matrix<T>& l,
                                                          const Tolerance& tol) {
  const ColumnClasses cc = column_equivalence_classes(l, tol);
  if (cc.classes.size() != l.rows()) return std::nullopt;

  Matrix<T> w(l.rows(), l.cols());
  for (Index r = 0; r < cc.classes.size(); ++r) {
    const Index rep = cc.classes[r].front();
    Index a = 0;
    for (Index i = 1; i < l.rows(); ++i)
      if (ScalarTraits<T>::abs(l(i, rep)) > ScalarTraits<T>::abs(l(a, rep))) a = i;
    for (const Index j : cc.classes[r]) w(r, j) = l(a, j) / l(a, rep);
  }
  return w;
}

#define CPL_INSTANTIATE(T)                                                              \
  template BlockPartition block_partition(const Matrix<T>&, const Tolerance&);          \
  template PropernessVerdict<T> check_proper(const Matrix<T>&, const Tolerance&);       \
  template CdFactorization<T> cd_decompose(const Matrix<T>&, const Tolerance&);         \
  template ColumnClasses column_equivalence_classes(const Matrix<T>&, const Tolerance&); \
  template std::optional<Matrix<T>> construct_disjoint_support_basis(const Matrix<T>&,  \
                                                                     const Tolerance&);

CPL_INSTANTIATE(double)
CPL_INSTANTIATE(Rational)

#undef CPL_INSTANTIATE

}  // namespace cpl
