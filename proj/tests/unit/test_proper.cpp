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

#include <gtest/gtest.h>

#include "generators.hpp"

namespace cpl {
namespace {

using Q = Rational;
using testing::Rng;

TEST(CheckProper, TwoBlockLumpingIsProper) {
  const auto v = check_proper(Matrix<Q>{{1, 2, 0}, {0, 0, 1}});
  ASSERT_EQ(v.kind, VerdictKind::Proper);
  EXPECT_EQ(v.partition->blocks, (std::vector<std::vector<Index>>{{0, 1}, {2}}));
  EXPECT_TRUE(v.partition->deleted.empty());
  EXPECT_EQ(v.partition->block_of, (std::vector<Index>{1, 1, 2}));
}

TEST(CheckProper, IdentityIsNoReduction) {
  EXPECT_EQ(check_proper(Matrix<Q>::identity(3)).kind, VerdictKind::Identity);
  EXPECT_EQ(to_string(VerdictKind::Identity), "identity");
}

TEST(CheckProper, NegativeEntryCertificate) {
  const auto v = check_proper(Matrix<Q>{{1, -1, 0}, {0, 0, 1}});
  ASSERT_EQ(v.kind, VerdictKind::GeneralLumping);
  const auto& neg = std::get<NegativeEntry>(v.violation);
  EXPECT_EQ(neg.row, 0u);
  EXPECT_EQ(neg.col, 1u);
}

TEST(CheckProper, OverlapCertificate) {
  const auto v = check_proper(Matrix<double>{{1, 0, 1}, {0, 1, 1}});
  ASSERT_EQ(v.kind, VerdictKind::GeneralLumping);
  const auto& ov = std::get<OverlappingRows>(v.violation);
  EXPECT_EQ(ov.first, 0u);
  EXPECT_EQ(ov.second, 1u);
  EXPECT_EQ(ov.col, 2u);
}

TEST(CheckProper, RankDeficient) {
  try {
    check_proper(Matrix<double>{{1, 0}, {2, 0}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::RankDeficient);
  }
}

TEST(CdDecompose, Examples) {
  const auto f = cd_decompose(Matrix<Q>{{1, 2, 0}, {0, 0, 1}});
  EXPECT_EQ(f.C, (Matrix<Q>{{1, 1, 0}, {0, 0, 1}}));
  EXPECT_EQ(f.lambda, (std::vector<Q>{1, 2, 1}));

  const auto id = cd_decompose(Matrix<Q>::identity(3));
  EXPECT_EQ(id.C, Matrix<Q>::identity(3));
  EXPECT_EQ(id.lambda, (std::vector<Q>{1, 1, 1}));

  const Matrix<Q> l{{0, 3, 0, 0}, {0, 0, 0, 5}};
  const auto g = cd_decompose(l);
  EXPECT_EQ(g.C, (Matrix<Q>{{0, 1, 0, 0}, {0, 0, 0, 1}}));
  EXPECT_EQ(g.lambda, (std::vector<Q>{1, 3, 1, 5}));
  Matrix<Q> cd = g.C;
  for (Index r = 0; r < 2; ++r)
    for (Index j = 0; j < 4; ++j) cd(r, j) *= g.lambda[j];
  EXPECT_EQ(cd, l);
  EXPECT_EQ(block_partition(l).deleted, (std::vector<Index>{0, 2}));
}

TEST(CdDecompose, RejectsGeneralLumping) {
  try {
    cd_decompose(Matrix<double>{{1, -1}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotProper);
  }
}

TEST(CdDecompose, RandomProperMatricesReproduceExactly) {
  Rng rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    const auto p = testing::planted_instance(rng, {.integer = true});
    const auto l = convert<Q>(p.L);
    const auto v = check_proper(l);
    ASSERT_NE(v.kind, VerdictKind::GeneralLumping);
    Matrix<Q> cd = v.factors->C;
    for (Index r = 0; r < cd.rows(); ++r)
      for (Index j = 0; j < cd.cols(); ++j) cd(r, j) *= v.factors->lambda[j];
    EXPECT_EQ(cd, l);
    // Blocks tile the complement of H0.
    std::vector<int> seen(l.cols(), 0);
    for (const auto& b : v.partition->blocks)
      for (const Index i : b) ++seen[i];
    for (const Index i : v.partition->deleted) {
      ++seen[i];
      EXPECT_EQ(v.factors->lambda[i], Q(1));
    }
    for (const int s : seen) EXPECT_EQ(s, 1);
  }
}

TEST(ColumnClasses, Examples) {
  const auto a = column_equivalence_classes(Matrix<Q>{{1, 2, 0}, {0, 0, 1}});
  EXPECT_EQ(a.nonzero, (std::vector<Index>{0, 1, 2}));
  EXPECT_EQ(a.classes, (std::vector<std::vector<Index>>{{0, 1}, {2}}));
  EXPECT_EQ(column_equivalence_classes(Matrix<double>::identity(2)).classes,
            (std::vector<std::vector<Index>>{{0}, {1}}));
  EXPECT_EQ(column_equivalence_classes(Matrix<double>{{1, 1}, {1, -1}}).classes,
            (std::vector<std::vector<Index>>{{0}, {1}}));
  // Opposite signs are still multiples.
  EXPECT_EQ(column_equivalence_classes(Matrix<double>{{1, -2, 0}, {0, 0, 1}}).classes,
            (std::vector<std::vector<Index>>{{0, 1}, {2}}));
  EXPECT_EQ(column_equivalence_classes(Matrix<double>{{0, 1}}).nonzero, (std::vector<Index>{1}));
}

TEST(DisjointBasis, Examples) {
  const Matrix<Q> l{{1, 2, 0}, {0, 0, 1}};
  const auto w = construct_disjoint_support_basis(l);
  ASSERT_TRUE(w);
  EXPECT_EQ(*w, (Matrix<Q>{{1, 2, 0}, {0, 0, 1}}));

  const auto w2 = construct_disjoint_support_basis(Matrix<Q>{{1, 1}, {1, -1}});
  ASSERT_TRUE(w2);
  EXPECT_EQ(*w2, Matrix<Q>::identity(2));

  const auto w3 = construct_disjoint_support_basis(Matrix<Q>{{1, 1, 1}});
  ASSERT_TRUE(w3);
  EXPECT_EQ(*w3, (Matrix<Q>{{1, 1, 1}}));

  // Three pairwise non-proportional columns in a 2-row space: no basis.
  EXPECT_FALSE(construct_disjoint_support_basis(Matrix<Q>{{1, 0, 1}, {0, 1, 1}}));
}

TEST(DisjointBasis, SpansTheSameRowSpace) {
  Rng rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    const auto p = testing::planted_instance(rng);
    // Mix the rows: the span keeps a disjoint-support basis.
    const Index k = p.L.rows();
    Matrix<double> s(k, k);
    for (Index i = 0; i < k; ++i)
      for (Index j = 0; j < k; ++j) s(i, j) = rng.uniform(-1, 1);
    if (rank(s) < k) continue;
    const auto mixed = s * p.L;
    const auto w = construct_disjoint_support_basis(mixed);
    ASSERT_TRUE(w);
    EXPECT_TRUE(rowspan_contains(*w, mixed));
    EXPECT_TRUE(rowspan_contains(mixed, *w));
    EXPECT_TRUE(has_disjoint_row_supports(*w));
    // The canonical echelon form of a proper span is itself proper.
    EXPECT_NE(check_proper(rref(mixed).reduced).kind, VerdictKind::GeneralLumping);
  }
}

TEST(Conjugation, LumpsAIffBinaryLumpsConjugate) {
  Rng rng(10);
  for (int trial = 0; trial < 100; ++trial) {
    const auto p = testing::planted_instance(rng);
    const Index n = p.L.cols();
    auto a = p.pcs.bounds.lower;
    const bool perturb = trial % 2 == 1;
    if (perturb) a(rng.below(n), rng.below(n)) += rng.uniform(0.5, 1.5);
    const auto f = cd_decompose(p.L);
    Matrix<double> m(n, n), od(p.pcs.O.rows(), n);
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j) m(i, j) = f.lambda[i] * a(i, j) / f.lambda[j];
    for (Index i = 0; i < od.rows(); ++i)
      for (Index j = 0; j < n; ++j) od(i, j) = p.pcs.O(i, j) / f.lambda[j];
    const bool direct = is_constrained_lumping(p.L, a, p.pcs.O);
    const bool conjugated = is_constrained_lumping(f.C, m, od);
    EXPECT_EQ(direct, conjugated);
    if (!perturb) EXPECT_TRUE(direct);
  }
}

}  // namespace
}  // namespace cpl
