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

const Matrix<Q> kA{{0, 2, 0}, {1, 1, 1}, {0, 0, 1}};
const Matrix<Q> kL{{1, 2, 0}, {0, 0, 1}};

Pcs<Q> running_interval() {
  Pcs<Q> p;
  p.bounds = {Q(9, 10) * kA, Q(11, 10) * kA};
  p.O = Matrix<Q>{{0, 0, 1}};
  p.B = Matrix<Q>(3, 1);
  p.U = ControlSet<Q>::origin();
  return p;
}

template <class F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error";
  return ErrorCode::InvalidArgument;
}

TEST(ValidatePcs, RunningIntervalIsValid) { EXPECT_NO_THROW(validate_pcs(running_interval())); }

TEST(ValidatePcs, FirstViolationIsReported) {
  auto p = running_interval();
  p.bounds.lower(0, 1) = -1;
  try {
    validate_pcs(p);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotMetzler);
    EXPECT_EQ(e.where()->row, 0u);
    EXPECT_EQ(*e.where()->col, 1u);
  }

  auto inverted = running_interval();
  inverted.bounds.lower = Q(2) * inverted.bounds.upper;
  EXPECT_EQ(code_of([&] { validate_pcs(inverted); }), ErrorCode::BoundsInverted);

  auto input = running_interval();
  input.B(2, 0) = -1;
  EXPECT_EQ(code_of([&] { validate_pcs(input); }), ErrorCode::NegativeInput);

  auto init = running_interval();
  init.x0 = std::vector<Q>{1, -1, 0};
  EXPECT_EQ(code_of([&] { validate_pcs(init); }), ErrorCode::NegativeInitial);

  auto shape = running_interval();
  shape.O = Matrix<Q>{{0, 1}};
  EXPECT_EQ(code_of([&] { validate_pcs(shape); }), ErrorCode::ShapeMismatch);

  auto u = running_interval();
  u.U = ControlSet<Q>::finite({{1}});
  EXPECT_EQ(code_of([&] { validate_pcs(u); }), ErrorCode::InvalidArgument);
}

TEST(ReducePcs, RunningInterval) {
  const auto r = reduce_pcs(running_interval(), kL);
  EXPECT_EQ(r.bounds.lower, Q(9, 10) * Matrix<Q>({{2, 2}, {0, 1}}));
  EXPECT_EQ(r.bounds.upper, Q(11, 10) * Matrix<Q>({{2, 2}, {0, 1}}));
  EXPECT_EQ(r.O, (Matrix<Q>{{0, 1}}));
  EXPECT_EQ(r.B, Matrix<Q>(2, 1));
  EXPECT_TRUE(r.metzler_preserved);
  EXPECT_TRUE(r.order_preserved);
}

TEST(ReducePcs, PointIntervalRunningExample) {
  auto p = running_interval();
  p.bounds = {kA, kA};
  p.x0 = std::vector<Q>{1, 0, 0};
  const auto r = reduce_pcs(p, kL);
  EXPECT_EQ(r.bounds.lower, (Matrix<Q>{{2, 2}, {0, 1}}));
  EXPECT_EQ(r.bounds.upper, r.bounds.lower);
  EXPECT_EQ(r.O, (Matrix<Q>{{0, 1}}));
  EXPECT_EQ(*r.y0, (std::vector<Q>{1, 0}));
}

TEST(ReducePcs, IdentityIsNeutralAndIdempotent) {
  const auto p = running_interval();
  const auto once = reduce_pcs(p, Matrix<Q>::identity(3));
  EXPECT_EQ(once.bounds.lower, p.bounds.lower);
  EXPECT_EQ(once.bounds.upper, p.bounds.upper);
  EXPECT_EQ(once.O, p.O);
  EXPECT_EQ(once.B, p.B);
  const auto twice = reduce_pcs(once.as_pcs(), Matrix<Q>::identity(3));
  EXPECT_EQ(twice.bounds.lower, once.bounds.lower);
  EXPECT_EQ(twice.bounds.upper, once.bounds.upper);
}

TEST(ReducePcs, RejectsNonProperAndNonLumping) {
  auto p = running_interval();
  EXPECT_EQ(code_of([&] { reduce_pcs(p, Matrix<Q>{{1, -1, 0}, {0, 0, 1}}); }), ErrorCode::NotProper);
  EXPECT_EQ(code_of([&] { reduce_pcs(p, Matrix<Q>{{1, 1, 0}, {0, 0, 1}}); }), ErrorCode::NotALumping);
  // Output outside the row space.
  p.O = Matrix<Q>{{1, 0, 0}};
  try {
    reduce_pcs(p, kL);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotALumping);
    EXPECT_NE(std::string(e.what()).find("output"), std::string::npos);
  }
}

TEST(ReducePcs, OrderAndMetzlerPreservedOnRandomProperLumpings) {
  Rng rng(12);
  for (int trial = 0; trial < 500; ++trial) {
    const auto p = testing::planted_instance(rng, {.n_min = 2, .n_max = 12, .k_max = 5, .inputs = 2});
    const auto r = reduce_pcs(p.pcs, p.L);
    ASSERT_TRUE(r.metzler_preserved);
    ASSERT_TRUE(r.order_preserved);
    EXPECT_TRUE(is_metzler(r.bounds.lower));
    EXPECT_TRUE(is_metzler(r.bounds.upper));
    for (Index i = 0; i < r.B.rows(); ++i)
      for (Index j = 0; j < r.B.cols(); ++j) EXPECT_GE(r.B(i, j), 0.0);
    EXPECT_LE(max_abs_diff(p.pcs.O, r.O * p.L), 1e-10);
  }
}

TEST(ReducePcs, AcceptsEngineResult) {
  Rng rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    const auto p = testing::planted_instance(rng);
    const auto lump = lump_pcs(p.pcs);
    if (check_proper(lump.L).kind == VerdictKind::GeneralLumping) continue;
    const auto r = reduce_pcs(p.pcs, lump);
    EXPECT_EQ(r.L.rows(), lump.k);
  }
}

TEST(ControlSet, Vertices) {
  const auto box = ControlSet<double>::box({1.0, 0.0, 2.0});
  const auto v = box.vertices();
  ASSERT_EQ(v.size(), 4u);
  EXPECT_EQ(v.front(), (std::vector<double>{0, 0, 0}));
  EXPECT_EQ(v.back(), (std::vector<double>{1, 0, 2}));
  EXPECT_TRUE(box.contains(std::vector<double>{0.5, 0.0, 2.0}));
  EXPECT_FALSE(box.contains(std::vector<double>{0.5, 0.1, 2.0}));
  const auto pts = ControlSet<double>::finite({{0, 0}, {1, 2}});
  EXPECT_EQ(pts.vertices().size(), 2u);
  EXPECT_TRUE(pts.contains(std::vector<double>{1, 2}));
  EXPECT_FALSE(pts.contains(std::vector<double>{1, 1}));
}

}  // namespace
}  // namespace cpl
