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

#include <random>

#include "cpl/simulate.hpp"

namespace cpl {
namespace {

constexpr Index kMaxEnumeratedFreeEntries = 16;

struct FreeEntry {
  Index row;
  Index col;
};

std::vector<Matrix<double>> corner_matrices(const IntervalMatrix<double>& bounds,
                                            const std::vector<FreeEntry>& free, bool enumerate,
                                            Index budget, std::uint64_t seed) {
  std::vector<Matrix<double>> out;
  auto build = [&](auto&& at_upper) {
    Matrix<double> m = bounds.lower;
    for (Index b = 0; b < free.size(); ++b)
      if (at_upper(b)) m(free[b].row, free[b].col) = bounds.upper(free[b].row, free[b].col);
    out.push_back(std::move(m));
  };
  if (enumerate) {
    const Index count = Index{1} << free.size();
    for (Index mask = 0; mask < count; ++mask) build([&](Index b) { return ((mask >> b) & 1u) != 0; });
    return out;
  }
  build([](Index) { return false; });
  if (budget > 1) build([](Index) { return true; });
  std::mt19937_64 gen(seed);
  std::vector<bool> bits(free.size());
  while (out.size() < budget) {
    for (Index b = 0; b < free.size(); ++b) bits[b] = (gen() >> 63) != 0;
    build([&](Index b) { return bits[b]; });
  }
  return out;
}

}  // namespace

ValueBracket approx_values(const Pcs<double>& system, const CostSpec& cost,
                           std::span<const double> x0, const ValueOptions& options) {
  validate_pcs(system);
  if (options.corner_budget == 0) throw Error(ErrorCode::BudgetExceeded, "corner budget is zero");

  std::vector<FreeEntry> free;
  for (Index i = 0; i < system.n(); ++i)
    for (Index j = 0; j < system.n(); ++j)
      if (system.bounds.upper(i, j) > system.bounds.lower(i, j)) free.push_back({i, j});
  const bool enumerate = free.size() <= kMaxEnumeratedFreeEntries &&
                         (Index{1} << free.size()) <= options.corner_budget;
  const auto corners = corner_matrices(system.bounds, free, enumerate, options.corner_budget, options.seed);
  const auto inputs = system.U.vertices();

  const Index pieces = options.switch_points + 1;
  const Index per_piece = corners.size() * inputs.size();
  Index family = 1;
  for (Index p = 0; p < pieces; ++p) {
    if (family > options.family_limit / per_piece)
      throw Error(ErrorCode::BudgetExceeded, "control family exceeds the family limit");
    family *= per_piece;
  }

  std::vector<double> breaks;
  for (Index p = 0; p < pieces; ++p)
    breaks.push_back(options.horizon * static_cast<double>(p) / static_cast<double>(pieces));

  SimulationOptions sim;
  sim.horizon = options.horizon;
  sim.step = options.step;

  ValueBracket out;
  out.free_entries = free.size();
  out.exhaustive = enumerate;
  std::vector<Index> digit(pieces, 0);
  for (Index count = 0; count < family; ++count) {
    ExtremalSchedule s;
    s.a.breakpoints = breaks;
    s.u.breakpoints = breaks;
    for (Index p = 0; p < pieces; ++p) {
      s.a.values.push_back(corners[digit[p] / inputs.size()]);
      s.u.values.push_back(inputs[digit[p] % inputs.size()]);
    }
    const Trajectory tr = simulate(system, s.a, s.u, x0, sim);
    s.cost = evaluate_cost(tr, s.u, cost, options.horizon);
    if (count == 0 || s.cost < out.v_inf) {
      out.v_inf = s.cost;
      out.argmin = s;
    }
    if (count == 0 || s.cost > out.v_sup) {
      out.v_sup = s.cost;
      out.argmax = std::move(s);
    }
    ++out.evaluated;
    for (Index p = pieces; p-- > 0;) {
      if (++digit[p] < per_piece) break;
      digit[p] = 0;
    }
  }
  return out;
}

}  // namespace cpl
