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

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "cpl/reconstruct.hpp"

namespace cpl {

/// States on a grid that contains every control breakpoint in [0, tau].
/// Pieces between consecutive `segment_starts` are uniformly spaced.
struct Trajectory {
  std::vector<double> times;
  std::vector<std::vector<double>> states;
  std::vector<Index> segment_starts;
  double step = 0.0;

  const std::vector<double>& final_state() const { return states.back(); }
};

struct SimulationOptions {
  double horizon = 1.0;
  double step = 1e-3;
  /// Slack for control admissibility.
  double admissibility_slack = 1e-9;
  /// A state entry below -negative_slack * max(1, |x|_inf) raises NegativeState.
  double negative_slack = 1e-9;
};

/// Classical RK4 of dx/dt = A(t) x + B u(t) from x0. Each interval between
/// breakpoints is split into ceil(length / step) equal steps.
/// Throws NonAdmissibleControl, NegativeState, ShapeMismatch, InvalidArgument.
Trajectory simulate(const Pcs<double>& system, const PiecewiseMatrixControl<double>& a,
                    const PiecewiseVectorControl& u, std::span<const double> x0,
                    const SimulationOptions& options);

inline Trajectory simulate(const ReducedPcs<double>& system,
                           const PiecewiseMatrixControl<double>& r,
                           const PiecewiseVectorControl& u, std::span<const double> y0,
                           const SimulationOptions& options) {
  return simulate(system.as_pcs(), r, u, y0, options);
}

enum class ReducedControlPairing {
  /// R(t) = L A(t) L^+ on each piece. Matches exactly when A(t) is itself
  /// lumped by L, e.g. A(t) from reconstruct_control.
  Projected,
  /// R(t)_{rs} = sum_{j in H_s} (L A(t))_{rj} x_j(t) / (L x(t))_s, falling back
  /// to (L A L^+)_{rs} when (L x)_s = 0. Valid for every A(t) in the bounds.
  StateFeedback,
};

struct EquivalenceReport {
  double max_deviation = 0.0;          ///< max over the grid of |L x - y|_inf
  bool reduced_control_in_bounds = false;
  double reduced_bound_violation = 0.0;
  Trajectory original;
  Trajectory reduced;
};

/// Integrates the original system under (A, u) from x0 and the reduced one
/// under the paired R(.) from L x0 on the same grid.
EquivalenceReport verify_trajectory_equivalence(const Pcs<double>& system,
                                                const ReducedPcs<double>& reduced,
                                                const PiecewiseMatrixControl<double>& a,
                                                const PiecewiseVectorControl& u,
                                                std::span<const double> x0,
                                                const SimulationOptions& options,
                                                ReducedControlPairing pairing =
                                                    ReducedControlPairing::Projected);

/// Running cost Psi(t, z, u) and final cost Phi(z, u). With `aggregation`
/// set, z = aggregation * x, so the cost is invariant under that map;
/// otherwise z = x.
struct CostSpec {
  std::function<double(double, std::span<const double>, std::span<const double>)> running;
  std::function<double(std::span<const double>, std::span<const double>)> final;
  std::optional<Matrix<double>> aggregation;

  /// The same cost read on reduced states y = L x.
  CostSpec reduced() const { return {running, final, std::nullopt}; }
};

/// Final cost at the last grid point plus the running cost integrated by
/// composite Simpson on each uniform segment (3/8 rule for the last three
/// intervals of an odd segment, trapezoid for single-interval segments).
/// Throws GridMismatch if the grid does not end at tau or a u breakpoint in
/// (0, tau) is not a segment start.
double evaluate_cost(const Trajectory& trajectory, const PiecewiseVectorControl& u,
                     const CostSpec& cost, double tau);

struct ValueOptions {
  double horizon = 1.0;
  double step = 1e-2;
  /// Number of equally spaced interior switch times.
  Index switch_points = 0;
  /// Corners per piece. Enumerated in full when 2^free <= budget and
  /// free <= 16, sampled otherwise.
  Index corner_budget = 1u << 16;
  /// Upper limit on the number of simulated schedules.
  Index family_limit = 1u << 20;
  std::uint64_t seed = 0;
};

struct ExtremalSchedule {
  PiecewiseMatrixControl<double> a;
  PiecewiseVectorControl u;
  double cost = 0.0;
};

/// Inner bracket of the optimal values over piecewise-constant schedules
/// whose pieces take interval corners for A and vertices of U for u:
/// V^inf <= v_inf and v_sup <= V^sup.
struct ValueBracket {
  double v_inf = 0.0;
  double v_sup = 0.0;
  ExtremalSchedule argmin;
  ExtremalSchedule argmax;
  Index evaluated = 0;
  Index free_entries = 0;
  bool exhaustive = false;
};

/// Throws BudgetExceeded when the family exceeds `family_limit` or the budget
/// is zero.
ValueBracket approx_values(const Pcs<double>& system, const CostSpec& cost,
                           std::span<const double> x0, const ValueOptions& options);

}  // namespace cpl
