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

#include "cpl/simulate.hpp"

#include <algorithm>
#include <cmath>

namespace cpl {
namespace {

std::vector<double> segment_cuts(const std::vector<double>& a_breaks,
                                 const std::vector<double>& u_breaks, double tau) {
  std::vector<double> cuts{0.0};
  for (const auto* list : {&a_breaks, &u_breaks})
    for (const double b : *list)
      if (b > 0.0 && b < tau) cuts.push_back(b);
  cuts.push_back(tau);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  return cuts;
}

void check_options(const SimulationOptions& o) {
  if (!(o.horizon > 0.0) || !std::isfinite(o.horizon))
    throw Error(ErrorCode::InvalidArgument, "horizon must be positive");
  if (!(o.step > 0.0) || !std::isfinite(o.step))
    throw Error(ErrorCode::InvalidArgument, "step must be positive");
}

void check_state(std::span<const double> x, double slack, Index step) {
  double scale = 1.0;
  for (const double v : x) {
    if (!std::isfinite(v)) throw Error(ErrorCode::NonFinite, "state is not finite", Location{step, std::nullopt});
    scale = std::max(scale, std::abs(v));
  }
  for (Index i = 0; i < x.size(); ++i)
    if (x[i] < -slack * scale)
      throw Error(ErrorCode::NegativeState, "state entry dropped below zero", Location{step, i});
}

/// RK4 over the cut grid. `rhs(segment, x, dx)` is constant in t within a
/// segment.
template <class Rhs>
Trajectory integrate(const std::vector<double>& cuts, double h, std::vector<double> x,
                     double negative_slack, Rhs&& rhs) {
  Trajectory tr;
  tr.step = h;
  const Index n = x.size();
  tr.times.push_back(0.0);
  tr.states.push_back(x);
  std::vector<double> k1(n), k2(n), k3(n), k4(n), tmp(n);
  for (Index seg = 0; seg + 1 < cuts.size(); ++seg) {
    const double s = cuts[seg];
    const double e = cuts[seg + 1];
    const double len = e - s;
    const auto steps = static_cast<Index>(std::max(1.0, std::ceil(len / h - 1e-9)));
    const double dt = len / static_cast<double>(steps);
    tr.segment_starts.push_back(tr.times.size() - 1);
    for (Index q = 0; q < steps; ++q) {
      rhs(seg, x, k1);
      for (Index i = 0; i < n; ++i) tmp[i] = x[i] + 0.5 * dt * k1[i];
      rhs(seg, tmp, k2);
      for (Index i = 0; i < n; ++i) tmp[i] = x[i] + 0.5 * dt * k2[i];
      rhs(seg, tmp, k3);
      for (Index i = 0; i < n; ++i) tmp[i] = x[i] + dt * k3[i];
      rhs(seg, tmp, k4);
      for (Index i = 0; i < n; ++i) x[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
      check_state(x, negative_slack, tr.times.size());
      tr.times.push_back(q + 1 == steps ? e : s + static_cast<double>(q + 1) * dt);
      tr.states.push_back(x);
    }
  }
  return tr;
}

void check_controls(const Pcs<double>& sys, const PiecewiseMatrixControl<double>& a,
                    const PiecewiseVectorControl& u, double tau, double slack) {
  a.validate();
  u.validate();
  for (Index q = 0; q < a.values.size() && a.breakpoints[q] < tau; ++q) {
    const auto& v = a.values[q];
    if (v.rows() != sys.n() || v.cols() != sys.n())
      throw Error(ErrorCode::ShapeMismatch, "matrix control has the wrong shape", Location{q, std::nullopt});
    if (!sys.bounds.contains(v, slack))
      throw Error(ErrorCode::NonAdmissibleControl, "matrix control leaves its bounds", Location{q, std::nullopt});
  }
  for (Index q = 0; q < u.values.size() && u.breakpoints[q] <= tau; ++q) {
    const auto& v = u.values[q];
    if (v.size() != sys.m())
      throw Error(ErrorCode::ShapeMismatch, "input control has the wrong dimension", Location{q, std::nullopt});
    if (!sys.U.contains(v, slack))
      throw Error(ErrorCode::NonAdmissibleControl, "input control leaves U", Location{q, std::nullopt});
  }
}

std::vector<double> input_term(const Matrix<double>& b, std::span<const double> u) {
  return apply(b, u);
}

}  // namespace

Trajectory simulate(const Pcs<double>& system, const PiecewiseMatrixControl<double>& a,
                    const PiecewiseVectorControl& u, std::span<const double> x0,
                    const SimulationOptions& options) {
  check_options(options);
  const Index n = system.n();
  if (x0.size() != n) throw Error(ErrorCode::ShapeMismatch, "initial state has the wrong length");
  for (Index i = 0; i < n; ++i)
    if (!(x0[i] >= 0.0)) throw Error(ErrorCode::NegativeInitial, "initial state must be non-negative", Location{i, std::nullopt});
  check_controls(system, a, u, options.horizon, options.admissibility_slack);

  const auto cuts = segment_cuts(a.breakpoints, u.breakpoints, options.horizon);
  std::vector<const Matrix<double>*> drift;
  std::vector<std::vector<double>> forcing;
  for (Index s = 0; s + 1 < cuts.size(); ++s) {
    drift.push_back(&a.at(cuts[s]));
    forcing.push_back(input_term(system.B, u.at(cuts[s])));
  }
  return integrate(cuts, options.step, std::vector<double>(x0.begin(), x0.end()),
                   options.negative_slack,
                   [&](Index seg, std::span<const double> x, std::span<double> dx) {
                     const Matrix<double>& m = *drift[seg];
                     for (Index i = 0; i < n; ++i) {
                       double acc = forcing[seg][i];
                       const auto row = m.row(i);
                       for (Index j = 0; j < n; ++j) acc += row[j] * x[j];
                       dx[i] = acc;
                     }
                   });
}

EquivalenceReport verify_trajectory_equivalence(const Pcs<double>& system,
                                                const ReducedPcs<double>& reduced,
                                                const PiecewiseMatrixControl<double>& a,
                                                const PiecewiseVectorControl& u,
                                                std::span<const double> x0,
                                                const SimulationOptions& options,
                                                ReducedControlPairing pairing) {
  check_options(options);
  const Index n = system.n();
  const Index k = reduced.L.rows();
  if (x0.size() != n) throw Error(ErrorCode::ShapeMismatch, "initial state has the wrong length");
  const std::vector<double> y0 = apply(reduced.L, x0);
  EquivalenceReport report;

  if (pairing == ReducedControlPairing::Projected) {
    PiecewiseMatrixControl<double> r;
    r.breakpoints = a.breakpoints;
    for (const auto& v : a.values) {
      if (v.rows() != n || v.cols() != n)
        throw Error(ErrorCode::ShapeMismatch, "matrix control has the wrong shape");
      r.values.push_back(reduced.L * v * reduced.L_pinv);
    }
    for (Index q = 0; q < r.values.size() && r.breakpoints[q] < options.horizon; ++q)
      for (Index i = 0; i < k; ++i)
        for (Index j = 0; j < k; ++j) {
          const double v = r.values[q](i, j);
          report.reduced_bound_violation =
              std::max({report.reduced_bound_violation, reduced.bounds.lower(i, j) - v,
                        v - reduced.bounds.upper(i, j)});
        }
    report.original = simulate(system, a, u, x0, options);
    report.reduced = simulate(reduced, r, u, y0, options);
  } else {
    check_controls(system, a, u, options.horizon, options.admissibility_slack);
    const auto& part = reduced.partition;
    const auto& lambda = reduced.factors.lambda;
    const auto cuts = segment_cuts(a.breakpoints, u.breakpoints, options.horizon);
    std::vector<const Matrix<double>*> drift;
    std::vector<Matrix<double>> la, projected;
    std::vector<std::vector<double>> forcing;
    for (Index s = 0; s + 1 < cuts.size(); ++s) {
      drift.push_back(&a.at(cuts[s]));
      la.push_back(reduced.L * *drift.back());
      projected.push_back(la.back() * reduced.L_pinv);
      std::vector<double> f = input_term(system.B, u.at(cuts[s]));
      const std::vector<double> g = input_term(reduced.B, u.at(cuts[s]));
      f.insert(f.end(), g.begin(), g.end());
      forcing.push_back(std::move(f));
    }
    std::vector<double> z0(x0.begin(), x0.end());
    z0.insert(z0.end(), y0.begin(), y0.end());
    Matrix<double> r(k, k);
    double violation = 0.0;
    auto joint = integrate(
        cuts, options.step, z0, options.negative_slack,
        [&](Index seg, std::span<const double> z, std::span<double> dz) {
          const auto x = z.first(n);
          const auto y = z.subspan(n, k);
          const Matrix<double>& m = *drift[seg];
          for (Index i = 0; i < n; ++i) {
            double acc = forcing[seg][i];
            const auto row = m.row(i);
            for (Index j = 0; j < n; ++j) acc += row[j] * x[j];
            dz[i] = acc;
          }
          for (Index s = 0; s < k; ++s) {
            double den = 0.0;
            for (const Index j : part.blocks[s]) den += lambda[j] * std::max(x[j], 0.0);
            for (Index q = 0; q < k; ++q) {
              if (den > 0.0) {
                double num = 0.0;
                for (const Index j : part.blocks[s]) num += la[seg](q, j) * std::max(x[j], 0.0);
                r(q, s) = num / den;
              } else {
                r(q, s) = projected[seg](q, s);
              }
              violation = std::max({violation, reduced.bounds.lower(q, s) - r(q, s),
                                    r(q, s) - reduced.bounds.upper(q, s)});
            }
          }
          for (Index q = 0; q < k; ++q) {
            double acc = forcing[seg][n + q];
            for (Index s = 0; s < k; ++s) acc += r(q, s) * y[s];
            dz[n + q] = acc;
          }
        });
    report.original.step = report.reduced.step = joint.step;
    report.original.times = report.reduced.times = joint.times;
    report.original.segment_starts = report.reduced.segment_starts = joint.segment_starts;
    for (const auto& z : joint.states) {
      report.original.states.emplace_back(z.begin(), z.begin() + static_cast<std::ptrdiff_t>(n));
      report.reduced.states.emplace_back(z.begin() + static_cast<std::ptrdiff_t>(n), z.end());
    }
    report.reduced_bound_violation = violation;
  }

  report.reduced_control_in_bounds = report.reduced_bound_violation <= options.admissibility_slack;
  for (Index t = 0; t < report.original.states.size(); ++t) {
    const auto lx = apply(reduced.L, std::span<const double>(report.original.states[t]));
    for (Index r = 0; r < k; ++r)
      report.max_deviation = std::max(report.max_deviation, std::abs(lx[r] - report.reduced.states[t][r]));
  }
  return report;
}

namespace {

double segment_integral(std::span<const double> f, double dt) {
  const Index intervals = f.size() - 1;
  if (intervals == 0) return 0.0;
  if (intervals == 1) return 0.5 * dt * (f[0] + f[1]);
  auto simpson = [&](Index from, Index count) {
    double acc = f[from] + f[from + count];
    for (Index q = 1; q < count; ++q) acc += (q % 2 == 1 ? 4.0 : 2.0) * f[from + q];
    return acc * dt / 3.0;
  };
  if (intervals % 2 == 0) return simpson(0, intervals);
  const Index head = intervals - 3;
  const double tail = 3.0 * dt / 8.0 * (f[head] + 3.0 * f[head + 1] + 3.0 * f[head + 2] + f[head + 3]);
  return (head > 0 ? simpson(0, head) : 0.0) + tail;
}

}  // namespace

double evaluate_cost(const Trajectory& trajectory, const PiecewiseVectorControl& u,
                     const CostSpec& cost, double tau) {
  u.validate();
  const auto& times = trajectory.times;
  if (times.empty() || times.front() != 0.0 ||
      std::abs(times.back() - tau) > 1e-12 * std::max(1.0, std::abs(tau)))
    throw Error(ErrorCode::GridMismatch, "trajectory does not cover [0, tau]");
  std::vector<Index> starts = trajectory.segment_starts;
  if (starts.empty() || starts.front() != 0)
    throw Error(ErrorCode::GridMismatch, "trajectory has no segment layout");
  for (const double b : u.breakpoints) {
    if (b <= 0.0 || b >= tau) continue;
    const bool aligned = std::any_of(starts.begin(), starts.end(), [&](Index s) {
      return std::abs(times[s] - b) <= 1e-12 * std::max(1.0, b);
    });
    if (!aligned) throw Error(ErrorCode::GridMismatch, "input breakpoint is not on the grid");
  }

  auto reading = [&](const std::vector<double>& x) {
    return cost.aggregation ? apply(*cost.aggregation, std::span<const double>(x)) : x;
  };

  double total = 0.0;
  if (cost.running) {
    starts.push_back(times.size() - 1);
    std::vector<double> f;
    for (Index s = 0; s + 1 < starts.size(); ++s) {
      const Index from = starts[s];
      const Index to = starts[s + 1];
      if (to == from) continue;
      const auto& uv = u.at(times[from]);
      f.clear();
      for (Index q = from; q <= to; ++q) f.push_back(cost.running(times[q], reading(trajectory.states[q]), uv));
      total += segment_integral(f, (times[to] - times[from]) / static_cast<double>(to - from));
    }
  }
  if (cost.final) total += cost.final(reading(trajectory.final_state()), u.at(tau));
  return total;
}

}  // namespace cpl
