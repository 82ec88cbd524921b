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

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "cpl/cpl.hpp"

namespace {

using namespace cpl;

struct Common {
  double tol = 1e-9;
  bool exact = false;
  bool verbose = false;
  std::string output;
  std::string format = "json";
};

struct Args {
  std::string pcs;
  std::string lumping;
  std::string reduced_control;
  std::string a_schedule;
  std::string u_schedule;
  std::vector<double> x0;
  double horizon = 1.0;
  double step = 1e-3;
  double timeout = 0.0;
  double perturbation = 0.1;
  double check_tol = 1e-6;
  std::string pairing = "projected";
  std::string cost = "output";
  Index switch_points = 0;
  Index corner_budget = 1u << 16;
  std::uint64_t seed = 0;
  Index jobs = 1;
  bool reduce = false;
  bool no_timings = false;
  std::string dir;
};

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw Error(ErrorCode::InvalidArgument, "cannot write " + path);
    }
  }
  std::ostream& get() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

void emit(const Common& c, const Json& j) {
  Output out(c.output);
  out.get() << j.dump(2) << '\n';
}

Tolerance tolerance(const Common& c) {
  Tolerance t;
  t.rank_rel = c.tol;
  t.validate();
  return t;
}

template <class T>
LumpingResult<T> lumping_for(const Pcs<T>& p, const Args& a, const Common& c) {
  if (!a.lumping.empty()) {
    LumpingResult<T> r;
    r.L = lumping_matrix_from_json<T>(read_json_file(a.lumping));
    r.k = r.L.rows();
    r.n = r.L.cols();
    return r;
  }
  LumpingOptions o;
  o.tol = tolerance(c);
  o.record_trace = c.verbose;
  if (a.timeout > 0.0)
    o.budget = std::chrono::duration_cast<std::chrono::steady_clock::duration>(
        std::chrono::duration<double>(a.timeout));
  return lump_pcs(p, o);
}

template <class T>
int run_lump(const Args& a, const Common& c) {
  const auto p = read_pcs_file<T>(a.pcs);
  const auto r = lumping_for(p, a, c);
  emit(c, lumping_to_json(r, check_proper(r.L, tolerance(c)), c.verbose));
  return 0;
}

template <class T>
int run_reduce(const Args& a, const Common& c) {
  const auto p = read_pcs_file<T>(a.pcs);
  const auto r = lumping_for(p, a, c);
  emit(c, reduced_to_json(reduce_pcs(p, r.L, tolerance(c))));
  return 0;
}

template <class T>
int run_reconstruct(const Args& a, const Common& c) {
  const auto p = read_pcs_file<T>(a.pcs);
  const auto r = lumping_for(p, a, c);
  const auto red = reduce_pcs(p, r.L, tolerance(c));
  const auto sched = matrix_schedule_from_json<T>(read_json_file(a.reduced_control));
  const auto out = reconstruct_control(sched, red, p, tolerance(c));
  if (c.verbose) {
    const auto rep = verify_reconstruction(out, sched, red, p, 1e-9);
    std::cerr << reconstruction_report_to_json(rep).dump(2) << '\n';
  }
  emit(c, matrix_schedule_to_json(out));
  return 0;
}

PiecewiseMatrixControl<double> a_schedule(const Pcs<double>& p, const Args& a) {
  if (a.a_schedule.empty()) return PiecewiseMatrixControl<double>::constant(p.bounds.lower);
  return matrix_schedule_from_json<double>(read_json_file(a.a_schedule));
}

PiecewiseVectorControl u_schedule(const Pcs<double>& p, const Args& a) {
  if (a.u_schedule.empty()) return PiecewiseVectorControl::constant(std::vector<double>(p.m(), 0.0));
  return vector_schedule_from_json(read_json_file(a.u_schedule));
}

std::vector<double> initial_state(const Pcs<double>& p, const Args& a) {
  if (!a.x0.empty()) return a.x0;
  if (p.x0) return *p.x0;
  throw Error(ErrorCode::InvalidArgument, "no initial state: pass --x0 or set x0 in the PCS");
}

SimulationOptions sim_options(const Args& a) {
  SimulationOptions o;
  o.horizon = a.horizon;
  o.step = a.step;
  return o;
}

int run_simulate(const Args& a, const Common& c) {
  const auto p = read_pcs_file<double>(a.pcs);
  const auto x0 = initial_state(p, a);
  const auto tr = simulate(p, a_schedule(p, a), u_schedule(p, a), x0, sim_options(a));
  Output out(c.output);
  write_trajectory_csv(out.get(), tr);
  return 0;
}

int run_verify(const Args& a, const Common& c) {
  const auto p = read_pcs_file<double>(a.pcs);
  const auto r = lumping_for(p, a, c);
  const auto red = reduce_pcs(p, r.L, tolerance(c));
  const auto x0 = initial_state(p, a);
  const auto pairing = a.pairing == "feedback" ? ReducedControlPairing::StateFeedback
                                               : ReducedControlPairing::Projected;
  const auto rep = verify_trajectory_equivalence(p, red, a_schedule(p, a), u_schedule(p, a), x0,
                                                 sim_options(a), pairing);
  Json j = equivalence_report_to_json(rep, a.check_tol);
  j["k"] = red.L.rows();
  j["n"] = p.n();
  j["pairing"] = a.pairing;
  emit(c, j);
  return j["passed"].get<bool>() ? 0 : 1;
}

CostSpec output_cost(const std::string& kind, const Matrix<double>& o) {
  CostSpec cost;
  cost.aggregation = o;
  auto total = [](std::span<const double> z) {
    double s = 0.0;
    for (const double v : z) s += v;
    return s;
  };
  if (kind == "output") {
    cost.final = [total](std::span<const double> z, std::span<const double>) { return total(z); };
  } else if (kind == "output-integral") {
    cost.running = [total](double, std::span<const double> z, std::span<const double>) { return total(z); };
  } else if (kind == "output-squared") {
    cost.final = [total](std::span<const double> z, std::span<const double>) {
      double s = 0.0;
      for (const double v : z) s += v * v;
      return s;
    };
  } else {
    throw Error(ErrorCode::InvalidArgument, "unknown cost '" + kind + "'");
  }
  return cost;
}

int run_values(const Args& a, const Common& c) {
  const auto p = read_pcs_file<double>(a.pcs);
  const auto x0 = initial_state(p, a);
  ValueOptions o;
  o.horizon = a.horizon;
  o.step = a.step;
  o.switch_points = a.switch_points;
  o.corner_budget = a.corner_budget;
  o.seed = a.seed;
  const CostSpec cost = output_cost(a.cost, p.O);
  Json j;
  j["original"] = value_bracket_to_json(approx_values(p, cost, x0, o));
  if (a.reduce) {
    const auto r = lumping_for(p, a, c);
    const auto red = reduce_pcs(p, r.L, tolerance(c));
    const auto y0 = apply(red.L, std::span<const double>(x0));
    const CostSpec reduced_cost = output_cost(a.cost, red.O);
    j["reduced"] = value_bracket_to_json(approx_values(red.as_pcs(), reduced_cost, y0, o));
    j["k"] = red.L.rows();
  }
  emit(c, j);
  return 0;
}

int run_bench(const Args& a, const Common& c) {
  BenchOptions o;
  o.perturbation = a.perturbation;
  o.jobs = a.jobs;
  o.tol = tolerance(c);
  o.record_timings = !a.no_timings;
  if (a.timeout > 0.0)
    o.timeout = std::chrono::duration_cast<std::chrono::steady_clock::duration>(
        std::chrono::duration<double>(a.timeout));
  const auto report = run_benchmark(list_edge_lists(a.dir), o);
  if (c.format == "csv") {
    Output out(c.output);
    write_bench_csv(out.get(), report);
  } else {
    emit(c, bench_report_to_json(report));
  }
  return 0;
}

template <class F>
int dispatch_exact(const Common& c, F&& f) {
  return c.exact ? f(Rational{}) : f(0.0);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Constrained proper positive lumping of positive controlled systems"};
  app.require_subcommand(1);
  app.fallthrough();
  Common common;
  Args args;
  app.add_option("--tol", common.tol, "Relative rank tolerance")->check(CLI::PositiveNumber);
  app.add_flag("--verbose", common.verbose, "Closure trace and diagnostics");
  app.add_option("-o,--output", common.output, "Write to a file instead of stdout");
  app.add_option("--format", common.format, "Output format")->check(CLI::IsMember({"json", "csv"}));

  auto timeout = [&](CLI::App* sub) {
    sub->add_option("--timeout", args.timeout, "Lumping budget in seconds (0: none)")->check(CLI::NonNegativeNumber);
  };
  auto lumping = [&](CLI::App* sub) {
    sub->add_option("--lumping", args.lumping, "Lumping JSON instead of computing one")->check(CLI::ExistingFile);
  };
  auto exact = [&](CLI::App* sub) { sub->add_flag("--exact", common.exact, "Rational arithmetic"); };
  auto grid = [&](CLI::App* sub) {
    sub->add_option("--horizon", args.horizon, "Time horizon")->check(CLI::PositiveNumber);
    sub->add_option("--step", args.step, "Integration step")->check(CLI::PositiveNumber);
    sub->add_option("--x0", args.x0, "Initial state")->expected(-1);
    sub->add_option("--A", args.a_schedule, "Matrix control schedule (default: lower bound)")->check(CLI::ExistingFile);
    sub->add_option("--u", args.u_schedule, "Input schedule (default: zero)")->check(CLI::ExistingFile);
  };

  auto* lump = app.add_subcommand("lump", "Minimal constrained lumping of a PCS");
  lump->add_option("pcs", args.pcs)->required()->check(CLI::ExistingFile);
  exact(lump);
  timeout(lump);

  auto* reduce = app.add_subcommand("reduce", "Reduced PCS under a proper lumping");
  reduce->add_option("pcs", args.pcs)->required()->check(CLI::ExistingFile);
  exact(reduce);
  timeout(reduce);
  lumping(reduce);

  auto* reconstruct = app.add_subcommand("reconstruct", "Original control from a reduced one");
  reconstruct->add_option("pcs", args.pcs)->required()->check(CLI::ExistingFile);
  reconstruct->add_option("schedule", args.reduced_control, "Reduced control schedule")->required()->check(CLI::ExistingFile);
  exact(reconstruct);
  timeout(reconstruct);
  lumping(reconstruct);

  auto* sim = app.add_subcommand("simulate", "Trajectory CSV");
  sim->add_option("pcs", args.pcs)->required()->check(CLI::ExistingFile);
  grid(sim);

  auto* verify = app.add_subcommand("verify", "Trajectory equivalence of original and reduced systems");
  verify->add_option("pcs", args.pcs)->required()->check(CLI::ExistingFile);
  grid(verify);
  timeout(verify);
  lumping(verify);
  verify->add_option("--pairing", args.pairing, "Reduced control pairing")
      ->check(CLI::IsMember({"projected", "feedback"}));
  verify->add_option("--check-tol", args.check_tol, "Maximum deviation")->check(CLI::PositiveNumber);

  auto* values = app.add_subcommand("values", "Bracket optimal values over extremal schedules");
  values->add_option("pcs", args.pcs)->required()->check(CLI::ExistingFile);
  grid(values);
  timeout(values);
  lumping(values);
  values->add_option("--cost", args.cost, "Cost on O x")
      ->check(CLI::IsMember({"output", "output-integral", "output-squared"}));
  values->add_option("--switch-points", args.switch_points);
  values->add_option("--corner-budget", args.corner_budget)->check(CLI::PositiveNumber);
  values->add_option("--seed", args.seed);
  values->add_flag("--reduce", args.reduce, "Also bracket the reduced system");

  auto* bench = app.add_subcommand("bench", "Classify the PCS families of a directory of edge lists");
  bench->add_option("dir", args.dir)->required()->check(CLI::ExistingDirectory);
  bench->add_option("--perturbation", args.perturbation, "Relative interval half-width")->check(CLI::Range(0.0, 0.999999));
  bench->add_option("--jobs", args.jobs, "Worker threads")->check(CLI::PositiveNumber);
  bench->add_flag("--no-timings", args.no_timings, "Emit null wall times for byte-stable reports");
  bench->add_option("--timeout", args.timeout, "Per-instance budget in seconds (default 600)")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << app.help();
    return 1;
  }

  try {
    if (bench->parsed() && args.timeout == 0.0) args.timeout = 600.0;
    if (lump->parsed()) return dispatch_exact(common, [&](auto t) { return run_lump<decltype(t)>(args, common); });
    if (reduce->parsed()) return dispatch_exact(common, [&](auto t) { return run_reduce<decltype(t)>(args, common); });
    if (reconstruct->parsed())
      return dispatch_exact(common, [&](auto t) { return run_reconstruct<decltype(t)>(args, common); });
    if (sim->parsed()) return run_simulate(args, common);
    if (verify->parsed()) return run_verify(args, common);
    if (values->parsed()) return run_values(args, common);
    if (bench->parsed()) return run_bench(args, common);
  } catch (const TimeoutExceeded& e) {
    std::cerr << "cpl: " << e.what() << " (basis size " << e.basis_size() << ")\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << "cpl: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "cpl: internal error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
