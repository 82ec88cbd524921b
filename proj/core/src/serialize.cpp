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

#include "cpl/serialize.hpp"

#include <charconv>
#include <fstream>
#include <ostream>

namespace cpl {
namespace {

using nlohmann::json;

template <class T>
Matrix<T> load_matrix(const json& j, const std::filesystem::path& base) {
  if (j.is_string()) {
    std::filesystem::path p = j.get<std::string>();
    if (p.is_relative()) p = base / p;
    return read_coordinate_file<T>(p).to_dense();
  }
  return matrix_from_json<T>(j);
}

std::string fmt(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

Json opt(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

template <class T>
void put_control_set(Json& out, const ControlSet<T>& u) {
  if (u.is_box()) {
    out["u_max"] = vector_to_json<T>(u.upper);
  } else {
    Json pts = Json::array();
    for (const auto& p : u.points) pts.push_back(vector_to_json<T>(p));
    out["U_points"] = std::move(pts);
  }
}

}  // namespace

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, path.string() + ": " + e.what());
  }
}

template <class T>
Pcs<T> pcs_from_json(const json& j, const std::filesystem::path& base) {
  try {
    Pcs<T> p;
    if (j.contains("A")) {
      if (j.contains("lower") || j.contains("upper"))
        throw Error(ErrorCode::InvalidArgument, "give either A or lower/upper");
      p.bounds.lower = load_matrix<T>(j.at("A"), base);
      p.bounds.upper = p.bounds.lower;
    } else {
      p.bounds.lower = load_matrix<T>(j.at("lower"), base);
      p.bounds.upper = load_matrix<T>(j.at("upper"), base);
    }
    p.O = load_matrix<T>(j.at("O"), base);
    const Index n = p.bounds.lower.rows();
    if (j.contains("n") && j.at("n").get<Index>() != n)
      throw Error(ErrorCode::ShapeMismatch, "\"n\" does not match the bounds");
    if (j.contains("B")) {
      p.B = load_matrix<T>(j.at("B"), base);
    } else {
      p.B = Matrix<T>(n, 1);
    }
    if (j.contains("U_points")) {
      std::vector<std::vector<T>> pts;
      for (const auto& v : j.at("U_points")) pts.push_back(vector_from_json<T>(v));
      if (pts.empty()) throw Error(ErrorCode::InvalidArgument, "U_points is empty");
      p.U = ControlSet<T>::finite(std::move(pts));
    } else if (j.contains("u_max")) {
      p.U = ControlSet<T>::box(vector_from_json<T>(j.at("u_max")));
    } else {
      p.U = ControlSet<T>::origin(p.B.cols());
    }
    if (j.contains("x0")) p.x0 = vector_from_json<T>(j.at("x0"));
    validate_pcs(p);
    return p;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("PCS document: ") + e.what());
  }
}

template <class T>
Pcs<T> read_pcs_file(const std::filesystem::path& path) {
  return pcs_from_json<T>(read_json_file(path), path.parent_path());
}

template <class T>
Json pcs_to_json(const Pcs<T>& p) {
  Json out;
  out["n"] = p.n();
  out["lower"] = matrix_to_json(p.bounds.lower);
  out["upper"] = matrix_to_json(p.bounds.upper);
  out["O"] = matrix_to_json(p.O);
  out["B"] = matrix_to_json(p.B);
  put_control_set(out, p.U);
  if (p.x0) out["x0"] = vector_to_json<T>(*p.x0);
  return out;
}

template <class T>
Json verdict_to_json(const PropernessVerdict<T>& v) {
  Json out;
  out["kind"] = std::string(to_string(v.kind));
  if (v.partition) {
    Json blocks = Json::array();
    for (const auto& b : v.partition->blocks) {
      Json members = Json::array();
      for (const Index i : b) members.push_back(i + 1);
      blocks.push_back(std::move(members));
    }
    out["blocks"] = std::move(blocks);
    Json deleted = Json::array();
    for (const Index i : v.partition->deleted) deleted.push_back(i + 1);
    out["deleted"] = std::move(deleted);
  }
  if (v.factors) out["lambda"] = vector_to_json<T>(v.factors->lambda);
  if (const auto* neg = std::get_if<NegativeEntry>(&v.violation))
    out["negative_entry"] = Json::array({neg->row + 1, neg->col + 1});
  if (const auto* ov = std::get_if<OverlappingRows>(&v.violation))
    out["overlapping_rows"] = Json{{"rows", Json::array({ov->first + 1, ov->second + 1})}, {"col", ov->col + 1}};
  return out;
}

template <class T>
Json lumping_to_json(const LumpingResult<T>& r, const PropernessVerdict<T>& v, bool with_trace) {
  Json out;
  out["L"] = matrix_to_json(r.L);
  out["k"] = r.k;
  out["n"] = r.n;
  out["verdict"] = verdict_to_json(v);
  if (with_trace) {
    Json trace = Json::array();
    for (const auto& s : r.closure_trace)
      trace.push_back({{"generator", s.generator}, {"iteration", s.iteration},
                       {"basis_size", s.basis_size}, {"adjoined", s.adjoined}});
    out["closure_trace"] = std::move(trace);
  }
  return out;
}

template <class T>
Matrix<T> lumping_matrix_from_json(const json& j) {
  try {
    if (j.is_object() && j.contains("L")) return matrix_from_json<T>(j.at("L"));
    return matrix_from_json<T>(j);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("lumping document: ") + e.what());
  }
}

template <class T>
Json reduced_to_json(const ReducedPcs<T>& r) {
  Json out = pcs_to_json(r.as_pcs());
  PropernessVerdict<T> v;
  v.kind = r.L.rows() == r.L.cols() && r.L == Matrix<T>::identity(r.L.rows()) ? VerdictKind::Identity
                                                                           : VerdictKind::Proper;
  v.partition = r.partition;
  v.factors = r.factors;
  out["lumping"] = Json{{"L", matrix_to_json(r.L)}, {"k", r.L.rows()}, {"n", r.L.cols()},
                        {"verdict", verdict_to_json(v)}};
  out["L_pinv"] = matrix_to_json(r.L_pinv);
  out["metzler_preserved"] = r.metzler_preserved;
  out["order_preserved"] = r.order_preserved;
  return out;
}

template <class T>
PiecewiseMatrixControl<T> matrix_schedule_from_json(const json& j) {
  try {
    PiecewiseMatrixControl<T> s;
    s.breakpoints = j.at("breakpoints").get<std::vector<double>>();
    for (const auto& v : j.at("values")) s.values.push_back(matrix_from_json<T>(v));
    s.validate();
    return s;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("schedule document: ") + e.what());
  }
}

template <class T>
Json matrix_schedule_to_json(const PiecewiseMatrixControl<T>& s) {
  Json values = Json::array();
  for (const auto& v : s.values) values.push_back(matrix_to_json(v));
  return Json{{"breakpoints", s.breakpoints}, {"values", std::move(values)}};
}

PiecewiseVectorControl vector_schedule_from_json(const json& j) {
  try {
    PiecewiseVectorControl s;
    s.breakpoints = j.at("breakpoints").get<std::vector<double>>();
    for (const auto& v : j.at("values")) s.values.push_back(vector_from_json<double>(v));
    s.validate();
    return s;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("schedule document: ") + e.what());
  }
}

Json vector_schedule_to_json(const PiecewiseVectorControl& s) {
  return Json{{"breakpoints", s.breakpoints}, {"values", s.values}};
}

Json reconstruction_report_to_json(const ReconstructionReport& r) {
  Json pieces = Json::array();
  for (const auto& p : r.pieces)
    pieces.push_back({{"start", p.start},
                      {"within_bounds", p.within_bounds},
                      {"bound_violation", p.bound_violation},
                      {"reduced_within_bounds", p.reduced_within_bounds},
                      {"projection_error", p.projection_error},
                      {"lumping_residual", p.lumping_residual},
                      {"passed", p.passed}});
  return Json{{"passed", r.passed}, {"max_projection_error", r.max_projection_error},
              {"pieces", std::move(pieces)}};
}

Json equivalence_report_to_json(const EquivalenceReport& r, double tol) {
  return Json{{"passed", r.max_deviation <= tol && r.reduced_control_in_bounds},
              {"max_deviation", r.max_deviation},
              {"tolerance", tol},
              {"reduced_control_in_bounds", r.reduced_control_in_bounds},
              {"reduced_bound_violation", r.reduced_bound_violation},
              {"grid_points", r.original.times.size()},
              {"final_original", r.original.final_state()},
              {"final_reduced", r.reduced.final_state()}};
}

Json value_bracket_to_json(const ValueBracket& v) {
  auto schedule = [](const ExtremalSchedule& s) {
    return Json{{"cost", s.cost}, {"A", matrix_schedule_to_json(s.a)}, {"u", vector_schedule_to_json(s.u)}};
  };
  return Json{{"v_inf", v.v_inf},
              {"v_sup", v.v_sup},
              {"evaluated", v.evaluated},
              {"free_entries", v.free_entries},
              {"exhaustive", v.exhaustive},
              {"argmin", schedule(v.argmin)},
              {"argmax", schedule(v.argmax)}};
}

void write_trajectory_csv(std::ostream& out, const Trajectory& t) {
  const Index n = t.states.empty() ? 0 : t.states.front().size();
  out << 't';
  for (Index i = 1; i <= n; ++i) out << ",x_" << i;
  out << '\n';
  for (Index q = 0; q < t.times.size(); ++q) {
    out << fmt(t.times[q]);
    for (const double v : t.states[q]) out << ',' << fmt(v);
    out << '\n';
  }
}

Json bench_report_to_json(const BenchReport& r) {
  Json records = Json::array();
  for (const auto& rec : r.records)
    records.push_back({{"network", rec.network},
                       {"i", rec.i},
                       {"verdict", std::string(to_string(rec.verdict))},
                       {"k", rec.k ? Json(*rec.k) : Json(nullptr)},
                       {"n", rec.n},
                       {"ratio", opt(rec.ratio())},
                       {"ms", opt(rec.ms)}});
  Json networks = Json::array();
  for (const auto& a : r.networks)
    networks.push_back({{"network", a.network},
                        {"n", a.n},
                        {"instances", a.instances},
                        {"counted", a.counted},
                        {"mean_ratio", opt(a.mean_ratio)},
                        {"sem", opt(a.sem)}});
  const auto& s = r.summary;
  Json summary{{"proper", s.proper},
               {"general", s.general},
               {"none", s.none},
               {"timeout", s.timeout},
               {"total", s.total()},
               {"percent",
                {{"proper", s.percent(s.proper)},
                 {"general", s.percent(s.general)},
                 {"none", s.percent(s.none)},
                 {"timeout", s.percent(s.timeout)}}}};
  return Json{{"records", std::move(records)}, {"networks", std::move(networks)}, {"summary", std::move(summary)}};
}

void write_bench_csv(std::ostream& out, const BenchReport& r) {
  out << "network,i,verdict,k,n,ratio,ms\n";
  for (const auto& rec : r.records) {
    out << rec.network << ',' << rec.i << ',' << to_string(rec.verdict) << ',';
    if (rec.k) out << *rec.k;
    out << ',' << rec.n << ',';
    if (const auto ratio = rec.ratio()) out << fmt(*ratio);
    out << ',';
    if (rec.ms) out << fmt(*rec.ms);
    out << '\n';
  }
}

#define CPL_INSTANTIATE(T)                                                                   \
  template Pcs<T> pcs_from_json(const json&, const std::filesystem::path&);                  \
  template Pcs<T> read_pcs_file(const std::filesystem::path&);                               \
  template Json pcs_to_json(const Pcs<T>&);                                                  \
  template Json verdict_to_json(const PropernessVerdict<T>&);                                \
  template Json lumping_to_json(const LumpingResult<T>&, const PropernessVerdict<T>&, bool); \
  template Matrix<T> lumping_matrix_from_json(const json&);                                  \
  template Json reduced_to_json(const ReducedPcs<T>&);                                       \
  template PiecewiseMatrixControl<T> matrix_schedule_from_json(const json&);                 \
  template Json matrix_schedule_to_json(const PiecewiseMatrixControl<T>&);

CPL_INSTANTIATE(double)
CPL_INSTANTIATE(Rational)

#undef CPL_INSTANTIATE

}  // namespace cpl
