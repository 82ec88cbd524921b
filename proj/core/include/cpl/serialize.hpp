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

#include <filesystem>
#include <iosfwd>

#include <nlohmann/json.hpp>

#include "cpl/bench.hpp"
#include "cpl/matrix_io.hpp"
#include "cpl/simulate.hpp"

namespace cpl {

using Json = nlohmann::json;

// PCS JSON:
//   {"n":3, "lower":M, "upper":M, "O":M, "B":M, "u_max":[...], "x0":[...]}
// "A" may replace lower/upper for a point interval; "U_points" may replace
// "u_max". Without B the system has one input column of zeros and U = {0}.
// A matrix given as a string is a coordinate file, resolved against `base`.

template <class T>
Pcs<T> pcs_from_json(const nlohmann::json& j, const std::filesystem::path& base = {});

template <class T>
Pcs<T> read_pcs_file(const std::filesystem::path& path);

template <class T>
Json pcs_to_json(const Pcs<T>& p);

template <class T>
Json verdict_to_json(const PropernessVerdict<T>& v);

template <class T>
Json lumping_to_json(const LumpingResult<T>& r, const PropernessVerdict<T>& v, bool with_trace);

/// Accepts a lumping document ({"L": M, ...}) or a bare matrix.
template <class T>
Matrix<T> lumping_matrix_from_json(const nlohmann::json& j);

/// PCS schema of the reduced system plus "lumping", "L_pinv" and the
/// preservation flags.
template <class T>
Json reduced_to_json(const ReducedPcs<T>& r);

// Schedules: {"breakpoints":[0, ...], "values":[...]}.

template <class T>
PiecewiseMatrixControl<T> matrix_schedule_from_json(const nlohmann::json& j);

template <class T>
Json matrix_schedule_to_json(const PiecewiseMatrixControl<T>& s);

PiecewiseVectorControl vector_schedule_from_json(const nlohmann::json& j);
Json vector_schedule_to_json(const PiecewiseVectorControl& s);

Json reconstruction_report_to_json(const ReconstructionReport& r);
Json equivalence_report_to_json(const EquivalenceReport& r, double tol);
Json value_bracket_to_json(const ValueBracket& v);

/// Header `t,x_1,...,x_n`, one row per grid point.
void write_trajectory_csv(std::ostream& out, const Trajectory& t);

Json bench_report_to_json(const BenchReport& r);
/// Header `network,i,verdict,k,n,ratio,ms`.
void write_bench_csv(std::ostream& out, const BenchReport& r);

nlohmann::json read_json_file(const std::filesystem::path& path);

}  // namespace cpl
