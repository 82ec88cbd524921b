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

#include <chrono>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "cpl/pcs.hpp"

namespace cpl {

struct WeightedEdge {
  Index source;  ///< 1-based
  Index target;  ///< 1-based
  double weight;
};

struct WeightedNetwork {
  std::string id;
  Index n = 0;
  std::vector<WeightedEdge> edges;
  bool directed = true;

  /// A_ij = total weight of edges j -> i; undirected edges fill both entries.
  SparseMatrix<double> adjacency() const;
};

/// Edge list: one `src dst [weight]` per line, 1-based node ids, weight
/// defaulting to 1. `#` starts a comment; the directives `# directed: false`
/// and `# nodes: N` set orientation and a minimum node count. Duplicate edges
/// are summed (for undirected input, {u,v} and {v,u} are the same edge).
/// Throws ParseError or NonPositiveWeight naming the 1-based line.
WeightedNetwork parse_edge_list(std::istream& in, std::string id = {});
WeightedNetwork load_edge_list(const std::filesystem::path& path);

/// The family {([(1-p) A; (1+p) A], e_i^T, 0, {0}) : row i of A non-zero},
/// stored once with the shared bounds.
struct PcsFamily {
  std::string network;
  Index n = 0;
  SparseMatrix<double> lower;
  SparseMatrix<double> upper;
  std::vector<Index> outputs;  ///< zero-based i, increasing

  Index size() const noexcept { return outputs.size(); }
  Pcs<double> materialize(Index q) const;
};

/// Throws EmptyNetwork for n = 0 and InvalidArgument unless 0 <= p < 1.
PcsFamily build_pcs_family(const WeightedNetwork& net, double perturbation = 0.1);

enum class BenchVerdict { Proper, General, NoReduction, Timeout };

std::string_view to_string(BenchVerdict v);

struct BenchRecord {
  std::string network;
  Index i = 0;  ///< 1-based output index
  BenchVerdict verdict = BenchVerdict::Timeout;
  std::optional<Index> k;  ///< unset on timeout
  Index n = 0;
  std::optional<double> ms;

  std::optional<double> ratio() const;
};

struct NetworkAggregate {
  std::string network;
  Index n = 0;
  Index instances = 0;
  /// Mean and standard error of k/n over proper and no-reduction records.
  Index counted = 0;
  std::optional<double> mean_ratio;
  std::optional<double> sem;
};

struct BenchSummary {
  Index proper = 0;
  Index general = 0;
  Index none = 0;
  Index timeout = 0;

  Index total() const noexcept { return proper + general + none + timeout; }
  double percent(Index count) const;
};

struct BenchReport {
  std::vector<BenchRecord> records;  ///< sorted by (network, i)
  std::vector<NetworkAggregate> networks;
  BenchSummary summary;
};

struct BenchOptions {
  double perturbation = 0.1;
  std::chrono::steady_clock::duration timeout = std::chrono::minutes(10);
  Index jobs = 1;
  Tolerance tol{};
  bool record_timings = true;
};

/// Lumps instance q of the family under the timeout and classifies it.
BenchRecord run_instance(const PcsFamily& family, Index q, const BenchOptions& options);

/// Runs every instance of every network on a pool of `jobs` workers.
BenchReport run_benchmark(const std::vector<WeightedNetwork>& networks, const BenchOptions& options);
BenchReport run_benchmark(const std::vector<std::filesystem::path>& paths, const BenchOptions& options);

/// Regular, non-hidden files of `dir`, sorted by name.
std::vector<std::filesystem::path> list_edge_lists(const std::filesystem::path& dir);

/// Aggregates from records; used by run_benchmark and to re-check reports.
BenchReport aggregate(std::vector<BenchRecord> records, const std::vector<WeightedNetwork>& networks);

}  // namespace cpl
