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

#include "cpl/bench.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

namespace cpl {
namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

[[noreturn]] void parse_error(Index line, const std::string& what) {
  throw Error(ErrorCode::ParseError, what, Location{line - 1, std::nullopt});
}

Index parse_node(const std::string& tok, Index line) {
  Index v = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || ptr != tok.data() + tok.size() || v == 0)
    parse_error(line, "node ids are positive integers, got '" + tok + "'");
  return v;
}

}  // namespace

SparseMatrix<double> WeightedNetwork::adjacency() const {
  std::vector<SparseMatrix<double>::Triple> t;
  t.reserve(edges.size() * (directed ? 1 : 2));
  for (const auto& e : edges) {
    t.push_back({e.target - 1, e.source - 1, e.weight});
    if (!directed && e.source != e.target) t.push_back({e.source - 1, e.target - 1, e.weight});
  }
  return SparseMatrix<double>(n, n, std::move(t));
}

WeightedNetwork parse_edge_list(std::istream& in, std::string id) {
  WeightedNetwork net;
  net.id = std::move(id);
  std::map<std::pair<Index, Index>, double> weights;
  std::vector<std::pair<Index, Index>> order;
  Index declared = 0;
  std::string raw;
  Index line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string text = raw;
    if (const auto hash = text.find('#'); hash != std::string::npos) {
      const std::string comment = trim(std::string_view(text).substr(hash + 1));
      if (const auto colon = comment.find(':'); colon != std::string::npos) {
        const std::string key = trim(std::string_view(comment).substr(0, colon));
        const std::string value = trim(std::string_view(comment).substr(colon + 1));
        if (key == "directed") {
          if (value == "true") net.directed = true;
          else if (value == "false") net.directed = false;
          else parse_error(line, "directed must be true or false");
        } else if (key == "nodes") {
          declared = parse_node(value, line);
        }
      }
      text.resize(hash);
    }
    std::istringstream fields(text);
    std::vector<std::string> tok;
    for (std::string t; fields >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    if (tok.size() < 2 || tok.size() > 3) parse_error(line, "expected 'src dst [weight]'");
    Index src = parse_node(tok[0], line);
    Index dst = parse_node(tok[1], line);
    double w = 1.0;
    if (tok.size() == 3) {
      const auto& s = tok[2];
      const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), w);
      if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(w))
        parse_error(line, "weight is not a finite number: '" + s + "'");
      if (!(w > 0.0)) throw Error(ErrorCode::NonPositiveWeight, "edge weights must be positive", Location{line - 1, std::nullopt});
    }
    net.n = std::max({net.n, src, dst});
    if (!net.directed && src > dst) std::swap(src, dst);
    auto [it, fresh] = weights.try_emplace({src, dst}, 0.0);
    if (fresh) order.push_back({src, dst});
    it->second += w;
  }
  if (!net.directed) {
    // Orientation may be declared after edges were read.
    std::map<std::pair<Index, Index>, double> merged;
    std::vector<std::pair<Index, Index>> merged_order;
    for (const auto& key : order) {
      const std::pair<Index, Index> norm{std::min(key.first, key.second), std::max(key.first, key.second)};
      auto [it, fresh] = merged.try_emplace(norm, 0.0);
      if (fresh) merged_order.push_back(norm);
      it->second += weights[key];
    }
    weights = std::move(merged);
    order = std::move(merged_order);
  }
  net.n = std::max(net.n, declared);
  for (const auto& key : order) net.edges.push_back({key.first, key.second, weights[key]});
  return net;
}

WeightedNetwork load_edge_list(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path.string());
  return parse_edge_list(in, path.stem().string());
}

Pcs<double> PcsFamily::materialize(Index q) const {
  Pcs<double> p;
  p.bounds = {lower.to_dense(), upper.to_dense()};
  p.O = Matrix<double>(1, n);
  p.O(0, outputs.at(q)) = 1.0;
  p.B = Matrix<double>(n, 1);
  p.U = ControlSet<double>::origin(1);
  return p;
}

PcsFamily build_pcs_family(const WeightedNetwork& net, double perturbation) {
  if (net.n == 0) throw Error(ErrorCode::EmptyNetwork, "network '" + net.id + "' has no nodes");
  if (!(perturbation >= 0.0 && perturbation < 1.0))
    throw Error(ErrorCode::InvalidArgument, "perturbation must lie in [0, 1)");
  const auto a = net.adjacency();
  PcsFamily f;
  f.network = net.id;
  f.n = net.n;
  f.lower = a.scaled(1.0 - perturbation);
  f.upper = a.scaled(1.0 + perturbation);
  for (Index i = 0; i < net.n; ++i)
    if (!a.row_cols(i).empty()) f.outputs.push_back(i);
  return f;
}

std::string_view to_string(BenchVerdict v) {
  switch (v) {
    case BenchVerdict::Proper: return "proper";
    case BenchVerdict::General: return "general";
    case BenchVerdict::NoReduction: return "none";
    case BenchVerdict::Timeout: return "timeout";
  }
  return "unknown";
}

std::optional<double> BenchRecord::ratio() const {
  if (!k || n == 0) return std::nullopt;
  return static_cast<double>(*k) / static_cast<double>(n);
}

double BenchSummary::percent(Index count) const {
  const Index t = total();
  return t == 0 ? 0.0 : 100.0 * static_cast<double>(count) / static_cast<double>(t);
}

BenchRecord run_instance(const PcsFamily& family, Index q, const BenchOptions& options) {
  BenchRecord rec;
  rec.network = family.network;
  rec.i = family.outputs.at(q) + 1;
  rec.n = family.n;
  Matrix<double> o(1, family.n);
  o(0, family.outputs[q]) = 1.0;
  const std::vector<SparseMatrix<double>> gens{family.lower, family.upper};
  LumpingOptions lo;
  lo.tol = options.tol;
  lo.budget = options.timeout;
  lo.record_trace = false;
  const auto start = std::chrono::steady_clock::now();
  try {
    const auto res = minimal_constrained_lumping<double>(gens, o, lo);
    rec.k = res.k;
    switch (check_proper(res.L, options.tol).kind) {
      case VerdictKind::Proper: rec.verdict = BenchVerdict::Proper; break;
      case VerdictKind::Identity: rec.verdict = BenchVerdict::NoReduction; break;
      case VerdictKind::GeneralLumping: rec.verdict = BenchVerdict::General; break;
    }
  } catch (const TimeoutExceeded&) {
    rec.verdict = BenchVerdict::Timeout;
  }
  if (options.record_timings)
    rec.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return rec;
}

BenchReport aggregate(std::vector<BenchRecord> records, const std::vector<WeightedNetwork>& networks) {
  std::sort(records.begin(), records.end(), [](const BenchRecord& a, const BenchRecord& b) {
    return std::tie(a.network, a.i) < std::tie(b.network, b.i);
  });
  BenchReport report;
  std::map<std::string, NetworkAggregate> per;
  for (const auto& net : networks) {
    auto& agg = per[net.id];
    agg.network = net.id;
    agg.n = net.n;
  }
  std::map<std::string, std::vector<double>> ratios;
  for (const auto& r : records) {
    auto& agg = per[r.network];
    agg.network = r.network;
    agg.n = r.n;
    ++agg.instances;
    switch (r.verdict) {
      case BenchVerdict::Proper: ++report.summary.proper; break;
      case BenchVerdict::General: ++report.summary.general; break;
      case BenchVerdict::NoReduction: ++report.summary.none; break;
      case BenchVerdict::Timeout: ++report.summary.timeout; break;
    }
    if (r.verdict == BenchVerdict::Proper || r.verdict == BenchVerdict::NoReduction)
      ratios[r.network].push_back(*r.ratio());
  }
  for (auto& [id, agg] : per) {
    const auto& v = ratios[id];
    agg.counted = v.size();
    if (!v.empty()) {
      double mean = 0.0;
      for (const double x : v) mean += x;
      mean /= static_cast<double>(v.size());
      double ss = 0.0;
      for (const double x : v) ss += (x - mean) * (x - mean);
      agg.mean_ratio = mean;
      agg.sem = v.size() > 1 ? std::sqrt(ss / static_cast<double>(v.size() - 1) / static_cast<double>(v.size())) : 0.0;
    }
    report.networks.push_back(agg);
  }
  report.records = std::move(records);
  return report;
}

BenchReport run_benchmark(const std::vector<WeightedNetwork>& networks, const BenchOptions& options) {
  std::vector<PcsFamily> families;
  for (const auto& net : networks) families.push_back(build_pcs_family(net, options.perturbation));
  std::vector<std::pair<Index, Index>> tasks;
  for (Index f = 0; f < families.size(); ++f)
    for (Index q = 0; q < families[f].size(); ++q) tasks.push_back({f, q});

  std::vector<BenchRecord> records(tasks.size());
  std::atomic<Index> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (Index t; (t = next.fetch_add(1)) < tasks.size();) {
      try {
        records[t] = run_instance(families[tasks[t].first], tasks[t].second, options);
      } catch (...) {
        const std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = tasks.size();
      }
    }
  };
  const Index jobs = std::max<Index>(1, std::min<Index>(options.jobs, tasks.size()));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (Index j = 0; j < jobs; ++j) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  return aggregate(std::move(records), networks);
}

std::vector<std::filesystem::path> list_edge_lists(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir))
    throw Error(ErrorCode::InvalidArgument, dir.string() + " is not a directory");
  std::vector<std::filesystem::path> out;
  for (const auto& entry : std::filesystem::directory_iterator(dir))
    if (entry.is_regular_file() && !entry.path().filename().string().starts_with("."))
      out.push_back(entry.path());
  std::sort(out.begin(), out.end());
  return out;
}

BenchReport run_benchmark(const std::vector<std::filesystem::path>& paths, const BenchOptions& options) {
  std::vector<WeightedNetwork> nets;
  for (const auto& p : paths) nets.push_back(load_edge_list(p));
  return run_benchmark(nets, options);
}

}  // namespace cpl
