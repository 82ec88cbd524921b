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

#include <benchmark/benchmark.h>

#include <random>

#include "cpl/cpl.hpp"

namespace {

using cpl::Index;
using cpl::Matrix;
using cpl::SparseMatrix;

std::vector<SparseMatrix<double>> random_pair(Index n, Index edges, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::vector<SparseMatrix<double>::Triple> lo, hi;
  for (Index e = 0; e < edges; ++e) {
    const Index i = gen() % n, j = gen() % n;
    const double w = 1.0 + static_cast<double>(gen() % 3);
    lo.push_back({i, j, 0.9 * w});
    hi.push_back({i, j, 1.1 * w});
  }
  return {SparseMatrix<double>(n, n, lo), SparseMatrix<double>(n, n, hi)};
}

// Equitable partition into k blocks: the minimal lumping has dimension k.
std::vector<SparseMatrix<double>> equitable_pair(Index n, Index k, Index out_degree, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  const Index size = n / k;
  std::vector<SparseMatrix<double>::Triple> lo, hi;
  for (Index s = 0; s < k; ++s) {
    std::vector<Index> d(k, 0);
    d[(s + 1) % k] = 1;
    for (Index q = 1; q < out_degree; ++q) ++d[gen() % k];
    for (Index j = s * size; j < (s + 1) * size; ++j)
      for (Index r = 0; r < k; ++r)
        for (Index c = 0; c < d[r]; ++c) {
          const Index i = r * size + gen() % size;
          lo.push_back({i, j, 1.0});
          hi.push_back({i, j, 1.1});
        }
  }
  return {SparseMatrix<double>(n, n, lo), SparseMatrix<double>(n, n, hi)};
}

void BM_Rref(benchmark::State& state) {
  const auto n = static_cast<Index>(state.range(0));
  std::mt19937_64 gen(1);
  Matrix<double> m(n / 2, n);
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < n; ++j) m(i, j) = static_cast<double>(gen() % 1000) / 100.0;
  for (auto _ : state) benchmark::DoNotOptimize(cpl::rref(m));
}
BENCHMARK(BM_Rref)->RangeMultiplier(2)->Range(16, 256);

void BM_RrefExact(benchmark::State& state) {
  const auto n = static_cast<Index>(state.range(0));
  std::mt19937_64 gen(2);
  Matrix<cpl::Rational> m(n / 2, n);
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < n; ++j) m(i, j) = cpl::Rational(static_cast<long>(gen() % 7) - 3);
  for (auto _ : state) benchmark::DoNotOptimize(cpl::rref(m));
}
BENCHMARK(BM_RrefExact)->RangeMultiplier(2)->Range(4, 32);

void BM_LumpingRandom(benchmark::State& state) {
  const auto n = static_cast<Index>(state.range(0));
  const auto gens = random_pair(n, 5 * n, 3);
  Matrix<double> o(1, n);
  o(0, 0) = 1.0;
  cpl::LumpingOptions opt;
  opt.record_trace = false;
  Index k = 0;
  for (auto _ : state) k = cpl::minimal_constrained_lumping<double>(gens, o, opt).k;
  state.counters["k"] = static_cast<double>(k);
}
BENCHMARK(BM_LumpingRandom)->RangeMultiplier(2)->Range(125, 2000)->Unit(benchmark::kMillisecond);

void BM_LumpingEquitable(benchmark::State& state) {
  const Index n = 2000, k = static_cast<Index>(state.range(0));
  const auto gens = equitable_pair(n, k, static_cast<Index>(state.range(1)), 4);
  Matrix<double> o(1, n);
  for (Index j = 0; j < n / k; ++j) o(0, j) = 1.0;
  cpl::LumpingOptions opt;
  opt.record_trace = false;
  Index found = 0;
  for (auto _ : state) found = cpl::minimal_constrained_lumping<double>(gens, o, opt).k;
  state.counters["e"] = static_cast<double>(gens[0].nnz());
  state.counters["k"] = static_cast<double>(found);
}
// Larger block counts make the product chain long enough for rounding to
// inflate k in floating point.
BENCHMARK(BM_LumpingEquitable)
    ->ArgsProduct({{5, 10, 20}, {5, 10, 20, 40}})
    ->Unit(benchmark::kMicrosecond);

void BM_Simulate(benchmark::State& state) {
  const auto n = static_cast<Index>(state.range(0));
  std::mt19937_64 gen(5);
  Matrix<double> a(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      if (i != j && gen() % 4 == 0) a(i, j) = 1.0 / static_cast<double>(n);
  cpl::Pcs<double> p;
  p.bounds = {a, a};
  p.O = Matrix<double>(1, n);
  p.O(0, 0) = 1.0;
  p.B = Matrix<double>(n, 1);
  p.U = cpl::ControlSet<double>::origin();
  cpl::SimulationOptions o;
  o.step = 1e-2;
  const std::vector<double> x0(n, 1.0);
  for (auto _ : state)
    benchmark::DoNotOptimize(cpl::simulate(p, cpl::PiecewiseMatrixControl<double>::constant(a),
                                           cpl::PiecewiseVectorControl::constant({0.0}), x0, o));
}
BENCHMARK(BM_Simulate)->RangeMultiplier(2)->Range(4, 64);

}  // namespace

BENCHMARK_MAIN();
