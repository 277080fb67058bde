// Copyright 2026 The hypart Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Microbenchmarks for the hot paths: recognition (expected linear in total
// pins), the exhaustive solvers on small instances, and the instance
// generators.

#include <cstdint>
#include <random>
#include <vector>

#include "benchmark/benchmark.h"
#include "hypart/gadgets.hpp"
#include "hypart/hierarchy.hpp"
#include "hypart/recognition.hpp"
#include "hypart/solvers.hpp"

namespace {

// A random DAG with `n` nodes and roughly 2n arcs: a random spanning
// arborescence keeps it connected, plus n extra forward arcs.
hypart::Dag random_dag(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  hypart::Dag d;
  d.num_nodes = n;
  for (int v = 1; v < n; ++v) {
    std::uniform_int_distribution<int> pick(0, v - 1);
    d.arcs.push_back({pick(rng), v});
  }
  for (int extra = 0; extra < n; ++extra) {
    std::uniform_int_distribution<int> pick(0, n - 1);
    int u = pick(rng), v = pick(rng);
    if (u == v) continue;
    if (u > v) std::swap(u, v);
    d.arcs.push_back({u, v});
  }
  d.normalize_and_validate();
  return d;
}

hypart::Hypergraph random_hypergraph(int n, int m, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  hypart::Hypergraph h;
  h.num_nodes = n;
  std::uniform_int_distribution<int> size_dist(2, 4);
  std::uniform_int_distribution<int> node_dist(0, n - 1);
  for (int e = 0; e < m; ++e) {
    std::vector<hypart::NodeId> pins;
    const int size = size_dist(rng);
    for (int i = 0; i < size; ++i) pins.push_back(node_dist(rng));
    h.edges.push_back(std::move(pins));
    h.weights.push_back(1);
  }
  h.normalize_and_validate();
  return h;
}

void BM_Recognition(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const hypart::CommHypergraph comm =
      hypart::dag_to_hyperdag(random_dag(n, 12345));
  std::int64_t pins = 0;
  for (const auto& e : comm.h.edges) pins += static_cast<std::int64_t>(e.size());
  for (auto _ : state) {
    auto res = hypart::is_hyperdag(comm.h);
    benchmark::DoNotOptimize(res.is_hyperdag);
  }
  state.SetComplexityN(pins);
}
BENCHMARK(BM_Recognition)->RangeMultiplier(4)->Range(1 << 8, 1 << 14)
    ->Complexity(benchmark::oN);

void BM_BruteForceOptimum(benchmark::State& state) {
  const hypart::Hypergraph h = random_hypergraph(8, 6, 987);
  const auto spec =
      hypart::BalanceSpec::uniform(hypart::Rational(1, 4));
  for (auto _ : state) {
    auto res = hypart::brute_force_optimum(h, 2, spec,
                                           hypart::Metric::kConnectivity);
    benchmark::DoNotOptimize(res.has_value());
  }
}
BENCHMARK(BM_BruteForceOptimum);

void BM_BoundedCostSweep(benchmark::State& state) {
  const hypart::Hypergraph h = random_hypergraph(8, 6, 987);
  const auto spec =
      hypart::BalanceSpec::uniform(hypart::Rational(1, 4));
  for (auto _ : state) {
    auto res = hypart::bounded_cost_sweep(h, 2, spec, 4,
                                          hypart::Metric::kConnectivity,
                                          100000000);
    benchmark::DoNotOptimize(res.size());
  }
}
BENCHMARK(BM_BoundedCostSweep);

void BM_GenerateColoring(benchmark::State& state) {
  hypart::SimpleGraph g;
  g.num_nodes = 10;
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<int> node(0, 9);
  for (int e = 0; e < 15; ++e) {
    int u = node(rng), v = node(rng);
    if (u == v) continue;
    if (u > v) std::swap(u, v);
    g.edges.push_back({u, v});
  }
  g.normalize_and_validate();
  for (auto _ : state) {
    auto inst = hypart::coloring_reduction(g);
    benchmark::DoNotOptimize(inst.h.num_nodes);
  }
}
BENCHMARK(BM_GenerateColoring);

void BM_GenerateTwostep(benchmark::State& state) {
  hypart::HierTopology t;
  t.branching = {2, 2};
  t.level_costs = {hypart::Rational(4), hypart::Rational(1)};
  for (auto _ : state) {
    auto inst = hypart::twostep_counterexample(4, t, 16);
    benchmark::DoNotOptimize(inst.h.num_nodes);
  }
}
BENCHMARK(BM_GenerateTwostep);

void BM_HierarchicalCost(benchmark::State& state) {
  hypart::HierTopology t;
  t.branching = {2, 2, 2};
  t.level_costs = {hypart::Rational(9), hypart::Rational(3),
                   hypart::Rational(1)};
  const hypart::Hypergraph h = random_hypergraph(64, 40, 777);
  hypart::Partition p(64);
  for (int v = 0; v < 64; ++v) p[static_cast<std::size_t>(v)] = v % 8;
  for (auto _ : state) {
    auto c = hypart::hierarchical_cost(h, p, t);
    benchmark::DoNotOptimize(c);
  }
}
BENCHMARK(BM_HierarchicalCost);

}  // namespace

BENCHMARK_MAIN();
