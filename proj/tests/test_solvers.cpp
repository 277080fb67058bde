/* Copyright 2026 The hypart Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include <optional>
#include <stdexcept>
#include <vector>

#include "gtest/gtest.h"
#include "hypart/hypergraph.hpp"
#include "hypart/oracles.hpp"
#include "hypart/solvers.hpp"

namespace hypart {
namespace {

Hypergraph make(int n, std::vector<std::vector<NodeId>> edges,
                std::vector<Weight> weights = {}) {
  Hypergraph h;
  h.num_nodes = n;
  h.edges = std::move(edges);
  h.weights = weights.empty() ? std::vector<Weight>(h.edges.size(), 1)
                              : std::move(weights);
  h.normalize_and_validate();
  return h;
}

TEST(BruteForce, TriangleBisection) {
  const Hypergraph triangle = make(3, {{0, 1}, {1, 2}, {0, 2}});
  // eps = 1/3 caps each part at floor((4/3)(3/2)) = 2, forcing a 2-1 split;
  // any proper split of a triangle cuts exactly 2 edges.
  const auto r = brute_force_optimum(triangle, 2, BalanceSpec::uniform(
                                         Rational(1, 3)), Metric::kCutNet);
  ASSERT_TRUE(r.has_value());
  EXPECT_EQ(r->cost, 2);
  EXPECT_EQ(r->partition, canonical_partition(r->partition));
  EXPECT_TRUE(is_balanced(triangle, r->partition, 2,
                          BalanceSpec::uniform(Rational(1, 3))));
}

TEST(BruteForce, PathSplitsAtOneEdge) {
  const Hypergraph path = make(4, {{0, 1}, {1, 2}, {2, 3}});
  const auto r = brute_force_optimum(path, 2, BalanceSpec::uniform(
                                         Rational(0)), Metric::kCutNet);
  ASSERT_TRUE(r.has_value());
  EXPECT_EQ(r->cost, 1);
  EXPECT_EQ(r->partition, (Partition{0, 0, 1, 1}));
}

TEST(BruteForce, InfeasibleWhenCapacityTooTight) {
  // floor(3/2) = 1 per part: three nodes cannot fit in two parts.
  const Hypergraph h = make(3, {{0, 1}});
  EXPECT_EQ(brute_force_optimum(h, 2, BalanceSpec::uniform(Rational(0)),
                                Metric::kCutNet),
            std::nullopt);
}

TEST(BruteForce, MatchesExhaustiveOracleOnFixedInstance) {
  const Hypergraph h =
      make(6, {{0, 1, 2}, {2, 3}, {3, 4, 5}, {0, 5}, {1, 4}}, {2, 1, 1, 3, 1});
  for (const Metric metric : {Metric::kCutNet, Metric::kConnectivity}) {
    for (int k = 2; k <= 3; ++k) {
      const BalanceSpec spec = BalanceSpec::uniform(Rational(1, 4));
      const auto expect = exhaustive_optimum(h, k, spec, metric);
      const auto got = brute_force_optimum(h, k, spec, metric);
      ASSERT_EQ(got.has_value(), expect.has_value());
      if (got) {
        EXPECT_EQ(got->cost, expect->cost);
      }
    }
  }
}

TEST(BruteForce, TinyBudgetThrows) {
  const Hypergraph h =
      make(9, {{0, 1, 2}, {3, 4, 5}, {6, 7, 8}, {0, 3, 6}, {1, 4, 7}});
  EXPECT_THROW(brute_force_optimum(h, 3, BalanceSpec::uniform(Rational(0)),
                                   Metric::kCutNet, 5),
               BudgetExceeded);
}

TEST(Bounded, AgreesWithBruteAcrossBounds) {
  // eps = 1/5 gives capacity floor((6/5)(5/2)) = 3, admitting 3-2 splits
  // (with eps = 0 an odd node count is infeasible for two parts).
  const Hypergraph h = make(5, {{0, 1, 2}, {1, 3}, {2, 3, 4}, {0, 4}});
  const BalanceSpec spec = BalanceSpec::uniform(Rational(1, 5));
  const auto best =
      brute_force_optimum(h, 2, spec, Metric::kConnectivity);
  ASSERT_TRUE(best.has_value());
  for (Weight bound = 0; bound <= best->cost + 2; ++bound) {
    const auto r = bounded_cost_solver(h, 2, Rational(1, 5),
                                       Rounding::kStrictFloor, bound,
                                       Metric::kConnectivity);
    EXPECT_EQ(r.has_value(), bound >= best->cost);
    if (r) {
      EXPECT_EQ(r->cost, best->cost);
      EXPECT_TRUE(is_balanced(h, r->partition, 2, spec));
      EXPECT_EQ(cost(h, r->partition, 2, Metric::kConnectivity), r->cost);
    }
  }
}

TEST(Bounded, ZeroBoundFindsZeroCostSplit) {
  // Two disconnected pairs: a balanced bisection of cost 0 exists.
  const Hypergraph h = make(4, {{0, 1}, {2, 3}});
  const auto r = bounded_cost_solver(h, 2, Rational(0),
                                     Rounding::kStrictFloor, 0,
                                     Metric::kCutNet);
  ASSERT_TRUE(r.has_value());
  EXPECT_EQ(r->cost, 0);
  EXPECT_EQ(r->partition, (Partition{0, 0, 1, 1}));
}

TEST(MultiConstraint, DisjointSetsSteerTheSplit) {
  const Hypergraph h = make(4, {{0, 1}, {2, 3}});
  BalanceSpec spec;
  // Each pair must straddle the two parts, forcing both edges to be cut.
  spec.constraints.push_back(
      BalanceConstraint{Rational(0), Rounding::kStrictFloor, {0, 1}});
  spec.constraints.push_back(
      BalanceConstraint{Rational(0), Rounding::kStrictFloor, {2, 3}});
  EXPECT_EQ(multi_constraint_bounded_solver(h, 2, spec, 1, Metric::kCutNet),
            std::nullopt);
  const auto r =
      multi_constraint_bounded_solver(h, 2, spec, 2, Metric::kCutNet);
  ASSERT_TRUE(r.has_value());
  EXPECT_EQ(r->cost, 2);
  EXPECT_TRUE(is_balanced(h, r->partition, 2, spec));
}

TEST(Sweep, ElementLEqualsSolverAtL) {
  const Hypergraph h = make(5, {{0, 1, 2}, {1, 3}, {2, 3, 4}, {0, 4}});
  const BalanceSpec spec = BalanceSpec::uniform(Rational(1, 4));
  const auto sweep = bounded_cost_sweep(h, 2, spec, 4, Metric::kCutNet);
  ASSERT_EQ(sweep.size(), 5u);
  for (Weight bound = 0; bound <= 4; ++bound) {
    const auto direct =
        multi_constraint_bounded_solver(h, 2, spec, bound, Metric::kCutNet);
    const auto& entry = sweep[static_cast<std::size_t>(bound)];
    ASSERT_EQ(entry.has_value(), direct.has_value());
    if (entry) {
      EXPECT_EQ(entry->cost, direct->cost);
    }
  }
}

TEST(Recursive, LeafLabelsFollowDepthFirstOrder) {
  // Two separate squares, each with one internal pair edge; splitting along
  // component boundaries first is free, the second level cuts nothing
  // either: total cost 0 into 4 parts of size 2.
  const Hypergraph h = make(8, {{0, 1}, {2, 3}, {4, 5}, {6, 7}});
  const RecursiveResult r = recursive_partitioner(
      h, {2, 2}, Rational(0), Rounding::kStrictFloor, Metric::kCutNet);
  EXPECT_EQ(r.cost, 0);
  EXPECT_EQ(r.hier.topology.branching, (std::vector<int>{2, 2}));
  EXPECT_TRUE(is_balanced(h, r.hier.leaf_of, 4,
                          BalanceSpec::uniform(Rational(0))));
  EXPECT_EQ(cost(h, r.hier.leaf_of, 4, Metric::kCutNet), r.cost);
  // Labels are leaf indices 0..3, each used exactly twice.
  std::vector<int> counts(4, 0);
  for (int label : r.hier.leaf_of) {
    ASSERT_GE(label, 0);
    ASSERT_LT(label, 4);
    ++counts[static_cast<std::size_t>(label)];
  }
  for (int c : counts) EXPECT_EQ(c, 2);
}

TEST(Recursive, StepInfeasibilityIsReported) {
  const Hypergraph h = make(3, {{0, 1, 2}});
  EXPECT_THROW(recursive_partitioner(h, {2}, Rational(0),
                                     Rounding::kStrictFloor, Metric::kCutNet),
               std::runtime_error);
}

TEST(Recursive, CustomOracleIsConsulted) {
  const Hypergraph h = make(4, {{0, 1}, {2, 3}});
  int calls = 0;
  const StepOracle oracle = [&calls](const Hypergraph& sub,
                                     int k) -> std::optional<SolveResult> {
    ++calls;
    return brute_force_optimum(sub, k, BalanceSpec::uniform(Rational(0)),
                               Metric::kCutNet);
  };
  const RecursiveResult r = recursive_partitioner(
      h, {2}, Rational(0), Rounding::kStrictFloor, Metric::kCutNet,
      100000000, oracle);
  EXPECT_EQ(r.cost, 0);
  EXPECT_EQ(calls, 1);
}

TEST(Oracles, ZeroCostFeasibilityMatchesSolver) {
  const Hypergraph split = make(4, {{0, 1}, {2, 3}});
  EXPECT_TRUE(zero_cost_feasible(split, BalanceSpec::uniform(Rational(0))));
  const Hypergraph joined = make(4, {{0, 1, 2, 3}});
  EXPECT_FALSE(zero_cost_feasible(joined, BalanceSpec::uniform(Rational(0))));
}

}  // namespace
}  // namespace hypart
