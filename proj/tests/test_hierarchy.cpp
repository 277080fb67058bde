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

#include <algorithm>
#include <set>
#include <stdexcept>
#include <vector>

#include "gtest/gtest.h"
#include "hypart/hierarchy.hpp"
#include "hypart/hypergraph.hpp"
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

HierTopology topo(std::vector<int> branching, std::vector<Rational> costs) {
  HierTopology t;
  t.branching = std::move(branching);
  t.level_costs = std::move(costs);
  t.validate();
  return t;
}

TEST(Topology, ShapeQueries) {
  const HierTopology t = topo({2, 3}, {Rational(4), Rational(1)});
  EXPECT_EQ(t.depth(), 2);
  EXPECT_EQ(t.num_leaves(), 6);
  EXPECT_EQ(t.group_size(0), 6);
  EXPECT_EQ(t.group_size(1), 3);
  EXPECT_EQ(t.group_size(2), 1);
}

TEST(Topology, ValidationRejections) {
  HierTopology bad;
  bad.branching = {1, 2};
  bad.level_costs = {Rational(2), Rational(1)};
  EXPECT_THROW(bad.validate(), std::invalid_argument);

  bad.branching = {2, 2};
  bad.level_costs = {Rational(1), Rational(2)};  // increasing
  EXPECT_THROW(bad.validate(), std::invalid_argument);

  bad.level_costs = {Rational(3), Rational(2)};  // bottom level != 1
  EXPECT_THROW(bad.validate(), std::invalid_argument);

  bad.level_costs = {Rational(2)};  // wrong length
  EXPECT_THROW(bad.validate(), std::invalid_argument);

  bad.branching = {2, 2};
  bad.level_costs = {Rational(0), Rational(1)};  // non-positive, increasing
  EXPECT_THROW(bad.validate(), std::invalid_argument);
}

TEST(HierCost, EdgeAcrossAllLeaves) {
  // Four leaves in two groups of two; an edge over all nodes meets 2 groups
  // at level 1 and 4 at level 2: g1 * (2 - 1) + g2 * (4 - 2) = g1 + 2.
  const Hypergraph h = make(4, {{0, 1, 2, 3}});
  const HierTopology t = topo({2, 2}, {Rational(4), Rational(1)});
  EXPECT_EQ(hierarchical_cost(h, {0, 1, 2, 3}, t), Rational(6));
}

TEST(HierCost, GroupLocalVersusGroupCrossing) {
  const HierTopology t = topo({2, 2}, {Rational(4), Rational(1)});
  const Hypergraph pair = make(2, {{0, 1}});
  // Same leaf: free.
  EXPECT_EQ(hierarchical_cost(pair, {2, 2}, t), Rational(0));
  // Two leaves of the same level-1 group: only the cheap level pays.
  EXPECT_EQ(hierarchical_cost(pair, {0, 1}, t), Rational(1));
  // Leaves in different level-1 groups: the expensive level pays for the
  // extra group, and the leaf count does not grow further below it.
  EXPECT_EQ(hierarchical_cost(pair, {0, 2}, t), Rational(4));
}

TEST(HierCost, DepthOneMatchesConnectivity) {
  const Hypergraph h =
      make(5, {{0, 1, 2}, {2, 3}, {3, 4}, {0, 4}}, {2, 1, 1, 3});
  const HierTopology t = topo({3}, {Rational(1)});
  const Partition p = {0, 1, 2, 2, 0};
  EXPECT_EQ(hierarchical_cost(h, p, t),
            Rational(cost(h, p, 3, Metric::kConnectivity)));
}

TEST(Contract, ImagesDropSinglesAndAggregate) {
  // p = {0,0,1,1,2}: edge {0,1} -> {0} dropped; {1,2} and {1,3} -> {0,1}
  // aggregate to weight 3; {3,4} -> {1,2}; {0,4} -> {0,2}.
  const Hypergraph h =
      make(5, {{0, 1}, {1, 2}, {1, 3}, {3, 4}, {0, 4}}, {7, 1, 2, 4, 5});
  const Hypergraph c = contract_partition(h, {0, 0, 1, 1, 2}, 3);
  EXPECT_EQ(c.num_nodes, 3);
  ASSERT_EQ(c.edges.size(), 3u);
  std::vector<std::pair<std::vector<NodeId>, Weight>> got;
  for (std::size_t i = 0; i < c.edges.size(); ++i)
    got.push_back({c.edges[i], c.weights[i]});
  std::sort(got.begin(), got.end());
  EXPECT_EQ(got[0].first, (std::vector<NodeId>{0, 1}));
  EXPECT_EQ(got[0].second, 3);
  EXPECT_EQ(got[1].first, (std::vector<NodeId>{0, 2}));
  EXPECT_EQ(got[1].second, 5);
  EXPECT_EQ(got[2].first, (std::vector<NodeId>{1, 2}));
  EXPECT_EQ(got[2].second, 4);
}

TEST(Assignments, CountMatchesPinnedTable) {
  const Rational one(1);
  const Rational two(2);
  EXPECT_EQ(count_assignments(topo({2, 2}, {two, one})), 3u);
  EXPECT_EQ(count_assignments(topo({2, 3}, {two, one})), 10u);
  EXPECT_EQ(count_assignments(topo({3, 2}, {two, one})), 15u);
  EXPECT_EQ(count_assignments(topo({2, 4}, {two, one})), 35u);
  EXPECT_EQ(count_assignments(topo({4, 2}, {two, one})), 105u);
  EXPECT_EQ(count_assignments(topo({3, 3}, {two, one})), 280u);
  EXPECT_EQ(count_assignments(topo({2, 2, 2}, {Rational(3), two, one})),
            315u);
  EXPECT_EQ(count_assignments(topo({5}, {one})), 1u);
}

TEST(Assignments, CountOverflowsOnHugeTopologies) {
  // 2^6 = 64 leaves: 64!/(2!)^63 far exceeds 64 bits.
  const HierTopology t =
      topo(std::vector<int>(6, 2),
           {Rational(6), Rational(5), Rational(4), Rational(3), Rational(2),
            Rational(1)});
  EXPECT_THROW(count_assignments(t), std::overflow_error);
}

TEST(Assignments, EnumerationIsCanonicalAndComplete) {
  const HierTopology t = topo({2, 2}, {Rational(2), Rational(1)});
  const auto reps = enumerate_assignments(t);
  ASSERT_EQ(reps.size(), 3u);
  std::set<std::vector<int>> distinct(reps.begin(), reps.end());
  EXPECT_EQ(distinct.size(), 3u);
  for (const auto& rep : reps) {
    ASSERT_EQ(rep.size(), 4u);
    std::vector<int> sorted = rep;
    std::sort(sorted.begin(), sorted.end());
    EXPECT_EQ(sorted, (std::vector<int>{0, 1, 2, 3}));  // bijection
  }
  EXPECT_THROW(enumerate_assignments(topo({2, 4}, {Rational(2), Rational(1)}),
                                     2),
               BudgetExceeded);
}

TEST(Assignments, MatchingAgreesWithBruteForce) {
  // Star weights make the pairing choice matter.
  const Hypergraph h =
      make(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}},
           {10, 1, 1, 1, 1, 8});
  const Partition p = {0, 1, 2, 3};
  const HierTopology t = topo({2, 2}, {Rational(5), Rational(1)});
  const auto brute = optimal_assignment_bruteforce(h, p, t);
  const auto match = optimal_assignment_matching(h, p, t);
  EXPECT_EQ(brute.cost, match.cost);
  // Cheapest pairing keeps the heavy edges {0,1} and {2,3} group-local.
  EXPECT_EQ(hierarchical_cost(h, match.leaf_of_part, t), match.cost);
  const std::vector<int>& a = match.leaf_of_part;
  EXPECT_EQ(a[0] / 2, a[1] / 2);
  EXPECT_EQ(a[2] / 2, a[3] / 2);
}

TEST(TwoStep, PhaseOneOptimalThenBestAssignment) {
  // Two heavy pairs and two light cross edges; flat optimum into 4 singleton
  // parts... n = 4, k = 4, so every part is one node, and the assignment
  // decides everything.
  const Hypergraph h =
      make(8, {{0, 1}, {2, 3}, {4, 5}, {6, 7}, {1, 2}, {5, 6}});
  const HierTopology t = topo({2, 2}, {Rational(3), Rational(1)});
  const TwoStepResult r = two_step(h, t, Rational(0), Rounding::kStrictFloor);
  EXPECT_EQ(r.partition.topology.num_leaves(), 4);
  // Flat optimum: parts {0,1},{2,3},{4,5},{6,7} cut only the 2 light edges.
  EXPECT_EQ(r.flat_cost, 2);
  EXPECT_EQ(hierarchical_cost(h, r.partition.leaf_of, t), r.cost);
  // Best assignment keeps each cut edge inside a level-1 group: each pays
  // only the bottom level.
  EXPECT_EQ(r.cost, Rational(2));
  EXPECT_TRUE(is_balanced(h, r.partition.leaf_of, 4,
                          BalanceSpec::uniform(Rational(0))));
}

TEST(TwoStep, InfeasibleFlatPhaseThrows) {
  const Hypergraph h = make(3, {{0, 1, 2}});
  const HierTopology t = topo({2}, {Rational(1)});
  EXPECT_THROW(two_step(h, t, Rational(0), Rounding::kStrictFloor),
               std::runtime_error);
}

TEST(HierOptimum, BeatsOrMatchesTwoStep) {
  const Hypergraph h =
      make(8, {{0, 1}, {2, 3}, {4, 5}, {6, 7}, {1, 2}, {5, 6}});
  const HierTopology t = topo({2, 2}, {Rational(3), Rational(1)});
  const auto opt = hierarchical_optimum(h, t, Rational(0),
                                        Rounding::kStrictFloor);
  ASSERT_TRUE(opt.has_value());
  const TwoStepResult ts = two_step(h, t, Rational(0), Rounding::kStrictFloor);
  EXPECT_LE(opt->cost, ts.cost);
  EXPECT_EQ(hierarchical_cost(h, opt->leaf_of, t), opt->cost);
  EXPECT_TRUE(is_balanced(h, opt->leaf_of, 4,
                          BalanceSpec::uniform(Rational(0))));
}

TEST(HierOptimum, InfeasibleReturnsNullopt) {
  const Hypergraph h = make(3, {{0, 1, 2}});
  const HierTopology t = topo({2}, {Rational(1)});
  EXPECT_EQ(hierarchical_optimum(h, t, Rational(0), Rounding::kStrictFloor),
            std::nullopt);
}

TEST(HierOptimum, MatchesExhaustiveScanOnTinyInstance) {
  const Hypergraph h = make(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}, {0, 2}},
                            {3, 1, 2, 1, 5});
  const HierTopology t = topo({2, 2}, {Rational(2), Rational(1)});
  const auto opt = hierarchical_optimum(h, t, Rational(0),
                                        Rounding::kStrictFloor);
  ASSERT_TRUE(opt.has_value());
  // Exhaustive scan over all 4^4 labelings, keeping balanced ones.
  bool found = false;
  Rational best;
  Partition p(4, 0);
  const BalanceSpec spec = BalanceSpec::uniform(Rational(0));
  for (int code = 0; code < 256; ++code) {
    int c = code;
    for (int v = 0; v < 4; ++v) {
      p[static_cast<std::size_t>(v)] = c % 4;
      c /= 4;
    }
    if (!is_balanced(h, p, 4, spec)) continue;
    const Rational value = hierarchical_cost(h, p, t);
    if (!found || value < best) {
      best = value;
      found = true;
    }
  }
  ASSERT_TRUE(found);
  EXPECT_EQ(opt->cost, best);
}

}  // namespace
}  // namespace hypart
