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

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "gtest/gtest.h"
#include "hypart/dag.hpp"
#include "hypart/hypergraph.hpp"
#include "hypart/scheduling.hpp"

namespace hypart {
namespace {

Dag make_dag(int n, std::vector<std::pair<NodeId, NodeId>> arcs) {
  Dag d;
  d.num_nodes = n;
  d.arcs = std::move(arcs);
  d.normalize_and_validate();
  return d;
}

Dag path_dag(int n) {
  Dag d;
  d.num_nodes = n;
  for (NodeId v = 0; v + 1 < n; ++v) d.arcs.emplace_back(v, v + 1);
  d.normalize_and_validate();
  return d;
}

// Disjoint chains with the given lengths (number of nodes per chain).
Dag chains_dag(const std::vector<int>& lengths) {
  Dag d;
  d.num_nodes = 0;
  for (int len : lengths) {
    for (int i = 0; i + 1 < len; ++i) {
      d.arcs.emplace_back(d.num_nodes + i, d.num_nodes + i + 1);
    }
    d.num_nodes += len;
  }
  d.normalize_and_validate();
  return d;
}

TEST(Makespan, PathNeedsOneStepPerNode) {
  for (int n = 1; n <= 20; ++n) {
    for (int k = 2; k <= 3; ++k) {
      EXPECT_EQ(optimal_makespan(path_dag(n), k), n);
    }
  }
}

TEST(Makespan, EqualChainsSplitPerfectly) {
  // k chains of length L on k processors finish in exactly L steps.
  for (int k = 2; k <= 4; ++k) {
    for (int len = 1; len <= 5; ++len) {
      EXPECT_EQ(optimal_makespan(chains_dag(std::vector<int>(k, len)), k),
                len);
    }
  }
}

TEST(Makespan, UnevenChainsBoundedByLongest) {
  EXPECT_EQ(optimal_makespan(chains_dag({3, 1}), 2), 3);
  EXPECT_EQ(optimal_makespan(chains_dag({4, 2, 2}), 2), 4);
  // One processor: chains serialize.
  EXPECT_EQ(optimal_makespan(chains_dag({3, 2}), 1), 5);
}

TEST(Makespan, DiamondOnTwoProcessors) {
  // 0 -> {1, 2} -> 3: the two middle nodes run in parallel.
  const Dag d = make_dag(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}});
  EXPECT_EQ(optimal_makespan(d, 2), 3);
  EXPECT_EQ(optimal_makespan(d, 1), 4);
}

TEST(Makespan, GeneralSearchEnforcesBudget) {
  const Dag d = make_dag(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}});
  EXPECT_THROW(optimal_makespan(d, 2, 1), BudgetExceeded);
}

TEST(Schedule, ValidationCatchesEveryRuleBreak) {
  const Dag d = path_dag(3);
  Schedule good;
  good.proc = {0, 1, 0};
  good.time = {1, 2, 3};
  EXPECT_TRUE(validate_schedule(d, good, 2));
  EXPECT_EQ(good.makespan(), 3);

  Schedule precedence = good;
  precedence.time = {2, 2, 3};  // arc 0 -> 1 not strictly increasing
  EXPECT_FALSE(validate_schedule(d, precedence, 2));

  Schedule clash;
  clash.proc = {0, 0, 0};
  clash.time = {1, 2, 2};  // two nodes share processor 0 at time 2
  EXPECT_FALSE(validate_schedule(d, clash, 1));

  Schedule range = good;
  range.proc = {0, 2, 0};  // processor index out of range for k = 2
  EXPECT_FALSE(validate_schedule(d, range, 2));

  Schedule shape = good;
  shape.time = {1, 2};  // wrong length
  EXPECT_FALSE(validate_schedule(d, shape, 2));
}

TEST(Schedule, NormalizeCompactsTimeSteps) {
  Schedule s;
  s.proc = {0, 1, 0};
  s.time = {2, 5, 9};
  const Schedule out = normalize_times(s);
  EXPECT_EQ(out.proc, s.proc);
  EXPECT_EQ(out.time, (std::vector<std::int64_t>{1, 2, 3}));
  EXPECT_EQ(out.makespan(), 3);
}

TEST(FixedPartition, RestrictionNeverBeatsFreeSchedule) {
  const Dag d = make_dag(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}});
  // Diamond with the two middle nodes pinned to the same processor: the
  // parallel step is lost.
  EXPECT_EQ(optimal_makespan_fixed_partition(d, {0, 1, 1, 0}, 2), 4);
  // Pinned to different processors: the free optimum survives.
  EXPECT_EQ(optimal_makespan_fixed_partition(d, {0, 0, 1, 0}, 2), 3);
}

TEST(FixedPartition, ChainsAssignedWholeToProcessors) {
  const Dag d = chains_dag({3, 3});
  EXPECT_EQ(optimal_makespan_fixed_partition(d, {0, 0, 0, 1, 1, 1}, 2), 3);
  // Both chains on one processor serialize.
  EXPECT_EQ(optimal_makespan_fixed_partition(d, {0, 0, 0, 0, 0, 0}, 2), 6);
}

TEST(BalanceCheck, ExactToleranceMeansEqualMakespan) {
  const Dag d = chains_dag({3, 3});
  const auto even = schedule_balance_check(d, {0, 0, 0, 1, 1, 1}, 2,
                                           Rational(0));
  EXPECT_EQ(even.mu, 3);
  EXPECT_EQ(even.mu_p, 3);
  EXPECT_TRUE(even.accepted);

  const auto lumped = schedule_balance_check(d, {0, 0, 0, 0, 0, 0}, 2,
                                             Rational(0));
  EXPECT_EQ(lumped.mu, 3);
  EXPECT_EQ(lumped.mu_p, 6);
  EXPECT_FALSE(lumped.accepted);
  // Tolerance 1 admits a factor-2 slowdown.
  EXPECT_TRUE(schedule_balance_check(d, {0, 0, 0, 0, 0, 0}, 2, Rational(1))
                  .accepted);
}

TEST(Makespan, LargeGeneralDagsAreRefused) {
  // Non-chain structure above the exact-search size cap.
  Dag d;
  d.num_nodes = 33;
  d.arcs.emplace_back(0, 1);
  d.arcs.emplace_back(0, 2);
  d.arcs.emplace_back(1, 3);
  d.arcs.emplace_back(2, 3);
  d.normalize_and_validate();
  EXPECT_THROW(optimal_makespan(d, 2), std::invalid_argument);
}

TEST(Makespan, LargeChainUnionsAreStillExact) {
  // Disjoint chains bypass the general-search size cap.
  const Dag d = chains_dag({12, 12, 12});  // 36 nodes
  EXPECT_EQ(optimal_makespan(d, 3), 12);
  EXPECT_EQ(optimal_makespan(d, 2), 18);
}

}  // namespace
}  // namespace hypart
