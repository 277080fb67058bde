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

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hypart/hypergraph.hpp"

namespace hypart {

// A uniform processor hierarchy: level i splits every level-(i-1) group into
// b_i subgroups, so k = b_1 * ... * b_d leaves, numbered depth-first. The
// cost weight of communication that stays within a level-i group but crosses
// level i+1 is g_i; weights are weakly decreasing with g_d = 1.
struct HierTopology {
  std::vector<int> branching;   // b_1..b_d, each >= 2
  std::vector<Rational> level_costs;  // g_1..g_d, weakly decreasing, g_d = 1

  int depth() const { return static_cast<int>(branching.size()); }
  int num_leaves() const {
    int k = 1;
    for (int b : branching) k *= b;
    return k;
  }
  // Leaves per level-i group (i in [0, d]); level 0 is the whole machine.
  int group_size(int level) const {
    int size = num_leaves();
    for (int i = 0; i < level; ++i) size /= branching[i];
    return size;
  }

  // Throws std::invalid_argument on branching < 2, non-positive or
  // increasing costs, or g_d != 1.
  void validate() const;
};

// A partition whose labels are leaf indices of a topology.
struct HierPartition {
  HierTopology topology;
  Partition leaf_of;  // per node: leaf index in [0, k)
};

// Hierarchical connectivity cost: for every edge, each level i contributes
// g_i * (groups met at level i  -  groups met at level i-1), where level 0
// always counts one group. Labels of `p` are leaf indices of `t`.
Rational hierarchical_cost(const Hypergraph& h, const Partition& p,
                           const HierTopology& t);

// Contracts each part to a single node: the image of an edge is its set of
// parts; single-part images are dropped and identical images aggregate their
// weights. Part i becomes node i, k = number of parts.
Hypergraph contract_partition(const Hypergraph& h, const Partition& p, int k);

// Number of essentially different ways to map k parts onto the k leaves of
// `t` (assignments equivalent under hierarchy automorphisms are counted
// once): k! / prod_i (b_i!)^(b_1*...*b_{i-1}). Throws std::overflow_error
// when the value exceeds 64 bits.
std::uint64_t count_assignments(const HierTopology& t);

// Enumerates one canonical representative per equivalence class, as vectors
// `leaf_of_part` (part -> leaf). Throws BudgetExceeded past `budget`.
std::vector<std::vector<int>> enumerate_assignments(const HierTopology& t,
                                                    std::int64_t budget =
                                                        1000000);

// An assignment of parts to leaves together with its hierarchical cost.
struct AssignmentResult {
  std::vector<int> leaf_of_part;
  Rational cost;
};

// Best assignment by exhaustive enumeration. `p` uses labels [0, k).
AssignmentResult optimal_assignment_bruteforce(const Hypergraph& h,
                                               const Partition& p,
                                               const HierTopology& t);

// Best assignment for two-level topologies whose second level splits groups
// into pairs (d = 2, b_2 = 2): reduces to maximum-weight perfect matching on
// the contracted instance, solved exactly by subset dynamic programming.
// Requires even k <= 20.
AssignmentResult optimal_assignment_matching(const Hypergraph& h,
                                             const Partition& p,
                                             const HierTopology& t);

// Result of the two-phase heuristic: first solve a flat balanced k-way
// connectivity problem optimally, then assign the parts to leaves optimally.
struct TwoStepResult {
  HierPartition partition;
  Rational cost;              // hierarchical cost of the produced partition
  Weight flat_cost;           // connectivity cost of phase one
  std::vector<int> leaf_of_part;
};

// Phase one uses exact branch and bound (see solvers.hpp) under a uniform
// (eps, mode) balance constraint; phase two enumerates assignments. Throws
// std::runtime_error when no balanced flat partition exists.
TwoStepResult two_step(const Hypergraph& h, const HierTopology& t,
                       const Rational& eps, Rounding mode,
                       std::int64_t budget = 100000000);

// Exact optimum of the hierarchical cost over balanced partitions with leaf
// labels, by branch and bound with hierarchy-automorphism symmetry breaking.
// Returns std::nullopt when no balanced partition exists.
struct HierOptResult {
  Partition leaf_of;
  Rational cost;
};

std::optional<HierOptResult> hierarchical_optimum(
    const Hypergraph& h, const HierTopology& t, const Rational& eps,
    Rounding mode, std::int64_t budget = 100000000);

}  // namespace hypart
