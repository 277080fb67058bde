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

#include "hypart/gadgets.hpp"
#include "hypart/hypergraph.hpp"
#include "hypart/solvers.hpp"

namespace hypart {

// Reference implementations used to certify the optimizing code paths.
// Each one is a direct enumeration with no shared machinery: no branch and
// bound, no contraction, no dynamic programming over balance counts.

// Plain exhaustive optimum: enumerates every canonical assignment of nodes
// to at most k parts, filters by the balance spec, and keeps the cheapest
// (first in enumeration order among ties). Throws BudgetExceeded past
// `max_states` assignments.
std::optional<SolveResult> exhaustive_optimum(
    const Hypergraph& h, int k, const BalanceSpec& spec, Metric metric,
    std::int64_t max_states = 200000000);

// Decides whether a zero-cost balanced 2-partition exists. A zero-cost
// partition colors every connected component monochromatically and the
// edge-free nodes arbitrarily, so the check enumerates the 2^C component
// colorings (C <= 24) and closes each constraint with its own free nodes.
// Requires every edge-free node to lie in at most one constraint.
bool zero_cost_feasible(const Hypergraph& h, const BalanceSpec& spec);

// Minimum number of nodes covered by p of the graph's edges (enumerates all
// p-subsets).
std::int64_t min_covered_nodes(const SimpleGraph& g, std::int64_t p);

// True when the multiset can be split into t groups (of any sizes) that
// each sum to b.
bool multiset_groups_exist(const std::vector<std::int64_t>& numbers,
                           std::int64_t t, std::int64_t b);

// True when some pair of 0/1 vectors has dot product zero.
bool has_orthogonal_pair(const std::vector<std::vector<int>>& vectors);

// True when the graph has a proper 3-coloring (backtracking).
bool is_three_colorable(const SimpleGraph& g);

// True when the graph contains a clique on `size` nodes (needs n <= 62).
bool has_clique(const SimpleGraph& g, int size);

}  // namespace hypart
