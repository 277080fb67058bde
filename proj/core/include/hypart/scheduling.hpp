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
#include <vector>

#include "hypart/dag.hpp"
#include "hypart/hypergraph.hpp"

namespace hypart {

// A schedule of a DAG on k processors with unit-time nodes: a processor and
// a positive integer time step per node.
struct Schedule {
  std::vector<int> proc;           // per node, in [0, k)
  std::vector<std::int64_t> time;  // per node, >= 1

  std::int64_t makespan() const;
};

// True when no two nodes share a (processor, time) slot, every arc (u, v)
// has time(u) < time(v), and all fields are in range.
bool validate_schedule(const Dag& d, const Schedule& s, int k);

// Renumbers time steps so they are consecutive starting at 1; preserves
// validity and relative order.
Schedule normalize_times(const Schedule& s);

// Minimum makespan over all schedules on k processors (unit tasks). Exact
// search over reachable done-sets; nodes are capped at 30 and exploration at
// `budget` states (BudgetExceeded beyond). DAGs that are disjoint unions of
// directed chains use a product-space search instead and have no node cap.
std::int64_t optimal_makespan(const Dag& d, int k,
                              std::int64_t budget = 20000000);

// Minimum makespan when node-to-processor placement is fixed by `p`:
// per step, each processor runs at most one of its own ready nodes.
std::int64_t optimal_makespan_fixed_partition(const Dag& d, const Partition& p,
                                              int k,
                                              std::int64_t budget = 20000000);

// Compares the best makespan achievable with placement `p` against the
// unconstrained optimum: accepted iff mu_p <= (1 + eps) * mu.
struct ScheduleBalanceReport {
  std::int64_t mu = 0;
  std::int64_t mu_p = 0;
  bool accepted = false;
};

ScheduleBalanceReport schedule_balance_check(const Dag& d, const Partition& p,
                                             int k, const Rational& eps,
                                             std::int64_t budget = 20000000);

}  // namespace hypart
