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

#include "hypart/scheduling.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <unordered_set>
#include <utility>
#include <vector>

namespace hypart {

std::int64_t Schedule::makespan() const {
  std::int64_t result = 0;
  for (std::int64_t t : time) result = std::max(result, t);
  return result;
}

bool validate_schedule(const Dag& d, const Schedule& s, int k) {
  const int n = d.num_nodes;
  if (k < 1) return false;
  if (static_cast<int>(s.proc.size()) != n ||
      static_cast<int>(s.time.size()) != n)
    return false;
  std::set<std::pair<int, std::int64_t>> slots;
  for (NodeId v = 0; v < n; ++v) {
    if (s.proc[v] < 0 || s.proc[v] >= k) return false;
    if (s.time[v] < 1) return false;
    if (!slots.insert({s.proc[v], s.time[v]}).second) return false;
  }
  for (const auto& [u, v] : d.arcs)
    if (s.time[u] >= s.time[v]) return false;
  return true;
}

Schedule normalize_times(const Schedule& s) {
  std::vector<std::int64_t> distinct = s.time;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()),
                 distinct.end());
  Schedule out = s;
  for (std::size_t v = 0; v < s.time.size(); ++v) {
    const auto it =
        std::lower_bound(distinct.begin(), distinct.end(), s.time[v]);
    out.time[v] = (it - distinct.begin()) + 1;
  }
  return out;
}

namespace {

// Splits a DAG whose nodes all have in- and out-degree at most one into its
// directed chains (isolated nodes are chains of length one). Returns an empty
// optional when some node violates the degree bound.
std::optional<std::vector<std::vector<NodeId>>> decompose_chains(
    const Dag& d) {
  const int n = d.num_nodes;
  const auto in = d.in_degrees();
  const auto out = d.out_degrees();
  for (NodeId v = 0; v < n; ++v)
    if (in[v] > 1 || out[v] > 1) return std::nullopt;
  std::vector<NodeId> next(n, -1);
  for (const auto& [u, v] : d.arcs) next[u] = v;
  std::vector<std::vector<NodeId>> chains;
  for (NodeId v = 0; v < n; ++v) {
    if (in[v] != 0) continue;
    std::vector<NodeId> chain;
    for (NodeId u = v; u != -1; u = next[u]) chain.push_back(u);
    chains.push_back(std::move(chain));
  }
  return chains;
}

// Breadth-first search over per-chain progress tuples; one BFS layer is one
// unit time step. With a fixed partition each part advances exactly one of
// its ready chain heads per step (idling a part with work is dominated);
// otherwise any min(k, #unfinished) chains advance. States are encoded in
// mixed radix, and `budget` caps the size of the state space.
std::int64_t chain_makespan(const std::vector<std::vector<NodeId>>& chains,
                            int k, const Partition* parts,
                            std::int64_t budget) {
  const int c = static_cast<int>(chains.size());
  unsigned __int128 product = 1;
  for (const auto& chain : chains) {
    product *= chain.size() + 1;
    if (product > static_cast<unsigned __int128>(budget) ||
        product > 1000000000)
      throw BudgetExceeded("schedule state space exceeds budget");
  }
  const std::uint64_t total = static_cast<std::uint64_t>(product);
  std::vector<std::uint64_t> stride(c);
  std::uint64_t acc = 1;
  std::uint64_t goal = 0;
  for (int i = 0; i < c; ++i) {
    stride[i] = acc;
    acc *= chains[i].size() + 1;
    goal += chains[i].size() * stride[i];
  }
  if (goal == 0) return 0;

  std::vector<bool> visited(total, false);
  std::vector<std::uint64_t> frontier{0};
  std::vector<std::uint64_t> next_frontier;
  visited[0] = true;
  std::int64_t visited_count = 1;

  std::vector<int> progress(c);
  std::vector<int> avail;
  std::vector<std::vector<int>> per_part(parts != nullptr ? k : 0);

  for (std::int64_t step = 1; !frontier.empty(); ++step) {
    next_frontier.clear();
    for (const std::uint64_t state : frontier) {
      std::uint64_t rem = state;
      for (int i = 0; i < c; ++i) {
        progress[i] = static_cast<int>(rem % (chains[i].size() + 1));
        rem /= chains[i].size() + 1;
      }
      avail.clear();
      for (int i = 0; i < c; ++i)
        if (progress[i] < static_cast<int>(chains[i].size()))
          avail.push_back(i);

      const auto process = [&](std::uint64_t next_state) -> bool {
        if (next_state == goal) return true;
        if (!visited[next_state]) {
          visited[next_state] = true;
          if (++visited_count > budget)
            throw BudgetExceeded("schedule search budget exceeded");
          next_frontier.push_back(next_state);
        }
        return false;
      };

      if (parts == nullptr) {
        const int take = std::min<int>(k, static_cast<int>(avail.size()));
        std::vector<int> sel(take);
        std::iota(sel.begin(), sel.end(), 0);
        while (true) {
          std::uint64_t next_state = state;
          for (int i = 0; i < take; ++i) next_state += stride[avail[sel[i]]];
          if (process(next_state)) return step;
          int i = take - 1;
          while (i >= 0 &&
                 sel[i] == static_cast<int>(avail.size()) - take + i)
            --i;
          if (i < 0) break;
          ++sel[i];
          for (int j = i + 1; j < take; ++j) sel[j] = sel[j - 1] + 1;
        }
      } else {
        for (auto& list : per_part) list.clear();
        for (const int i : avail)
          per_part[(*parts)[chains[i][progress[i]]]].push_back(i);
        std::vector<const std::vector<int>*> active;
        for (const auto& list : per_part)
          if (!list.empty()) active.push_back(&list);
        std::vector<int> digit(active.size(), 0);
        while (true) {
          std::uint64_t next_state = state;
          for (std::size_t j = 0; j < active.size(); ++j)
            next_state += stride[(*active[j])[digit[j]]];
          if (process(next_state)) return step;
          std::size_t j = 0;
          while (j < active.size() &&
                 ++digit[j] == static_cast<int>(active[j]->size())) {
            digit[j] = 0;
            ++j;
          }
          if (j == active.size()) break;
        }
      }
    }
    frontier.swap(next_frontier);
  }
  throw std::logic_error("schedule search did not reach completion");
}

// The same layer-by-layer search over completed-node bitmasks, for general
// DAGs of at most 30 nodes. Running a maximal ready set each step is
// dominant, so only maximal selections are branched on.
std::int64_t bitmask_makespan(const Dag& d, int k, const Partition* parts,
                              std::int64_t budget) {
  const int n = d.num_nodes;
  if (n > 30)
    throw std::invalid_argument(
        "exact schedule search supports at most 30 nodes");
  if (n == 0) return 0;
  std::vector<std::uint32_t> pred_mask(n, 0);
  for (const auto& [u, v] : d.arcs) pred_mask[v] |= std::uint32_t{1} << u;
  const std::uint32_t goal = (std::uint32_t{1} << n) - 1;

  std::unordered_set<std::uint32_t> visited;
  visited.reserve(1024);
  visited.insert(0);
  std::int64_t visited_count = 1;
  std::vector<std::uint32_t> frontier{0};
  std::vector<std::uint32_t> next_frontier;

  std::vector<int> ready;
  std::vector<std::vector<int>> per_part(parts != nullptr ? k : 0);

  for (std::int64_t step = 1; !frontier.empty(); ++step) {
    next_frontier.clear();
    for (const std::uint32_t state : frontier) {
      ready.clear();
      for (NodeId v = 0; v < n; ++v) {
        if ((state >> v) & 1) continue;
        if ((pred_mask[v] & state) == pred_mask[v]) ready.push_back(v);
      }

      const auto process = [&](std::uint32_t next_state) -> bool {
        if (next_state == goal) return true;
        if (visited.insert(next_state).second) {
          if (++visited_count > budget)
            throw BudgetExceeded("schedule search budget exceeded");
          next_frontier.push_back(next_state);
        }
        return false;
      };

      if (parts == nullptr) {
        const int take = std::min<int>(k, static_cast<int>(ready.size()));
        std::vector<int> sel(take);
        std::iota(sel.begin(), sel.end(), 0);
        while (true) {
          std::uint32_t next_state = state;
          for (int i = 0; i < take; ++i)
            next_state |= std::uint32_t{1} << ready[sel[i]];
          if (process(next_state)) return step;
          int i = take - 1;
          while (i >= 0 &&
                 sel[i] == static_cast<int>(ready.size()) - take + i)
            --i;
          if (i < 0) break;
          ++sel[i];
          for (int j = i + 1; j < take; ++j) sel[j] = sel[j - 1] + 1;
        }
      } else {
        for (auto& list : per_part) list.clear();
        for (const int v : ready) per_part[(*parts)[v]].push_back(v);
        std::vector<const std::vector<int>*> active;
        for (const auto& list : per_part)
          if (!list.empty()) active.push_back(&list);
        std::vector<int> digit(active.size(), 0);
        while (true) {
          std::uint32_t next_state = state;
          for (std::size_t j = 0; j < active.size(); ++j)
            next_state |= std::uint32_t{1} << (*active[j])[digit[j]];
          if (process(next_state)) return step;
          std::size_t j = 0;
          while (j < active.size() &&
                 ++digit[j] == static_cast<int>(active[j]->size())) {
            digit[j] = 0;
            ++j;
          }
          if (j == active.size()) break;
        }
      }
    }
    frontier.swap(next_frontier);
  }
  throw std::logic_error("schedule search did not reach completion");
}

std::int64_t exact_makespan(const Dag& d, int k, const Partition* parts,
                            std::int64_t budget) {
  if (k < 1) throw std::invalid_argument("k must be positive");
  Dag checked = d;
  checked.normalize_and_validate();
  if (parts != nullptr) {
    if (static_cast<int>(parts->size()) != d.num_nodes)
      throw std::invalid_argument("partition size does not match node count");
    for (const int label : *parts)
      if (label < 0 || label >= k)
        throw std::invalid_argument("partition label out of range");
  }
  if (checked.num_nodes == 0) return 0;
  const auto chains = decompose_chains(checked);
  if (chains) return chain_makespan(*chains, k, parts, budget);
  return bitmask_makespan(checked, k, parts, budget);
}

}  // namespace

std::int64_t optimal_makespan(const Dag& d, int k, std::int64_t budget) {
  return exact_makespan(d, k, nullptr, budget);
}

std::int64_t optimal_makespan_fixed_partition(const Dag& d, const Partition& p,
                                              int k, std::int64_t budget) {
  return exact_makespan(d, k, &p, budget);
}

ScheduleBalanceReport schedule_balance_check(const Dag& d, const Partition& p,
                                             int k, const Rational& eps,
                                             std::int64_t budget) {
  ScheduleBalanceReport report;
  report.mu = optimal_makespan(d, k, budget);
  report.mu_p = optimal_makespan_fixed_partition(d, p, k, budget);
  report.accepted =
      Rational(report.mu_p) <= (Rational(1) + eps) * Rational(report.mu);
  return report;
}

}  // namespace hypart
