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

#include "hypart/oracles.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <stdexcept>

namespace hypart {

namespace {

using i64 = std::int64_t;

struct Dsu {
  std::vector<int> parent;
  explicit Dsu(int n) : parent(static_cast<std::size_t>(n)) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] =
          parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[static_cast<std::size_t>(b)] = a;
  }
};

}  // namespace

std::optional<SolveResult> exhaustive_optimum(const Hypergraph& h, int k,
                                              const BalanceSpec& spec,
                                              Metric metric,
                                              std::int64_t max_states) {
  if (k < 1) throw std::invalid_argument("exhaustive optimum: k must be >= 1");
  spec.validate(h.num_nodes);
  int n = h.num_nodes;
  std::optional<SolveResult> best;
  Partition p(static_cast<std::size_t>(n), 0);
  i64 states = 0;

  // Canonical assignments: node i may open at most one new part.
  std::function<void(int, int)> rec = [&](int i, int used) {
    if (i == n) {
      if (++states > max_states)
        throw BudgetExceeded("exhaustive optimum: state budget exceeded");
      if (!is_balanced(h, p, k, spec)) return;
      Weight c = cost(h, p, k, metric);
      if (!best || c < best->cost) best = SolveResult{p, c};
      return;
    }
    int limit = std::min(used, k - 1);
    for (int part = 0; part <= limit; ++part) {
      p[static_cast<std::size_t>(i)] = part;
      rec(i + 1, std::max(used, part + 1));
    }
  };
  if (n == 0) {
    // The empty partition is balanced by convention.
    return SolveResult{Partition{}, 0};
  }
  rec(0, 0);
  return best;
}

bool zero_cost_feasible(const Hypergraph& h, const BalanceSpec& spec) {
  Hypergraph g = h;
  g.normalize_and_validate();
  spec.validate(g.num_nodes);
  int n = g.num_nodes;

  Dsu dsu(n);
  std::vector<char> in_edge(static_cast<std::size_t>(n), 0);
  for (const auto& pins : g.edges) {
    for (NodeId u : pins) in_edge[static_cast<std::size_t>(u)] = 1;
    for (std::size_t t = 1; t < pins.size(); ++t)
      dsu.unite(pins[0], pins[t]);
  }

  // Component ids for nodes that touch at least one edge.
  std::vector<int> comp_of(static_cast<std::size_t>(n), -1);
  int comp_count = 0;
  for (int v = 0; v < n; ++v) {
    if (!in_edge[static_cast<std::size_t>(v)]) continue;
    int root = dsu.find(v);
    if (comp_of[static_cast<std::size_t>(root)] < 0)
      comp_of[static_cast<std::size_t>(root)] = comp_count++;
    comp_of[static_cast<std::size_t>(v)] =
        comp_of[static_cast<std::size_t>(root)];
  }
  if (comp_count > 24)
    throw BudgetExceeded("zero-cost check: too many components");

  struct ConstraintView {
    i64 size = 0;
    i64 cap = 0;
    i64 free_nodes = 0;
    std::vector<std::pair<int, i64>> comp_counts;  // (component, members)
  };
  std::vector<ConstraintView> views;
  std::vector<int> free_constraint(static_cast<std::size_t>(n), -1);
  for (std::size_t j = 0; j < spec.constraints.size(); ++j) {
    const auto& c = spec.constraints[j];
    std::vector<NodeId> nodes = c.nodes;
    if (nodes.empty()) {
      nodes.resize(static_cast<std::size_t>(n));
      std::iota(nodes.begin(), nodes.end(), 0);
    }
    ConstraintView view;
    view.size = static_cast<i64>(nodes.size());
    view.cap = c.capacity(view.size, 2);
    std::vector<i64> counts(static_cast<std::size_t>(comp_count), 0);
    for (NodeId u : nodes) {
      if (in_edge[static_cast<std::size_t>(u)]) {
        ++counts[static_cast<std::size_t>(comp_of[static_cast<std::size_t>(u)])];
      } else {
        if (free_constraint[static_cast<std::size_t>(u)] >= 0)
          throw std::invalid_argument(
              "zero-cost check: an edge-free node lies in two constraints");
        free_constraint[static_cast<std::size_t>(u)] = static_cast<int>(j);
        ++view.free_nodes;
      }
    }
    for (int i = 0; i < comp_count; ++i)
      if (counts[static_cast<std::size_t>(i)] > 0)
        view.comp_counts.push_back({i, counts[static_cast<std::size_t>(i)]});
    views.push_back(std::move(view));
  }

  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << comp_count);
       ++mask) {
    bool ok = true;
    for (const auto& view : views) {
      i64 red = 0;
      for (const auto& [comp, cnt] : view.comp_counts)
        if (mask >> comp & 1) red += cnt;
      // Close the constraint with r of its own free nodes colored red:
      // red + r <= cap and size - red - r <= cap for some r in [0, free].
      i64 lo = std::max<i64>(0, view.size - view.cap - red);
      i64 hi = std::min(view.free_nodes, view.cap - red);
      if (lo > hi) {
        ok = false;
        break;
      }
    }
    if (ok) return true;
  }
  return false;
}

std::int64_t min_covered_nodes(const SimpleGraph& g_in, std::int64_t p) {
  SimpleGraph g = g_in;
  g.normalize_and_validate();
  i64 e_cnt = g.num_edges();
  if (p < 1 || p > e_cnt)
    throw std::invalid_argument("covered-nodes oracle: p out of [1, |E|]");
  if (g.num_nodes > 62)
    throw std::invalid_argument("covered-nodes oracle: graph too large");

  i64 best = g.num_nodes + 1;
  std::vector<int> pick;
  std::function<void(i64, std::uint64_t)> rec = [&](i64 next,
                                                    std::uint64_t covered) {
    if (static_cast<i64>(pick.size()) == p) {
      best = std::min<i64>(best, __builtin_popcountll(covered));
      return;
    }
    i64 need = p - static_cast<i64>(pick.size());
    for (i64 e = next; e + need <= e_cnt; ++e) {
      pick.push_back(static_cast<int>(e));
      std::uint64_t add =
          (std::uint64_t{1} << g.edges[static_cast<std::size_t>(e)].first) |
          (std::uint64_t{1} << g.edges[static_cast<std::size_t>(e)].second);
      rec(e + 1, covered | add);
      pick.pop_back();
    }
  };
  rec(0, 0);
  return best;
}

bool multiset_groups_exist(const std::vector<std::int64_t>& numbers,
                           std::int64_t t, std::int64_t b) {
  if (t < 1) throw std::invalid_argument("grouping oracle: t must be >= 1");
  i64 sum = 0;
  for (i64 a : numbers) {
    if (a <= 0) throw std::invalid_argument("grouping oracle: numbers > 0");
    sum += a;
  }
  if (sum != t * b) return false;

  std::vector<i64> sorted(numbers);
  std::sort(sorted.rbegin(), sorted.rend());
  std::vector<i64> group(static_cast<std::size_t>(t), 0);
  std::function<bool(std::size_t)> rec = [&](std::size_t idx) {
    if (idx == sorted.size()) return true;  // all sums b by total counting
    for (std::size_t gi = 0; gi < group.size(); ++gi) {
      if (group[gi] + sorted[idx] > b) continue;
      group[gi] += sorted[idx];
      if (rec(idx + 1)) return true;
      group[gi] -= sorted[idx];
      if (group[gi] == 0) break;  // later empty groups are symmetric
    }
    return false;
  };
  return rec(0);
}

bool has_orthogonal_pair(const std::vector<std::vector<int>>& vectors) {
  for (std::size_t a = 0; a < vectors.size(); ++a)
    for (std::size_t b = a + 1; b < vectors.size(); ++b) {
      bool orth = true;
      for (std::size_t j = 0; j < vectors[a].size() && orth; ++j)
        orth = !(vectors[a][j] && vectors[b][j]);
      if (orth) return true;
    }
  return false;
}

bool is_three_colorable(const SimpleGraph& g_in) {
  SimpleGraph g = g_in;
  g.normalize_and_validate();
  int n = g.num_nodes;
  auto inc = g.incident_edges();
  std::vector<int> color(static_cast<std::size_t>(n), -1);
  std::function<bool(int)> rec = [&](int v) {
    if (v == n) return true;
    for (int c = 0; c < 3; ++c) {
      bool clash = false;
      for (NodeId e : inc[static_cast<std::size_t>(v)]) {
        auto [a, b] = g.edges[static_cast<std::size_t>(e)];
        int other = a == v ? b : a;
        if (other < v && color[static_cast<std::size_t>(other)] == c) {
          clash = true;
          break;
        }
      }
      if (clash) continue;
      color[static_cast<std::size_t>(v)] = c;
      if (rec(v + 1)) return true;
    }
    color[static_cast<std::size_t>(v)] = -1;
    return false;
  };
  return rec(0);
}

bool has_clique(const SimpleGraph& g_in, int size) {
  SimpleGraph g = g_in;
  g.normalize_and_validate();
  int n = g.num_nodes;
  if (n > 62)
    throw std::invalid_argument("clique oracle: graph too large");
  if (size <= 1) return size == 1 ? n >= 1 : true;
  std::vector<std::uint64_t> adj(static_cast<std::size_t>(n), 0);
  for (const auto& [u, v] : g.edges) {
    adj[static_cast<std::size_t>(u)] |= std::uint64_t{1} << v;
    adj[static_cast<std::size_t>(v)] |= std::uint64_t{1} << u;
  }
  std::function<bool(int, std::uint64_t, int)> rec =
      [&](int from, std::uint64_t common, int left) {
        if (left == 0) return true;
        for (int v = from; v + left <= n; ++v) {
          if (from > 0 && !(common >> v & 1)) continue;
          std::uint64_t next =
              from == 0 ? adj[static_cast<std::size_t>(v)]
                        : (common & adj[static_cast<std::size_t>(v)]);
          if (rec(v + 1, next, left - 1)) return true;
        }
        return false;
      };
  return rec(0, ~std::uint64_t{0}, size);
}

}  // namespace hypart
