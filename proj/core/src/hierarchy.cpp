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

#include "hypart/hierarchy.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "hypart/solvers.hpp"

namespace hypart {
namespace {

constexpr unsigned __int128 kMaxU64 =
    std::numeric_limits<std::uint64_t>::max();

// C(a, b); the running product C(a-b+i, i) keeps every intermediate integral.
std::uint64_t binomial(int a, int b) {
  if (b < 0 || b > a) return 0;
  b = std::min(b, a - b);
  unsigned __int128 result = 1;
  for (int i = 1; i <= b; ++i) {
    result = result * static_cast<unsigned>(a - b + i) /
             static_cast<unsigned>(i);
    if (result > kMaxU64)
      throw std::overflow_error("binomial coefficient exceeds 64 bits");
  }
  return static_cast<std::uint64_t>(result);
}

void check_labels(const Hypergraph& h, const Partition& p, int k) {
  if (static_cast<int>(p.size()) != h.num_nodes)
    throw std::invalid_argument("partition size does not match node count");
  for (int label : p)
    if (label < 0 || label >= k)
      throw std::invalid_argument("partition label out of range");
}

// Enumerates the unordered splits of the sorted set `parts` into `b` groups
// of size `sub`, one canonical representative each: every group contains the
// smallest element not placed into an earlier group, and companions are
// chosen in ascending order. Calls `cb` once per split with groups in that
// canonical order.
void for_each_split(
    const std::vector<int>& parts, int b, int sub,
    const std::function<void(const std::vector<std::vector<int>>&)>& cb) {
  const int n = static_cast<int>(parts.size());
  std::vector<std::vector<int>> groups;
  std::vector<char> used(n, 0);

  std::function<void()> next_group = [&]() {
    if (static_cast<int>(groups.size()) == b) {
      cb(groups);
      return;
    }
    int first = 0;
    while (used[first]) ++first;
    used[first] = 1;
    // Companion choices are per group: the recursion below starts the next
    // group with its own empty selection.
    std::vector<int> chosen;
    std::function<void(int)> pick = [&](int start) {
      if (static_cast<int>(chosen.size()) == sub - 1) {
        std::vector<int> group;
        group.push_back(parts[first]);
        for (int idx : chosen) group.push_back(parts[idx]);
        for (int idx : chosen) used[idx] = 1;
        groups.push_back(std::move(group));
        next_group();
        groups.pop_back();
        for (int idx : chosen) used[idx] = 0;
        return;
      }
      for (int idx = start; idx < n; ++idx) {
        if (used[idx]) continue;
        chosen.push_back(idx);
        pick(idx + 1);
        chosen.pop_back();
      }
    };
    pick(first + 1);
    used[first] = 0;
  };
  next_group();
}

}  // namespace

void HierTopology::validate() const {
  if (branching.empty())
    throw std::invalid_argument("topology needs at least one level");
  if (level_costs.size() != branching.size())
    throw std::invalid_argument("topology needs one cost weight per level");
  std::int64_t leaves = 1;
  for (int b : branching) {
    if (b < 2)
      throw std::invalid_argument("branching factors must be at least 2");
    leaves *= b;
    if (leaves > (1 << 20))
      throw std::invalid_argument("topology has too many leaves");
  }
  for (std::size_t i = 0; i < level_costs.size(); ++i) {
    if (!(level_costs[i] > Rational(0)))
      throw std::invalid_argument("level costs must be positive");
    if (i + 1 < level_costs.size() && level_costs[i] < level_costs[i + 1])
      throw std::invalid_argument("level costs must be weakly decreasing");
  }
  if (!(level_costs.back() == Rational(1)))
    throw std::invalid_argument("the deepest level cost must be 1");
}

Rational hierarchical_cost(const Hypergraph& h, const Partition& p,
                           const HierTopology& t) {
  t.validate();
  const int k = t.num_leaves();
  if (k > 64)
    throw std::invalid_argument(
        "hierarchical cost supports at most 64 leaves");
  check_labels(h, p, k);
  const int d = t.depth();
  std::vector<int> leaves_per(d + 1);
  for (int i = 0; i <= d; ++i) leaves_per[i] = t.group_size(i);

  Rational total(0);
  for (std::size_t e = 0; e < h.edges.size(); ++e) {
    std::uint64_t leaf_mask = 0;
    for (NodeId v : h.edges[e]) leaf_mask |= std::uint64_t{1} << p[v];
    int prev = 1;  // one group at level zero
    Rational edge_cost(0);
    for (int i = 1; i <= d; ++i) {
      std::uint64_t group_mask = 0;
      for (std::uint64_t m = leaf_mask; m != 0; m &= m - 1) {
        const int leaf = std::countr_zero(m);
        group_mask |= std::uint64_t{1} << (leaf / leaves_per[i]);
      }
      const int cur = std::popcount(group_mask);
      edge_cost = edge_cost + t.level_costs[i - 1] * Rational(cur - prev);
      prev = cur;
    }
    total = total + edge_cost * Rational(h.weights[e]);
  }
  return total;
}

Hypergraph contract_partition(const Hypergraph& h, const Partition& p,
                              int k) {
  if (k < 1) throw std::invalid_argument("k must be positive");
  check_labels(h, p, k);
  Hypergraph out;
  out.num_nodes = k;
  std::map<std::vector<NodeId>, std::size_t> index_of;
  for (std::size_t e = 0; e < h.edges.size(); ++e) {
    std::vector<NodeId> image;
    image.reserve(h.edges[e].size());
    for (NodeId v : h.edges[e]) image.push_back(p[v]);
    std::sort(image.begin(), image.end());
    image.erase(std::unique(image.begin(), image.end()), image.end());
    if (image.size() < 2) continue;
    auto [it, inserted] = index_of.try_emplace(image, out.edges.size());
    if (inserted) {
      out.edges.push_back(std::move(image));
      out.weights.push_back(h.weights[e]);
    } else {
      out.weights[it->second] += h.weights[e];
    }
  }
  out.normalize_and_validate();
  return out;
}

std::uint64_t count_assignments(const HierTopology& t) {
  t.validate();
  const int d = t.depth();
  unsigned __int128 total = 1;
  std::int64_t groups = 1;  // number of groups one level up
  for (int i = 1; i <= d; ++i) {
    const int parent = t.group_size(i - 1);
    const int child = t.group_size(i);
    const int b = t.branching[i - 1];
    // Unordered equal splits of one parent group into b child groups.
    unsigned __int128 ways = 1;
    for (int j = 0; j < b; ++j) {
      ways *= binomial(parent - 1 - j * child, child - 1);
      if (ways > kMaxU64)
        throw std::overflow_error("assignment count exceeds 64 bits");
    }
    for (std::int64_t g = 0; g < groups; ++g) {
      total *= ways;
      if (total > kMaxU64)
        throw std::overflow_error("assignment count exceeds 64 bits");
    }
    groups *= b;
  }
  return static_cast<std::uint64_t>(total);
}

std::vector<std::vector<int>> enumerate_assignments(const HierTopology& t,
                                                    std::int64_t budget) {
  t.validate();
  const int k = t.num_leaves();
  std::vector<std::vector<int>> out;
  std::vector<int> leaf_of_part(k, -1);

  std::function<void(int, int, const std::vector<int>&,
                     const std::function<void()>&)>
      assign = [&](int level, int base, const std::vector<int>& parts,
                   const std::function<void()>& cont) {
        if (parts.size() == 1) {
          leaf_of_part[parts[0]] = base;
          cont();
          leaf_of_part[parts[0]] = -1;
          return;
        }
        const int b = t.branching[level];
        const int sub_leaves = t.group_size(level + 1);
        const int sub = static_cast<int>(parts.size()) / b;
        for_each_split(parts, b, sub,
                       [&](const std::vector<std::vector<int>>& groups) {
                         std::function<void(int)> chain = [&](int j) {
                           if (j == b) {
                             cont();
                             return;
                           }
                           assign(level + 1, base + j * sub_leaves, groups[j],
                                  [&] { chain(j + 1); });
                         };
                         chain(0);
                       });
      };

  std::vector<int> all_parts(k);
  std::iota(all_parts.begin(), all_parts.end(), 0);
  assign(0, 0, all_parts, [&] {
    if (static_cast<std::int64_t>(out.size()) >= budget)
      throw BudgetExceeded("assignment enumeration budget exceeded");
    out.push_back(leaf_of_part);
  });
  return out;
}

AssignmentResult optimal_assignment_bruteforce(const Hypergraph& h,
                                               const Partition& p,
                                               const HierTopology& t) {
  t.validate();
  const int k = t.num_leaves();
  if (k > 64)
    throw std::invalid_argument(
        "assignment search supports at most 64 leaves");
  const Hypergraph contracted = contract_partition(h, p, k);
  const auto assignments = enumerate_assignments(t);

  bool have = false;
  AssignmentResult best;
  for (const auto& leaf_of_part : assignments) {
    const Rational cost = hierarchical_cost(contracted, leaf_of_part, t);
    if (!have || cost < best.cost ||
        (cost == best.cost && leaf_of_part < best.leaf_of_part)) {
      best.leaf_of_part = leaf_of_part;
      best.cost = cost;
      have = true;
    }
  }
  return best;
}

AssignmentResult optimal_assignment_matching(const Hypergraph& h,
                                             const Partition& p,
                                             const HierTopology& t) {
  t.validate();
  if (t.depth() != 2 || t.branching[1] != 2)
    throw std::invalid_argument(
        "matching assignment needs a two-level topology with pair groups");
  const int k = t.num_leaves();
  if (k % 2 != 0 || k > 20)
    throw std::invalid_argument("matching assignment needs even k <= 20");
  const Hypergraph contracted = contract_partition(h, p, k);

  // With pair groups the only assignment-dependent term of the cost is
  // (g_1 - 1) * sum_e w_e * (groups met by e), and an edge meets one group
  // less for every chosen pair fully inside its image. Maximising the total
  // weight of covered pairs is therefore optimal, regardless of g_1 >= 1.
  std::vector<std::vector<Weight>> benefit(k, std::vector<Weight>(k, 0));
  for (std::size_t e = 0; e < contracted.edges.size(); ++e) {
    const auto& pins = contracted.edges[e];
    for (std::size_t i = 0; i < pins.size(); ++i)
      for (std::size_t j = i + 1; j < pins.size(); ++j) {
        benefit[pins[i]][pins[j]] += contracted.weights[e];
        benefit[pins[j]][pins[i]] += contracted.weights[e];
      }
  }

  const int full = (1 << k) - 1;
  constexpr std::int64_t kUnset = std::numeric_limits<std::int64_t>::min();
  std::vector<std::int64_t> dp(std::size_t{1} << k, kUnset);
  std::vector<int> choice(std::size_t{1} << k, -1);
  dp[0] = 0;
  for (int mask = 1; mask <= full; ++mask) {
    if (std::popcount(static_cast<unsigned>(mask)) % 2 != 0) continue;
    const int v = std::countr_zero(static_cast<unsigned>(mask));
    for (int u = v + 1; u < k; ++u) {
      if (!((mask >> u) & 1)) continue;
      const int rest = mask ^ (1 << v) ^ (1 << u);
      if (dp[rest] == kUnset) continue;
      const std::int64_t value = dp[rest] + benefit[v][u];
      if (value > dp[mask]) {
        dp[mask] = value;
        choice[mask] = u;
      }
    }
  }

  AssignmentResult out;
  out.leaf_of_part.assign(k, -1);
  int mask = full;
  int group = 0;
  while (mask != 0) {
    const int v = std::countr_zero(static_cast<unsigned>(mask));
    const int u = choice[mask];
    out.leaf_of_part[v] = 2 * group;
    out.leaf_of_part[u] = 2 * group + 1;
    mask ^= (1 << v) | (1 << u);
    ++group;
  }
  out.cost = hierarchical_cost(contracted, out.leaf_of_part, t);
  return out;
}

TwoStepResult two_step(const Hypergraph& h, const HierTopology& t,
                       const Rational& eps, Rounding mode,
                       std::int64_t budget) {
  t.validate();
  const int k = t.num_leaves();
  const BalanceSpec spec = BalanceSpec::uniform(eps, mode);
  const auto flat =
      brute_force_optimum(h, k, spec, Metric::kConnectivity, budget);
  if (!flat)
    throw std::runtime_error("two-step phase one found no balanced partition");
  const AssignmentResult assignment =
      optimal_assignment_bruteforce(h, flat->partition, t);

  TwoStepResult out;
  Partition leaf_of(h.num_nodes);
  for (NodeId v = 0; v < h.num_nodes; ++v)
    leaf_of[v] = assignment.leaf_of_part[flat->partition[v]];
  out.cost = hierarchical_cost(h, leaf_of, t);
  out.partition = HierPartition{t, std::move(leaf_of)};
  out.flat_cost = flat->cost;
  out.leaf_of_part = assignment.leaf_of_part;
  return out;
}

namespace {

// Exact search for the best leaf-labelled balanced partition. Level costs are
// scaled to integers; the search deepens an integer cost cap from zero, so
// the first partition found is optimal and lexicographically smallest among
// the canonical representatives. Assigning node v to leaf f adds, per
// incident edge, the scaled cost of the shallowest level whose group is new
// to the edge (deeper levels are then new as well, and the telescoping sum
// of the level increments collapses to that single term).
class HierSearch {
 public:
  HierSearch(const Hypergraph& h, const HierTopology& t,
             std::int64_t leaf_capacity, std::int64_t budget)
      : h_(h),
        t_(t),
        d_(t.depth()),
        k_(t.num_leaves()),
        leaf_capacity_(leaf_capacity),
        budget_(budget) {
    scale_ = 1;
    for (const Rational& g : t.level_costs)
      scale_ = std::lcm(scale_, g.den());
    for (const Rational& g : t.level_costs)
      level_cost_.push_back(g.num() * (scale_ / g.den()));

    groups_at_.resize(d_ + 1);
    for (int i = 0; i <= d_; ++i) groups_at_[i] = k_ / t.group_size(i);
    group_of_.assign(d_, std::vector<int>(k_, 0));
    for (int li = 0; li < d_; ++li)
      for (int f = 0; f < k_; ++f) group_of_[li][f] = f / t.group_size(li + 1);

    incident_.assign(h.num_nodes, {});
    for (std::size_t e = 0; e < h.edges.size(); ++e)
      for (NodeId v : h.edges[e])
        incident_[v].push_back(static_cast<int>(e));

    edge_group_count_.assign(h.edges.size(), {});
    for (std::size_t e = 0; e < h.edges.size(); ++e) {
      edge_group_count_[e].resize(d_);
      for (int li = 0; li < d_; ++li)
        edge_group_count_[e][li].assign(groups_at_[li + 1], 0);
    }
    used_group_count_.resize(d_);
    for (int li = 0; li < d_; ++li)
      used_group_count_[li].assign(groups_at_[li + 1], 0);
    edge_assigned_.assign(h.edges.size(), 0);
    leaf_count_.assign(k_, 0);
    leaf_of_.assign(h.num_nodes, -1);
  }

  std::int64_t scale() const { return scale_; }

  // Largest possible scaled cost of any assignment.
  std::int64_t upper_bound() const {
    std::int64_t total = 0;
    for (std::size_t e = 0; e < h_.edges.size(); ++e) {
      const std::int64_t size = static_cast<std::int64_t>(h_.edges[e].size());
      std::int64_t prev = 1;
      std::int64_t edge_bound = 0;
      for (int li = 0; li < d_; ++li) {
        const std::int64_t cur = std::min(size, groups_at_[li + 1]);
        edge_bound += level_cost_[li] * (cur - prev);
        prev = cur;
      }
      total += edge_bound * h_.weights[e];
    }
    return total;
  }

  std::optional<Partition> solve_with_cap(std::int64_t cost_cap) {
    cost_cap_ = cost_cap;
    next_cap_ = std::numeric_limits<std::int64_t>::max();
    partial_ = 0;
    for (auto& per_level : edge_group_count_)
      for (auto& counts : per_level) std::fill(counts.begin(), counts.end(), 0);
    for (auto& counts : used_group_count_)
      std::fill(counts.begin(), counts.end(), 0);
    std::fill(edge_assigned_.begin(), edge_assigned_.end(), 0);
    std::fill(leaf_count_.begin(), leaf_count_.end(), 0);
    std::fill(leaf_of_.begin(), leaf_of_.end(), -1);
    if (dfs(0)) return leaf_of_;
    return std::nullopt;
  }

  // Smallest partial cost seen beyond the cap during the last search; since
  // costs only grow along a path, no solution has a cost below this value.
  std::int64_t next_cap() const { return next_cap_; }

 private:
  void charge_budget() {
    if (--budget_ < 0)
      throw BudgetExceeded("hierarchical optimum budget exceeded");
  }

  // A leaf may only be used if, at every level, its group is either already
  // populated or is the first unpopulated group under its parent. This keeps
  // exactly one representative per orbit of the hierarchy automorphisms.
  bool canonical_ok(int f) const {
    for (int li = 0; li < d_; ++li) {
      const int g = group_of_[li][f];
      if (used_group_count_[li][g] > 0) continue;
      const int b = t_.branching[li];
      const int first_sibling = (g / b) * b;
      for (int s = first_sibling; s < g; ++s)
        if (used_group_count_[li][s] == 0) return false;
    }
    return true;
  }

  std::int64_t apply(NodeId v, int f) {
    std::int64_t delta = 0;
    for (int e : incident_[v]) {
      if (edge_assigned_[e] > 0) {
        for (int li = 0; li < d_; ++li) {
          if (edge_group_count_[e][li][group_of_[li][f]] == 0) {
            delta += level_cost_[li] * h_.weights[e];
            break;
          }
        }
      }
      ++edge_assigned_[e];
      for (int li = 0; li < d_; ++li)
        ++edge_group_count_[e][li][group_of_[li][f]];
    }
    for (int li = 0; li < d_; ++li) ++used_group_count_[li][group_of_[li][f]];
    ++leaf_count_[f];
    leaf_of_[v] = f;
    partial_ += delta;
    return delta;
  }

  void undo(NodeId v, int f, std::int64_t delta) {
    partial_ -= delta;
    leaf_of_[v] = -1;
    --leaf_count_[f];
    for (int li = 0; li < d_; ++li) --used_group_count_[li][group_of_[li][f]];
    for (int e : incident_[v]) {
      --edge_assigned_[e];
      for (int li = 0; li < d_; ++li)
        --edge_group_count_[e][li][group_of_[li][f]];
    }
  }

  bool dfs(NodeId v) {
    charge_budget();
    if (v == h_.num_nodes) return true;
    for (int f = 0; f < k_; ++f) {
      if (leaf_count_[f] >= leaf_capacity_) continue;
      if (!canonical_ok(f)) continue;
      const std::int64_t delta = apply(v, f);
      if (partial_ > cost_cap_) {
        next_cap_ = std::min(next_cap_, partial_);
        undo(v, f, delta);
        continue;
      }
      if (dfs(v + 1)) return true;
      undo(v, f, delta);
    }
    return false;
  }

  const Hypergraph& h_;
  const HierTopology& t_;
  const int d_;
  const int k_;
  const std::int64_t leaf_capacity_;
  std::int64_t budget_;
  std::int64_t scale_ = 1;
  std::vector<std::int64_t> level_cost_;
  std::vector<std::int64_t> groups_at_;
  std::vector<std::vector<int>> group_of_;
  std::vector<std::vector<int>> incident_;
  std::vector<std::vector<std::vector<int>>> edge_group_count_;
  std::vector<std::vector<int>> used_group_count_;
  std::vector<int> edge_assigned_;
  std::vector<std::int64_t> leaf_count_;
  Partition leaf_of_;
  std::int64_t cost_cap_ = 0;
  std::int64_t next_cap_ = 0;
  std::int64_t partial_ = 0;
};

}  // namespace

std::optional<HierOptResult> hierarchical_optimum(const Hypergraph& h,
                                                  const HierTopology& t,
                                                  const Rational& eps,
                                                  Rounding mode,
                                                  std::int64_t budget) {
  t.validate();
  const int k = t.num_leaves();
  if (k > 64)
    throw std::invalid_argument(
        "hierarchical optimum supports at most 64 leaves");
  const BalanceSpec spec = BalanceSpec::uniform(eps, mode);
  spec.validate(h.num_nodes);
  const std::int64_t cap =
      spec.constraints[0].capacity(h.num_nodes, k);
  if (cap * k < h.num_nodes) return std::nullopt;

  HierSearch search(h, t, cap, budget);
  const std::int64_t upper = search.upper_bound();
  std::int64_t cost_cap = 0;
  while (cost_cap <= upper) {
    const auto solution = search.solve_with_cap(cost_cap);
    if (solution)
      return HierOptResult{*solution, Rational(cost_cap, search.scale())};
    if (search.next_cap() == std::numeric_limits<std::int64_t>::max()) break;
    cost_cap = search.next_cap();
  }
  return std::nullopt;
}

}  // namespace hypart
