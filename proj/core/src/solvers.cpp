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

#include "hypart/solvers.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace hypart {

namespace {

// Per-node constraint membership and per-constraint capacities. Constraint
// sets are pairwise disjoint, so each node belongs to at most one.
struct ConstraintInfo {
  std::vector<int> constraint_of;      // per node; -1 = unconstrained
  std::vector<std::int64_t> cap;       // per constraint
  std::vector<std::int64_t> set_size;  // per constraint
  bool feasible = true;  // every constraint satisfies k * cap >= size
};

ConstraintInfo analyze_constraints(const Hypergraph& h, int k,
                                   const BalanceSpec& spec) {
  spec.validate(h.num_nodes);
  ConstraintInfo info;
  info.constraint_of.assign(h.num_nodes, -1);
  for (std::size_t c = 0; c < spec.constraints.size(); ++c) {
    const auto& constraint = spec.constraints[c];
    std::int64_t size =
        constraint.nodes.empty()
            ? h.num_nodes
            : static_cast<std::int64_t>(constraint.nodes.size());
    info.set_size.push_back(size);
    info.cap.push_back(constraint.capacity(size, k));
    if (constraint.nodes.empty()) {
      for (NodeId v = 0; v < h.num_nodes; ++v)
        info.constraint_of[v] = static_cast<int>(c);
    } else {
      for (NodeId v : constraint.nodes)
        info.constraint_of[v] = static_cast<int>(c);
    }
    if (info.cap.back() * k < size) info.feasible = false;
  }
  return info;
}

// Largest possible cost of any partition; iterative deepening stops here.
Weight cost_upper_bound(const Hypergraph& h, int k, Metric metric) {
  Weight ub = 0;
  for (int e = 0; e < h.num_edges(); ++e) {
    std::int64_t span = std::min<std::int64_t>(h.edges[e].size(), k);
    if (span < 2) continue;
    ub += metric == Metric::kCutNet ? h.weights[e] : h.weights[e] * (span - 1);
  }
  return ub;
}

// Depth-first branch and bound over canonical colorings (a node may reuse an
// existing color or open the next fresh one). Run with increasing cost caps;
// the first complete solution at the first feasible cap is the
// lexicographically smallest optimum, because prefixes are explored in
// lexicographic order and the partial cost never decreases.
class BranchAndBound {
 public:
  BranchAndBound(const Hypergraph& h, int k, Metric metric,
                 const ConstraintInfo& cons, std::int64_t* budget)
      : h_(h), k_(k), metric_(metric), cons_(cons), budget_(budget) {
    incident_.resize(h.num_nodes);
    for (int e = 0; e < h.num_edges(); ++e)
      for (NodeId v : h.edges[e]) incident_[v].push_back(e);
    // First index from which all nodes are isolated: their colors never
    // change the cost, so they are filled greedily instead of branched.
    trailing_start_ = h.num_nodes;
    while (trailing_start_ > 0 && incident_[trailing_start_ - 1].empty())
      --trailing_start_;
  }

  std::optional<Partition> solve_with_cap(Weight cap) {
    cap_ = cap;
    assign_.assign(h_.num_nodes, -1);
    edge_color_count_.assign(h_.num_edges(), std::vector<int>(k_, 0));
    edge_distinct_.assign(h_.num_edges(), 0);
    cons_count_.assign(cons_.cap.size(), std::vector<std::int64_t>(k_, 0));
    used_colors_ = 0;
    partial_ = 0;
    if (dfs(0)) return assign_;
    return std::nullopt;
  }

 private:
  void charge_budget() {
    if (--(*budget_) < 0)
      throw BudgetExceeded("branch and bound budget exceeded");
  }

  // Greedy completion over the isolated tail: smallest feasible canonical
  // color per node. Constraint sets are disjoint and the instance passed the
  // k*cap >= size check, so a feasible color always exists; the greedy
  // choice is also the lexicographically smallest completion.
  bool fill_tail(NodeId from) {
    for (NodeId v = from; v < h_.num_nodes; ++v) {
      charge_budget();
      int limit = std::min(used_colors_, k_ - 1);
      int c = cons_.constraint_of[v];
      int chosen = -1;
      for (int q = 0; q <= limit; ++q) {
        if (c >= 0 && cons_count_[c][q] >= cons_.cap[c]) continue;
        chosen = q;
        break;
      }
      if (chosen < 0) {
        undo_tail(from, v);
        return false;
      }
      assign_[v] = chosen;
      if (chosen == used_colors_) {
        ++used_colors_;
        tail_opened_.push_back(v);
      }
      if (c >= 0) ++cons_count_[c][chosen];
    }
    return true;
  }

  void undo_tail(NodeId from, NodeId upto) {
    for (NodeId v = upto - 1; v >= from; --v) {
      int q = assign_[v];
      int c = cons_.constraint_of[v];
      if (c >= 0) --cons_count_[c][q];
      if (!tail_opened_.empty() && tail_opened_.back() == v) {
        tail_opened_.pop_back();
        --used_colors_;
      }
      assign_[v] = -1;
    }
  }

  bool dfs(NodeId v) {
    if (v >= trailing_start_) {
      tail_opened_.clear();
      return fill_tail(v);
    }
    charge_budget();
    int limit = std::min(used_colors_, k_ - 1);
    int c = cons_.constraint_of[v];
    for (int q = 0; q <= limit; ++q) {
      if (c >= 0 && cons_count_[c][q] >= cons_.cap[c]) continue;
      // Apply.
      Weight delta = 0;
      for (int e : incident_[v]) {
        if (edge_color_count_[e][q]++ == 0 && ++edge_distinct_[e] >= 2) {
          if (metric_ == Metric::kConnectivity || edge_distinct_[e] == 2)
            delta += h_.weights[e];
        }
      }
      partial_ += delta;
      assign_[v] = q;
      if (c >= 0) ++cons_count_[c][q];
      bool opened = (q == used_colors_);
      if (opened) ++used_colors_;

      if (partial_ <= cap_ && dfs(v + 1)) return true;

      // Undo.
      if (opened) --used_colors_;
      if (c >= 0) --cons_count_[c][q];
      assign_[v] = -1;
      partial_ -= delta;
      for (int e : incident_[v])
        if (--edge_color_count_[e][q] == 0) --edge_distinct_[e];
    }
    return false;
  }

  const Hypergraph& h_;
  int k_;
  Metric metric_;
  const ConstraintInfo& cons_;
  std::int64_t* budget_;
  std::vector<std::vector<int>> incident_;
  std::vector<std::vector<int>> edge_color_count_;
  std::vector<int> edge_distinct_;
  std::vector<std::vector<std::int64_t>> cons_count_;
  std::vector<NodeId> tail_opened_;
  Partition assign_;
  int used_colors_ = 0;
  Weight partial_ = 0;
  Weight cap_ = 0;
  NodeId trailing_start_ = 0;
};

}  // namespace

std::optional<SolveResult> brute_force_optimum(const Hypergraph& h, int k,
                                               const BalanceSpec& spec,
                                               Metric metric,
                                               std::int64_t budget) {
  if (k < 1) throw std::invalid_argument("solver: k must be positive");
  ConstraintInfo cons = analyze_constraints(h, k, spec);
  if (!cons.feasible) return std::nullopt;
  Weight ub = cost_upper_bound(h, k, metric);
  BranchAndBound bb(h, k, metric, cons, &budget);
  for (Weight cap = 0; cap <= ub; ++cap) {
    auto found = bb.solve_with_cap(cap);
    if (found) return SolveResult{std::move(*found), cap};
  }
  return std::nullopt;  // unreachable when cons.feasible
}

namespace {

struct Dsu {
  std::vector<int> parent;
  explicit Dsu(int n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

// Best candidate per exact configuration cost; merged by (true cost, then
// lexicographically smallest canonical partition), which makes the sweep
// results independent of enumeration order.
struct CandidateTable {
  std::vector<std::optional<SolveResult>> at;  // index = config cost

  explicit CandidateTable(Weight max_cost)
      : at(static_cast<std::size_t>(max_cost) + 1) {}

  void offer(Weight config_cost, SolveResult candidate) {
    auto& slot = at[config_cost];
    if (!slot || candidate.cost < slot->cost ||
        (candidate.cost == slot->cost &&
         candidate.partition < slot->partition)) {
      slot = std::move(candidate);
    }
  }

  void merge(const CandidateTable& other) {
    for (std::size_t i = 0; i < at.size(); ++i)
      if (other.at[i]) {
        auto copy = *other.at[i];
        offer(static_cast<Weight>(i), std::move(copy));
      }
  }

  // Result for bound L = best candidate over config costs 0..L.
  std::vector<std::optional<SolveResult>> prefix_best() const {
    std::vector<std::optional<SolveResult>> out(at.size());
    std::optional<SolveResult> best;
    for (std::size_t i = 0; i < at.size(); ++i) {
      if (at[i]) {
        if (!best || at[i]->cost < best->cost ||
            (at[i]->cost == best->cost && at[i]->partition < best->partition))
          best = at[i];
      }
      out[i] = best;
    }
    return out;
  }
};

// Colors the contracted components of one deleted-edge configuration by
// dynamic programming over per-constraint color counts. Constraints enter
// the state with their first component and leave (after a final cap check)
// with their last, so the state stays short even with many constraints.
class ComponentColoring {
 public:
  ComponentColoring(int k, const ConstraintInfo& cons, int num_comp,
                    std::vector<std::vector<std::int64_t>> comp_cons_size)
      : k_(k),
        cons_(cons),
        num_comp_(num_comp),
        comp_cons_size_(std::move(comp_cons_size)) {
    int num_cons = static_cast<int>(cons_.cap.size());
    first_touch_.assign(num_cons, num_comp_);
    last_touch_.assign(num_cons, -1);
    for (int comp = 0; comp < num_comp_; ++comp)
      for (int c = 0; c < num_cons; ++c)
        if (comp_cons_size_[comp][c] > 0) {
          first_touch_[c] = std::min(first_touch_[c], comp);
          last_touch_[c] = std::max(last_touch_[c], comp);
        }
    active_.assign(num_comp_ + 1, {});
    for (int i = 0; i <= num_comp_; ++i)
      for (int c = 0; c < num_cons; ++c)
        if (first_touch_[c] < i && last_touch_[c] >= i)
          active_[i].push_back(c);
  }

  // `allowed[i]` is the bitmask of colors component i may take.
  std::optional<std::vector<int>> color(const std::vector<unsigned>& allowed,
                                        std::int64_t* budget) const {
    using State = std::vector<std::int16_t>;
    struct Parent {
      State prev;
      std::int8_t col;
    };
    std::vector<std::map<State, Parent>> levels(num_comp_ + 1);
    levels[0].emplace(State{}, Parent{{}, -1});

    for (int i = 0; i < num_comp_; ++i) {
      const auto& in_active = active_[i];
      const auto& out_active = active_[i + 1];
      for (const auto& entry : levels[i]) {
        const State& state = entry.first;
        for (int q = 0; q < k_; ++q) {
          if (!((allowed[i] >> q) & 1u)) continue;
          if (--(*budget) < 0)
            throw BudgetExceeded("bounded solver budget exceeded");
          bool ok = true;
          State next;
          next.reserve(out_active.size() * k_);
          for (std::size_t a = 0; a < out_active.size() && ok; ++a) {
            int c = out_active[a];
            std::int64_t gained = comp_cons_size_[i][c];
            for (int q2 = 0; q2 < k_; ++q2) {
              std::int64_t count = carried(in_active, state, c, q2);
              if (q2 == q) count += gained;
              if (count > cons_.cap[c]) {
                ok = false;
                break;
              }
              next.push_back(static_cast<std::int16_t>(count));
            }
          }
          if (!ok) continue;
          // Final check for constraints whose last component is this one.
          for (std::size_t c = 0; c < cons_.cap.size() && ok; ++c) {
            if (last_touch_[c] != i) continue;
            std::int64_t count =
                carried(in_active, state, static_cast<int>(c), q) +
                comp_cons_size_[i][c];
            if (count > cons_.cap[c]) ok = false;
          }
          if (!ok) continue;
          levels[i + 1].try_emplace(std::move(next),
                                    Parent{state, static_cast<std::int8_t>(q)});
        }
      }
      if (levels[i + 1].empty()) return std::nullopt;
    }

    // Reconstruct from the lexicographically smallest final state.
    std::vector<int> colors(num_comp_, 0);
    State state = levels[num_comp_].begin()->first;
    for (int i = num_comp_; i >= 1; --i) {
      const Parent& parent = levels[i].at(state);
      colors[i - 1] = parent.col;
      state = parent.prev;
    }
    return colors;
  }

 private:
  // States are concatenated blocks of k_ counts, one block per active
  // constraint, in `in_active` order.
  std::int64_t carried(const std::vector<int>& in_active,
                       const std::vector<std::int16_t>& state, int c,
                       int q) const {
    auto it = std::find(in_active.begin(), in_active.end(), c);
    if (it == in_active.end()) return 0;
    return state[static_cast<std::size_t>(it - in_active.begin()) * k_ + q];
  }

  int k_;
  const ConstraintInfo& cons_;
  int num_comp_;
  std::vector<std::vector<std::int64_t>> comp_cons_size_;
  std::vector<int> first_touch_;
  std::vector<int> last_touch_;
  std::vector<std::vector<int>> active_;
};

// Enumerates deleted-edge configurations: a subset E0 of edges plus an
// allowed-color subset per deleted edge. Single-color allowed sets are
// skipped: the same partitions arise from the configuration without that
// edge at no higher configuration cost, so results are unchanged.
class BoundedEngine {
 public:
  BoundedEngine(const Hypergraph& h, int k, const BalanceSpec& spec,
                Weight max_cost, Metric metric, std::int64_t budget)
      : h_(h),
        k_(k),
        metric_(metric),
        max_cost_(max_cost),
        budget_(budget),
        cons_(analyze_constraints(h, k, spec)),
        table_(max_cost) {
    if (k < 1) throw std::invalid_argument("solver: k must be positive");
    if (k > 16)
      throw std::invalid_argument("bounded solver supports k <= 16");
    if (max_cost < 0)
      throw std::invalid_argument("bounded solver: negative cost bound");
  }

  std::vector<std::optional<SolveResult>> run() {
    if (!cons_.feasible)
      return std::vector<std::optional<SolveResult>>(
          static_cast<std::size_t>(max_cost_) + 1);
    // Allowed-color masks with at least two colors, ascending.
    for (unsigned mask = 0; mask < (1u << k_); ++mask)
      if (__builtin_popcount(mask) >= 2) masks_.push_back(mask);
    enumerate_subsets(0, 0);
    return table_.prefix_best();
  }

 private:
  void enumerate_subsets(int idx, Weight base_cost) {
    if (idx == h_.num_edges()) {
      process_config();
      return;
    }
    enumerate_subsets(idx + 1, base_cost);  // exclude edge idx
    // Include edge idx: it contributes at least its weight to the
    // configuration cost under either metric.
    if (base_cost + h_.weights[idx] <= max_cost_) {
      chosen_.push_back(idx);
      enumerate_subsets(idx + 1, base_cost + h_.weights[idx]);
      chosen_.pop_back();
    }
  }

  void process_config() {
    if (--budget_ < 0)
      throw BudgetExceeded("bounded solver budget exceeded");
    // Contract all non-deleted edges (independent of the color sets, so
    // hoisted out of the allowed-set enumeration).
    Dsu dsu(h_.num_nodes);
    std::vector<char> is_deleted(h_.num_edges(), 0);
    for (int e : chosen_) is_deleted[e] = 1;
    for (int e = 0; e < h_.num_edges(); ++e)
      if (!is_deleted[e])
        for (std::size_t i = 1; i < h_.edges[e].size(); ++i)
          dsu.unite(h_.edges[e][0], h_.edges[e][i]);

    comp_of_.assign(h_.num_nodes, -1);
    num_comp_ = 0;
    for (NodeId v = 0; v < h_.num_nodes; ++v) {
      int root = dsu.find(v);
      if (comp_of_[root] < 0) comp_of_[root] = num_comp_++;
      comp_of_[v] = comp_of_[root];
    }

    int num_cons = static_cast<int>(cons_.cap.size());
    std::vector<std::vector<std::int64_t>> comp_cons_size(
        num_comp_, std::vector<std::int64_t>(num_cons, 0));
    for (NodeId v = 0; v < h_.num_nodes; ++v) {
      int c = cons_.constraint_of[v];
      if (c >= 0) ++comp_cons_size[comp_of_[v]][c];
    }

    comp_touch_.assign(num_comp_, 0u);
    for (std::size_t j = 0; j < chosen_.size(); ++j)
      for (NodeId v : h_.edges[chosen_[j]])
        comp_touch_[comp_of_[v]] |= (1u << j);

    coloring_.emplace(k_, cons_, num_comp_, std::move(comp_cons_size));
    allowed_of_edge_.assign(chosen_.size(), 0u);
    Weight base = 0;
    for (int e : chosen_) base += h_.weights[e];
    enumerate_allowed(0, base);
    coloring_.reset();
  }

  // `cost_so_far` counts, for every committed edge, its exact contribution
  // and, for every uncommitted one, the minimum possible (its weight).
  void enumerate_allowed(std::size_t j, Weight cost_so_far) {
    if (cost_so_far > max_cost_) return;
    if (j == chosen_.size()) {
      run_dp(cost_so_far);
      return;
    }
    Weight w = h_.weights[chosen_[j]];
    for (unsigned mask : masks_) {
      allowed_of_edge_[j] = mask;
      Weight extra = 0;
      if (metric_ == Metric::kConnectivity)
        extra = w * (__builtin_popcount(mask) - 2);  // beyond the minimum
      enumerate_allowed(j + 1, cost_so_far + extra);
    }
  }

  void run_dp(Weight config_cost) {
    unsigned full = (k_ == 32) ? ~0u : ((1u << k_) - 1u);
    std::vector<unsigned> allowed(num_comp_, full);
    for (int comp = 0; comp < num_comp_; ++comp) {
      unsigned touch = comp_touch_[comp];
      while (touch) {
        int j = __builtin_ctz(touch);
        touch &= touch - 1;
        allowed[comp] &= allowed_of_edge_[j];
      }
      if (allowed[comp] == 0) return;  // contradictory color requirements
    }
    auto colors = coloring_->color(allowed, &budget_);
    if (!colors) return;
    Partition p(h_.num_nodes);
    for (NodeId v = 0; v < h_.num_nodes; ++v) p[v] = (*colors)[comp_of_[v]];
    p = canonical_partition(p);
    Weight true_cost = cost(h_, p, k_, metric_);
    table_.offer(config_cost, SolveResult{std::move(p), true_cost});
  }

  const Hypergraph& h_;
  int k_;
  Metric metric_;
  Weight max_cost_;
  std::int64_t budget_;
  ConstraintInfo cons_;
  CandidateTable table_;
  std::vector<unsigned> masks_;
  std::vector<int> chosen_;
  std::vector<int> comp_of_;
  int num_comp_ = 0;
  std::vector<unsigned> comp_touch_;
  std::vector<unsigned> allowed_of_edge_;
  std::optional<ComponentColoring> coloring_;
};

}  // namespace

std::vector<std::optional<SolveResult>> bounded_cost_sweep(
    const Hypergraph& h, int k, const BalanceSpec& spec, Weight max_cost,
    Metric metric, std::int64_t budget) {
  BoundedEngine engine(h, k, spec, max_cost, metric, budget);
  return engine.run();
}

std::optional<SolveResult> multi_constraint_bounded_solver(
    const Hypergraph& h, int k, const BalanceSpec& spec, Weight max_cost,
    Metric metric, std::int64_t budget) {
  auto sweep = bounded_cost_sweep(h, k, spec, max_cost, metric, budget);
  return sweep[static_cast<std::size_t>(max_cost)];
}

std::optional<SolveResult> bounded_cost_solver(const Hypergraph& h, int k,
                                               const Rational& eps,
                                               Rounding mode, Weight max_cost,
                                               Metric metric,
                                               std::int64_t budget) {
  BalanceSpec spec;
  spec.constraints.push_back(BalanceConstraint{eps, mode, {}});
  return multi_constraint_bounded_solver(h, k, spec, max_cost, metric,
                                         budget);
}

namespace {

// Sub-hypergraph induced by `subset` (sorted node ids): pins outside the
// subset are dropped, edges left with fewer than two pins vanish, and
// identical restrictions aggregate their weights.
Hypergraph induce(const Hypergraph& h, const std::vector<NodeId>& subset) {
  std::vector<int> local(h.num_nodes, -1);
  for (std::size_t i = 0; i < subset.size(); ++i) local[subset[i]] = static_cast<int>(i);
  std::map<std::vector<NodeId>, Weight> aggregated;
  std::vector<std::vector<NodeId>> order;
  for (int e = 0; e < h.num_edges(); ++e) {
    std::vector<NodeId> pins;
    for (NodeId v : h.edges[e])
      if (local[v] >= 0) pins.push_back(local[v]);
    if (pins.size() < 2) continue;
    auto [it, inserted] = aggregated.emplace(pins, 0);
    if (inserted) order.push_back(pins);
    it->second += h.weights[e];
  }
  Hypergraph out;
  out.num_nodes = static_cast<int>(subset.size());
  for (auto& pins : order) {
    out.weights.push_back(aggregated[pins]);
    out.edges.push_back(std::move(pins));
  }
  return out;
}

}  // namespace

RecursiveResult recursive_partitioner(const Hypergraph& h,
                                      const std::vector<int>& branching,
                                      const Rational& eps, Rounding mode,
                                      Metric metric, std::int64_t budget,
                                      const StepOracle& oracle) {
  if (branching.empty())
    throw std::invalid_argument("recursive: empty branching sequence");
  for (int b : branching)
    if (b < 2)
      throw std::invalid_argument("recursive: branching factors must be >= 2");

  HierTopology topo;
  topo.branching = branching;
  topo.level_costs.assign(branching.size(), Rational(1));
  int k = topo.num_leaves();

  Partition leaf_of(h.num_nodes, -1);
  int next_leaf = 0;

  auto split_step = [&](const Hypergraph& sub,
                        int b) -> std::optional<SolveResult> {
    if (oracle) return oracle(sub, b);
    BalanceSpec spec;
    spec.constraints.push_back(BalanceConstraint{eps, mode, {}});
    return brute_force_optimum(sub, b, spec, metric, budget);
  };

  auto recurse = [&](auto&& self, const std::vector<NodeId>& subset,
                     std::size_t level) -> void {
    if (level == branching.size()) {
      for (NodeId v : subset) leaf_of[v] = next_leaf;
      ++next_leaf;
      return;
    }
    int b = branching[level];
    Hypergraph sub = induce(h, subset);
    auto split = split_step(sub, b);
    if (!split)
      throw std::runtime_error("recursive step has no balanced split");
    std::vector<std::vector<NodeId>> buckets(b);
    for (std::size_t i = 0; i < subset.size(); ++i)
      buckets[split->partition[i]].push_back(subset[i]);
    for (int q = 0; q < b; ++q) self(self, buckets[q], level + 1);
  };

  std::vector<NodeId> all(h.num_nodes);
  std::iota(all.begin(), all.end(), 0);
  recurse(recurse, all, 0);

  RecursiveResult out;
  out.hier.topology = std::move(topo);
  out.hier.leaf_of = std::move(leaf_of);
  out.cost = cost(h, out.hier.leaf_of, k, metric);
  return out;
}

}  // namespace hypart
