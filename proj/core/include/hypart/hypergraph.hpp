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
#include <string>
#include <vector>

#include "hypart/rational.hpp"

namespace hypart {

using NodeId = int;
using Weight = std::int64_t;

// A hypergraph with dense 0-based node ids and positively weighted edges.
// Pins of every edge are kept sorted and duplicate-free; parsers aggregate
// duplicate edges by summing weights, but in-memory construction accepts any
// edge list and `validate` enforces the invariants.
struct Hypergraph {
  int num_nodes = 0;
  std::vector<std::vector<NodeId>> edges;  // sorted, unique pins per edge
  std::vector<Weight> weights;             // same length as `edges`, all > 0

  int num_edges() const { return static_cast<int>(edges.size()); }

  // Sorts and dedupes pins in place; throws std::invalid_argument when a pin
  // is out of range, an edge is empty, or a weight is not positive.
  void normalize_and_validate();

  // Sum of all pin list lengths (the input size of streaming algorithms).
  std::int64_t total_pins() const;
};

// A k-way partition is a color per node, values in [0, k).
using Partition = std::vector<int>;

enum class Metric {
  kCutNet,       // sum of w_e over edges spanning >= 2 parts
  kConnectivity  // sum of w_e * (lambda_e - 1)
};

enum class Rounding {
  kStrictFloor,  // part capacity floor((1+eps)*|S|/k)
  kRelaxedCeil   // part capacity ceil((1+eps)*|S|/k)
};

// One balance constraint: every part may contain at most `capacity(k)` nodes
// of the set `nodes` (empty vector means the whole node set).
struct BalanceConstraint {
  Rational eps;  // >= 0
  Rounding mode = Rounding::kStrictFloor;
  std::vector<NodeId> nodes;  // sorted unique; empty = all nodes

  std::int64_t capacity(std::int64_t set_size, int k) const;
};

// A conjunction of balance constraints over pairwise disjoint node sets.
struct BalanceSpec {
  std::vector<BalanceConstraint> constraints;

  static BalanceSpec uniform(const Rational& eps,
                             Rounding mode = Rounding::kStrictFloor) {
    BalanceSpec s;
    s.constraints.push_back(BalanceConstraint{eps, mode, {}});
    return s;
  }

  // Throws std::invalid_argument if sets overlap or contain bad ids.
  void validate(int num_nodes) const;
};

// Number of distinct parts edge `e` of `h` meets under `p`.
int lambda(const Hypergraph& h, const Partition& p, int edge, int k);

// Partition cost under the chosen metric. Edges with a single pin never
// contribute (their lambda is 1).
Weight cost(const Hypergraph& h, const Partition& p, int k, Metric metric);

// Per-edge lambda values, in edge order.
std::vector<int> lambda_profile(const Hypergraph& h, const Partition& p,
                                int k);

// True when `p` is a k-way partition of h's nodes satisfying every
// constraint of `spec`.
bool is_balanced(const Hypergraph& h, const Partition& p, int k,
                 const BalanceSpec& spec);

// Relabels parts by first occurrence: the part of node 0 becomes 0, the next
// new part becomes 1, and so on. Two partitions induce the same node grouping
// iff their canonical forms are equal.
Partition canonical_partition(const Partition& p);

// Result of reducing a k-way instance to a bisection-shaped one.
struct BisectionInstance {
  Hypergraph h;        // original hypergraph plus appended isolated nodes
  int padded_nodes;    // number of nodes appended
  std::int64_t part_capacity;  // the common part size n' / k
};

// Pads `h` with isolated nodes so that a perfectly balanced k-way partition
// with eps slack exists with all parts of equal size floor((1+eps)n/k).
// Throws std::invalid_argument when k*floor((1+eps)n/k) < n (the slack is too
// small for any balanced partition, so the reshaping is undefined).
BisectionInstance to_bisection_instance(const Hypergraph& h, int k,
                                        const Rational& eps);

// Merges the two smallest nonempty parts of `p` (ties by label; the result
// keeps the smaller label) and verifies the merged partition still satisfies
// the same (k, eps) balance. Throws std::runtime_error("not mergeable") when
// fewer than two parts are nonempty or the merge violates balance.
Partition merge_smallest_parts(const Hypergraph& h, const Partition& p, int k,
                               const Rational& eps, Rounding mode);

// Upper bound on the number of nonempty parts that some optimal balanced
// partition uses, together with whether every part must be nonempty.
struct NonemptyPartBounds {
  int max_nonempty;        // strict bound: < 2k/(1+eps), as an integer
  bool all_parts_needed;   // true iff eps < 1/(k-1): no part may be empty
};

NonemptyPartBounds nonempty_part_bounds(int k, const Rational& eps);

// Thrown when a solver exceeds its exploration budget.
class BudgetExceeded : public std::runtime_error {
 public:
  explicit BudgetExceeded(const std::string& what)
      : std::runtime_error(what) {}
};

}  // namespace hypart
