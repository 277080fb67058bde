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

#include "hypart/hypergraph.hpp"

#include <algorithm>
#include <numeric>

namespace hypart {

void Hypergraph::normalize_and_validate() {
  if (num_nodes < 0) throw std::invalid_argument("hypergraph: negative size");
  if (edges.size() != weights.size())
    throw std::invalid_argument("hypergraph: edge/weight count mismatch");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    auto& pins = edges[i];
    if (pins.empty())
      throw std::invalid_argument("hypergraph: empty edge " +
                                  std::to_string(i));
    std::sort(pins.begin(), pins.end());
    pins.erase(std::unique(pins.begin(), pins.end()), pins.end());
    if (pins.front() < 0 || pins.back() >= num_nodes)
      throw std::invalid_argument("hypergraph: pin out of range in edge " +
                                  std::to_string(i));
    if (weights[i] <= 0)
      throw std::invalid_argument("hypergraph: non-positive weight on edge " +
                                  std::to_string(i));
  }
}

std::int64_t Hypergraph::total_pins() const {
  std::int64_t total = 0;
  for (const auto& pins : edges) total += static_cast<std::int64_t>(pins.size());
  return total;
}

std::int64_t BalanceConstraint::capacity(std::int64_t set_size, int k) const {
  Rational factor = (Rational(1) + eps) * Rational(set_size, k);
  return mode == Rounding::kStrictFloor ? factor.floor_scaled(1)
                                        : factor.ceil_scaled(1);
}

void BalanceSpec::validate(int num_nodes) const {
  std::vector<char> seen(num_nodes, 0);
  for (const auto& c : constraints) {
    if (c.eps < Rational(0))
      throw std::invalid_argument("balance: negative eps");
    if (c.nodes.empty()) {
      // Whole-node-set constraint: must not coexist with any other set.
      if (constraints.size() > 1)
        throw std::invalid_argument(
            "balance: whole-set constraint must be the only constraint");
      continue;
    }
    for (NodeId v : c.nodes) {
      if (v < 0 || v >= num_nodes)
        throw std::invalid_argument("balance: node id out of range");
      if (seen[v])
        throw std::invalid_argument("balance: constraint sets overlap");
      seen[v] = 1;
    }
  }
}

int lambda(const Hypergraph& h, const Partition& p, int edge, int k) {
  std::vector<char> present(k, 0);
  int distinct = 0;
  for (NodeId v : h.edges[edge]) {
    int c = p[v];
    if (!present[c]) {
      present[c] = 1;
      ++distinct;
    }
  }
  return distinct;
}

Weight cost(const Hypergraph& h, const Partition& p, int k, Metric metric) {
  Weight total = 0;
  std::vector<int> mark(k, -1);
  for (int e = 0; e < h.num_edges(); ++e) {
    int distinct = 0;
    for (NodeId v : h.edges[e]) {
      int c = p[v];
      if (mark[c] != e) {
        mark[c] = e;
        ++distinct;
      }
    }
    if (metric == Metric::kCutNet) {
      if (distinct > 1) total += h.weights[e];
    } else {
      total += h.weights[e] * (distinct - 1);
    }
  }
  return total;
}

std::vector<int> lambda_profile(const Hypergraph& h, const Partition& p,
                                int k) {
  std::vector<int> out(h.num_edges());
  for (int e = 0; e < h.num_edges(); ++e) out[e] = lambda(h, p, e, k);
  return out;
}

bool is_balanced(const Hypergraph& h, const Partition& p, int k,
                 const BalanceSpec& spec) {
  if (static_cast<int>(p.size()) != h.num_nodes) return false;
  for (int c : p)
    if (c < 0 || c >= k) return false;
  for (const auto& constraint : spec.constraints) {
    std::vector<std::int64_t> counts(k, 0);
    std::int64_t set_size = 0;
    if (constraint.nodes.empty()) {
      set_size = h.num_nodes;
      for (int c : p) ++counts[c];
    } else {
      set_size = static_cast<std::int64_t>(constraint.nodes.size());
      for (NodeId v : constraint.nodes) ++counts[p[v]];
    }
    std::int64_t cap = constraint.capacity(set_size, k);
    for (int part = 0; part < k; ++part)
      if (counts[part] > cap) return false;
  }
  return true;
}

Partition canonical_partition(const Partition& p) {
  Partition out(p.size());
  std::vector<int> relabel;
  for (std::size_t i = 0; i < p.size(); ++i) {
    int c = p[i];
    if (c < 0) throw std::invalid_argument("partition: negative label");
    int mapped = -1;
    for (std::size_t j = 0; j < relabel.size(); ++j) {
      if (relabel[j] == c) {
        mapped = static_cast<int>(j);
        break;
      }
    }
    if (mapped < 0) {
      mapped = static_cast<int>(relabel.size());
      relabel.push_back(c);
    }
    out[i] = mapped;
  }
  return out;
}

BisectionInstance to_bisection_instance(const Hypergraph& h, int k,
                                        const Rational& eps) {
  if (k < 1) throw std::invalid_argument("bisection: k must be positive");
  std::int64_t n = h.num_nodes;
  BalanceConstraint c{eps, Rounding::kStrictFloor, {}};
  std::int64_t cap = c.capacity(n, k);
  if (cap * k < n)
    throw std::invalid_argument(
        "bisection: slack too small, no balanced partition exists");
  BisectionInstance out;
  out.h = h;
  out.padded_nodes = static_cast<int>(cap * k - n);
  out.h.num_nodes += out.padded_nodes;
  out.part_capacity = cap;
  return out;
}

Partition merge_smallest_parts(const Hypergraph& h, const Partition& p, int k,
                               const Rational& eps, Rounding mode) {
  std::vector<std::int64_t> counts(k, 0);
  for (int c : p) {
    if (c < 0 || c >= k)
      throw std::invalid_argument("merge: label out of range");
    ++counts[c];
  }
  int first = -1, second = -1;
  for (int part = 0; part < k; ++part) {
    if (counts[part] == 0) continue;
    if (first < 0 || counts[part] < counts[first]) {
      second = first;
      first = part;
    } else if (second < 0 || counts[part] < counts[second]) {
      second = part;
    }
  }
  if (second < 0) throw std::runtime_error("not mergeable");
  int keep = std::min(first, second);
  int drop = std::max(first, second);
  Partition merged = p;
  for (auto& c : merged)
    if (c == drop) c = keep;
  BalanceSpec spec;
  spec.constraints.push_back(BalanceConstraint{eps, mode, {}});
  if (!is_balanced(h, merged, k, spec)) throw std::runtime_error("not mergeable");
  return merged;
}

NonemptyPartBounds nonempty_part_bounds(int k, const Rational& eps) {
  if (k < 1) throw std::invalid_argument("part bounds: k must be positive");
  // Largest integer strictly below 2k / (1 + eps): ceil(x) - 1 covers both
  // the integral and the fractional case.
  Rational bound = Rational(2 * static_cast<std::int64_t>(k)) /
                   (Rational(1) + eps);
  std::int64_t strict = bound.ceil_scaled(1) - 1;
  NonemptyPartBounds out;
  out.max_nonempty = static_cast<int>(std::min<std::int64_t>(strict, k));
  if (out.max_nonempty < 1) out.max_nonempty = 1;
  out.all_parts_needed =
      (k == 1) || (eps < Rational(1, static_cast<std::int64_t>(k) - 1));
  return out;
}

}  // namespace hypart
