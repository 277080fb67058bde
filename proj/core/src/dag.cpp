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

#include "hypart/dag.hpp"

#include <algorithm>
#include <queue>

namespace hypart {

namespace {

// Topological order via Kahn's algorithm; throws on cycles.
std::vector<NodeId> topological_order(const Dag& d) {
  std::vector<std::vector<NodeId>> succ(d.num_nodes);
  std::vector<int> indeg(d.num_nodes, 0);
  for (const auto& [u, v] : d.arcs) {
    succ[u].push_back(v);
    ++indeg[v];
  }
  std::queue<NodeId> ready;
  for (NodeId v = 0; v < d.num_nodes; ++v)
    if (indeg[v] == 0) ready.push(v);
  std::vector<NodeId> order;
  order.reserve(d.num_nodes);
  while (!ready.empty()) {
    NodeId u = ready.front();
    ready.pop();
    order.push_back(u);
    for (NodeId v : succ[u])
      if (--indeg[v] == 0) ready.push(v);
  }
  if (static_cast<int>(order.size()) != d.num_nodes)
    throw std::invalid_argument("dag: directed cycle detected");
  return order;
}

}  // namespace

void Dag::normalize_and_validate() {
  if (num_nodes < 0) throw std::invalid_argument("dag: negative size");
  for (const auto& [u, v] : arcs) {
    if (u < 0 || u >= num_nodes || v < 0 || v >= num_nodes)
      throw std::invalid_argument("dag: arc endpoint out of range");
    if (u == v) throw std::invalid_argument("dag: self-loop");
  }
  std::sort(arcs.begin(), arcs.end());
  arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());
  topological_order(*this);  // throws on cycles
}

std::vector<std::vector<NodeId>> Dag::successors() const {
  std::vector<std::vector<NodeId>> out(num_nodes);
  for (const auto& [u, v] : arcs) out[u].push_back(v);
  return out;
}

std::vector<std::vector<NodeId>> Dag::predecessors() const {
  std::vector<std::vector<NodeId>> out(num_nodes);
  for (const auto& [u, v] : arcs) out[v].push_back(u);
  return out;
}

std::vector<int> Dag::in_degrees() const {
  std::vector<int> out(num_nodes, 0);
  for (const auto& [u, v] : arcs) {
    (void)u;
    ++out[v];
  }
  return out;
}

std::vector<int> Dag::out_degrees() const {
  std::vector<int> out(num_nodes, 0);
  for (const auto& [u, v] : arcs) {
    (void)v;
    ++out[u];
  }
  return out;
}

int longest_path_nodes(const Dag& d) {
  if (d.num_nodes == 0) return 0;
  auto order = topological_order(d);
  auto succ = d.successors();
  std::vector<int> depth(d.num_nodes, 1);  // nodes on longest path ending here
  int best = 1;
  for (NodeId u : order) {
    for (NodeId v : succ[u]) depth[v] = std::max(depth[v], depth[u] + 1);
    best = std::max(best, depth[u]);
  }
  for (NodeId v = 0; v < d.num_nodes; ++v) best = std::max(best, depth[v]);
  return best;
}

Layering earliest_layering(const Dag& d) {
  Layering l;
  l.layer_of.assign(d.num_nodes, 0);
  if (d.num_nodes == 0) return l;
  auto order = topological_order(d);
  auto succ = d.successors();
  for (NodeId u : order)
    for (NodeId v : succ[u])
      l.layer_of[v] = std::max(l.layer_of[v], l.layer_of[u] + 1);
  l.num_layers = *std::max_element(l.layer_of.begin(), l.layer_of.end()) + 1;
  return l;
}

bool is_valid_layering(const Dag& d, const Layering& l) {
  if (static_cast<int>(l.layer_of.size()) != d.num_nodes) return false;
  if (d.num_nodes == 0) return l.num_layers == 0;
  if (l.num_layers < 1) return false;
  std::vector<char> hit(l.num_layers, 0);
  for (int layer : l.layer_of) {
    if (layer < 0 || layer >= l.num_layers) return false;
    hit[layer] = 1;
  }
  for (char c : hit)
    if (!c) return false;
  for (const auto& [u, v] : d.arcs)
    if (l.layer_of[u] >= l.layer_of[v]) return false;
  return true;
}

std::vector<Layering> enumerate_layerings(const Dag& d, std::int64_t budget) {
  std::vector<Layering> out;
  if (d.num_nodes == 0) {
    out.push_back(Layering{});
    return out;
  }
  int ell = longest_path_nodes(d);
  Layering lo = earliest_layering(d);
  // Latest layer per node: ell minus nodes on the longest path starting at v.
  std::vector<int> hi(d.num_nodes);
  {
    auto order = topological_order(d);
    auto succ = d.successors();
    std::vector<int> tail(d.num_nodes, 1);
    for (auto it = order.rbegin(); it != order.rend(); ++it)
      for (NodeId v : succ[*it]) tail[*it] = std::max(tail[*it], tail[v] + 1);
    for (NodeId v = 0; v < d.num_nodes; ++v) hi[v] = ell - tail[v];
  }
  auto preds = d.predecessors();
  auto succ = d.successors();
  std::vector<int> assign(d.num_nodes, -1);
  // DFS over node ids so results come out in lexicographic order.
  auto rec = [&](auto&& self, NodeId v) -> void {
    if (v == d.num_nodes) {
      Layering l;
      l.layer_of = assign;
      l.num_layers = ell;
      out.push_back(std::move(l));
      if (static_cast<std::int64_t>(out.size()) > budget)
        throw BudgetExceeded("layering enumeration budget exceeded");
      return;
    }
    int vlo = lo.layer_of[v];
    int vhi = hi[v];
    for (NodeId u : preds[v])
      if (assign[u] >= 0) vlo = std::max(vlo, assign[u] + 1);
    for (NodeId u : succ[v])
      if (assign[u] >= 0) vhi = std::min(vhi, assign[u] - 1);
    for (int layer = vlo; layer <= vhi; ++layer) {
      assign[v] = layer;
      self(self, v + 1);
    }
    assign[v] = -1;
  };
  rec(rec, 0);
  return out;
}

bool is_layerwise_balanced(const Dag& d, const Layering& l, const Partition& p,
                           int k, const Rational& eps, Rounding mode) {
  if (!is_valid_layering(d, l)) return false;
  if (static_cast<int>(p.size()) != d.num_nodes) return false;
  BalanceConstraint c{eps, mode, {}};
  std::vector<std::vector<std::int64_t>> counts(
      l.num_layers, std::vector<std::int64_t>(k, 0));
  std::vector<std::int64_t> sizes(l.num_layers, 0);
  for (NodeId v = 0; v < d.num_nodes; ++v) {
    if (p[v] < 0 || p[v] >= k) return false;
    ++counts[l.layer_of[v]][p[v]];
    ++sizes[l.layer_of[v]];
  }
  for (int layer = 0; layer < l.num_layers; ++layer) {
    std::int64_t cap = c.capacity(sizes[layer], k);
    for (int part = 0; part < k; ++part)
      if (counts[layer][part] > cap) return false;
  }
  return true;
}

}  // namespace hypart
