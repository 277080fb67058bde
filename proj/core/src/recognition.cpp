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

#include "hypart/recognition.hpp"

#include <algorithm>
#include <set>

namespace hypart {

CommHypergraph dag_to_hyperdag(const Dag& d) {
  auto succ = d.successors();
  CommHypergraph out;
  out.h.num_nodes = d.num_nodes;
  for (NodeId u = 0; u < d.num_nodes; ++u) {
    if (succ[u].empty()) continue;  // sinks generate no edge
    std::vector<NodeId> pins = succ[u];
    pins.push_back(u);
    std::sort(pins.begin(), pins.end());
    out.h.edges.push_back(std::move(pins));
    out.h.weights.push_back(1);
    out.generator_of.push_back(u);
  }
  return out;
}

// Peeling: repeatedly remove the lowest-id alive node of alive-degree <= 1.
// A degree-0 node becomes a sink of the witness; a degree-1 node becomes the
// generator of its unique alive edge, with arcs to the edge's other pins,
// and the edge dies. Edge weights are ignored: recognition is structural.
RecognitionResult is_hyperdag(const Hypergraph& h) {
  RecognitionResult r;
  // Communication hypergraphs have no single-pin edges: every generating
  // node has at least one successor. Reject those upfront; the violating
  // set is the offending pin.
  for (int e = 0; e < h.num_edges(); ++e) {
    if (h.edges[e].size() < 2) {
      r.is_hyperdag = false;
      r.violating_nodes = h.edges[e];
      return r;
    }
  }

  std::vector<std::vector<int>> incident(h.num_nodes);
  for (int e = 0; e < h.num_edges(); ++e)
    for (NodeId v : h.edges[e]) {
      incident[v].push_back(e);
      ++r.elementary_ops;
    }

  std::vector<int> degree(h.num_nodes, 0);
  for (NodeId v = 0; v < h.num_nodes; ++v)
    degree[v] = static_cast<int>(incident[v].size());
  std::vector<char> node_alive(h.num_nodes, 1);
  std::vector<char> edge_alive(h.num_edges(), 1);

  std::set<NodeId> ready;  // alive nodes of degree <= 1, by id
  for (NodeId v = 0; v < h.num_nodes; ++v) {
    if (degree[v] <= 1) ready.insert(v);
    ++r.elementary_ops;
  }

  Dag witness;
  witness.num_nodes = h.num_nodes;
  std::vector<NodeId> generator(h.num_edges(), -1);
  int removed = 0;
  while (!ready.empty()) {
    NodeId v = *ready.begin();
    ready.erase(ready.begin());
    node_alive[v] = 0;
    ++removed;
    ++r.elementary_ops;
    if (degree[v] == 1) {
      int e = -1;
      for (int cand : incident[v]) {
        ++r.elementary_ops;
        if (edge_alive[cand]) {
          e = cand;
          break;
        }
      }
      edge_alive[e] = 0;
      generator[e] = v;
      for (NodeId u : h.edges[e]) {
        ++r.elementary_ops;
        if (u == v) continue;
        witness.arcs.emplace_back(v, u);
        if (--degree[u] == 1) ready.insert(u);
      }
    }
  }

  if (removed != h.num_nodes) {
    r.is_hyperdag = false;
    for (NodeId v = 0; v < h.num_nodes; ++v)
      if (node_alive[v]) r.violating_nodes.push_back(v);
    return r;
  }

  r.is_hyperdag = true;
  witness.normalize_and_validate();
  r.witness = std::move(witness);
  r.generator_of.assign(generator.begin(), generator.end());
  return r;
}

bool is_hyperdag_reference(const Hypergraph& h, int max_nodes) {
  if (h.num_nodes > max_nodes)
    throw std::invalid_argument("reference recognition: instance too large");
  for (const auto& pins : h.edges)
    if (pins.size() < 2) return false;
  std::vector<std::uint32_t> edge_mask(h.num_edges(), 0);
  for (int e = 0; e < h.num_edges(); ++e)
    for (NodeId v : h.edges[e]) edge_mask[e] |= (1u << v);
  std::uint32_t full = h.num_nodes == 32 ? 0xffffffffu
                                         : ((1u << h.num_nodes) - 1u);
  for (std::uint32_t subset = 1; subset <= full && full != 0; ++subset) {
    // Degrees within the sub-hypergraph induced by `subset`: only edges
    // entirely inside the subset survive.
    int deg[32] = {0};
    for (int e = 0; e < h.num_edges(); ++e)
      if ((edge_mask[e] & subset) == edge_mask[e])
        for (NodeId v : h.edges[e]) ++deg[v];
    bool found = false;
    for (NodeId v = 0; v < h.num_nodes && !found; ++v)
      if ((subset >> v) & 1u)
        if (deg[v] <= 1) found = true;
    if (!found) return false;
    if (subset == full) break;
  }
  return true;
}

CommHypergraph densest_hyperdag(int m) {
  if (m < 2)
    throw std::invalid_argument("densest instance needs at least 2 nodes");
  Dag d;
  d.num_nodes = m;
  for (NodeId u = 0; u < m - 1; ++u)
    for (NodeId v = u + 1; v < m; ++v) d.arcs.emplace_back(u, v);
  d.normalize_and_validate();
  return dag_to_hyperdag(d);
}

}  // namespace hypart
