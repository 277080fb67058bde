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
#include <utility>
#include <vector>

#include "hypart/hypergraph.hpp"

namespace hypart {

// A directed graph over dense 0-based node ids. Most operations require it
// to be acyclic and `validate` enforces that.
struct Dag {
  int num_nodes = 0;
  std::vector<std::pair<NodeId, NodeId>> arcs;  // (tail, head)

  int num_arcs() const { return static_cast<int>(arcs.size()); }

  // Sorts and dedupes arcs; throws std::invalid_argument on out-of-range
  // endpoints, self-loops, or a directed cycle.
  void normalize_and_validate();

  // Successor lists (indexed by tail), built on demand by callers.
  std::vector<std::vector<NodeId>> successors() const;
  std::vector<std::vector<NodeId>> predecessors() const;

  // In/out degrees.
  std::vector<int> in_degrees() const;
  std::vector<int> out_degrees() const;
};

// A layering assigns each node a layer in [0, num_layers) such that every
// arc strictly increases the layer and no layer is empty.
struct Layering {
  std::vector<int> layer_of;  // per node
  int num_layers = 0;
};

// Minimum possible number of layers: the number of nodes on a longest
// directed path.
int longest_path_nodes(const Dag& d);

// The earliest layering: layer(v) = longest path ending at v (node count
// minus one). It is pointwise minimal among all layerings with the minimum
// number of layers.
Layering earliest_layering(const Dag& d);

// True when `l` is a valid layering of `d` (arcs strictly increase, all
// layers in range and nonempty).
bool is_valid_layering(const Dag& d, const Layering& l);

// Enumerates all layerings with exactly `longest_path_nodes(d)` layers, in
// lexicographic order of the layer vector. Throws BudgetExceeded when more
// than `budget` layerings would be produced.
std::vector<Layering> enumerate_layerings(const Dag& d,
                                          std::int64_t budget = 1000000);

// Checks balance layer by layer: within every layer, every part holds at
// most capacity(|layer|, k) nodes of that layer.
bool is_layerwise_balanced(const Dag& d, const Layering& l, const Partition& p,
                           int k, const Rational& eps, Rounding mode);

}  // namespace hypart
