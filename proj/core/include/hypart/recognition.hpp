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
#include <vector>

#include "hypart/dag.hpp"
#include "hypart/hypergraph.hpp"

namespace hypart {

// Communication hypergraph of a DAG: one hyperedge {u} + successors(u) per
// non-sink node u, except that single-pin edges (never produced here since a
// non-sink has a successor) are kept as-is; edges of size one in general
// hypergraphs are metric-inert. The i-th edge corresponds to the i-th
// non-sink node in id order; `generator_of` records that node per edge.
struct CommHypergraph {
  Hypergraph h;
  std::vector<NodeId> generator_of;  // per edge: the generating node
};

CommHypergraph dag_to_hyperdag(const Dag& d);

// Result of recognizing whether a hypergraph is the communication
// hypergraph of some DAG. On success `witness` is the canonical certificate
// DAG (peeling always removes the lowest-id eligible node; the witness is
// generally not unique). On failure `violating_nodes` is a node set whose
// induced sub-hypergraph has minimum degree >= 2.
struct RecognitionResult {
  bool is_hyperdag = false;
  std::optional<Dag> witness;
  std::vector<NodeId> generator_of;    // per edge, when recognized
  std::vector<NodeId> violating_nodes;  // when not recognized
  std::int64_t elementary_ops = 0;  // work counter, linear in total pins
};

// Linear-time recognition by peeling nodes of degree <= 1.
RecognitionResult is_hyperdag(const Hypergraph& h);

// Reference predicate used to cross-check recognition at small sizes:
// a hypergraph is a communication hypergraph of some DAG iff every induced
// sub-hypergraph (on a nonempty node subset) has a node of degree <= 1.
// Exponential in num_nodes; throws std::invalid_argument above `max_nodes`.
bool is_hyperdag_reference(const Hypergraph& h, int max_nodes = 16);

// The densest communication hypergraph on m nodes (m >= 2): edges
// {v_i, ..., v_m} for i = 1..m-1, giving m-1 edges and degree sequence
// (1, 2, ..., m-2, m-1, m-1).
CommHypergraph densest_hyperdag(int m);

}  // namespace hypart
