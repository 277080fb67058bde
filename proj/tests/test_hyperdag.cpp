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

#include <algorithm>
#include <random>
#include <stdexcept>
#include <vector>

#include "gtest/gtest.h"
#include "hypart/dag.hpp"
#include "hypart/hypergraph.hpp"
#include "hypart/recognition.hpp"

namespace hypart {
namespace {

Dag make_dag(int n, std::vector<std::pair<NodeId, NodeId>> arcs) {
  Dag d;
  d.num_nodes = n;
  d.arcs = std::move(arcs);
  d.normalize_and_validate();
  return d;
}

Hypergraph make(int n, std::vector<std::vector<NodeId>> edges) {
  Hypergraph h;
  h.num_nodes = n;
  h.edges = std::move(edges);
  h.weights.assign(h.edges.size(), 1);
  h.normalize_and_validate();
  return h;
}

TEST(Dag, ValidationRejectsCyclesAndSelfLoops) {
  EXPECT_THROW(make_dag(2, {{0, 1}, {1, 0}}), std::invalid_argument);
  EXPECT_THROW(make_dag(2, {{0, 0}}), std::invalid_argument);
  EXPECT_THROW(make_dag(2, {{0, 5}}), std::invalid_argument);
  const Dag d = make_dag(3, {{0, 1}, {0, 1}, {1, 2}});
  EXPECT_EQ(d.num_arcs(), 2);  // parallel arcs collapse
}

TEST(Dag, DegreesAndAdjacency) {
  const Dag d = make_dag(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}});
  EXPECT_EQ(d.successors()[0], (std::vector<NodeId>{1, 2}));
  EXPECT_EQ(d.predecessors()[3], (std::vector<NodeId>{1, 2}));
  EXPECT_EQ(d.in_degrees(), (std::vector<int>{0, 1, 1, 2}));
  EXPECT_EQ(d.out_degrees(), (std::vector<int>{2, 1, 1, 0}));
}

TEST(Conversion, ChainProducesTwoEdges) {
  const Dag chain = make_dag(3, {{0, 1}, {1, 2}});
  const CommHypergraph ch = dag_to_hyperdag(chain);
  EXPECT_EQ(ch.h.num_nodes, 3);
  ASSERT_EQ(ch.h.num_edges(), 2);
  EXPECT_EQ(ch.h.edges[0], (std::vector<NodeId>{0, 1}));
  EXPECT_EQ(ch.h.edges[1], (std::vector<NodeId>{1, 2}));
  EXPECT_EQ(ch.generator_of, (std::vector<NodeId>{0, 1}));
}

TEST(Conversion, SinksGenerateNoEdge) {
  const Dag d = make_dag(4, {{0, 1}, {0, 2}});  // node 3 isolated
  const CommHypergraph ch = dag_to_hyperdag(d);
  // Only node 0 is a non-sink: |E'| = n - |sinks| = 4 - 3.
  ASSERT_EQ(ch.h.num_edges(), 1);
  EXPECT_EQ(ch.h.edges[0], (std::vector<NodeId>{0, 1, 2}));
}

TEST(Layering, EarliestIsLongestPathDepth) {
  const Dag diamond = make_dag(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}});
  const Layering l = earliest_layering(diamond);
  EXPECT_EQ(l.num_layers, 3);
  EXPECT_EQ(l.layer_of, (std::vector<int>{0, 1, 1, 2}));
  EXPECT_TRUE(is_valid_layering(diamond, l));
  EXPECT_EQ(longest_path_nodes(diamond), 3);

  Dag chain5 = make_dag(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}});
  EXPECT_EQ(earliest_layering(chain5).layer_of,
            (std::vector<int>{0, 1, 2, 3, 4}));
}

TEST(Layering, EnumerationAndMinimality) {
  const Dag chain3 = make_dag(3, {{0, 1}, {1, 2}});
  EXPECT_EQ(enumerate_layerings(chain3).size(), 1u);

  // a -> b -> c plus a -> d: d may sit in the middle or last layer.
  const Dag forked = make_dag(4, {{0, 1}, {1, 2}, {0, 3}});
  const std::vector<Layering> all = enumerate_layerings(forked);
  ASSERT_EQ(all.size(), 2u);
  const Layering earliest = earliest_layering(forked);
  for (const Layering& l : all) {
    EXPECT_TRUE(is_valid_layering(forked, l));
    for (std::size_t v = 0; v < l.layer_of.size(); ++v)
      EXPECT_LE(earliest.layer_of[v], l.layer_of[v]);
  }
  EXPECT_THROW(enumerate_layerings(forked, 1), BudgetExceeded);
}

TEST(Layering, LayerwiseBalanceMatchesExplicitSpec) {
  const Dag chain3 = make_dag(3, {{0, 1}, {1, 2}});
  const Layering l = earliest_layering(chain3);
  // Layers of size 1: relaxed ceil gives capacity ceil(1/2) = 1 at eps = 0.
  EXPECT_TRUE(is_layerwise_balanced(chain3, l, {0, 0, 0}, 2, Rational(0),
                                    Rounding::kRelaxedCeil));
  EXPECT_FALSE(is_layerwise_balanced(chain3, l, {0, 0, 0}, 2, Rational(0),
                                     Rounding::kStrictFloor));

  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 7);
    std::vector<NodeId> order(n);
    for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
    std::shuffle(order.begin(), order.end(), rng);
    Dag d;
    d.num_nodes = n;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (rng() % 100 < 40)
          d.arcs.push_back({order[static_cast<std::size_t>(i)],
                            order[static_cast<std::size_t>(j)]});
    d.normalize_and_validate();
    const Layering layering = earliest_layering(d);
    Partition p(static_cast<std::size_t>(n));
    for (auto& c : p) c = static_cast<int>(rng() % 2);
    const Rational eps = (rng() % 2) ? Rational(1, 4) : Rational(0);
    const Rounding mode =
        (rng() % 2) ? Rounding::kRelaxedCeil : Rounding::kStrictFloor;

    BalanceSpec layers;
    std::vector<std::vector<NodeId>> sets(
        static_cast<std::size_t>(layering.num_layers));
    for (int v = 0; v < n; ++v)
      sets[static_cast<std::size_t>(layering.layer_of[v])].push_back(v);
    for (auto& set : sets)
      layers.constraints.push_back(BalanceConstraint{eps, mode, set});
    Hypergraph empty;
    empty.num_nodes = n;
    EXPECT_EQ(is_layerwise_balanced(d, layering, p, 2, eps, mode),
              is_balanced(empty, p, 2, layers));
  }
}

TEST(Recognition, TriangleIsRejectedWithWitnessSet) {
  const Hypergraph triangle = make(3, {{0, 1}, {1, 2}, {0, 2}});
  const RecognitionResult rec = is_hyperdag(triangle);
  EXPECT_FALSE(rec.is_hyperdag);
  EXPECT_FALSE(rec.witness.has_value());
  EXPECT_EQ(rec.violating_nodes.size(), 3u);
  EXPECT_FALSE(is_hyperdag_reference(triangle));
}

TEST(Recognition, ChainIsAccepted) {
  const Hypergraph path = make(3, {{0, 1}, {1, 2}});
  const RecognitionResult rec = is_hyperdag(path);
  EXPECT_TRUE(rec.is_hyperdag);
  ASSERT_TRUE(rec.witness.has_value());
  ASSERT_EQ(rec.generator_of.size(), 2u);
  EXPECT_TRUE(is_hyperdag_reference(path));

  // Regenerating from the witness gives back the same edge multiset.
  const CommHypergraph back = dag_to_hyperdag(*rec.witness);
  EXPECT_EQ(back.h.edges, path.edges);
}

TEST(Recognition, SinglePinEdgesAreRejected) {
  const Hypergraph h = make(2, {{0}});
  EXPECT_FALSE(is_hyperdag(h).is_hyperdag);
  EXPECT_FALSE(is_hyperdag_reference(h));
}

TEST(Recognition, NecessaryConditionsHold) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 8);
    Hypergraph h;
    h.num_nodes = n;
    const int e = static_cast<int>(rng() % (n + 2));
    for (int j = 0; j < e; ++j) {
      std::vector<NodeId> pins;
      for (int v = 0; v < n; ++v)
        if (rng() % 3 == 0) pins.push_back(v);
      if (pins.empty()) pins.push_back(static_cast<int>(rng() % n));
      h.edges.push_back(pins);
      h.weights.push_back(1);
    }
    h.normalize_and_validate();
    const RecognitionResult rec = is_hyperdag(h);
    if (!rec.is_hyperdag) continue;
    EXPECT_LE(h.num_edges(), h.num_nodes - 1 + 0);
    std::vector<int> deg(static_cast<std::size_t>(n), 0);
    for (const auto& pins : h.edges)
      for (NodeId v : pins) ++deg[static_cast<std::size_t>(v)];
    EXPECT_LE(*std::min_element(deg.begin(), deg.end()), 1);
  }
}

TEST(Recognition, WorkCounterGrowsLinearly) {
  // The elementary-operation counter stays within a fixed multiple of the
  // total pin count.
  for (int m : {10, 20, 40}) {
    const CommHypergraph dense = densest_hyperdag(m);
    const RecognitionResult rec = is_hyperdag(dense.h);
    EXPECT_TRUE(rec.is_hyperdag);
    EXPECT_LE(rec.elementary_ops, 16 * (dense.h.total_pins() + m + 1));
  }
}

TEST(Densest, StructureAndRecognition) {
  const CommHypergraph two = densest_hyperdag(2);
  ASSERT_EQ(two.h.num_edges(), 1);
  EXPECT_EQ(two.h.edges[0], (std::vector<NodeId>{0, 1}));

  for (int m = 2; m <= 50; ++m) {
    const CommHypergraph dense = densest_hyperdag(m);
    EXPECT_EQ(dense.h.num_nodes, m);
    EXPECT_EQ(dense.h.num_edges(), m - 1);  // maximum possible
    EXPECT_TRUE(is_hyperdag(dense.h).is_hyperdag);
    std::vector<int> deg(static_cast<std::size_t>(m), 0);
    for (const auto& pins : dense.h.edges)
      for (NodeId v : pins) ++deg[static_cast<std::size_t>(v)];
    std::sort(deg.begin(), deg.end());
    for (int i = 0; i + 2 < m; ++i) EXPECT_EQ(deg[static_cast<std::size_t>(i)], i + 1);
    EXPECT_EQ(deg[static_cast<std::size_t>(m - 2)], m - 1);
    EXPECT_EQ(deg[static_cast<std::size_t>(m - 1)], m - 1);
  }
}

}  // namespace
}  // namespace hypart
