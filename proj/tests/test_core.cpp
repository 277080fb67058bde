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

#include <sstream>
#include <stdexcept>
#include <vector>

#include "gtest/gtest.h"
#include "hypart/hypergraph.hpp"
#include "hypart/io.hpp"
#include "hypart/rational.hpp"

namespace hypart {
namespace {

Hypergraph make(int n, std::vector<std::vector<NodeId>> edges,
                std::vector<Weight> weights = {}) {
  Hypergraph h;
  h.num_nodes = n;
  h.edges = std::move(edges);
  h.weights = weights.empty() ? std::vector<Weight>(h.edges.size(), 1)
                              : std::move(weights);
  h.normalize_and_validate();
  return h;
}

TEST(Rational, ParseAndPrint) {
  EXPECT_EQ(Rational::parse("3/4"), Rational(3, 4));
  EXPECT_EQ(Rational::parse("7"), Rational(7));
  EXPECT_EQ(Rational::parse("-2/6"), Rational(-1, 3));
  EXPECT_EQ(Rational(6, 8).to_string(), "3/4");
  EXPECT_EQ(Rational(8, 4).to_string(), "2");
  EXPECT_THROW(Rational(1, 0), std::invalid_argument);
}

TEST(Rational, ExactArithmetic) {
  const Rational a(1, 3), b(1, 6);
  EXPECT_EQ(a + b, Rational(1, 2));
  EXPECT_EQ(a - b, Rational(1, 6));
  EXPECT_EQ(a * b, Rational(1, 18));
  EXPECT_EQ(a / b, Rational(2));
  EXPECT_EQ(-a, Rational(-1, 3));
  EXPECT_LT(b, a);
  EXPECT_GE(a, b);
}

TEST(Rational, ScaledRounding) {
  const Rational eps(1, 4);  // caps below use (1 + eps) = 5/4
  const Rational cap = (Rational(1) + eps);
  EXPECT_EQ(cap.floor_scaled(10), 12);  // floor(12.5)
  EXPECT_EQ(cap.ceil_scaled(10), 13);   // ceil(12.5)
  EXPECT_EQ(Rational(-1, 2).floor_scaled(3), -2);
  EXPECT_EQ(Rational(-1, 2).ceil_scaled(3), -1);
}

TEST(Hypergraph, NormalizeSortsAndValidates) {
  Hypergraph h;
  h.num_nodes = 3;
  h.edges = {{2, 0, 2}};
  h.weights = {1};
  h.normalize_and_validate();
  EXPECT_EQ(h.edges[0], (std::vector<NodeId>{0, 2}));
  EXPECT_EQ(h.total_pins(), 2);

  Hypergraph bad_pin;
  bad_pin.num_nodes = 2;
  bad_pin.edges = {{0, 5}};
  bad_pin.weights = {1};
  EXPECT_THROW(bad_pin.normalize_and_validate(), std::invalid_argument);

  Hypergraph bad_weight;
  bad_weight.num_nodes = 2;
  bad_weight.edges = {{0, 1}};
  bad_weight.weights = {0};
  EXPECT_THROW(bad_weight.normalize_and_validate(), std::invalid_argument);
}

TEST(Cost, CutNetAndConnectivity) {
  // 4 nodes; one edge across everything, one pair, one singleton.
  const Hypergraph h = make(4, {{0, 1, 2, 3}, {0, 1}, {2}}, {2, 3, 5});
  const Partition p = {0, 0, 1, 2};
  EXPECT_EQ(lambda(h, p, 0, 3), 3);
  EXPECT_EQ(lambda(h, p, 1, 3), 1);
  EXPECT_EQ(lambda(h, p, 2, 3), 1);
  EXPECT_EQ(cost(h, p, 3, Metric::kCutNet), 2);
  EXPECT_EQ(cost(h, p, 3, Metric::kConnectivity), 4);  // 2 * (3 - 1)
  EXPECT_EQ(lambda_profile(h, p, 3), (std::vector<int>{3, 1, 1}));

  const Partition mono = {0, 0, 0, 0};
  EXPECT_EQ(cost(h, mono, 1, Metric::kCutNet), 0);
  EXPECT_EQ(cost(h, mono, 1, Metric::kConnectivity), 0);
}

TEST(Cost, MetricsAgreeForTwoParts) {
  const Hypergraph h = make(5, {{0, 1, 2}, {1, 3}, {2, 3, 4}, {0, 4}});
  for (int mask = 0; mask < (1 << 5); ++mask) {
    Partition p(5, 0);
    for (int v = 0; v < 5; ++v)
      if (mask & (1 << v)) p[static_cast<std::size_t>(v)] = 1;
    EXPECT_EQ(cost(h, p, 2, Metric::kCutNet),
              cost(h, p, 2, Metric::kConnectivity));
  }
}

TEST(Balance, CapacityRounding) {
  BalanceConstraint c;
  c.eps = Rational(1, 4);
  c.mode = Rounding::kStrictFloor;
  EXPECT_EQ(c.capacity(10, 2), 6);  // floor(1.25 * 10 / 2)
  c.mode = Rounding::kRelaxedCeil;
  EXPECT_EQ(c.capacity(10, 2), 7);  // ceil(6.25)
  c.eps = Rational(0);
  EXPECT_EQ(c.capacity(3, 2), 2);   // ceil(1.5)
  c.mode = Rounding::kStrictFloor;
  EXPECT_EQ(c.capacity(3, 2), 1);   // floor(1.5): infeasible to split 3
}

TEST(Balance, UniformAndSubsetConstraints) {
  const Hypergraph h = make(6, {{0, 1}});
  const BalanceSpec uniform = BalanceSpec::uniform(Rational(0));
  EXPECT_TRUE(is_balanced(h, {0, 0, 0, 1, 1, 1}, 2, uniform));
  EXPECT_FALSE(is_balanced(h, {0, 0, 0, 0, 1, 1}, 2, uniform));

  BalanceSpec two;
  two.constraints.push_back(
      BalanceConstraint{Rational(0), Rounding::kStrictFloor, {0, 1}});
  two.constraints.push_back(
      BalanceConstraint{Rational(0), Rounding::kStrictFloor, {2, 3}});
  // Each 2-node set must split 1 + 1 across the parts; nodes 4, 5 are free.
  EXPECT_TRUE(is_balanced(h, {0, 1, 0, 1, 0, 0}, 2, two));
  EXPECT_FALSE(is_balanced(h, {0, 0, 0, 1, 1, 1}, 2, two));

  BalanceSpec overlapping;
  overlapping.constraints.push_back(
      BalanceConstraint{Rational(0), Rounding::kStrictFloor, {0, 1}});
  overlapping.constraints.push_back(
      BalanceConstraint{Rational(0), Rounding::kStrictFloor, {1, 2}});
  EXPECT_THROW(overlapping.validate(6), std::invalid_argument);
}

TEST(Balance, PartitionShapeChecks) {
  const Hypergraph h = make(3, {{0, 1, 2}});
  const BalanceSpec spec = BalanceSpec::uniform(Rational(1));
  EXPECT_FALSE(is_balanced(h, {0, 0}, 2, spec));     // wrong length
  EXPECT_FALSE(is_balanced(h, {0, 2, 0}, 2, spec));  // label out of range
}

TEST(Canonical, FirstOccurrenceRelabeling) {
  EXPECT_EQ(canonical_partition({2, 0, 2, 1}), (Partition{0, 1, 0, 2}));
  EXPECT_EQ(canonical_partition({}), Partition{});
  EXPECT_EQ(canonical_partition({5, 5, 5}), (Partition{0, 0, 0}));
}

TEST(Reshaping, BisectionPadding) {
  const Hypergraph h = make(5, {{0, 1, 2}});
  const BisectionInstance bi = to_bisection_instance(h, 2, Rational(1, 4));
  // floor(1.25 * 5 / 2) = 3 per part; 2 * 3 = 6 nodes, so one pad node.
  EXPECT_EQ(bi.part_capacity, 3);
  EXPECT_EQ(bi.padded_nodes, 1);
  EXPECT_EQ(bi.h.num_nodes, 6);
  EXPECT_EQ(bi.h.num_edges(), h.num_edges());
  EXPECT_THROW(to_bisection_instance(make(3, {{0, 1}}), 2, Rational(0)),
               std::invalid_argument);
}

TEST(Reshaping, MergeSmallestParts) {
  const Hypergraph h = make(6, {{0, 1}});
  // Parts sizes 3, 2, 1 under eps = 1: capacity floor(2*6/3) = 4.
  const Partition p = {0, 0, 0, 1, 1, 2};
  const Partition merged =
      merge_smallest_parts(h, p, 3, Rational(1), Rounding::kStrictFloor);
  EXPECT_EQ(merged, (Partition{0, 0, 0, 1, 1, 1}));
  // Merging the halves of a tight bisection violates balance.
  EXPECT_THROW(merge_smallest_parts(h, {0, 0, 0, 1, 1, 1}, 2, Rational(0),
                                    Rounding::kStrictFloor),
               std::runtime_error);
}

TEST(Reshaping, NonemptyPartBounds) {
  const NonemptyPartBounds tight = nonempty_part_bounds(4, Rational(0));
  EXPECT_EQ(tight.max_nonempty, 4);
  EXPECT_TRUE(tight.all_parts_needed);  // eps 0 < 1/3
  const NonemptyPartBounds loose = nonempty_part_bounds(4, Rational(1));
  EXPECT_EQ(loose.max_nonempty, 3);  // < 8/2 = 4
  EXPECT_FALSE(loose.all_parts_needed);
}

// --- file formats ------------------------------------------------------------

TEST(Io, HypergraphRoundTrip) {
  const Hypergraph h = make(4, {{0, 1, 2}, {2, 3}}, {3, 1});
  std::ostringstream out;
  emit_hypergraph(out, h);
  std::istringstream in(out.str());
  const Hypergraph back = parse_hypergraph(in);
  EXPECT_EQ(back.num_nodes, h.num_nodes);
  EXPECT_EQ(back.edges, h.edges);
  EXPECT_EQ(back.weights, h.weights);
}

TEST(Io, HypergraphFormatDetails) {
  std::istringstream in(
      "% comment line\n"
      "2 3 1\n"
      "4 1 2 2\n"   // weight 4, pins {1,2} with a duplicate
      "1 2 3\n");
  const Hypergraph h = parse_hypergraph(in);
  EXPECT_EQ(h.num_nodes, 3);
  EXPECT_EQ(h.edges[0], (std::vector<NodeId>{0, 1}));
  EXPECT_EQ(h.weights[0], 4);

  std::istringstream unit("1 2\n1 2\n");
  EXPECT_EQ(parse_hypergraph(unit).weights[0], 1);

  std::istringstream dup("2 2\n1 2\n2 1\n");
  const Hypergraph agg = parse_hypergraph(dup);
  EXPECT_EQ(agg.num_edges(), 1);  // identical pin sets aggregate
  EXPECT_EQ(agg.weights[0], 2);

  std::istringstream bad("1 2\n1 7\n");
  EXPECT_THROW(parse_hypergraph(bad), ParseError);
  std::istringstream empty("");
  EXPECT_THROW(parse_hypergraph(empty), ParseError);
}

TEST(Io, PartitionLayeringRoundTrip) {
  const Partition p = {0, 2, 1, 1};
  std::ostringstream out;
  emit_partition(out, p);
  EXPECT_EQ(out.str(), "1\n3\n2\n2\n");
  std::istringstream in(out.str());
  EXPECT_EQ(parse_partition(in), p);

  Layering l;
  l.layer_of = {0, 1, 0};
  l.num_layers = 2;
  std::ostringstream lout;
  emit_layering(lout, l);
  std::istringstream lin(lout.str());
  const Layering lback = parse_layering(lin);
  EXPECT_EQ(lback.layer_of, l.layer_of);
  EXPECT_EQ(lback.num_layers, l.num_layers);
}

TEST(Io, BalanceSpecRoundTrip) {
  BalanceSpec spec;
  spec.constraints.push_back(
      BalanceConstraint{Rational(1, 4), Rounding::kStrictFloor, {0, 2}});
  spec.constraints.push_back(
      BalanceConstraint{Rational(0), Rounding::kRelaxedCeil, {}});
  std::ostringstream out;
  emit_balance_spec(out, spec);
  std::istringstream in(out.str());
  const BalanceSpec back = parse_balance_spec(in);
  ASSERT_EQ(back.constraints.size(), 2u);
  EXPECT_EQ(back.constraints[0].eps, Rational(1, 4));
  EXPECT_EQ(back.constraints[0].mode, Rounding::kStrictFloor);
  EXPECT_EQ(back.constraints[0].nodes, (std::vector<NodeId>{0, 2}));
  EXPECT_EQ(back.constraints[1].mode, Rounding::kRelaxedCeil);
  EXPECT_TRUE(back.constraints[1].nodes.empty());
}

TEST(Io, MetaRoundTrip) {
  const std::map<std::string, std::string> meta = {{"alpha", "1"},
                                                   {"beta", "x/y"}};
  std::ostringstream out;
  emit_meta(out, meta);
  std::istringstream in(out.str());
  EXPECT_EQ(parse_meta(in), meta);
}

}  // namespace
}  // namespace hypart
