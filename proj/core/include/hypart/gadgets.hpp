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
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hypart/dag.hpp"
#include "hypart/hierarchy.hpp"
#include "hypart/hypergraph.hpp"
#include "hypart/rational.hpp"

namespace hypart {

// A plain undirected simple graph, used as the source object of several
// instance generators (coloring, vertex covers, cliques).  Edges are stored
// with u < v; normalize_and_validate() sorts, deduplicates and range-checks.
struct SimpleGraph {
  int num_nodes = 0;
  std::vector<std::pair<NodeId, NodeId>> edges;

  int num_edges() const { return static_cast<int>(edges.size()); }
  void normalize_and_validate();
  std::vector<std::vector<NodeId>> incident_edges() const;  // per node
};

// A generated instance bundle.  Every generator returns the hypergraph plus
// whatever side artifacts give the instance meaning: balance constraints, a
// DAG (for scheduling instances), a planted partition, and a string map of
// certificate values (claimed optima, construction parameters, node ranges)
// that verification suites recompute independently.
struct GadgetInstance {
  Hypergraph h;
  BalanceSpec spec;
  std::optional<Dag> dag;
  std::optional<Partition> partition;
  std::map<std::string, std::string> meta;
};

// ---------------------------------------------------------------------------
// Raw fragments
// ---------------------------------------------------------------------------

// Block gadget on b >= 2 nodes: b hyperedges, each containing all nodes but
// one.  Any 2-part split of the block cuts at least b - 1 of its edges, while
// keeping it whole cuts none, so blocks act as rigid "atoms".
Hypergraph block_gadget(std::int64_t b);

// Grid gadget: an ell x ell node array with one hyperedge per row and one per
// column (2*ell edges, each of ell pins).  Splitting t0 nodes off the grid
// costs at least sqrt(t0) cut edges.
struct GridGadget {
  Hypergraph h;
  std::int64_t side = 0;            // ell
  std::vector<NodeId> outsiders;    // attached non-core nodes, if any
};
GridGadget grid_gadget(std::int64_t ell);

// Extended grid: ell x ell core plus ell0 <= ell outsider nodes; outsider i
// is appended to the row-i edge.  Outsiders have degree 1 within the gadget.
GridGadget extended_grid_gadget(std::int64_t ell, std::int64_t ell0);

// Padded grid of exactly `total` >= 4 nodes: an ell x ell core for
// ell = floor(sqrt(total)) plus r = total - ell^2 <= 2*ell outsiders appended
// first to distinct rows, then to distinct columns.
GridGadget padded_grid_gadget(std::int64_t total);

// ---------------------------------------------------------------------------
// Cardinality enforcement on a designated node set (k = 2)
// ---------------------------------------------------------------------------

enum class EnforceMode { kAtMost, kAtLeast, kExact };

// Counts describing an edge-free enforcement gadget: a balance constraint
// over S (the designated set, |S| = set_size), `pads` free padding nodes,
// and fixed pools of fixed_red / fixed_blue pre-colored nodes is satisfiable
// exactly when the number of part-0 ("red") nodes in S is <= h, >= h or == h
// according to `mode`.  `total` is the full constrained-set size and
// `exact_target` the red total the padded set must hit (ignored when pads
// and fixed pools handle the mode arithmetically, i.e. eps > 0).
struct EnforceCounts {
  std::int64_t set_size = 0;
  std::int64_t h = 0;
  EnforceMode mode = EnforceMode::kAtMost;
  Rational eps;
  std::int64_t pads = 0;
  std::int64_t fixed_red = 0;
  std::int64_t fixed_blue = 0;
  std::int64_t total = 0;         // set_size + pads + fixed_red + fixed_blue
  std::int64_t exact_target = -1; // red count forced on S + pads (eps == 0)
};

// Computes the gadget counts for "the number of red nodes in S is
// {at most, at least, exactly} h" under a (1 + eps) balance cap with strict
// floor rounding and k = 2 parts.  Requires 0 <= h <= size_s, eps in [0, 1),
// and mode == kExact only with eps == 0.  Throws std::invalid_argument on
// unsupported combinations.
EnforceCounts enforce_set(std::int64_t size_s, std::int64_t h,
                          const Rational& eps, int k, EnforceMode mode);

// True when a coloring with `reds_in_s` red nodes in S and `reds_in_pads`
// red pads satisfies the single balance constraint of the gadget.
bool enforce_set_satisfied(const EnforceCounts& c, std::int64_t reds_in_s,
                           std::int64_t reds_in_pads);

// True when `reds_in_s` red nodes in S is allowed by the mode (<=, >=, == h).
bool enforce_mode_allows(const EnforceCounts& c, std::int64_t reds_in_s);

// Materializes the counts as a standalone instance: an edge-free hypergraph
// whose single balance constraint covers S, the pads and both fixed pools.
// Node layout: S = [0, set_size), pads, fixed red pool, fixed blue pool; the
// meta map records the ranges.  The planted partition colors the pools and
// a mode-compliant choice on S.
GadgetInstance enforce_instance(const EnforceCounts& c);

// Variant for sets of variable size: S is all-red by construction and the
// gadget constrains |S| itself.  fixed_red nodes join S's part, fixed_blue
// the other; satisfiable iff |S| {<=, >=, ==} h.  For kAtLeast with eps > 0
// an a-priori upper bound h0 >= h on |S| must be supplied (pass h0 = h for
// the others if no tighter bound is known; it is used only for self-checks).
struct EnforceVariableCounts {
  std::int64_t h = 0;
  std::int64_t h0 = 0;
  EnforceMode mode = EnforceMode::kAtMost;
  Rational eps;
  std::int64_t fixed_red = 0;   // m1: nodes added to S's part
  std::int64_t fixed_blue = 0;  // m2: nodes of the opposite part
};
EnforceVariableCounts enforce_variable_set(std::int64_t h, std::int64_t h0,
                                           const Rational& eps, int k,
                                           EnforceMode mode);
bool enforce_variable_satisfied(const EnforceVariableCounts& c,
                                std::int64_t size_s);
bool enforce_variable_mode_allows(const EnforceVariableCounts& c,
                                  std::int64_t size_s);

// ---------------------------------------------------------------------------
// Fixed opposite-color blocks (k = 2)
// ---------------------------------------------------------------------------

// Two blocks of m0 >= 2 nodes, each covered by one spanning hyperedge, with a
// joint balance constraint over their union.  For eps < 1 a zero-cost
// balanced partition must color the blocks monochromatically and oppositely,
// pinning one block per part.  eps >= 1 is rejected: the joint cap would
// admit a monochromatic union and the certificate would be void.
GadgetInstance fixed_color_blocks(std::int64_t m0, const Rational& eps, int k);

// ---------------------------------------------------------------------------
// Hardness reductions
// ---------------------------------------------------------------------------

// Smallest p-edge-selection reduction: the bisection optimum of the output
// equals the minimum number of nodes covered by p edges of g.  kGeneral uses
// block gadgets and a single weight-m anchor edge per node; kDegree2 builds
// the bounded-degree variant from grid gadgets (every output node has degree
// at most 2 and the edge set is 2-colorable so that no node sees the same
// class twice).  Requires k == 2 and 1 <= p <= |E(g)|.
enum class SpesVariant { kGeneral, kDegree2 };
GadgetInstance spes_reduction(const SimpleGraph& g, std::int64_t p,
                              const Rational& eps, int k, SpesVariant variant);

// Orthogonal-vectors reduction over m >= 2 binary vectors of dimension
// D >= 1: the multi-constraint optimum is 0 iff some pair of vectors is
// orthogonal.  Uses eps = 1/4 throughout.
GadgetInstance ovp_reduction(const std::vector<std::vector<int>>& vectors);

// Graph 3-coloring reduction: the multi-constraint optimum is 0 iff g is
// 3-colorable.  Uses eps = 1/4 throughout; the constraint count is
// 1 + 2 |V(g)| + 3 |E(g)|.
GadgetInstance coloring_reduction(const SimpleGraph& g);

// Rewrites a multi-constraint k-section instance (every constraint eps = 0)
// into a single-constraint k-section instance with the same optimum, by
// padding with isolated nodes and inflating constrained nodes into block
// gadgets of geometrically growing sizes.  Desk-scale only: throws
// std::invalid_argument when the block sizes would explode or when the
// total edge weight is too large for simple block inflation.
GadgetInstance multiconstraint_to_ksection(const Hypergraph& h,
                                           const BalanceSpec& spec, int k);

// Lifts an arbitrary instance (h, eps, k) to a communication hyperDAG with
// the same partitioning structure: every node becomes a densest-hyperDAG
// block of m nodes, every edge is re-targeted to block sinks plus one fresh
// light node.  Requires eps > 0 and m * eps * |V| > (k - 1) * |E|; the
// output instance uses the adjusted eps' = k*T'/n' - 1 > 0.
GadgetInstance hyperdag_np_instance(const Hypergraph& h, const Rational& eps,
                                    int k, std::int64_t m);

// Instance family (n divisible by 12, n >= 24) on which recursive bisection
// is forced to pay ~n/12 while a direct 4-way partition pays 5: three large
// chained blocks plus one chain of six small blocks.  The planted partition
// realizes the direct optimum.
GadgetInstance recursive_counterexample(std::int64_t n);

// Instance family on which the two-step method (flat connectivity optimum,
// then optimal leaf assignment) is worse than the true hierarchical optimum
// by a factor ~g1/2.  Requires topology.num_leaves() == k >= 3 and
// m >= g1 * k; strict_blocks additionally enlarges blocks so that splitting
// any of them is provably worse than every connector rearrangement.
GadgetInstance twostep_counterexample(int k, const HierTopology& topology,
                                      std::int64_t m,
                                      bool strict_blocks = false);

// ---------------------------------------------------------------------------
// Scheduling hardness instances (unit time, no communication delay)
// ---------------------------------------------------------------------------

// Chain family: a main path of 2*t*b nodes with alternating color periods
// plus one subpath of 2*a_i nodes per number.  Requires numbers.size() = 3t,
// sum = t*b and b/4 <= a_i <= b/2.  The optimal makespan is always 2*t*b;
// the planted 2-coloring admits a flawless (makespan-preserving, both parts
// busy every step) schedule iff the numbers can be split into t groups
// summing to b each.
GadgetInstance scheduling_hardness_paths(const std::vector<std::int64_t>& numbers,
                                         std::int64_t t, std::int64_t b);

// Bounded-height family: one blue source per graph node, one red sink per
// graph edge, plus a four-layer completion component sized by L.  Requires
// 2 <= L <= |V(g)| and C(L,2) <= |E(g)|.  The planted 2-coloring admits a
// flawless schedule of makespan |V| + |E| iff g contains a clique of size L.
GadgetInstance scheduling_hardness_bounded_height(const SimpleGraph& g, int L);

}  // namespace hypart
