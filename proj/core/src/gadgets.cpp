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

#include "hypart/gadgets.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>

#include "hypart/recognition.hpp"

namespace hypart {

namespace {

using i64 = std::int64_t;
using i128 = __int128;

int narrow_node_count(i64 n) {
  if (n < 0 || n > std::numeric_limits<int>::max())
    throw std::overflow_error("gadget: node count exceeds int range");
  return static_cast<int>(n);
}

i64 checked_mul(i64 a, i64 b) {
  i128 p = i128(a) * b;
  if (p > std::numeric_limits<i64>::max() || p < std::numeric_limits<i64>::min())
    throw std::overflow_error("gadget: 64-bit overflow in size computation");
  return static_cast<i64>(p);
}

// floor(a / b) for b > 0, any sign of a.
i64 floor_div(i64 a, i64 b) {
  i64 q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

// ceil(a / b) for b > 0.
i64 ceil_div_pos(i64 a, i64 b) { return -floor_div(-a, b); }

std::string join_i64(const std::vector<i64>& v) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ',';
    os << v[i];
  }
  return os.str();
}

// Balance cap floor((1 + eps) * total / 2) for a two-part constraint.
i64 cap2(const Rational& eps, i64 total) {
  BalanceConstraint c{eps, Rounding::kStrictFloor, {}};
  return c.capacity(total, 2);
}

void append_edge(Hypergraph& h, std::vector<NodeId> pins, Weight w = 1) {
  h.edges.push_back(std::move(pins));
  h.weights.push_back(w);
}

// Appends the b hyperedges of a block on [base, base + b): edge i contains
// every block node except base + i.
void append_block_edges(Hypergraph& h, i64 base, i64 b) {
  for (i64 i = 0; i < b; ++i) {
    std::vector<NodeId> pins;
    pins.reserve(static_cast<std::size_t>(b - 1));
    for (i64 j = 0; j < b; ++j)
      if (j != i) pins.push_back(static_cast<NodeId>(base + j));
    append_edge(h, std::move(pins));
  }
}

std::vector<NodeId> range_nodes(i64 begin, i64 count) {
  std::vector<NodeId> out;
  out.reserve(static_cast<std::size_t>(count));
  for (i64 i = 0; i < count; ++i) out.push_back(static_cast<NodeId>(begin + i));
  return out;
}

// Allocates pre-colored filler nodes out of two covered blocks.  Index 0 of
// each block is reserved for the block-pairing constraint, so chunks start
// at index 1.
struct PoolAllocator {
  i64 m0 = 0;
  i64 next_red = 1;   // cursor into block 1 = [0, m0)
  i64 next_blue = 1;  // cursor into block 2 = [m0, 2 m0)

  std::vector<NodeId> take_red(i64 count) {
    if (next_red + count > m0)
      throw std::logic_error("gadget: red filler pool exhausted");
    auto out = range_nodes(next_red, count);
    next_red += count;
    return out;
  }
  std::vector<NodeId> take_blue(i64 count) {
    if (next_blue + count > m0)
      throw std::logic_error("gadget: blue filler pool exhausted");
    auto out = range_nodes(m0 + next_blue, count);
    next_blue += count;
    return out;
  }
};

// Builds a constraint over `designated` plus filler chunks realizing the
// given enforcement counts (eps > 0 only: no pads).
BalanceConstraint filled_constraint(const EnforceCounts& c,
                                    std::vector<NodeId> designated,
                                    PoolAllocator& pool) {
  if (c.pads != 0)
    throw std::logic_error("gadget: padded enforcement inside a reduction");
  auto red = pool.take_red(c.fixed_red);
  auto blue = pool.take_blue(c.fixed_blue);
  designated.insert(designated.end(), red.begin(), red.end());
  designated.insert(designated.end(), blue.begin(), blue.end());
  std::sort(designated.begin(), designated.end());
  return BalanceConstraint{c.eps, Rounding::kStrictFloor,
                           std::move(designated)};
}

// Core of the eps > 0 "at most hh red in S" gadget: the smallest total size
// m with fixed pools of T - hh red and m - |S| - (T - hh) blue nodes, swept
// exhaustively so that the balance cap bites exactly above hh.
struct AtMostCore {
  i64 m = 0;
  i64 fixed_red = 0;
  i64 fixed_blue = 0;
};

AtMostCore build_atmost_core(i64 size_s, i64 hh, const Rational& eps) {
  // Starting point: m > 2 hh / eps and m > 2 (|S| - hh) / (1 - eps).
  i64 m = 1;
  m = std::max(m, (Rational(2 * hh) / eps).floor_scaled(1) + 1);
  m = std::max(m, (Rational(2 * (size_s - hh)) / (Rational(1) - eps))
                          .floor_scaled(1) + 1);
  for (i64 guard = 0; guard < 1000000; ++guard, ++m) {
    i64 t = cap2(eps, m);
    i64 fixed_red = t - hh;
    i64 fixed_blue = m - size_s - fixed_red;
    if (fixed_red < 0 || fixed_blue < 0) continue;
    bool ok = true;
    for (i64 x = 0; x <= size_s; ++x) {
      bool sat = fixed_red + x <= t && fixed_blue + (size_s - x) <= t;
      if (sat != (x <= hh)) {
        ok = false;
        break;
      }
    }
    if (ok) return {m, fixed_red, fixed_blue};
  }
  throw std::runtime_error("gadget: at-most enforcement did not stabilize");
}

// Core of the eps == 0 "exactly hh red in S'" gadget on an even total m with
// pools m/2 - hh red and m/2 - (|S'| - hh) blue.
struct ExactCore {
  i64 fixed_red = 0;
  i64 fixed_blue = 0;
};

ExactCore build_exact_core(i64 size_sp, i64 hh) {
  i64 m = 2 * (std::max(hh, size_sp - hh) + 1);
  for (i64 guard = 0; guard < 1000000; ++guard, m += 2) {
    i64 t = m / 2;
    i64 fixed_red = t - hh;
    i64 fixed_blue = t - (size_sp - hh);
    if (fixed_red < 0 || fixed_blue < 0) continue;
    bool ok = true;
    for (i64 x = 0; x <= size_sp; ++x) {
      bool sat = fixed_red + x <= t && fixed_blue + (size_sp - x) <= t;
      if (sat != (x == hh)) {
        ok = false;
        break;
      }
    }
    if (ok) return {fixed_red, fixed_blue};
  }
  throw std::runtime_error("gadget: exact enforcement did not stabilize");
}

std::string mode_name(EnforceMode m) {
  switch (m) {
    case EnforceMode::kAtMost: return "at_most";
    case EnforceMode::kAtLeast: return "at_least";
    case EnforceMode::kExact: return "exact";
  }
  return "?";
}

void require_two_parts(int k, const char* what) {
  if (k != 2)
    throw std::invalid_argument(std::string(what) +
                                " is defined for k = 2 only");
}

void require_eps_below_one(const Rational& eps, const char* what) {
  if (eps < Rational(0) || eps >= Rational(1))
    throw std::invalid_argument(std::string(what) +
                                " requires eps in [0, 1)");
}

}  // namespace

// ---------------------------------------------------------------------------
// SimpleGraph
// ---------------------------------------------------------------------------

void SimpleGraph::normalize_and_validate() {
  if (num_nodes < 0)
    throw std::invalid_argument("graph: negative node count");
  for (auto& [u, v] : edges) {
    if (u < 0 || v < 0 || u >= num_nodes || v >= num_nodes)
      throw std::invalid_argument("graph: edge endpoint out of range");
    if (u == v) throw std::invalid_argument("graph: self-loop");
    if (u > v) std::swap(u, v);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
}

std::vector<std::vector<NodeId>> SimpleGraph::incident_edges() const {
  std::vector<std::vector<NodeId>> inc(static_cast<std::size_t>(num_nodes));
  for (std::size_t e = 0; e < edges.size(); ++e) {
    inc[static_cast<std::size_t>(edges[e].first)].push_back(
        static_cast<NodeId>(e));
    inc[static_cast<std::size_t>(edges[e].second)].push_back(
        static_cast<NodeId>(e));
  }
  return inc;
}

// ---------------------------------------------------------------------------
// Raw fragments
// ---------------------------------------------------------------------------

Hypergraph block_gadget(i64 b) {
  if (b < 2) throw std::invalid_argument("block gadget needs b >= 2");
  Hypergraph h;
  h.num_nodes = narrow_node_count(b);
  append_block_edges(h, 0, b);
  h.normalize_and_validate();
  return h;
}

namespace {

GridGadget build_grid(i64 ell, i64 row_outsiders, i64 col_outsiders) {
  if (ell < 2) throw std::invalid_argument("grid gadget needs ell >= 2");
  if (row_outsiders < 0 || row_outsiders > ell || col_outsiders < 0 ||
      col_outsiders > ell)
    throw std::invalid_argument("grid gadget: outsider count out of range");
  GridGadget g;
  g.side = ell;
  i64 core = ell * ell;
  g.h.num_nodes = narrow_node_count(core + row_outsiders + col_outsiders);
  for (i64 r = 0; r < ell; ++r) {
    auto pins = range_nodes(r * ell, ell);  // row-major core
    if (r < row_outsiders) pins.push_back(static_cast<NodeId>(core + r));
    append_edge(g.h, std::move(pins));
  }
  for (i64 c = 0; c < ell; ++c) {
    std::vector<NodeId> pins;
    for (i64 r = 0; r < ell; ++r)
      pins.push_back(static_cast<NodeId>(r * ell + c));
    if (c < col_outsiders)
      pins.push_back(static_cast<NodeId>(core + row_outsiders + c));
    append_edge(g.h, std::move(pins));
  }
  g.outsiders = range_nodes(core, row_outsiders + col_outsiders);
  g.h.normalize_and_validate();
  return g;
}

}  // namespace

GridGadget grid_gadget(i64 ell) { return build_grid(ell, 0, 0); }

GridGadget extended_grid_gadget(i64 ell, i64 ell0) {
  return build_grid(ell, ell0, 0);
}

GridGadget padded_grid_gadget(i64 total) {
  if (total < 4) throw std::invalid_argument("padded grid needs total >= 4");
  i64 ell = static_cast<i64>(std::sqrt(static_cast<double>(total)));
  while (ell * ell > total) --ell;
  while ((ell + 1) * (ell + 1) <= total) ++ell;
  i64 r = total - ell * ell;
  if (r > 2 * ell)
    throw std::logic_error("padded grid: residue exceeds 2 * ell");
  return build_grid(ell, std::min(r, ell), std::max<i64>(0, r - ell));
}

// ---------------------------------------------------------------------------
// Cardinality enforcement
// ---------------------------------------------------------------------------

EnforceCounts enforce_set(i64 size_s, i64 h, const Rational& eps, int k,
                          EnforceMode mode) {
  require_two_parts(k, "cardinality enforcement");
  require_eps_below_one(eps, "cardinality enforcement");
  if (size_s < 1)
    throw std::invalid_argument("enforcement: designated set must be nonempty");
  if (h < 0 || h > size_s)
    throw std::invalid_argument("enforcement: h out of [0, |S|]");

  EnforceCounts c;
  c.set_size = size_s;
  c.h = h;
  c.mode = mode;
  c.eps = eps;

  if (eps > Rational(0)) {
    if (mode == EnforceMode::kExact)
      throw std::invalid_argument(
          "exact enforcement requires eps = 0 (a strict cap with slack "
          "cannot pin an exact count)");
    if (mode == EnforceMode::kAtMost) {
      AtMostCore core = build_atmost_core(size_s, h, eps);
      c.fixed_red = core.fixed_red;
      c.fixed_blue = core.fixed_blue;
    } else {
      // At least h red == at most (|S| - h) blue; swap the pool roles.
      AtMostCore core = build_atmost_core(size_s, size_s - h, eps);
      c.fixed_red = core.fixed_blue;
      c.fixed_blue = core.fixed_red;
    }
    c.pads = 0;
    c.exact_target = -1;
    c.total = size_s + c.fixed_red + c.fixed_blue;
  } else {
    i64 pads = 0;
    i64 target = h;
    switch (mode) {
      case EnforceMode::kExact: pads = 0; target = h; break;
      case EnforceMode::kAtMost: pads = h; target = h; break;
      case EnforceMode::kAtLeast: pads = size_s - h; target = size_s; break;
    }
    ExactCore core = build_exact_core(size_s + pads, target);
    c.pads = pads;
    c.exact_target = target;
    c.fixed_red = core.fixed_red;
    c.fixed_blue = core.fixed_blue;
    c.total = size_s + pads + c.fixed_red + c.fixed_blue;
  }

  // Exhaustive self-check over the designated set: some pad completion
  // satisfies the cap exactly for the mode-allowed red counts.
  for (i64 x = 0; x <= size_s; ++x) {
    bool reachable = false;
    for (i64 y = 0; y <= c.pads && !reachable; ++y)
      reachable = enforce_set_satisfied(c, x, y);
    if (reachable != enforce_mode_allows(c, x))
      throw std::runtime_error("enforcement: internal certificate failed");
  }
  return c;
}

bool enforce_set_satisfied(const EnforceCounts& c, i64 reds_in_s,
                           i64 reds_in_pads) {
  if (reds_in_s < 0 || reds_in_s > c.set_size || reds_in_pads < 0 ||
      reds_in_pads > c.pads)
    throw std::invalid_argument("enforcement: red counts out of range");
  i64 red = c.fixed_red + reds_in_s + reds_in_pads;
  i64 blue = c.fixed_blue + (c.set_size - reds_in_s) + (c.pads - reds_in_pads);
  i64 t = cap2(c.eps, c.total);
  return red <= t && blue <= t;
}

bool enforce_mode_allows(const EnforceCounts& c, i64 reds_in_s) {
  switch (c.mode) {
    case EnforceMode::kAtMost: return reds_in_s <= c.h;
    case EnforceMode::kAtLeast: return reds_in_s >= c.h;
    case EnforceMode::kExact: return reds_in_s == c.h;
  }
  return false;
}

GadgetInstance enforce_instance(const EnforceCounts& c) {
  GadgetInstance out;
  out.h.num_nodes = narrow_node_count(c.total);
  out.h.normalize_and_validate();
  out.spec.constraints.push_back(
      BalanceConstraint{c.eps, Rounding::kStrictFloor, {}});
  out.spec.validate(out.h.num_nodes);

  // Planted coloring: x = h red in S (allowed in every mode) plus the pad
  // completion that reaches the exact target when one is in force.
  i64 y = c.exact_target >= 0 ? c.exact_target - c.h : 0;
  Partition p(static_cast<std::size_t>(c.total), 1);
  for (i64 i = 0; i < c.h; ++i) p[static_cast<std::size_t>(i)] = 0;
  for (i64 i = 0; i < y; ++i) p[static_cast<std::size_t>(c.set_size + i)] = 0;
  for (i64 i = 0; i < c.fixed_red; ++i)
    p[static_cast<std::size_t>(c.set_size + c.pads + i)] = 0;
  out.partition = std::move(p);

  i64 set_end = c.set_size;
  i64 pad_end = set_end + c.pads;
  i64 red_end = pad_end + c.fixed_red;
  out.meta["certificate"] = "balanced_iff_count_allowed";
  out.meta["mode"] = mode_name(c.mode);
  out.meta["h"] = std::to_string(c.h);
  out.meta["eps"] = c.eps.to_string();
  out.meta["set_begin"] = "0";
  out.meta["set_end"] = std::to_string(set_end);
  out.meta["pad_begin"] = std::to_string(set_end);
  out.meta["pad_end"] = std::to_string(pad_end);
  out.meta["red_pool_begin"] = std::to_string(pad_end);
  out.meta["red_pool_end"] = std::to_string(red_end);
  out.meta["blue_pool_begin"] = std::to_string(red_end);
  out.meta["blue_pool_end"] = std::to_string(c.total);
  return out;
}

EnforceVariableCounts enforce_variable_set(i64 h, i64 h0, const Rational& eps,
                                           int k, EnforceMode mode) {
  require_two_parts(k, "variable-set enforcement");
  require_eps_below_one(eps, "variable-set enforcement");
  if (h < 0) throw std::invalid_argument("variable-set enforcement: h < 0");
  if (h0 < h)
    throw std::invalid_argument("variable-set enforcement: h0 must be >= h");

  EnforceVariableCounts c;
  c.h = h;
  c.h0 = h0;
  c.mode = mode;
  c.eps = eps;

  i64 sweep_to = std::max(h0, h + 2);
  if (eps > Rational(0)) {
    i64 p = eps.num();
    i64 q = eps.den();
    if (mode == EnforceMode::kExact)
      throw std::invalid_argument(
          "exact variable-set enforcement requires eps = 0");
    if (mode == EnforceMode::kAtMost) {
      // Smallest m with 2(m + h) <= (1 + eps)(2m + h), then the largest m1
      // with 2(m1 + h) <= (1 + eps)(m + m1 + h).
      i64 m = std::max<i64>(1, ceil_div_pos(checked_mul(h, q - p), 2 * p));
      i64 m1 = floor_div(checked_mul(q + p, m + h) - checked_mul(2 * q, h),
                         q - p);
      if (m1 < m) throw std::runtime_error("variable-set: m1 below m");
      c.fixed_red = m1;
      c.fixed_blue = m;
    } else {  // kAtLeast
      for (i64 attempt = 0, m = std::max(h, h0) + 1; attempt < 10000;
           ++attempt, ++m) {
        i64 m2 = std::max(m, floor_div(checked_mul(q + p, h), q - p) + 1);
        if (m2 > floor_div(checked_mul(q + p, m), q - p)) continue;
        i64 mprime = ceil_div_pos(checked_mul(m2, q - p), q + p);
        if (!(h < mprime && mprime <= m)) continue;
        c.fixed_red = mprime - h;
        c.fixed_blue = m2;
        bool ok = true;
        for (i64 x = 0; x <= sweep_to && ok; ++x)
          ok = enforce_variable_satisfied(c, x) ==
               enforce_variable_mode_allows(c, x);
        if (ok) break;
        c.fixed_red = c.fixed_blue = 0;
      }
      if (c.fixed_blue == 0)
        throw std::runtime_error("variable-set: at-least did not stabilize");
    }
  } else {
    if (mode != EnforceMode::kExact)
      throw std::invalid_argument(
          "variable-set at-most/at-least enforcement requires eps > 0; "
          "with eps = 0 only the exact mode is expressible");
    c.fixed_red = 1;
    c.fixed_blue = h + 1;
  }

  for (i64 x = 0; x <= sweep_to; ++x) {
    if (enforce_variable_satisfied(c, x) !=
        enforce_variable_mode_allows(c, x))
      throw std::runtime_error("variable-set: internal certificate failed");
  }
  return c;
}

bool enforce_variable_satisfied(const EnforceVariableCounts& c, i64 size_s) {
  if (size_s < 0)
    throw std::invalid_argument("variable-set enforcement: negative size");
  i64 total = size_s + c.fixed_red + c.fixed_blue;
  i64 t = cap2(c.eps, total);
  return c.fixed_red + size_s <= t && c.fixed_blue <= t;
}

bool enforce_variable_mode_allows(const EnforceVariableCounts& c, i64 size_s) {
  switch (c.mode) {
    case EnforceMode::kAtMost: return size_s <= c.h;
    case EnforceMode::kAtLeast: return size_s >= c.h;
    case EnforceMode::kExact: return size_s == c.h;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Fixed opposite-color blocks
// ---------------------------------------------------------------------------

GadgetInstance fixed_color_blocks(i64 m0, const Rational& eps, int k) {
  require_two_parts(k, "fixed-color blocks");
  if (m0 < 2) throw std::invalid_argument("fixed-color blocks need m0 >= 2");
  if (eps < Rational(0) || eps >= Rational(1))
    throw std::invalid_argument(
        "fixed-color blocks require eps in [0, 1): at eps >= 1 the joint "
        "cap admits a monochromatic union and the gadget proves nothing");

  GadgetInstance out;
  out.h.num_nodes = narrow_node_count(2 * m0);
  append_edge(out.h, range_nodes(0, m0));
  append_edge(out.h, range_nodes(m0, m0));
  out.h.normalize_and_validate();
  out.spec = BalanceSpec::uniform(eps);
  out.spec.validate(out.h.num_nodes);

  Partition p(static_cast<std::size_t>(2 * m0), 1);
  for (i64 i = 0; i < m0; ++i) p[static_cast<std::size_t>(i)] = 0;
  out.partition = std::move(p);

  out.meta["certificate"] = "zero_cost_iff_blocks_opposite";
  out.meta["m0"] = std::to_string(m0);
  out.meta["eps"] = eps.to_string();
  out.meta["block1_begin"] = "0";
  out.meta["block1_end"] = std::to_string(m0);
  out.meta["block2_begin"] = std::to_string(m0);
  out.meta["block2_end"] = std::to_string(2 * m0);
  return out;
}

// ---------------------------------------------------------------------------
// Smallest p-edge selection
// ---------------------------------------------------------------------------

namespace {

GadgetInstance spes_general(const SimpleGraph& g, i64 p, const Rational& eps) {
  i64 n = g.num_nodes;
  i64 e_cnt = g.num_edges();
  i64 m = n + 1;
  if (m < 2) m = 2;
  i64 s = e_cnt * m + n;

  // n' must make T_red = (1 - eps) n' / 2 integral with s < T_red and both
  // anchor blocks of size >= 3.
  i64 q = eps.den();
  i64 pn = eps.num();
  i64 n_prime = 0, t_red = 0, size_a = 0, size_a_prime = 0;
  for (i64 cand = 2 * s + 2;; ++cand) {
    if (cand > 100000000)
      throw std::invalid_argument("edge-selection gadget: size out of range");
    i128 num = i128(cand) * (q - pn);
    if (num % (2 * q) != 0) continue;
    i64 tr = static_cast<i64>(num / (2 * q));
    if (tr <= s) continue;
    i64 ap = tr - p * m;
    if (ap < 3) continue;
    i64 a = cand - s - ap;
    if (a < 3) continue;
    n_prime = cand;
    t_red = tr;
    size_a = a;
    size_a_prime = ap;
    break;
  }

  GadgetInstance out;
  out.h.num_nodes = narrow_node_count(n_prime);
  i64 base_a = 0;
  i64 base_ap = size_a;
  i64 base_blocks = base_ap + size_a_prime;
  i64 base_bv = base_blocks + e_cnt * m;

  append_block_edges(out.h, base_a, size_a);
  append_block_edges(out.h, base_ap, size_a_prime);
  for (i64 e = 0; e < e_cnt; ++e)
    append_block_edges(out.h, base_blocks + e * m, m);

  auto inc = g.incident_edges();
  for (i64 v = 0; v < n; ++v) {
    // Main edge: b_v plus the designated node of each incident edge block
    // (slot 0 for the smaller endpoint, slot 1 for the larger).
    std::vector<NodeId> pins;
    pins.push_back(static_cast<NodeId>(base_bv + v));
    for (NodeId e : inc[static_cast<std::size_t>(v)]) {
      i64 slot = g.edges[static_cast<std::size_t>(e)].first == v ? 0 : 1;
      pins.push_back(static_cast<NodeId>(base_blocks + i64(e) * m + slot));
    }
    append_edge(out.h, std::move(pins));
    // Anchor: one edge of weight m tying b_v to A (aggregate of m parallel
    // two-pin edges).
    append_edge(out.h,
                {static_cast<NodeId>(base_a + (v % size_a)),
                 static_cast<NodeId>(base_bv + v)},
                static_cast<Weight>(m));
  }
  out.h.normalize_and_validate();
  out.spec = BalanceSpec::uniform(eps);
  out.spec.validate(out.h.num_nodes);

  // Feasible witness (an upper bound, not the claimed optimum): color A'
  // and the blocks of the p lexicographically first edges red.
  Partition part(static_cast<std::size_t>(n_prime), 0);
  for (i64 i = 0; i < size_a_prime; ++i)
    part[static_cast<std::size_t>(base_ap + i)] = 1;
  for (i64 e = 0; e < p; ++e)
    for (i64 i = 0; i < m; ++i)
      part[static_cast<std::size_t>(base_blocks + e * m + i)] = 1;
  out.partition = std::move(part);

  out.meta["certificate"] = "bisection_optimum_equals_min_covered_nodes";
  out.meta["variant"] = "general";
  out.meta["p"] = std::to_string(p);
  out.meta["m"] = std::to_string(m);
  out.meta["eps"] = eps.to_string();
  out.meta["n_prime"] = std::to_string(n_prime);
  out.meta["t_red"] = std::to_string(t_red);
  out.meta["size_a"] = std::to_string(size_a);
  out.meta["size_a_prime"] = std::to_string(size_a_prime);
  out.meta["blocks_begin"] = std::to_string(base_blocks);
  out.meta["node_nodes_begin"] = std::to_string(base_bv);
  return out;
}

GadgetInstance spes_degree2(const SimpleGraph& g, i64 p, const Rational& eps) {
  i64 n = g.num_nodes;
  i64 e_cnt = g.num_edges();
  i64 ell = 2 * n;
  i64 unit = ell * ell + 2;  // grid core plus the two endpoint outsiders
  i64 s = e_cnt * unit + n;

  BalanceConstraint whole{eps, Rounding::kStrictFloor, {}};
  i64 n_prime = 0, ell_a = 0, size_a_prime = 0, cap = 0;
  for (i64 cand = 2 * s + 2;; ++cand) {
    if (cand > 100000000)
      throw std::invalid_argument("edge-selection gadget: size out of range");
    i64 c = whole.capacity(cand, 2);
    if (2 * c < cand) continue;  // a balanced 2-partition must exist
    i64 la2 = c - (e_cnt - p) * unit - n;
    if (la2 < 4) continue;
    i64 la = static_cast<i64>(std::sqrt(static_cast<double>(la2)));
    while (la * la > la2) --la;
    while ((la + 1) * (la + 1) <= la2) ++la;
    if (la * la != la2) continue;
    if (la < n) continue;  // every b_v needs its own row
    i64 ap = cand - la2 - s;
    if (ap < 4) continue;
    n_prime = cand;
    ell_a = la;
    size_a_prime = ap;
    cap = c;
    break;
  }

  GadgetInstance out;
  out.h.num_nodes = narrow_node_count(n_prime);
  i64 base_blocks = 0;                      // e_cnt units of (core + 2)
  i64 base_bv = base_blocks + e_cnt * unit; // n node-representatives
  i64 base_a = base_bv + n;                 // ell_a x ell_a core
  i64 base_ap = base_a + ell_a * ell_a;     // padded grid for A'

  // Edge blocks: extended grids with one outsider per endpoint (rows 0/1).
  for (i64 e = 0; e < e_cnt; ++e) {
    i64 core = base_blocks + e * unit;
    i64 out_u = core + ell * ell;
    i64 out_v = out_u + 1;
    for (i64 r = 0; r < ell; ++r) {
      auto pins = range_nodes(core + r * ell, ell);
      if (r == 0) pins.push_back(static_cast<NodeId>(out_u));
      if (r == 1) pins.push_back(static_cast<NodeId>(out_v));
      append_edge(out.h, std::move(pins));
    }
    for (i64 c = 0; c < ell; ++c) {
      std::vector<NodeId> pins;
      for (i64 r = 0; r < ell; ++r)
        pins.push_back(static_cast<NodeId>(core + r * ell + c));
      append_edge(out.h, std::move(pins));
    }
  }

  // A: rows carry the node representatives b_v as outsiders.
  for (i64 r = 0; r < ell_a; ++r) {
    auto pins = range_nodes(base_a + r * ell_a, ell_a);
    if (r < n) pins.push_back(static_cast<NodeId>(base_bv + r));
    append_edge(out.h, std::move(pins));
  }
  for (i64 c = 0; c < ell_a; ++c) {
    std::vector<NodeId> pins;
    for (i64 r = 0; r < ell_a; ++r)
      pins.push_back(static_cast<NodeId>(base_a + r * ell_a + c));
    append_edge(out.h, std::move(pins));
  }

  // A': a padded grid occupying exactly size_a_prime nodes.
  {
    i64 la = static_cast<i64>(std::sqrt(static_cast<double>(size_a_prime)));
    while (la * la > size_a_prime) --la;
    while ((la + 1) * (la + 1) <= size_a_prime) ++la;
    i64 r = size_a_prime - la * la;
    i64 row_out = std::min(r, la);
    i64 col_out = r - row_out;
    i64 core = base_ap;
    i64 outs = base_ap + la * la;
    for (i64 row = 0; row < la; ++row) {
      auto pins = range_nodes(core + row * la, la);
      if (row < row_out) pins.push_back(static_cast<NodeId>(outs + row));
      append_edge(out.h, std::move(pins));
    }
    for (i64 col = 0; col < la; ++col) {
      std::vector<NodeId> pins;
      for (i64 row = 0; row < la; ++row)
        pins.push_back(static_cast<NodeId>(core + row * la + col));
      if (col < col_out)
        pins.push_back(static_cast<NodeId>(outs + row_out + col));
      append_edge(out.h, std::move(pins));
    }
  }

  // Main edges: b_v plus the outsider representing v in each incident block.
  auto inc = g.incident_edges();
  for (i64 v = 0; v < n; ++v) {
    std::vector<NodeId> pins;
    pins.push_back(static_cast<NodeId>(base_bv + v));
    for (NodeId e : inc[static_cast<std::size_t>(v)]) {
      i64 slot = g.edges[static_cast<std::size_t>(e)].first == v ? 0 : 1;
      pins.push_back(
          static_cast<NodeId>(base_blocks + i64(e) * unit + ell * ell + slot));
    }
    append_edge(out.h, std::move(pins));
  }
  out.h.normalize_and_validate();
  out.spec = BalanceSpec::uniform(eps);
  out.spec.validate(out.h.num_nodes);

  // Planted balanced coloring: A' and p edge blocks red, rest blue.
  Partition part(static_cast<std::size_t>(n_prime), 0);
  for (i64 i = base_ap; i < n_prime; ++i) part[static_cast<std::size_t>(i)] = 1;
  for (i64 e = 0; e < p; ++e)
    for (i64 i = 0; i < unit; ++i)
      part[static_cast<std::size_t>(base_blocks + e * unit + i)] = 1;
  out.partition = std::move(part);

  out.meta["certificate"] = "degree2_structural";
  out.meta["variant"] = "degree2";
  out.meta["p"] = std::to_string(p);
  out.meta["eps"] = eps.to_string();
  out.meta["ell"] = std::to_string(ell);
  out.meta["unit"] = std::to_string(unit);
  out.meta["ell_a"] = std::to_string(ell_a);
  out.meta["n_prime"] = std::to_string(n_prime);
  out.meta["size_a_prime"] = std::to_string(size_a_prime);
  out.meta["cap"] = std::to_string(cap);
  out.meta["node_nodes_begin"] = std::to_string(base_bv);
  return out;
}

}  // namespace

GadgetInstance spes_reduction(const SimpleGraph& g_in, i64 p,
                              const Rational& eps, int k,
                              SpesVariant variant) {
  require_two_parts(k, "the edge-selection reduction");
  require_eps_below_one(eps, "the edge-selection reduction");
  SimpleGraph g = g_in;
  g.normalize_and_validate();
  if (g.num_nodes < 1)
    throw std::invalid_argument("edge-selection reduction: empty graph");
  if (p < 1 || p > g.num_edges())
    throw std::invalid_argument("edge-selection reduction: p out of [1, |E|]");
  return variant == SpesVariant::kGeneral ? spes_general(g, p, eps)
                                          : spes_degree2(g, p, eps);
}

// ---------------------------------------------------------------------------
// Orthogonal vectors
// ---------------------------------------------------------------------------

GadgetInstance ovp_reduction(const std::vector<std::vector<int>>& vectors) {
  i64 m = static_cast<i64>(vectors.size());
  if (m < 2)
    throw std::invalid_argument("orthogonal-vectors: need at least 2 vectors");
  i64 dim = static_cast<i64>(vectors[0].size());
  if (dim < 1)
    throw std::invalid_argument("orthogonal-vectors: dimension must be >= 1");
  for (const auto& v : vectors) {
    if (static_cast<i64>(v.size()) != dim)
      throw std::invalid_argument("orthogonal-vectors: ragged vector list");
    for (int b : v)
      if (b != 0 && b != 1)
        throw std::invalid_argument("orthogonal-vectors: entries must be 0/1");
  }

  const Rational eps(1, 4);
  EnforceCounts anchor = enforce_set(m, 2, eps, 2, EnforceMode::kAtLeast);
  EnforceCounts per_dim = enforce_set(m, 1, eps, 2, EnforceMode::kAtMost);
  i64 red_need = anchor.fixed_red + dim * per_dim.fixed_red;
  i64 blue_need = anchor.fixed_blue + dim * per_dim.fixed_blue;
  i64 m0 = 1 + std::max(red_need, blue_need);

  GadgetInstance out;
  i64 base_u = 2 * m0;
  i64 base_v = base_u + m;
  i64 total = base_v + m * dim;
  out.h.num_nodes = narrow_node_count(total);
  append_edge(out.h, range_nodes(0, m0));       // cover of the red block
  append_edge(out.h, range_nodes(m0, m0));      // cover of the blue block
  for (i64 i = 0; i < m; ++i) {
    std::vector<NodeId> pins;
    pins.push_back(static_cast<NodeId>(base_u + i));
    for (i64 j = 0; j < dim; ++j)
      if (vectors[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)])
        pins.push_back(static_cast<NodeId>(base_v + i * dim + j));
    append_edge(out.h, std::move(pins));
  }
  out.h.normalize_and_validate();

  PoolAllocator pool{m0};
  out.spec.constraints.push_back(BalanceConstraint{
      eps, Rounding::kStrictFloor, {0, static_cast<NodeId>(m0)}});
  out.spec.constraints.push_back(
      filled_constraint(anchor, range_nodes(base_u, m), pool));
  for (i64 j = 0; j < dim; ++j) {
    std::vector<NodeId> column;
    for (i64 i = 0; i < m; ++i)
      column.push_back(static_cast<NodeId>(base_v + i * dim + j));
    out.spec.constraints.push_back(
        filled_constraint(per_dim, std::move(column), pool));
  }
  out.spec.validate(out.h.num_nodes);

  // Plant the zero-cost partition when an orthogonal pair exists.
  i64 p1 = -1, p2 = -1;
  for (i64 a = 0; a < m && p1 < 0; ++a)
    for (i64 b = a + 1; b < m && p1 < 0; ++b) {
      bool orth = true;
      for (i64 j = 0; j < dim; ++j)
        if (vectors[static_cast<std::size_t>(a)][static_cast<std::size_t>(j)] &&
            vectors[static_cast<std::size_t>(b)][static_cast<std::size_t>(j)])
          orth = false;
      if (orth) {
        p1 = a;
        p2 = b;
      }
    }
  if (p1 >= 0) {
    Partition part(static_cast<std::size_t>(total), 1);
    for (i64 i = 0; i < m0; ++i) part[static_cast<std::size_t>(i)] = 0;
    for (i64 i : {p1, p2}) {
      part[static_cast<std::size_t>(base_u + i)] = 0;
      for (i64 j = 0; j < dim; ++j)
        if (vectors[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)])
          part[static_cast<std::size_t>(base_v + i * dim + j)] = 0;
    }
    out.partition = std::move(part);
    out.meta["planted_pair"] =
        std::to_string(p1 + 1) + "," + std::to_string(p2 + 1);
  }

  std::ostringstream vecs;
  for (i64 i = 0; i < m; ++i) {
    if (i) vecs << ',';
    for (i64 j = 0; j < dim; ++j)
      vecs << vectors[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }
  out.meta["certificate"] = "zero_cost_iff_orthogonal_pair";
  out.meta["vectors"] = vecs.str();
  out.meta["eps"] = eps.to_string();
  out.meta["m0"] = std::to_string(m0);
  out.meta["anchors_begin"] = std::to_string(base_u);
  out.meta["coords_begin"] = std::to_string(base_v);
  return out;
}

// ---------------------------------------------------------------------------
// Graph 3-coloring
// ---------------------------------------------------------------------------

GadgetInstance coloring_reduction(const SimpleGraph& g_in) {
  SimpleGraph g = g_in;
  g.normalize_and_validate();
  i64 n = g.num_nodes;
  i64 e_cnt = g.num_edges();
  if (n < 1) throw std::invalid_argument("coloring reduction: empty graph");

  const Rational eps(1, 4);
  EnforceCounts pick_at_most =
      enforce_set(3, 1, eps, 2, EnforceMode::kAtMost);
  EnforceCounts pick_at_least =
      enforce_set(3, 1, eps, 2, EnforceMode::kAtLeast);
  EnforceCounts pair_at_most =
      enforce_set(2, 1, eps, 2, EnforceMode::kAtMost);
  i64 red_need = n * (pick_at_most.fixed_red + pick_at_least.fixed_red) +
                 3 * e_cnt * pair_at_most.fixed_red;
  i64 blue_need = n * (pick_at_most.fixed_blue + pick_at_least.fixed_blue) +
                  3 * e_cnt * pair_at_most.fixed_blue;
  i64 m0 = 1 + std::max(red_need, blue_need);

  auto inc = g.incident_edges();
  // Node layout: per vertex v, per color i: deg(v) edge slots then the two
  // selector nodes; runs are contiguous so each gadget edge is an id range.
  std::vector<i64> base_v(static_cast<std::size_t>(n));
  i64 cursor = 2 * m0;
  for (i64 v = 0; v < n; ++v) {
    base_v[static_cast<std::size_t>(v)] = cursor;
    cursor += 3 * (static_cast<i64>(inc[static_cast<std::size_t>(v)].size()) + 2);
  }
  i64 total = cursor;
  auto w_node = [&](i64 v, i64 edge_pos, i64 color) {
    i64 deg = static_cast<i64>(inc[static_cast<std::size_t>(v)].size());
    return base_v[static_cast<std::size_t>(v)] + color * (deg + 2) + edge_pos;
  };
  auto sel_node = [&](i64 v, i64 color, i64 which) {
    i64 deg = static_cast<i64>(inc[static_cast<std::size_t>(v)].size());
    return base_v[static_cast<std::size_t>(v)] + color * (deg + 2) + deg +
           which;
  };

  GadgetInstance out;
  out.h.num_nodes = narrow_node_count(total);
  append_edge(out.h, range_nodes(0, m0));
  append_edge(out.h, range_nodes(m0, m0));
  for (i64 v = 0; v < n; ++v) {
    i64 deg = static_cast<i64>(inc[static_cast<std::size_t>(v)].size());
    for (i64 i = 0; i < 3; ++i)
      append_edge(out.h,
                  range_nodes(base_v[static_cast<std::size_t>(v)] +
                                  i * (deg + 2),
                              deg + 2));
  }
  out.h.normalize_and_validate();

  PoolAllocator pool{m0};
  out.spec.constraints.push_back(BalanceConstraint{
      eps, Rounding::kStrictFloor, {0, static_cast<NodeId>(m0)}});
  for (i64 v = 0; v < n; ++v) {
    std::vector<NodeId> first = {static_cast<NodeId>(sel_node(v, 0, 0)),
                                 static_cast<NodeId>(sel_node(v, 1, 0)),
                                 static_cast<NodeId>(sel_node(v, 2, 0))};
    out.spec.constraints.push_back(
        filled_constraint(pick_at_most, std::move(first), pool));
    std::vector<NodeId> second = {static_cast<NodeId>(sel_node(v, 0, 1)),
                                  static_cast<NodeId>(sel_node(v, 1, 1)),
                                  static_cast<NodeId>(sel_node(v, 2, 1))};
    out.spec.constraints.push_back(
        filled_constraint(pick_at_least, std::move(second), pool));
  }
  for (i64 e = 0; e < e_cnt; ++e) {
    auto [u, v] = g.edges[static_cast<std::size_t>(e)];
    i64 pos_u = -1, pos_v = -1;
    const auto& iu = inc[static_cast<std::size_t>(u)];
    const auto& iv = inc[static_cast<std::size_t>(v)];
    for (i64 t = 0; t < static_cast<i64>(iu.size()); ++t)
      if (iu[static_cast<std::size_t>(t)] == e) pos_u = t;
    for (i64 t = 0; t < static_cast<i64>(iv.size()); ++t)
      if (iv[static_cast<std::size_t>(t)] == e) pos_v = t;
    for (i64 i = 0; i < 3; ++i) {
      std::vector<NodeId> pair = {static_cast<NodeId>(w_node(u, pos_u, i)),
                                  static_cast<NodeId>(w_node(v, pos_v, i))};
      out.spec.constraints.push_back(
          filled_constraint(pair_at_most, std::move(pair), pool));
    }
  }
  out.spec.validate(out.h.num_nodes);

  // Plant the zero-cost partition from a proper coloring when one exists
  // (exhaustive search, so only attempted at desk scale).
  if (n <= 12) {
    std::vector<int> color(static_cast<std::size_t>(n), 0);
    bool found = false;
    i64 states = 1;
    for (i64 v = 0; v < n && states <= 600000; ++v) states *= 3;
    for (i64 code = 0; code < states && !found; ++code) {
      i64 rem = code;
      for (i64 v = 0; v < n; ++v) {
        color[static_cast<std::size_t>(v)] = static_cast<int>(rem % 3);
        rem /= 3;
      }
      found = true;
      for (const auto& [u, v] : g.edges)
        if (color[static_cast<std::size_t>(u)] ==
            color[static_cast<std::size_t>(v)]) {
          found = false;
          break;
        }
    }
    if (found) {
      Partition part(static_cast<std::size_t>(total), 1);
      for (i64 i = 0; i < m0; ++i) part[static_cast<std::size_t>(i)] = 0;
      for (i64 v = 0; v < n; ++v) {
        i64 deg = static_cast<i64>(inc[static_cast<std::size_t>(v)].size());
        i64 run = base_v[static_cast<std::size_t>(v)] +
                  color[static_cast<std::size_t>(v)] * (deg + 2);
        for (i64 t = 0; t < deg + 2; ++t)
          part[static_cast<std::size_t>(run + t)] = 0;
      }
      out.partition = std::move(part);
      std::vector<i64> cols(color.begin(), color.end());
      out.meta["planted_coloring"] = join_i64(cols);
    }
  }

  std::ostringstream edges;
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    if (e) edges << ',';
    edges << (g.edges[e].first + 1) << '-' << (g.edges[e].second + 1);
  }
  out.meta["certificate"] = "zero_cost_iff_three_colorable";
  out.meta["graph_nodes"] = std::to_string(n);
  out.meta["graph_edges"] = edges.str();
  out.meta["eps"] = eps.to_string();
  out.meta["m0"] = std::to_string(m0);
  out.meta["constraints"] = std::to_string(1 + 2 * n + 3 * e_cnt);
  return out;
}

// ---------------------------------------------------------------------------
// Multi-constraint to single-constraint k-section
// ---------------------------------------------------------------------------

GadgetInstance multiconstraint_to_ksection(const Hypergraph& h_in,
                                           const BalanceSpec& spec, int k) {
  if (k < 2) throw std::invalid_argument("k-section rewrite needs k >= 2");
  Hypergraph h = h_in;
  h.normalize_and_validate();
  spec.validate(h.num_nodes);
  if (spec.constraints.empty())
    throw std::invalid_argument("k-section rewrite: no constraints");
  for (const auto& c : spec.constraints) {
    if (c.eps != Rational(0) || c.mode != Rounding::kStrictFloor)
      throw std::invalid_argument(
          "k-section rewrite is defined for exact (eps = 0, strict floor) "
          "constraints only");
  }

  i64 n = h.num_nodes;
  GadgetInstance out;

  // Whole-set instances only need padding to divisibility.
  bool whole_set = spec.constraints.size() == 1 &&
                   (spec.constraints[0].nodes.empty() ||
                    static_cast<i64>(spec.constraints[0].nodes.size()) == n);
  if (whole_set) {
    i64 pads = (k - n % k) % k;
    out.h = h;
    out.h.num_nodes = narrow_node_count(n + pads);
    out.h.normalize_and_validate();
    out.spec = BalanceSpec::uniform(Rational(0));
    out.spec.validate(out.h.num_nodes);
    out.meta["certificate"] = "optimum_preserved";
    out.meta["case"] = "whole_set_padding";
    out.meta["pads"] = std::to_string(pads);
    for (i64 u = 0; u < n; ++u)
      out.meta["image_of_" + std::to_string(u + 1)] =
          std::to_string(u + 1) + ":1";
    return out;
  }

  i64 c_cnt = static_cast<i64>(spec.constraints.size());
  std::vector<int> member(static_cast<std::size_t>(n), -1);
  for (i64 j = 0; j < c_cnt; ++j)
    for (NodeId u : spec.constraints[static_cast<std::size_t>(j)].nodes)
      member[static_cast<std::size_t>(u)] = static_cast<int>(j);
  i64 leftover = static_cast<i64>(
      std::count(member.begin(), member.end(), -1));

  std::vector<i64> set_pads(static_cast<std::size_t>(c_cnt));
  i64 n0 = n + (k - 1) * leftover;
  for (i64 j = 0; j < c_cnt; ++j) {
    i64 sz = static_cast<i64>(
        spec.constraints[static_cast<std::size_t>(j)].nodes.size());
    set_pads[static_cast<std::size_t>(j)] = (k - sz % k) % k;
    n0 += set_pads[static_cast<std::size_t>(j)];
  }

  // Block sizes n0^(j+1); guard the rewritten size before building.
  std::vector<i64> block_size(static_cast<std::size_t>(c_cnt));
  i64 n_prime = leftover + (k - 1) * leftover;
  for (i64 j = 0; j < c_cnt; ++j) {
    i64 sz = static_cast<i64>(
                 spec.constraints[static_cast<std::size_t>(j)].nodes.size()) +
             set_pads[static_cast<std::size_t>(j)];
    i64 bs = 1;
    for (i64 t = 0; t <= j; ++t) bs = checked_mul(bs, n0);
    block_size[static_cast<std::size_t>(j)] = bs;
    n_prime += checked_mul(sz, bs);
    if (n_prime > 2000000)
      throw std::invalid_argument(
          "k-section rewrite: the block sizes exceed desk scale");
  }

  i64 total_weight = 0;
  for (Weight w : h.weights) total_weight += w;
  if (checked_mul(k - 1, total_weight) >= n0 - 1)
    throw std::invalid_argument(
        "k-section rewrite: total edge weight too large for simple block "
        "inflation (splitting a block must dominate every cut)");

  // Layout: constraint sets in decreasing block size, then the unconstrained
  // originals, then all isolated padding last.
  out.h.num_nodes = narrow_node_count(n_prime);
  std::vector<i64> block_base(static_cast<std::size_t>(n), -1);
  i64 cursor = 0;
  for (i64 j = c_cnt - 1; j >= 0; --j) {
    i64 bs = block_size[static_cast<std::size_t>(j)];
    for (NodeId u : spec.constraints[static_cast<std::size_t>(j)].nodes) {
      block_base[static_cast<std::size_t>(u)] = cursor;
      if (bs >= 2) append_block_edges(out.h, cursor, bs);
      cursor += bs;
    }
    for (i64 t = 0; t < set_pads[static_cast<std::size_t>(j)]; ++t) {
      if (bs >= 2) append_block_edges(out.h, cursor, bs);
      cursor += bs;
    }
  }
  for (i64 u = 0; u < n; ++u)
    if (member[static_cast<std::size_t>(u)] < 0)
      block_base[static_cast<std::size_t>(u)] = cursor++;
  // The remaining n_prime - cursor ids are isolated padding.

  for (std::size_t e = 0; e < h.edges.size(); ++e) {
    std::vector<NodeId> pins;
    for (NodeId u : h.edges[e])
      pins.push_back(static_cast<NodeId>(block_base[static_cast<std::size_t>(u)]));
    append_edge(out.h, std::move(pins), h.weights[e]);
  }
  out.h.normalize_and_validate();
  if (n_prime % k != 0)
    throw std::logic_error("k-section rewrite: size not divisible by k");

  out.spec = BalanceSpec::uniform(Rational(0));
  out.spec.validate(out.h.num_nodes);
  out.meta["certificate"] = "optimum_preserved";
  out.meta["case"] = "block_inflation";
  out.meta["n0"] = std::to_string(n0);
  out.meta["block_sizes"] = join_i64(block_size);
  out.meta["set_pads"] = join_i64(set_pads);
  out.meta["free_nodes"] = std::to_string(leftover);
  for (i64 u = 0; u < n; ++u) {
    int j = member[static_cast<std::size_t>(u)];
    i64 bs = j < 0 ? 1 : block_size[static_cast<std::size_t>(j)];
    out.meta["image_of_" + std::to_string(u + 1)] =
        std::to_string(block_base[static_cast<std::size_t>(u)] + 1) + ":" +
        std::to_string(bs);
  }
  return out;
}

// ---------------------------------------------------------------------------
// HyperDAG lift
// ---------------------------------------------------------------------------

GadgetInstance hyperdag_np_instance(const Hypergraph& h_in, const Rational& eps,
                                    int k, i64 m) {
  Hypergraph h = h_in;
  h.normalize_and_validate();
  if (k < 2) throw std::invalid_argument("hyperDAG lift needs k >= 2");
  if (eps <= Rational(0))
    throw std::invalid_argument("hyperDAG lift needs eps > 0");
  if (h.num_nodes < 1)
    throw std::invalid_argument("hyperDAG lift: empty hypergraph");
  if (m < 2) throw std::invalid_argument("hyperDAG lift needs m >= 2");
  i64 n = h.num_nodes;
  i64 e_cnt = h.num_edges();
  if (!(Rational(m) * eps * Rational(n) > Rational((k - 1) * e_cnt)))
    throw std::invalid_argument(
        "hyperDAG lift: m must exceed (k - 1) |E| / (eps |V|)");

  BalanceConstraint source{eps, Rounding::kStrictFloor, {}};
  i64 src_cap = source.capacity(n, k);
  if (checked_mul(k, src_cap) < n)
    throw std::invalid_argument(
        "hyperDAG lift: the source balance constraint is infeasible");

  i64 n_prime = checked_mul(m, n) + e_cnt;
  if (n_prime > 5000000)
    throw std::invalid_argument("hyperDAG lift: size exceeds desk scale");
  i64 t_prime = checked_mul(m, src_cap) + e_cnt;
  Rational eps_prime =
      Rational(checked_mul(k, t_prime) - n_prime, n_prime);
  if (eps_prime <= Rational(0))
    throw std::invalid_argument(
        "hyperDAG lift: the lifted slack collapses to zero; increase eps, "
        "m, or the edge count");

  GadgetInstance out;
  out.h.num_nodes = narrow_node_count(n_prime);
  // Densest-hyperDAG block per original node: edges {i, ..., m-1} for
  // i = 0..m-2, generated by consecutive chain nodes.
  for (i64 v = 0; v < n; ++v)
    for (i64 i = 0; i + 1 < m; ++i)
      append_edge(out.h, range_nodes(v * m + i, m - i));
  for (i64 e = 0; e < e_cnt; ++e) {
    std::vector<NodeId> pins;
    for (NodeId u : h.edges[static_cast<std::size_t>(e)])
      pins.push_back(static_cast<NodeId>(i64(u) * m + m - 1));
    pins.push_back(static_cast<NodeId>(m * n + e));
    append_edge(out.h, std::move(pins), h.weights[static_cast<std::size_t>(e)]);
  }
  out.h.normalize_and_validate();

  RecognitionResult rec = is_hyperdag(out.h);
  if (!rec.is_hyperdag)
    throw std::logic_error("hyperDAG lift: output failed recognition");
  out.dag = rec.witness;

  BalanceConstraint lifted{eps_prime, Rounding::kStrictFloor, {}};
  if (lifted.capacity(n_prime, k) != t_prime)
    throw std::logic_error("hyperDAG lift: capacity mismatch");
  out.spec = BalanceSpec::uniform(eps_prime);
  out.spec.validate(out.h.num_nodes);

  out.meta["certificate"] = "optimum_preserved_under_lift";
  out.meta["m"] = std::to_string(m);
  out.meta["eps"] = eps.to_string();
  out.meta["eps_prime"] = eps_prime.to_string();
  out.meta["n_prime"] = std::to_string(n_prime);
  out.meta["cap_prime"] = std::to_string(t_prime);
  out.meta["light_begin"] = std::to_string(m * n);
  return out;
}

// ---------------------------------------------------------------------------
// Recursive-bisection counterexample
// ---------------------------------------------------------------------------

GadgetInstance recursive_counterexample(i64 n) {
  if (n < 24 || n % 12 != 0)
    throw std::invalid_argument(
        "recursive counterexample: n must be >= 24 and divisible by 12");
  i64 large = n / 6;
  i64 small = n / 12;

  GadgetInstance out;
  out.h.num_nodes = narrow_node_count(n);
  auto large_base = [&](i64 t) { return t * large; };
  auto small_base = [&](i64 t) { return 3 * large + t * small; };

  for (i64 t = 0; t < 3; ++t) append_block_edges(out.h, large_base(t), large);
  for (i64 t = 0; t < 6; ++t) {
    if (small >= 3) {
      append_block_edges(out.h, small_base(t), small);
    } else {
      // A two-node block's own edges are singletons and cost nothing; a
      // single two-pin edge keeps the pair expensive to separate.
      append_edge(out.h, {static_cast<NodeId>(small_base(t)),
                          static_cast<NodeId>(small_base(t) + 1)});
    }
  }
  for (i64 t = 0; t + 1 < 3; ++t)
    append_edge(out.h, {static_cast<NodeId>(large_base(t) + large - 1),
                        static_cast<NodeId>(large_base(t + 1))});
  for (i64 t = 0; t + 1 < 6; ++t)
    append_edge(out.h, {static_cast<NodeId>(small_base(t) + small - 1),
                        static_cast<NodeId>(small_base(t + 1))});
  out.h.normalize_and_validate();
  out.spec = BalanceSpec::uniform(Rational(0));
  out.spec.validate(out.h.num_nodes);

  Partition p(static_cast<std::size_t>(n), 3);
  for (i64 t = 0; t < 3; ++t) {
    for (i64 i = 0; i < large; ++i)
      p[static_cast<std::size_t>(large_base(t) + i)] = static_cast<int>(t);
    for (i64 i = 0; i < small; ++i)
      p[static_cast<std::size_t>(small_base(t) + i)] = static_cast<int>(t);
  }
  Weight direct = cost(out.h, p, 4, Metric::kCutNet);
  if (direct != 5)
    throw std::logic_error("recursive counterexample: direct cost drifted");
  out.partition = std::move(p);

  out.meta["certificate"] = "recursive_linear_direct_constant";
  out.meta["k"] = "4";
  out.meta["metric"] = "cutnet";
  out.meta["branching"] = "2,2";
  out.meta["direct_optimum"] = "5";
  out.meta["recursive_lower"] = std::to_string(small - 1);
  return out;
}

// ---------------------------------------------------------------------------
// Two-step counterexample
// ---------------------------------------------------------------------------

GadgetInstance twostep_counterexample(int k, const HierTopology& topology,
                                      i64 m, bool strict_blocks) {
  topology.validate();
  if (topology.num_leaves() != k)
    throw std::invalid_argument(
        "two-step counterexample: topology leaf count must equal k");
  if (k < 3)
    throw std::invalid_argument("two-step counterexample: k must be >= 3");
  if (topology.depth() < 2)
    throw std::invalid_argument(
        "two-step counterexample: topology depth must be >= 2 (with a "
        "single level every pair of leaves is equidistant and the two-step "
        "heuristic is already optimal)");
  const Rational g1 = topology.level_costs.front();
  if (Rational(m) < g1 * Rational(k))
    throw std::invalid_argument(
        "two-step counterexample: m must be at least g1 * k");

  i64 beta = m + 1;
  if (strict_blocks) {
    // Splitting any block (cost >= beta - 1) must exceed the worst-case
    // total connector cost g1 * (m + 1) * (k - 1).
    i64 floor_cost =
        (g1 * Rational(checked_mul(m + 1, k - 1))).floor_scaled(1);
    beta = std::max(beta, floor_cost + 2);
  }
  i64 t_cap = checked_mul(k - 1, beta);
  i64 n = checked_mul(k, t_cap);
  if (n > 2000000)
    throw std::invalid_argument("two-step counterexample: size out of range");

  GadgetInstance out;
  out.h.num_nodes = narrow_node_count(n);
  i64 base_a = 0;
  i64 base_b = t_cap;                                // k-1 blocks of beta
  i64 base_c = base_b + (k - 1) * beta;              // k-2 blocks of (k-2)beta
  i64 base_d = base_c + (k - 2) * (k - 2) * beta;    // one block of beta
  i64 base_e = base_d + beta;                        // k-3 blocks of beta

  append_block_edges(out.h, base_a, t_cap);
  for (i64 i = 0; i < k - 1; ++i)
    append_block_edges(out.h, base_b + i * beta, beta);
  for (i64 i = 0; i < k - 2; ++i)
    append_block_edges(out.h, base_c + i * (k - 2) * beta, (k - 2) * beta);
  append_block_edges(out.h, base_d, beta);
  for (i64 i = 0; i < k - 3; ++i)
    append_block_edges(out.h, base_e + i * beta, beta);

  i64 a_cursor = 0;
  for (i64 i = 0; i < k - 1; ++i)
    for (i64 j = 0; j < m; ++j)
      append_edge(out.h, {static_cast<NodeId>(base_a + a_cursor++),
                          static_cast<NodeId>(base_b + i * beta + j)});
  for (i64 i = 0; i + 1 < k - 1; ++i)  // B_i -- C_i for i = 0..k-3
    append_edge(out.h, {static_cast<NodeId>(base_b + i * beta + beta - 1),
                        static_cast<NodeId>(base_c + i * (k - 2) * beta)});
  append_edge(out.h, {static_cast<NodeId>(base_b + (k - 2) * beta + beta - 1),
                      static_cast<NodeId>(base_d)});
  out.h.normalize_and_validate();
  out.spec = BalanceSpec::uniform(Rational(0));
  out.spec.validate(out.h.num_nodes);

  // Planted hierarchical assignment: A and the united B's are sibling
  // leaves; each remaining leaf takes one C with its filler (E or D).
  Partition leaf_of(static_cast<std::size_t>(n), 0);
  for (i64 i = base_b; i < base_c; ++i)
    leaf_of[static_cast<std::size_t>(i)] = 1;
  for (i64 i = 0; i < k - 2; ++i)
    for (i64 j = 0; j < (k - 2) * beta; ++j)
      leaf_of[static_cast<std::size_t>(base_c + i * (k - 2) * beta + j)] =
          static_cast<int>(2 + i);
  for (i64 j = 0; j < beta; ++j)  // D joins the last C part
    leaf_of[static_cast<std::size_t>(base_d + j)] = static_cast<int>(k - 1);
  for (i64 i = 0; i < k - 3; ++i)
    for (i64 j = 0; j < beta; ++j)
      leaf_of[static_cast<std::size_t>(base_e + i * beta + j)] =
          static_cast<int>(2 + i);

  Rational hier_claim = hierarchical_cost(out.h, leaf_of, topology);
  Weight standard_claim = static_cast<Weight>(checked_mul(k - 1, m));

  // Any leaf assignment of the flat optimum pays, per B part, m edges to
  // A's leaf; the best case packs the leaves bottom-up:
  // sum_i g_i (b_i - 1) prod_{j>i} b_j edges at level-i cost each.
  Rational two_step_claim(0);
  {
    i64 suffix = 1;
    for (int i = topology.depth() - 1; i >= 0; --i) {
      i64 b = topology.branching[static_cast<std::size_t>(i)];
      two_step_claim = two_step_claim + topology.level_costs[static_cast<std::size_t>(i)] *
                                            Rational(checked_mul(b - 1, suffix));
      suffix = checked_mul(suffix, b);
    }
    two_step_claim = two_step_claim * Rational(m);
  }
  Rational ratio = two_step_claim / hier_claim;
  if (!(ratio * Rational(2) >= g1))
    throw std::logic_error("two-step counterexample: ratio below g1 / 2");

  out.partition = std::move(leaf_of);
  out.meta["certificate"] = "two_step_suboptimal";
  out.meta["k"] = std::to_string(k);
  out.meta["branching"] = join_i64(std::vector<i64>(
      topology.branching.begin(), topology.branching.end()));
  {
    std::ostringstream costs;
    for (std::size_t i = 0; i < topology.level_costs.size(); ++i) {
      if (i) costs << ',';
      costs << topology.level_costs[i].to_string();
    }
    out.meta["level_costs"] = costs.str();
  }
  out.meta["m"] = std::to_string(m);
  out.meta["beta"] = std::to_string(beta);
  out.meta["standard_optimum"] = std::to_string(standard_claim);
  out.meta["hier_optimum"] = hier_claim.to_string();
  out.meta["two_step_cost"] = two_step_claim.to_string();
  out.meta["extra_over_flat"] = (hier_claim - Rational(standard_claim)).to_string();
  out.meta["ratio"] = ratio.to_string();
  return out;
}

// ---------------------------------------------------------------------------
// Scheduling hardness
// ---------------------------------------------------------------------------

GadgetInstance scheduling_hardness_paths(const std::vector<i64>& numbers,
                                         i64 t, i64 b) {
  if (t < 1 || b < 1)
    throw std::invalid_argument("path scheduling gadget: t, b must be >= 1");
  if (static_cast<i64>(numbers.size()) != 3 * t)
    throw std::invalid_argument(
        "path scheduling gadget: need exactly 3t numbers");
  i64 sum = 0;
  for (i64 a : numbers) {
    if (4 * a < b || 2 * a > b)
      throw std::invalid_argument(
          "path scheduling gadget: numbers must satisfy b/4 <= a <= b/2");
    sum += a;
  }
  if (sum != t * b)
    throw std::invalid_argument(
        "path scheduling gadget: numbers must sum to t * b");

  i64 main_len = 2 * t * b;
  i64 n = 4 * t * b;
  Dag d;
  d.num_nodes = narrow_node_count(n);
  for (i64 i = 0; i + 1 < main_len; ++i)
    d.arcs.push_back({static_cast<NodeId>(i), static_cast<NodeId>(i + 1)});
  Partition colors(static_cast<std::size_t>(n), 0);
  for (i64 i = 0; i < main_len; ++i)
    colors[static_cast<std::size_t>(i)] = static_cast<int>((i / b) % 2);
  i64 cursor = main_len;
  for (i64 a : numbers) {
    for (i64 i = 0; i + 1 < 2 * a; ++i)
      d.arcs.push_back({static_cast<NodeId>(cursor + i),
                        static_cast<NodeId>(cursor + i + 1)});
    for (i64 i = 0; i < a; ++i)
      colors[static_cast<std::size_t>(cursor + i)] = 1;
    cursor += 2 * a;
  }
  d.normalize_and_validate();

  GadgetInstance out;
  out.h = dag_to_hyperdag(d).h;
  out.dag = std::move(d);
  out.partition = std::move(colors);
  out.meta["certificate"] = "flawless_iff_numbers_group";
  out.meta["variant"] = "paths";
  out.meta["t"] = std::to_string(t);
  out.meta["b"] = std::to_string(b);
  out.meta["numbers"] = join_i64(numbers);
  out.meta["makespan"] = std::to_string(main_len);
  return out;
}

GadgetInstance scheduling_hardness_bounded_height(const SimpleGraph& g_in,
                                                  int big_l) {
  SimpleGraph g = g_in;
  g.normalize_and_validate();
  i64 n = g.num_nodes;
  i64 e_cnt = g.num_edges();
  i64 l = big_l;
  if (l < 2 || l > n)
    throw std::invalid_argument(
        "bounded-height scheduling gadget: need 2 <= L <= |V|");
  i64 pairs = l * (l - 1) / 2;
  if (pairs > e_cnt)
    throw std::invalid_argument(
        "bounded-height scheduling gadget: need C(L,2) <= |E|");

  // Layers: L red, C(L,2) blue, |V|-L red, |E|-C(L,2) blue; consecutive
  // nonempty layers are joined completely.
  i64 sizes[4] = {l, pairs, n - l, e_cnt - pairs};
  i64 base_c = n + e_cnt;
  i64 bases[4];
  i64 cur = base_c;
  for (int i = 0; i < 4; ++i) {
    bases[i] = cur;
    cur += sizes[i];
  }
  i64 total = cur;

  Dag d;
  d.num_nodes = narrow_node_count(total);
  for (i64 e = 0; e < e_cnt; ++e) {
    d.arcs.push_back({g.edges[static_cast<std::size_t>(e)].first,
                      static_cast<NodeId>(n + e)});
    d.arcs.push_back({g.edges[static_cast<std::size_t>(e)].second,
                      static_cast<NodeId>(n + e)});
  }
  int prev = -1;
  for (int i = 0; i < 4; ++i) {
    if (sizes[i] == 0) continue;
    if (prev >= 0)
      for (i64 x = 0; x < sizes[prev]; ++x)
        for (i64 y = 0; y < sizes[i]; ++y)
          d.arcs.push_back({static_cast<NodeId>(bases[prev] + x),
                            static_cast<NodeId>(bases[i] + y)});
    prev = i;
  }
  d.normalize_and_validate();

  Partition colors(static_cast<std::size_t>(total), 0);
  for (i64 e = 0; e < e_cnt; ++e)
    colors[static_cast<std::size_t>(n + e)] = 1;  // edge sinks red
  for (i64 x = 0; x < sizes[0]; ++x)
    colors[static_cast<std::size_t>(bases[0] + x)] = 1;
  for (i64 x = 0; x < sizes[2]; ++x)
    colors[static_cast<std::size_t>(bases[2] + x)] = 1;

  GadgetInstance out;
  out.h = dag_to_hyperdag(d).h;
  out.dag = std::move(d);
  out.partition = std::move(colors);
  std::ostringstream edges;
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    if (e) edges << ',';
    edges << (g.edges[e].first + 1) << '-' << (g.edges[e].second + 1);
  }
  out.meta["certificate"] = "flawless_iff_clique";
  out.meta["variant"] = "bounded_height";
  out.meta["graph_nodes"] = std::to_string(n);
  out.meta["graph_edges"] = edges.str();
  out.meta["clique_size"] = std::to_string(l);
  out.meta["makespan"] = std::to_string(n + e_cnt);
  return out;
}

}  // namespace hypart
