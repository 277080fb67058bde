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

// Command-line front end. Exit codes: 0 ok, 1 infeasible / negative answer,
// 2 usage error, 3 parse error, 4 search budget exceeded.

#include <algorithm>
#include <cstdint>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "hypart/dag.hpp"
#include "hypart/gadgets.hpp"
#include "hypart/hierarchy.hpp"
#include "hypart/hypergraph.hpp"
#include "hypart/io.hpp"
#include "hypart/rational.hpp"
#include "hypart/recognition.hpp"
#include "hypart/scheduling.hpp"
#include "hypart/solvers.hpp"
#include "hypart/verify.hpp"

namespace {

using hypart::Rational;
using i64 = std::int64_t;

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;
constexpr int kExitUsage = 2;
constexpr int kExitParse = 3;
constexpr int kExitBudget = 4;

hypart::Metric to_metric(const std::string& s) {
  if (s == "cutnet") return hypart::Metric::kCutNet;
  if (s == "conn") return hypart::Metric::kConnectivity;
  throw std::invalid_argument("unknown metric: " + s +
                              " (expected cutnet or conn)");
}

hypart::Rounding to_rounding(const std::string& s) {
  if (s == "floor") return hypart::Rounding::kStrictFloor;
  if (s == "ceil") return hypart::Rounding::kRelaxedCeil;
  throw std::invalid_argument("unknown rounding mode: " + s +
                              " (expected floor or ceil)");
}

int infer_k(const hypart::Partition& p) {
  int k = 1;
  for (int label : p) k = std::max(k, label + 1);
  return k;
}

std::string join_nodes(const std::vector<hypart::NodeId>& nodes) {
  std::string s;
  for (std::size_t i = 0; i < nodes.size(); ++i)
    s += (i ? "," : "") + std::to_string(nodes[i] + 1);
  return s;
}

// --- inline --params parsing -------------------------------------------------

std::map<std::string, std::string> parse_params(
    const std::vector<std::string>& items) {
  std::map<std::string, std::string> kv;
  for (const std::string& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0)
      throw std::invalid_argument("--params entries must look like KEY=VALUE, "
                                  "got: " + item);
    const std::string key = item.substr(0, eq);
    if (kv.count(key))
      throw std::invalid_argument("duplicate --params key: " + key);
    kv[key] = item.substr(eq + 1);
  }
  return kv;
}

class Params {
 public:
  explicit Params(std::map<std::string, std::string> kv)
      : kv_(std::move(kv)) {}

  bool has(const std::string& key) const { return kv_.count(key) > 0; }

  std::string str(const std::string& key) const {
    auto it = kv_.find(key);
    if (it == kv_.end())
      throw std::invalid_argument("missing required parameter: " + key);
    used_.insert(key);
    return it->second;
  }

  i64 integer(const std::string& key) const {
    const std::string s = str(key);
    try {
      std::size_t pos = 0;
      const i64 v = std::stoll(s, &pos);
      if (pos != s.size()) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception&) {
      throw std::invalid_argument("parameter " + key +
                                  " must be an integer, got: " + s);
    }
  }

  i64 integer_or(const std::string& key, i64 fallback) const {
    return has(key) ? integer(key) : fallback;
  }

  Rational rational_or(const std::string& key, const Rational& fallback) const {
    if (!has(key)) return fallback;
    return Rational::parse(str(key));
  }

  std::string str_or(const std::string& key, const std::string& fb) const {
    return has(key) ? str(key) : fb;
  }

  void reject_unused() const {
    for (const auto& [key, value] : kv_) {
      (void)value;
      if (!used_.count(key))
        throw std::invalid_argument("unknown parameter: " + key);
    }
  }

 private:
  std::map<std::string, std::string> kv_;
  mutable std::set<std::string> used_;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

// "1-2,2-3": simple graph edges with 1-indexed endpoints.
hypart::SimpleGraph parse_inline_graph(const std::string& text,
                                       i64 forced_nodes) {
  hypart::SimpleGraph g;
  int max_node = -1;
  if (!text.empty()) {
    for (const std::string& item : split(text, ',')) {
      const auto dash = item.find('-');
      if (dash == std::string::npos || dash == 0 || dash + 1 == item.size())
        throw std::invalid_argument("graph edges must look like U-V, got: " +
                                    item);
      const int u = std::stoi(item.substr(0, dash)) - 1;
      const int v = std::stoi(item.substr(dash + 1)) - 1;
      if (u < 0 || v < 0)
        throw std::invalid_argument("graph nodes are 1-indexed");
      g.edges.push_back({u, v});
      max_node = std::max({max_node, u, v});
    }
  }
  g.num_nodes = forced_nodes > 0 ? static_cast<int>(forced_nodes)
                                 : max_node + 1;
  g.normalize_and_validate();
  return g;
}

// "10,01": binary vectors, one string per vector.
std::vector<std::vector<int>> parse_inline_vectors(const std::string& text) {
  std::vector<std::vector<int>> vectors;
  for (const std::string& item : split(text, ',')) {
    std::vector<int> v;
    for (char ch : item) {
      if (ch != '0' && ch != '1')
        throw std::invalid_argument("vectors must be binary strings, got: " +
                                    item);
      v.push_back(ch - '0');
    }
    if (v.empty()) throw std::invalid_argument("empty vector in list");
    vectors.push_back(std::move(v));
  }
  return vectors;
}

std::vector<i64> parse_inline_numbers(const std::string& text) {
  std::vector<i64> numbers;
  for (const std::string& item : split(text, ','))
    numbers.push_back(std::stoll(item));
  return numbers;
}

// --- evaluate ----------------------------------------------------------------

struct EvaluateArgs {
  std::string hgr, partition, topology, constraints, metric = "conn";
  std::string eps, round = "floor";
  int k = 0;
};

int cmd_evaluate(const EvaluateArgs& a) {
  const hypart::Hypergraph h = hypart::load_hypergraph(a.hgr);
  const hypart::Partition p = hypart::load_partition(a.partition);
  if (static_cast<int>(p.size()) != h.num_nodes)
    throw std::invalid_argument("partition has " + std::to_string(p.size()) +
                                " entries for a hypergraph with " +
                                std::to_string(h.num_nodes) + " nodes");

  if (!a.topology.empty()) {
    const hypart::HierTopology t = hypart::load_topology(a.topology);
    const int k = t.num_leaves();
    for (int label : p)
      if (label < 0 || label >= k)
        throw std::invalid_argument("partition label out of range for a "
                                    "topology with " + std::to_string(k) +
                                    " leaves");
    for (int e = 0; e < h.num_edges(); ++e) {
      std::cout << "edge " << e + 1 << ": weight=" << h.weights[e]
                << " lambda=[";
      for (int level = 1; level <= t.depth(); ++level) {
        const int gsz = t.group_size(level);
        std::set<int> groups;
        for (hypart::NodeId v : h.edges[e])
          groups.insert(p[static_cast<std::size_t>(v)] / gsz);
        std::cout << (level > 1 ? " " : "") << groups.size();
      }
      std::cout << "]\n";
    }
    std::cout << "cost=" << hypart::hierarchical_cost(h, p, t).to_string()
              << "\n";
  } else {
    const int k = a.k > 0 ? a.k : infer_k(p);
    const hypart::Metric metric = to_metric(a.metric);
    const std::vector<int> lambdas = hypart::lambda_profile(h, p, k);
    for (int e = 0; e < h.num_edges(); ++e)
      std::cout << "edge " << e + 1 << ": weight=" << h.weights[e]
                << " lambda=" << lambdas[static_cast<std::size_t>(e)] << "\n";
    std::cout << "cost=" << hypart::cost(h, p, k, metric) << "\n";
  }

  if (!a.constraints.empty()) {
    const hypart::BalanceSpec spec = hypart::load_balance_spec(a.constraints);
    const int k = a.k > 0 ? a.k : infer_k(p);
    bool all = true;
    for (std::size_t j = 0; j < spec.constraints.size(); ++j) {
      hypart::BalanceSpec one;
      one.constraints.push_back(spec.constraints[j]);
      const bool ok = hypart::is_balanced(h, p, k, one);
      all = all && ok;
      std::cout << "constraint " << j + 1 << ": satisfied="
                << (ok ? "yes" : "no") << "\n";
    }
    std::cout << "balanced=" << (all ? "yes" : "no") << "\n";
  } else if (!a.eps.empty()) {
    const int k = a.k > 0 ? a.k : infer_k(p);
    hypart::BalanceSpec spec = hypart::BalanceSpec::uniform(
        Rational::parse(a.eps), to_rounding(a.round));
    std::cout << "balanced="
              << (hypart::is_balanced(h, p, k, spec) ? "yes" : "no") << "\n";
  }
  return kExitOk;
}

// --- solve ---------------------------------------------------------------

struct SolveArgs {
  std::string hgr, constraints, out, metric = "conn", mode;
  std::string eps = "0", round = "floor";
  int k = 2;
  i64 max_cost = -1;
  i64 search_budget = 100000000;
};

int cmd_solve(const SolveArgs& a) {
  const hypart::Hypergraph h = hypart::load_hypergraph(a.hgr);
  const hypart::Metric metric = to_metric(a.metric);
  const Rational eps = Rational::parse(a.eps);
  const hypart::Rounding round = to_rounding(a.round);
  hypart::BalanceSpec spec;
  if (!a.constraints.empty()) {
    spec = hypart::load_balance_spec(a.constraints);
  } else {
    spec = hypart::BalanceSpec::uniform(eps, round);
  }
  std::string mode = a.mode;
  if (mode.empty()) mode = a.max_cost >= 0 ? "bounded" : "brute";

  std::optional<hypart::SolveResult> result;
  if (mode == "brute") {
    result = hypart::brute_force_optimum(h, a.k, spec, metric,
                                         a.search_budget);
  } else if (mode == "bounded") {
    if (a.max_cost < 0)
      throw std::invalid_argument("--budget COST is required with "
                                  "--mode bounded");
    if (a.constraints.empty()) {
      result = hypart::bounded_cost_solver(h, a.k, eps, round, a.max_cost,
                                           metric, a.search_budget);
    } else {
      result = hypart::multi_constraint_bounded_solver(
          h, a.k, spec, a.max_cost, metric, a.search_budget);
    }
  } else if (mode == "recursive") {
    if (!a.constraints.empty())
      throw std::invalid_argument("--mode recursive uses a uniform "
                                  "constraint; --constraints is not "
                                  "supported");
    std::vector<int> branching;
    for (int rest = a.k; rest > 1; rest /= 2) {
      if (rest % 2 != 0)
        throw std::invalid_argument("--mode recursive performs repeated "
                                    "bisection and needs k to be a power "
                                    "of 2");
      branching.push_back(2);
    }
    if (branching.empty())
      throw std::invalid_argument("--mode recursive needs k >= 2");
    try {
      const hypart::RecursiveResult rec = hypart::recursive_partitioner(
          h, branching, eps, round, metric, a.search_budget);
      result = hypart::SolveResult{rec.hier.leaf_of, rec.cost};
    } catch (const hypart::BudgetExceeded&) {
      throw;
    } catch (const std::runtime_error&) {
      result.reset();  // some split step had no balanced solution
    }
  } else {
    throw std::invalid_argument("unknown --mode: " + mode +
                                " (expected brute, bounded or recursive)");
  }

  if (!result) {
    std::cout << "cost=- feasible=no\n";
    return kExitNegative;
  }
  std::cout << "cost=" << result->cost << " feasible=yes\n";
  if (!a.out.empty()) hypart::save_partition(a.out, result->partition);
  return kExitOk;
}

// --- recognize / convert ---------------------------------------------------

struct RecognizeArgs {
  std::string hgr, out;
};

int cmd_recognize(const RecognizeArgs& a) {
  const hypart::Hypergraph h = hypart::load_hypergraph(a.hgr);
  const hypart::RecognitionResult rec = hypart::is_hyperdag(h);
  if (!rec.is_hyperdag) {
    std::cout << "hyperdag=no\n";
    std::cout << "violating_nodes=" << join_nodes(rec.violating_nodes) << "\n";
    return kExitNegative;
  }
  std::cout << "hyperdag=yes\n";
  std::cout << "witness_nodes=" << rec.witness->num_nodes
            << " witness_arcs=" << rec.witness->num_arcs() << "\n";
  if (!a.out.empty()) {
    hypart::save_dag(a.out + ".dag", *rec.witness);
    hypart::save_generator_map(a.out + ".gen", rec.generator_of);
    std::cout << "wrote " << a.out << ".dag\n";
    std::cout << "wrote " << a.out << ".gen\n";
  }
  return kExitOk;
}

struct ConvertArgs {
  std::string dag, hgr, out;
};

int cmd_convert(const ConvertArgs& a) {
  if (a.dag.empty() == a.hgr.empty())
    throw std::invalid_argument("convert needs exactly one of --dag / --hgr");
  if (!a.dag.empty()) {
    const hypart::Dag d = hypart::load_dag(a.dag);
    const hypart::CommHypergraph ch = hypart::dag_to_hyperdag(d);
    hypart::save_hypergraph(a.out + ".hgr", ch.h);
    hypart::save_generator_map(a.out + ".gen", ch.generator_of);
    std::cout << "nodes=" << ch.h.num_nodes << " edges=" << ch.h.num_edges()
              << "\n";
    std::cout << "wrote " << a.out << ".hgr\n";
    std::cout << "wrote " << a.out << ".gen\n";
    return kExitOk;
  }
  RecognizeArgs r;
  r.hgr = a.hgr;
  r.out = a.out;
  return cmd_recognize(r);
}

// --- layer -------------------------------------------------------------------

struct LayerArgs {
  std::string dag, out, partition;
  std::string eps = "0", round = "floor";
  bool enumerate = false;
  i64 cap = 1000000;
  int k = 2;
};

int cmd_layer(const LayerArgs& a) {
  const hypart::Dag d = hypart::load_dag(a.dag);
  hypart::Partition p;
  if (!a.partition.empty()) {
    p = hypart::load_partition(a.partition);
    if (static_cast<int>(p.size()) != d.num_nodes)
      throw std::invalid_argument("partition size does not match the DAG");
  }
  const Rational eps = Rational::parse(a.eps);
  const hypart::Rounding round = to_rounding(a.round);

  if (a.enumerate) {
    const std::vector<hypart::Layering> all =
        hypart::enumerate_layerings(d, a.cap);
    std::cout << "layerings=" << all.size() << "\n";
    bool any_balanced = false;
    for (const hypart::Layering& l : all) {
      for (std::size_t v = 0; v < l.layer_of.size(); ++v)
        std::cout << (v ? " " : "") << l.layer_of[v] + 1;
      if (!p.empty()) {
        const bool ok = hypart::is_layerwise_balanced(d, l, p, a.k, eps, round);
        any_balanced = any_balanced || ok;
        std::cout << "  balanced=" << (ok ? "yes" : "no");
      }
      std::cout << "\n";
    }
    if (!p.empty()) {
      std::cout << "any_balanced=" << (any_balanced ? "yes" : "no") << "\n";
      return any_balanced ? kExitOk : kExitNegative;
    }
    return kExitOk;
  }

  const hypart::Layering l = hypart::earliest_layering(d);
  std::cout << "layers=" << l.num_layers << "\n";
  if (!a.out.empty()) {
    hypart::save_layering(a.out, l);
    std::cout << "wrote " << a.out << "\n";
  }
  if (!p.empty()) {
    const bool ok = hypart::is_layerwise_balanced(d, l, p, a.k, eps, round);
    std::cout << "layerwise_balanced=" << (ok ? "yes" : "no") << "\n";
    return ok ? kExitOk : kExitNegative;
  }
  return kExitOk;
}

// --- schedule ------------------------------------------------------------

struct ScheduleArgs {
  std::string dag, partition;
  std::string eps = "0";
  int k = 2;
  i64 budget = 20000000;
};

int cmd_schedule(const ScheduleArgs& a) {
  const hypart::Dag d = hypart::load_dag(a.dag);
  if (a.partition.empty()) {
    std::cout << "mu=" << hypart::optimal_makespan(d, a.k, a.budget) << "\n";
    return kExitOk;
  }
  const hypart::Partition p = hypart::load_partition(a.partition);
  if (static_cast<int>(p.size()) != d.num_nodes)
    throw std::invalid_argument("partition size does not match the DAG");
  const hypart::ScheduleBalanceReport rep = hypart::schedule_balance_check(
      d, p, a.k, Rational::parse(a.eps), a.budget);
  std::cout << "mu=" << rep.mu << " mu_p=" << rep.mu_p << " feasible="
            << (rep.accepted ? "yes" : "no") << "\n";
  return rep.accepted ? kExitOk : kExitNegative;
}

// --- assign --------------------------------------------------------------

struct AssignArgs {
  std::string hgr, partition, topology, out, method = "brute";
  std::string eps = "0", round = "floor";
  i64 budget = 100000000;
};

int cmd_assign(const AssignArgs& a) {
  const hypart::Hypergraph h = hypart::load_hypergraph(a.hgr);
  const hypart::HierTopology t = hypart::load_topology(a.topology);
  const int k = t.num_leaves();

  if (a.method == "twostep") {
    std::optional<hypart::TwoStepResult> ts;
    try {
      ts = hypart::two_step(h, t, Rational::parse(a.eps),
                            to_rounding(a.round), a.budget);
    } catch (const hypart::BudgetExceeded&) {
      throw;
    } catch (const std::runtime_error&) {
      std::cout << "feasible=no\n";
      return kExitNegative;
    }
    std::cout << "cost=" << ts->cost.to_string()
              << " flat_cost=" << ts->flat_cost << " feasible=yes\n";
    for (std::size_t part = 0; part < ts->leaf_of_part.size(); ++part)
      std::cout << "part " << part + 1 << " -> leaf "
                << ts->leaf_of_part[part] + 1 << "\n";
    if (!a.out.empty()) {
      hypart::save_partition(a.out, ts->partition.leaf_of);
      std::cout << "wrote " << a.out << "\n";
    }
    return kExitOk;
  }

  if (a.partition.empty())
    throw std::invalid_argument("--partition FILE is required with --method " +
                                a.method);
  const hypart::Partition p = hypart::load_partition(a.partition);
  if (static_cast<int>(p.size()) != h.num_nodes)
    throw std::invalid_argument("partition size does not match the "
                                "hypergraph");
  for (int label : p)
    if (label < 0 || label >= k)
      throw std::invalid_argument("partition label out of range for a "
                                  "topology with " + std::to_string(k) +
                                  " leaves");

  hypart::AssignmentResult res;
  if (a.method == "brute") {
    res = hypart::optimal_assignment_bruteforce(h, p, t);
  } else if (a.method == "matching") {
    res = hypart::optimal_assignment_matching(h, p, t);
  } else {
    throw std::invalid_argument("unknown --method: " + a.method +
                                " (expected brute, matching or twostep)");
  }
  std::cout << "cost=" << res.cost.to_string() << "\n";
  for (std::size_t part = 0; part < res.leaf_of_part.size(); ++part)
    std::cout << "part " << part + 1 << " -> leaf "
              << res.leaf_of_part[part] + 1 << "\n";
  if (!a.out.empty()) {
    hypart::Partition relabeled(p.size());
    for (std::size_t v = 0; v < p.size(); ++v)
      relabeled[v] =
          res.leaf_of_part[static_cast<std::size_t>(p[v])];
    hypart::save_partition(a.out, relabeled);
    std::cout << "wrote " << a.out << "\n";
  }
  return kExitOk;
}

// --- generate ------------------------------------------------------------

struct GenerateArgs {
  std::string gadget, out;
  std::vector<std::string> params;
  std::uint64_t seed = 0;
};

hypart::GadgetInstance build_gadget(const std::string& name, const Params& p,
                                    std::uint64_t seed) {
  hypart::GadgetInstance gi;
  if (name == "block") {
    gi.h = hypart::block_gadget(p.integer("b"));
    gi.meta["b"] = std::to_string(p.integer("b"));
  } else if (name == "grid" || name == "extended-grid" ||
             name == "padded-grid") {
    hypart::GridGadget g;
    if (name == "grid") {
      g = hypart::grid_gadget(p.integer("ell"));
    } else if (name == "extended-grid") {
      g = hypart::extended_grid_gadget(p.integer("ell"), p.integer("ell0"));
    } else {
      g = hypart::padded_grid_gadget(p.integer("total"));
    }
    gi.h = g.h;
    gi.meta["side"] = std::to_string(g.side);
    gi.meta["outsiders"] = std::to_string(g.outsiders.size());
  } else if (name == "enforce") {
    const std::string mode_s = p.str_or("mode", "atmost");
    hypart::EnforceMode mode;
    if (mode_s == "atmost") {
      mode = hypart::EnforceMode::kAtMost;
    } else if (mode_s == "atleast") {
      mode = hypart::EnforceMode::kAtLeast;
    } else if (mode_s == "exact") {
      mode = hypart::EnforceMode::kExact;
    } else {
      throw std::invalid_argument("unknown mode: " + mode_s +
                                  " (expected atmost, atleast or exact)");
    }
    const hypart::EnforceCounts counts = hypart::enforce_set(
        p.integer("size"), p.integer("h"),
        p.rational_or("eps", Rational(0)), 2, mode);
    gi = hypart::enforce_instance(counts);
  } else if (name == "fixed-blocks") {
    gi = hypart::fixed_color_blocks(p.integer("m0"),
                                    p.rational_or("eps", Rational(0)), 2);
  } else if (name == "spes") {
    const std::string variant_s = p.str_or("variant", "general");
    hypart::SpesVariant variant;
    if (variant_s == "general") {
      variant = hypart::SpesVariant::kGeneral;
    } else if (variant_s == "degree2") {
      variant = hypart::SpesVariant::kDegree2;
    } else {
      throw std::invalid_argument("unknown variant: " + variant_s +
                                  " (expected general or degree2)");
    }
    const hypart::SimpleGraph g =
        parse_inline_graph(p.str("graph"), p.integer_or("n", 0));
    gi = hypart::spes_reduction(g, p.integer("p"),
                                p.rational_or("eps", Rational(0)), 2, variant);
  } else if (name == "ovp") {
    std::vector<std::vector<int>> vectors;
    if (p.has("vectors")) {
      vectors = parse_inline_vectors(p.str("vectors"));
    } else {
      const i64 m = p.integer("m");
      const i64 dim = p.integer("d");
      std::mt19937_64 rng(seed);
      vectors.assign(static_cast<std::size_t>(m), {});
      for (auto& v : vectors)
        for (i64 j = 0; j < dim; ++j)
          v.push_back(static_cast<int>(rng() % 2));
      std::string flat;
      for (std::size_t i = 0; i < vectors.size(); ++i) {
        if (i) flat += ",";
        for (int bit : vectors[i]) flat += static_cast<char>('0' + bit);
      }
      gi.meta["drawn_vectors"] = flat;
    }
    auto meta_rng = std::move(gi.meta);
    gi = hypart::ovp_reduction(vectors);
    gi.meta.insert(meta_rng.begin(), meta_rng.end());
  } else if (name == "coloring") {
    hypart::SimpleGraph g;
    if (p.has("graph")) {
      g = parse_inline_graph(p.str("graph"), p.integer_or("n", 0));
    } else {
      const i64 n = p.integer("n");
      const i64 percent = p.integer_or("prob", 50);
      std::mt19937_64 rng(seed);
      g.num_nodes = static_cast<int>(n);
      for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
          if (static_cast<i64>(rng() % 100) < percent) g.edges.push_back({u, v});
      g.normalize_and_validate();
      std::string flat;
      for (std::size_t i = 0; i < g.edges.size(); ++i)
        flat += (i ? "," : "") + std::to_string(g.edges[i].first + 1) + "-" +
                std::to_string(g.edges[i].second + 1);
      gi.meta["drawn_graph"] = flat;
    }
    auto meta_rng = std::move(gi.meta);
    gi = hypart::coloring_reduction(g);
    gi.meta.insert(meta_rng.begin(), meta_rng.end());
  } else if (name == "ksection") {
    const hypart::Hypergraph h = hypart::load_hypergraph(p.str("input"));
    const hypart::BalanceSpec spec =
        hypart::load_balance_spec(p.str("constraints"));
    gi = hypart::multiconstraint_to_ksection(
        h, spec, static_cast<int>(p.integer_or("k", 2)));
  } else if (name == "hyperdag-lift") {
    const hypart::Hypergraph h = hypart::load_hypergraph(p.str("input"));
    gi = hypart::hyperdag_np_instance(
        h, p.rational_or("eps", Rational(1, 4)),
        static_cast<int>(p.integer_or("k", 2)), p.integer("m"));
  } else if (name == "recursive") {
    gi = hypart::recursive_counterexample(p.integer("n"));
  } else if (name == "twostep") {
    hypart::HierTopology t;
    for (const std::string& b : split(p.str_or("branching", "2,2"), ','))
      t.branching.push_back(std::stoi(b));
    for (const std::string& g : split(p.str_or("costs", "4,1"), ','))
      t.level_costs.push_back(Rational::parse(g));
    gi = hypart::twostep_counterexample(
        static_cast<int>(p.integer_or("k", t.num_leaves())), t,
        p.integer("m"));
  } else if (name == "scheduling-paths") {
    gi = hypart::scheduling_hardness_paths(
        parse_inline_numbers(p.str("numbers")),
        static_cast<int>(p.integer("t")), p.integer("b"));
  } else if (name == "scheduling-clique") {
    const hypart::SimpleGraph g =
        parse_inline_graph(p.str("graph"), p.integer_or("n", 0));
    gi = hypart::scheduling_hardness_bounded_height(
        g, static_cast<int>(p.integer("level")));
  } else {
    throw std::invalid_argument(
        "unknown gadget: " + name +
        " (expected block, grid, extended-grid, padded-grid, enforce, "
        "fixed-blocks, spes, ovp, coloring, ksection, hyperdag-lift, "
        "recursive, twostep, scheduling-paths or scheduling-clique)");
  }
  p.reject_unused();
  return gi;
}

int cmd_generate(const GenerateArgs& a) {
  const Params params(parse_params(a.params));
  hypart::GadgetInstance gi = build_gadget(a.gadget, params, a.seed);
  gi.meta["gadget"] = a.gadget;

  hypart::save_hypergraph(a.out + ".hgr", gi.h);
  std::cout << "wrote " << a.out << ".hgr\n";
  if (!gi.spec.constraints.empty()) {
    hypart::save_balance_spec(a.out + ".constraints", gi.spec);
    std::cout << "wrote " << a.out << ".constraints\n";
  }
  if (gi.dag) {
    hypart::save_dag(a.out + ".dag", *gi.dag);
    std::cout << "wrote " << a.out << ".dag\n";
  }
  if (gi.partition) {
    hypart::save_partition(a.out + ".partition", *gi.partition);
    std::cout << "wrote " << a.out << ".partition\n";
  }
  hypart::save_meta(a.out + ".meta", gi.meta);
  std::cout << "wrote " << a.out << ".meta\n";
  return kExitOk;
}

// --- verify --------------------------------------------------------------

struct VerifyArgs {
  std::vector<std::string> suites;
  hypart::VerifyOptions options;
};

int cmd_verify(const VerifyArgs& a) {
  std::vector<std::string> suites = a.suites;
  if (suites.empty() ||
      (suites.size() == 1 && suites.front() == "all"))
    suites = hypart::verify_suite_names();

  int failed = 0;
  for (const std::string& suite : suites) {
    const hypart::SuiteReport report =
        hypart::run_verify_suite(suite, a.options);
    std::cout << "== " << report.name << " ==\n";
    for (const std::string& line : report.lines)
      std::cout << line << "\n";
    std::cout << "suite " << report.name << ": "
              << (report.pass ? "PASS" : "FAIL") << "\n";
    if (!report.pass) ++failed;
  }
  if (suites.size() > 1)
    std::cout << "verify: " << (failed == 0 ? "PASS" : "FAIL") << " ("
              << suites.size() - failed << "/" << suites.size()
              << " suites)\n";
  return failed == 0 ? kExitOk : kExitNegative;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"balanced k-way hypergraph partitioning toolkit"};
  app.require_subcommand(1);

  EvaluateArgs ev;
  CLI::App* evaluate = app.add_subcommand(
      "evaluate", "cost, per-edge lambda and balance report of a partition");
  evaluate->add_option("--hgr", ev.hgr, "hypergraph file")->required();
  evaluate->add_option("--partition", ev.partition, "partition file")
      ->required();
  evaluate->add_option("--k", ev.k, "part count (default: max label)");
  evaluate->add_option("--metric", ev.metric, "cutnet or conn");
  evaluate->add_option("--topology", ev.topology,
                       "topology file: report hierarchical cost instead");
  evaluate->add_option("--constraints", ev.constraints,
                       "balance constraint file to check");
  evaluate->add_option("--eps", ev.eps, "uniform balance tolerance NUM/DEN");
  evaluate->add_option("--round", ev.round, "floor or ceil");

  SolveArgs so;
  CLI::App* solve = app.add_subcommand(
      "solve", "find an optimal balanced partition");
  solve->add_option("--hgr", so.hgr, "hypergraph file")->required();
  solve->add_option("--k", so.k, "part count")->required();
  solve->add_option("--eps", so.eps, "balance tolerance NUM/DEN");
  solve->add_option("--round", so.round, "floor or ceil");
  solve->add_option("--metric", so.metric, "cutnet or conn");
  solve->add_option("--budget", so.max_cost,
                    "cost bound (selects the bounded solver)");
  solve->add_option("--constraints", so.constraints,
                    "balance constraint file");
  solve->add_option("--mode", so.mode, "brute, bounded or recursive");
  solve->add_option("--out", so.out, "partition output file");
  solve->add_option("--search-budget", so.search_budget,
                    "search node cap before giving up");

  RecognizeArgs re;
  CLI::App* recognize = app.add_subcommand(
      "recognize", "decide whether a hypergraph arises from a DAG");
  recognize->add_option("--hgr", re.hgr, "hypergraph file")->required();
  recognize->add_option("--out", re.out,
                        "prefix for witness .dag/.gen files");

  ConvertArgs co;
  CLI::App* convert = app.add_subcommand(
      "convert", "convert DAG -> hypergraph or hypergraph -> witness DAG");
  convert->add_option("--dag", co.dag, "DAG input file");
  convert->add_option("--hgr", co.hgr, "hypergraph input file");
  convert->add_option("--out", co.out, "output prefix")->required();

  LayerArgs la;
  CLI::App* layer = app.add_subcommand(
      "layer", "compute or enumerate layerings of a DAG");
  layer->add_option("--dag", la.dag, "DAG input file")->required();
  layer->add_option("--out", la.out, "layering output file");
  layer->add_flag("--enumerate", la.enumerate,
                  "list all layerings with the minimum layer count");
  layer->add_option("--cap", la.cap, "enumeration cap");
  layer->add_option("--partition", la.partition,
                    "partition file to check layer-wise balance");
  layer->add_option("--k", la.k, "part count for the balance check");
  layer->add_option("--eps", la.eps, "balance tolerance NUM/DEN");
  layer->add_option("--round", la.round, "floor or ceil");

  ScheduleArgs sc;
  CLI::App* schedule = app.add_subcommand(
      "schedule", "optimal makespans of a DAG, optionally under a fixed "
      "partition");
  schedule->add_option("--dag", sc.dag, "DAG input file")->required();
  schedule->add_option("--k", sc.k, "processor count")->required();
  schedule->add_option("--partition", sc.partition,
                       "fixed node-to-processor assignment file");
  schedule->add_option("--eps", sc.eps,
                       "acceptance tolerance: mu_p <= (1+eps) * mu");
  schedule->add_option("--budget", sc.budget, "search state cap");

  AssignArgs as;
  CLI::App* assign = app.add_subcommand(
      "assign", "map parts onto hierarchy leaves");
  assign->add_option("--hgr", as.hgr, "hypergraph file")->required();
  assign->add_option("--topology", as.topology, "topology file")->required();
  assign->add_option("--partition", as.partition,
                     "partition file (labels are parts)");
  assign->add_option("--method", as.method, "brute, matching or twostep");
  assign->add_option("--eps", as.eps,
                     "balance tolerance NUM/DEN (twostep only)");
  assign->add_option("--round", as.round, "floor or ceil (twostep only)");
  assign->add_option("--budget", as.budget, "search node cap");
  assign->add_option("--out", as.out, "relabeled partition output file");

  GenerateArgs ge;
  CLI::App* generate = app.add_subcommand(
      "generate", "materialize a gadget or reduction instance as files");
  generate->add_option("--gadget", ge.gadget, "gadget name")->required();
  generate->add_option("--params", ge.params,
                       "KEY=VALUE construction parameters")
      ->take_all();
  generate->add_option("--seed", ge.seed,
                       "seed for randomized parameter draws");
  generate->add_option("--out", ge.out, "output file prefix")->required();

  VerifyArgs veargs;
  veargs.options.threads = static_cast<int>(
      std::max(1u, std::thread::hardware_concurrency()));
  CLI::App* verify = app.add_subcommand(
      "verify", "run property suites that recheck every generator "
      "certificate and solver claim");
  verify->add_option("suites", veargs.suites,
                     "suite names (default: all)");
  verify->add_option("--seed", veargs.options.seed, "base random seed");
  verify->add_option("--threads", veargs.options.threads,
                     "worker cap (results do not depend on it)");
  verify->add_option("--trials", veargs.options.trials,
                     "randomized trial count (0 = suite default)");
  verify->add_option("--lmax", veargs.options.lmax,
                     "largest grid side (grid suite)");
  verify->add_option("--n", veargs.options.n,
                     "instance size override (recursive suite)");
  verify->add_option("--k", veargs.options.k,
                     "part count override (assignment suite)");
  verify->add_option("--g1", veargs.options.g1,
                     "top level cost override (twostep suite)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (app.got_subcommand(evaluate)) return cmd_evaluate(ev);
    if (app.got_subcommand(solve)) return cmd_solve(so);
    if (app.got_subcommand(recognize)) return cmd_recognize(re);
    if (app.got_subcommand(convert)) return cmd_convert(co);
    if (app.got_subcommand(layer)) return cmd_layer(la);
    if (app.got_subcommand(schedule)) return cmd_schedule(sc);
    if (app.got_subcommand(assign)) return cmd_assign(as);
    if (app.got_subcommand(generate)) return cmd_generate(ge);
    if (app.got_subcommand(verify)) return cmd_verify(veargs);
    std::cerr << "error: no command selected\n";
    return kExitUsage;
  } catch (const hypart::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const hypart::BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kExitBudget;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
