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

#include "hypart/verify.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "hypart/dag.hpp"
#include "hypart/gadgets.hpp"
#include "hypart/hierarchy.hpp"
#include "hypart/hypergraph.hpp"
#include "hypart/oracles.hpp"
#include "hypart/rational.hpp"
#include "hypart/recognition.hpp"
#include "hypart/scheduling.hpp"
#include "hypart/solvers.hpp"

namespace hypart {
namespace {

using i64 = std::int64_t;

// ---------------------------------------------------------------------------
// Reporting
// ---------------------------------------------------------------------------

template <class... Args>
std::string cat(Args&&... args) {
  std::ostringstream os;
  (os << ... << args);
  return os.str();
}

struct Checker {
  SuiteReport report;

  explicit Checker(std::string name) { report.name = std::move(name); }

  void note(std::string s) { report.lines.push_back(std::move(s)); }

  bool check(bool ok, const std::string& what) {
    report.lines.push_back((ok ? "[ok]   " : "[FAIL] ") + what);
    if (!ok) report.pass = false;
    return ok;
  }
};

// Folds per-instance failure strings ("" = pass, "note:..." = skipped) into
// one report line. The first failure is echoed verbatim for diagnosis.
void tally(Checker& c, const std::string& claim,
           const std::vector<std::string>& results) {
  int failures = 0;
  int skips = 0;
  std::string first;
  for (std::size_t i = 0; i < results.size(); ++i) {
    const std::string& r = results[i];
    if (r.empty()) continue;
    if (r.rfind("note:", 0) == 0) {
      ++skips;
      continue;
    }
    if (failures == 0) first = cat("instance ", i, ": ", r);
    ++failures;
  }
  std::string line = cat(claim, " [", results.size() - failures, "/",
                         results.size(), " instances]");
  if (skips > 0)
    line += cat(" (", skips, " solver cross-checks skipped on budget)");
  c.check(failures == 0, line);
  if (failures > 0) c.note("       first failure: " + first);
}

// ---------------------------------------------------------------------------
// Deterministic randomness and trial parallelism
// ---------------------------------------------------------------------------

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Runs `jobs` independent bodies, each with its own seed-derived generator,
// so results are identical for every thread count. A body returns "" on
// success and a diagnostic string on failure; thrown exceptions become
// failures.
std::vector<std::string> run_jobs(
    int jobs, int threads, std::uint64_t seed,
    const std::function<std::string(int, std::mt19937_64&)>& body) {
  std::vector<std::string> out(jobs);
  const int workers = std::max(1, std::min(threads, jobs));
  std::atomic<int> next{0};
  auto work = [&]() {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= jobs) return;
      std::mt19937_64 rng(
          splitmix64(seed ^ (0x9E3779B97F4A7C15ULL * (i + 1))));
      try {
        out[i] = body(i, rng);
      } catch (const std::exception& e) {
        out[i] = cat("exception: ", e.what());
      }
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  return out;
}

i64 pick(std::mt19937_64& rng, i64 lo, i64 hi) {  // uniform in [lo, hi]
  return lo + static_cast<i64>(rng() % static_cast<std::uint64_t>(
                                           hi - lo + 1));
}

// ---------------------------------------------------------------------------
// Random instances
// ---------------------------------------------------------------------------

Hypergraph random_hypergraph(std::mt19937_64& rng, int n, int max_edges,
                             int max_pins, Weight max_weight) {
  Hypergraph h;
  h.num_nodes = n;
  std::vector<NodeId> ids(n);
  std::iota(ids.begin(), ids.end(), 0);
  const int e = static_cast<int>(pick(rng, 0, max_edges));
  const int pin_cap = std::min(max_pins, n);
  for (int j = 0; j < e; ++j) {
    std::shuffle(ids.begin(), ids.end(), rng);
    const int s = static_cast<int>(pick(rng, 2, pin_cap));
    std::vector<NodeId> pins(ids.begin(), ids.begin() + s);
    std::sort(pins.begin(), pins.end());
    h.edges.push_back(std::move(pins));
    h.weights.push_back(pick(rng, 1, max_weight));
  }
  h.normalize_and_validate();
  return h;
}

Dag random_dag(std::mt19937_64& rng, int n, int percent) {
  std::vector<NodeId> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  Dag d;
  d.num_nodes = n;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (pick(rng, 0, 99) < percent) d.arcs.push_back({order[i], order[j]});
  d.normalize_and_validate();
  return d;
}

Dag path_dag(int n) {
  Dag d;
  d.num_nodes = n;
  for (int i = 0; i + 1 < n; ++i) d.arcs.push_back({i, i + 1});
  d.normalize_and_validate();
  return d;
}

Dag chains_dag(const std::vector<int>& lengths) {
  Dag d;
  int base = 0;
  for (int len : lengths) {
    for (int i = 0; i + 1 < len; ++i) d.arcs.push_back({base + i, base + i + 1});
    base += len;
  }
  d.num_nodes = base;
  d.normalize_and_validate();
  return d;
}

bool same_hypergraph(Hypergraph a, Hypergraph b) {
  a.normalize_and_validate();
  b.normalize_and_validate();
  if (a.num_nodes != b.num_nodes || a.num_edges() != b.num_edges())
    return false;
  using EdgeWeight = std::pair<std::vector<NodeId>, Weight>;
  std::vector<EdgeWeight> ea, eb;
  for (int e = 0; e < a.num_edges(); ++e) ea.push_back({a.edges[e], a.weights[e]});
  for (int e = 0; e < b.num_edges(); ++e) eb.push_back({b.edges[e], b.weights[e]});
  std::sort(ea.begin(), ea.end());
  std::sort(eb.begin(), eb.end());
  return ea == eb;
}

i64 meta_int(const GadgetInstance& gi, const std::string& key) {
  auto it = gi.meta.find(key);
  if (it == gi.meta.end())
    throw std::runtime_error("missing meta key: " + key);
  return std::stoll(it->second);
}

Rational meta_rational(const GadgetInstance& gi, const std::string& key) {
  auto it = gi.meta.find(key);
  if (it == gi.meta.end())
    throw std::runtime_error("missing meta key: " + key);
  return Rational::parse(it->second);
}

SimpleGraph make_graph(int n, std::vector<std::pair<NodeId, NodeId>> edges) {
  SimpleGraph g;
  g.num_nodes = n;
  g.edges = std::move(edges);
  g.normalize_and_validate();
  return g;
}

SimpleGraph complete_graph(int n) {
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) edges.push_back({u, v});
  return make_graph(n, std::move(edges));
}

// ---------------------------------------------------------------------------
// Suite: solver-oracle
// ---------------------------------------------------------------------------

SuiteReport suite_solver_oracle(const VerifyOptions& opt) {
  Checker c("solver-oracle");
  const int trials = opt.trials > 0 ? opt.trials : 500;
  auto results = run_jobs(trials, opt.threads, opt.seed,
                          [&](int i, std::mt19937_64& rng) -> std::string {
    const int n = static_cast<int>(pick(rng, 2, 9));
    const Hypergraph h = random_hypergraph(rng, n, 7, 4, 3);
    const int k = static_cast<int>(pick(rng, 2, 3));
    const Rational eps = (rng() % 2) ? Rational(1, 4) : Rational(0);
    const Metric metric = (i % 2) ? Metric::kConnectivity : Metric::kCutNet;
    const BalanceSpec spec = BalanceSpec::uniform(eps);

    const auto oracle = exhaustive_optimum(h, k, spec, metric);
    const auto brute = brute_force_optimum(h, k, spec, metric);
    if (brute.has_value() != oracle.has_value())
      return "exact solver and exhaustive oracle disagree on feasibility";
    if (brute) {
      if (brute->cost != oracle->cost)
        return cat("exact solver cost ", brute->cost, " != oracle ",
                   oracle->cost);
      if (!is_balanced(h, brute->partition, k, spec))
        return "exact solver returned an unbalanced partition";
      if (cost(h, brute->partition, k, metric) != brute->cost)
        return "exact solver cost does not match its partition";
    }
    for (Weight bound = 0; bound <= 5; ++bound) {
      const auto b =
          bounded_cost_solver(h, k, eps, Rounding::kStrictFloor, bound, metric);
      const bool expect = oracle.has_value() && oracle->cost <= bound;
      if (b.has_value() != expect)
        return cat("bounded solver feasibility mismatch at bound ", bound,
                   " (oracle ", oracle ? cat("cost ", oracle->cost)
                                       : std::string("infeasible"),
                   ")");
      if (b) {
        if (b->cost != oracle->cost)
          return cat("bounded solver cost ", b->cost, " != oracle ",
                     oracle->cost, " at bound ", bound);
        if (!is_balanced(h, b->partition, k, spec))
          return cat("bounded solver partition unbalanced at bound ", bound);
        if (cost(h, b->partition, k, metric) != b->cost)
          return cat("bounded solver cost mismatch with partition at bound ",
                     bound);
      }
    }
    return "";
  });
  tally(c,
        cat("bounded and exact solvers match the exhaustive oracle on "
            "feasibility and cost for every bound in 0..5 (n<=9, |E|<=7, "
            "k in {2,3}, eps in {0,1/4})"),
        results);
  return c.report;
}

// ---------------------------------------------------------------------------
// Suite: multi-constraint
// ---------------------------------------------------------------------------

SuiteReport suite_multi_constraint(const VerifyOptions& opt) {
  Checker c("multi-constraint");
  const int trials = opt.trials > 0 ? opt.trials : 500;
  auto results = run_jobs(trials, opt.threads, opt.seed,
                          [&](int i, std::mt19937_64& rng) -> std::string {
    const int n = static_cast<int>(pick(rng, 3, 9));
    const Hypergraph h = random_hypergraph(rng, n, 7, 4, 3);
    const int k = static_cast<int>(pick(rng, 2, 3));
    const Metric metric = (i % 2) ? Metric::kConnectivity : Metric::kCutNet;

    std::vector<NodeId> ids(n);
    std::iota(ids.begin(), ids.end(), 0);
    std::shuffle(ids.begin(), ids.end(), rng);
    const int s1 = static_cast<int>(pick(rng, 1, std::max(1, n / 2)));
    const int s2 = static_cast<int>(pick(rng, 1, n - s1));
    BalanceSpec spec;
    for (int which = 0; which < 2; ++which) {
      BalanceConstraint bc;
      bc.eps = (rng() % 2) ? Rational(1, 4) : Rational(0);
      bc.mode = (rng() % 2) ? Rounding::kRelaxedCeil : Rounding::kStrictFloor;
      const int begin = which == 0 ? 0 : s1;
      const int size = which == 0 ? s1 : s2;
      bc.nodes.assign(ids.begin() + begin, ids.begin() + begin + size);
      std::sort(bc.nodes.begin(), bc.nodes.end());
      spec.constraints.push_back(std::move(bc));
    }

    const auto oracle = exhaustive_optimum(h, k, spec, metric);
    const auto sweep = bounded_cost_sweep(h, k, spec, 5, metric);
    if (sweep.size() != 6) return "sweep did not return one entry per bound";
    for (Weight bound = 0; bound <= 5; ++bound) {
      const auto& entry = sweep[static_cast<std::size_t>(bound)];
      const bool expect = oracle.has_value() && oracle->cost <= bound;
      if (entry.has_value() != expect)
        return cat("sweep feasibility mismatch at bound ", bound);
      if (entry) {
        if (entry->cost != oracle->cost)
          return cat("sweep cost ", entry->cost, " != oracle ", oracle->cost,
                     " at bound ", bound);
        if (!is_balanced(h, entry->partition, k, spec))
          return cat("sweep partition violates a constraint at bound ", bound);
        if (cost(h, entry->partition, k, metric) != entry->cost)
          return cat("sweep cost mismatch with partition at bound ", bound);
      }
    }
    const auto single = multi_constraint_bounded_solver(h, k, spec, 3, metric);
    if (single.has_value() != sweep[3].has_value())
      return "single-bound solver disagrees with sweep at bound 3";
    if (single && single->cost != sweep[3]->cost)
      return "single-bound solver cost disagrees with sweep at bound 3";
    return "";
  });
  tally(c,
        cat("two-constraint solver (disjoint sets, mixed eps and rounding) "
            "matches the exhaustive oracle for every bound in 0..5, and the "
            "sweep equals the single-bound solver"),
        results);
  return c.report;
}

// ---------------------------------------------------------------------------
// Suite: recognition
// ---------------------------------------------------------------------------

std::string check_recognition_instance(const Hypergraph& h) {
  const RecognitionResult rec = is_hyperdag(h);
  const bool ref = is_hyperdag_reference(h);
  if (rec.is_hyperdag != ref)
    return cat("peeling recognizer says ", rec.is_hyperdag ? "yes" : "no",
               ", reference predicate says ", ref ? "yes" : "no");
  if (rec.is_hyperdag) {
    if (!rec.witness) return "recognized but no witness DAG";
    if (static_cast<int>(rec.generator_of.size()) != h.num_edges())
      return "generator list size mismatch";
    for (int e = 0; e < h.num_edges(); ++e) {
      const auto& pins = h.edges[e];
      if (!std::binary_search(pins.begin(), pins.end(), rec.generator_of[e]))
        return cat("generator of edge ", e, " is not one of its pins");
    }
    if (!same_hypergraph(dag_to_hyperdag(*rec.witness).h, h))
      return "witness DAG does not regenerate the hypergraph";
  } else {
    if (rec.violating_nodes.empty()) return "rejected without a violating set";
  }
  return "";
}

SuiteReport suite_recognition(const VerifyOptions& opt) {
  Checker c("recognition");

  // Exhaustive: every hypergraph on n <= 4 nodes with at most 3 distinct
  // nonempty pin sets.
  int exhaustive_count = 0;
  int exhaustive_bad = 0;
  std::string first_bad;
  auto consider = [&](const Hypergraph& h) {
    ++exhaustive_count;
    const std::string r = check_recognition_instance(h);
    if (!r.empty()) {
      if (exhaustive_bad == 0) first_bad = r;
      ++exhaustive_bad;
    }
  };
  for (int n = 1; n <= 4; ++n) {
    std::vector<std::vector<NodeId>> subsets;
    for (int mask = 1; mask < (1 << n); ++mask) {
      std::vector<NodeId> pins;
      for (int v = 0; v < n; ++v)
        if (mask & (1 << v)) pins.push_back(v);
      subsets.push_back(std::move(pins));
    }
    const int m = static_cast<int>(subsets.size());
    auto build = [&](std::vector<int> sel) {
      Hypergraph h;
      h.num_nodes = n;
      for (int idx : sel) {
        h.edges.push_back(subsets[static_cast<std::size_t>(idx)]);
        h.weights.push_back(1);
      }
      h.normalize_and_validate();
      consider(h);
    };
    build({});
    for (int a = 0; a < m; ++a) {
      build({a});
      for (int b = a + 1; b < m; ++b) {
        build({a, b});
        for (int d = b + 1; d < m; ++d) build({a, b, d});
      }
    }
  }
  c.check(exhaustive_bad == 0,
          cat("peeling recognition equals the induced-subhypergraph reference "
              "on all ", exhaustive_count,
              " hypergraphs with <= 4 nodes and <= 3 distinct edges"));
  if (exhaustive_bad > 0) c.note("       first failure: " + first_bad);

  // Random hypergraphs, including single-pin and duplicate edges.
  const int random_trials = opt.trials > 0 ? opt.trials : 10000;
  auto random_results = run_jobs(random_trials, opt.threads, opt.seed,
                                 [&](int, std::mt19937_64& rng) -> std::string {
    const int n = static_cast<int>(pick(rng, 1, 12));
    Hypergraph h;
    h.num_nodes = n;
    std::vector<NodeId> ids(n);
    std::iota(ids.begin(), ids.end(), 0);
    const int e = static_cast<int>(pick(rng, 0, n + 2));
    for (int j = 0; j < e; ++j) {
      std::shuffle(ids.begin(), ids.end(), rng);
      const int s = static_cast<int>(pick(rng, 1, std::min(n, 5)));
      std::vector<NodeId> pins(ids.begin(), ids.begin() + s);
      std::sort(pins.begin(), pins.end());
      h.edges.push_back(std::move(pins));
      h.weights.push_back(1);
    }
    h.normalize_and_validate();
    return check_recognition_instance(h);
  });
  tally(c,
        cat("peeling recognition equals the reference on random hypergraphs "
            "with <= 12 nodes"),
        random_results);

  // Round trips: communication hypergraphs of random DAGs are recognized and
  // the witness regenerates them.
  const int dag_trials = std::max(1, random_trials / 10);
  auto dag_results = run_jobs(dag_trials, opt.threads, opt.seed + 1,
                              [&](int, std::mt19937_64& rng) -> std::string {
    const int n = static_cast<int>(pick(rng, 1, 10));
    const int percent = static_cast<int>(pick(rng, 15, 75));
    const Dag d = random_dag(rng, n, percent);
    const CommHypergraph ch = dag_to_hyperdag(d);
    const RecognitionResult rec = is_hyperdag(ch.h);
    if (!rec.is_hyperdag)
      return "communication hypergraph of a DAG was rejected";
    if (!rec.witness) return "recognized but no witness DAG";
    if (!same_hypergraph(dag_to_hyperdag(*rec.witness).h, ch.h))
      return "witness round trip changed the hypergraph";
    return "";
  });
  tally(c, "DAG -> hypergraph -> witness DAG round trips preserve the "
           "communication hypergraph", dag_results);
  return c.report;
}

// ---------------------------------------------------------------------------
// Suite: grid
// ---------------------------------------------------------------------------

SuiteReport suite_grid(const VerifyOptions& opt) {
  Checker c("grid");
  const int lmax = opt.lmax > 0 ? opt.lmax : 4;
  for (i64 ell = 2; ell <= lmax; ++ell) {
    const GridGadget g = grid_gadget(ell);
    const int n2 = static_cast<int>(ell * ell);
    if (g.h.num_nodes != n2) {
      c.check(false, cat("grid of side ", ell, " has ", g.h.num_nodes,
                         " nodes, expected ", n2));
      continue;
    }
    i64 checked = 0;
    i64 violations = 0;
    i64 min_slack = -1;
    std::string first_bad;
    auto consider = [&](std::uint64_t mask) {
      i64 pop = 0;
      Partition p(static_cast<std::size_t>(n2), 0);
      for (int v = 0; v < n2; ++v)
        if (mask & (1ULL << v)) {
          p[static_cast<std::size_t>(v)] = 1;
          ++pop;
        }
      if (pop == 0 || pop == n2) return;
      const i64 t0 = std::min(pop, n2 - pop);
      const i64 cut = cost(g.h, p, 2, Metric::kCutNet);
      const i64 slack = cut * cut - t0;
      ++checked;
      if (min_slack < 0 || slack < min_slack) min_slack = slack;
      if (slack < 0) {
        if (violations == 0)
          first_bad = cat("mask ", mask, ": cut ", cut, ", smaller side ", t0);
        ++violations;
      }
    };
    if (n2 <= 12) {
      for (std::uint64_t mask = 1; mask + 1 < (1ULL << n2); ++mask)
        consider(mask);
    } else {
      std::mt19937_64 rng(splitmix64(opt.seed ^ (0x100ULL + ell)));
      const i64 samples = 100000;
      for (i64 s = 0; s < samples; ++s)
        consider(rng() & ((1ULL << n2) - 1));
    }
    c.check(violations == 0,
            cat("side ", ell, ": every 2-coloring cuts at least "
                "sqrt(smaller side) edges, i.e. cut^2 >= min(|S|, ", n2,
                "-|S|) over ", checked,
                (n2 <= 12 ? " exhaustive" : " sampled"),
                " colorings (min slack ", min_slack, ")"));
    if (violations > 0) c.note("       first violation: " + first_bad);
  }
  return c.report;
}

// ---------------------------------------------------------------------------
// Suite: block
// ---------------------------------------------------------------------------

SuiteReport suite_block(const VerifyOptions& opt) {
  Checker c("block");
  (void)opt;
  for (i64 b = 3; b <= 5; ++b) {
    const Hypergraph h = block_gadget(b);
    i64 worst = -1;
    i64 best = -1;
    i64 violations = 0;
    for (std::uint64_t mask = 1; mask + 1 < (1ULL << b); ++mask) {
      Partition p(static_cast<std::size_t>(b), 0);
      for (int v = 0; v < b; ++v)
        if (mask & (1ULL << v)) p[static_cast<std::size_t>(v)] = 1;
      const i64 cut = cost(h, p, 2, Metric::kCutNet);
      if (cut < b - 1) ++violations;
      worst = std::max(worst, cut);
      best = (best < 0) ? cut : std::min(best, cut);
    }
    c.check(violations == 0 && best == b - 1,
            cat("block of size ", b, ": every proper split cuts >= ", b - 1,
                " edges and the bound is attained (min ", best, ", max ",
                worst, ")"));
  }
  return c.report;
}

// ---------------------------------------------------------------------------
// Suite: spes (smallest p-edge selection)
// ---------------------------------------------------------------------------

SuiteReport suite_spes(const VerifyOptions& opt) {
  Checker c("spes");

  struct Job {
    SimpleGraph g;
    i64 p;
  };
  std::vector<Job> jobs;
  for (int n = 2; n <= 4; ++n) {
    std::vector<std::pair<NodeId, NodeId>> pairs;
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v) pairs.push_back({u, v});
    const int pair_count = static_cast<int>(pairs.size());
    for (int mask = 1; mask < (1 << pair_count); ++mask) {
      std::vector<std::pair<NodeId, NodeId>> edges;
      for (int j = 0; j < pair_count; ++j)
        if (mask & (1 << j)) edges.push_back(pairs[static_cast<std::size_t>(j)]);
      const SimpleGraph g = make_graph(n, std::move(edges));
      for (i64 p = 1; p <= g.num_edges(); ++p) jobs.push_back({g, p});
    }
  }

  auto results = run_jobs(static_cast<int>(jobs.size()), opt.threads, opt.seed,
                          [&](int i, std::mt19937_64&) -> std::string {
    const Job& job = jobs[static_cast<std::size_t>(i)];
    const i64 claim = min_covered_nodes(job.g, job.p);
    const GadgetInstance gi =
        spes_reduction(job.g, job.p, Rational(0), 2, SpesVariant::kGeneral);
    if (!gi.partition) return "missing planted partition";
    if (!is_balanced(gi.h, *gi.partition, 2, gi.spec))
      return "planted partition is not a balanced bisection";
    if (cost(gi.h, *gi.partition, 2, Metric::kCutNet) < claim)
      return "planted partition beats the covering optimum";
    const auto opt_res =
        brute_force_optimum(gi.h, 2, gi.spec, Metric::kCutNet, 50000000);
    if (!opt_res) return "no balanced bisection exists";
    if (opt_res->cost != claim)
      return cat("bisection optimum ", opt_res->cost,
                 " != minimum nodes covered by ", job.p, " edges = ", claim);
    return "";
  });
  tally(c,
        cat("general reduction: balanced-bisection optimum equals the "
            "minimum node count covered by p edges, for every graph on "
            "<= 4 nodes and every p (", jobs.size(), " instances)"),
        results);

  // Bounded-degree variant: structural certificate.
  const std::vector<SimpleGraph> small = {
      make_graph(2, {{0, 1}}),
      make_graph(3, {{0, 1}, {1, 2}}),
      complete_graph(3),
      make_graph(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}),
  };
  int structural_count = 0;
  int structural_bad = 0;
  std::string first_bad;
  for (const SimpleGraph& g : small) {
    for (i64 p = 1; p <= g.num_edges(); ++p) {
      ++structural_count;
      std::string r;
      try {
        const GadgetInstance gi =
            spes_reduction(g, p, Rational(0), 2, SpesVariant::kDegree2);
        const i64 n_prime = meta_int(gi, "n_prime");
        const i64 unit = meta_int(gi, "unit");
        const i64 ell_a = meta_int(gi, "ell_a");
        const i64 cap = meta_int(gi, "cap");
        const i64 size_a_prime = meta_int(gi, "size_a_prime");
        const i64 e_cnt = g.num_edges();
        if (gi.h.num_nodes != n_prime)
          r = "node count disagrees with the recorded size";
        std::vector<int> deg(static_cast<std::size_t>(gi.h.num_nodes), 0);
        for (const auto& pins : gi.h.edges)
          for (NodeId v : pins) ++deg[static_cast<std::size_t>(v)];
        if (r.empty() && *std::max_element(deg.begin(), deg.end()) > 2)
          r = "a node has degree above 2";
        if (r.empty()) {
          // The edge-conflict graph (edges sharing a node) must be
          // 2-colorable: no node may see the same class twice.
          std::vector<std::vector<int>> of_node(
              static_cast<std::size_t>(gi.h.num_nodes));
          for (int e = 0; e < gi.h.num_edges(); ++e)
            for (NodeId v : gi.h.edges[e])
              of_node[static_cast<std::size_t>(v)].push_back(e);
          std::vector<int> color(static_cast<std::size_t>(gi.h.num_edges()),
                                 -1);
          for (int start = 0; start < gi.h.num_edges() && r.empty(); ++start) {
            if (color[static_cast<std::size_t>(start)] != -1) continue;
            color[static_cast<std::size_t>(start)] = 0;
            std::vector<int> stack = {start};
            while (!stack.empty() && r.empty()) {
              const int e = stack.back();
              stack.pop_back();
              for (NodeId v : gi.h.edges[static_cast<std::size_t>(e)])
                for (int f : of_node[static_cast<std::size_t>(v)]) {
                  if (f == e) continue;
                  if (color[static_cast<std::size_t>(f)] == -1) {
                    color[static_cast<std::size_t>(f)] =
                        1 - color[static_cast<std::size_t>(e)];
                    stack.push_back(f);
                  } else if (color[static_cast<std::size_t>(f)] ==
                             color[static_cast<std::size_t>(e)]) {
                    r = "edge classes are not 2-colorable";
                  }
                }
            }
          }
        }
        if (r.empty() && ell_a < g.num_nodes)
          r = "selection grid is smaller than the graph";
        if (r.empty() &&
            ell_a * ell_a + (e_cnt - p) * unit + g.num_nodes != cap)
          r = "blue-side sizing identity fails";
        if (r.empty() && size_a_prime + p * unit != n_prime - cap)
          r = "red-side sizing identity fails";
        if (r.empty()) {
          if (!gi.partition) {
            r = "missing planted partition";
          } else if (!is_balanced(gi.h, *gi.partition, 2, gi.spec)) {
            r = "planted partition is not balanced";
          } else {
            const i64 reds = std::count(gi.partition->begin(),
                                        gi.partition->end(), 1);
            if (reds != n_prime - cap)
              r = "planted red side does not have the forced size";
          }
        }
      } catch (const std::exception& e) {
        r = cat("exception: ", e.what());
      }
      if (!r.empty()) {
        if (structural_bad == 0)
          first_bad = cat("graph with ", g.num_nodes, " nodes, p=", p, ": ", r);
        ++structural_bad;
      }
    }
  }
  c.check(structural_bad == 0,
          cat("bounded-degree variant: degree <= 2, 2-colorable edge classes, "
              "sizing identities and planted balance hold (",
              structural_count, " instances)"));
  if (structural_bad > 0) c.note("       first failure: " + first_bad);
  return c.report;
}

// ---------------------------------------------------------------------------
// Suite: ovp (orthogonal vectors)
// ---------------------------------------------------------------------------

SuiteReport suite_ovp(const VerifyOptions& opt) {
  Checker c("ovp");
  const int trials = opt.trials > 0 ? opt.trials : 200;
  auto results = run_jobs(trials, opt.threads, opt.seed,
                          [&](int i, std::mt19937_64& rng) -> std::string {
    const int m = static_cast<int>(pick(rng, 2, 4));
    const int dim = static_cast<int>(pick(rng, 1, 4));
    std::vector<std::vector<int>> vectors(static_cast<std::size_t>(m));
    for (auto& v : vectors)
      for (int j = 0; j < dim; ++j) v.push_back(static_cast<int>(rng() % 2));

    const GadgetInstance gi = ovp_reduction(vectors);
    const bool oracle = has_orthogonal_pair(vectors);
    const bool zero = zero_cost_feasible(gi.h, gi.spec);
    if (zero != oracle)
      return cat("zero-cost feasibility says ", zero ? "yes" : "no",
                 " but an orthogonal pair ", oracle ? "exists" : "does not");
    if (gi.partition.has_value() != oracle)
      return "planted partition presence disagrees with the oracle";
    if (gi.partition) {
      if (cost(gi.h, *gi.partition, 2, Metric::kConnectivity) != 0)
        return "planted partition has nonzero cost";
      if (!is_balanced(gi.h, *gi.partition, 2, gi.spec))
        return "planted partition violates a constraint";
    }
    if (i % 10 == 0) {
      try {
        const auto s = multi_constraint_bounded_solver(
            gi.h, 2, gi.spec, 0, Metric::kConnectivity, 200000000);
        if (s.has_value() != oracle)
          return "bounded solver disagrees with the orthogonality oracle";
        if (s && (cost(gi.h, s->partition, 2, Metric::kConnectivity) != 0 ||
                  !is_balanced(gi.h, s->partition, 2, gi.spec)))
          return "bounded solver returned an invalid zero-cost partition";
      } catch (const BudgetExceeded&) {
        return "note: solver cross-check skipped";
      }
    }
    return "";
  });
  tally(c,
        "reduction optimum is zero exactly when an orthogonal pair exists "
        "(m <= 4 vectors, dimension <= 4; every 10th instance cross-checked "
        "against the bounded solver)",
        results);
  return c.report;
}

// ---------------------------------------------------------------------------
// Suite: coloring
// ---------------------------------------------------------------------------

SuiteReport suite_coloring(const VerifyOptions& opt) {
  Checker c("coloring");
  const int random_trials = opt.trials > 0 ? opt.trials : 20;
  const int jobs = random_trials + 2;
  auto results = run_jobs(jobs, opt.threads, opt.seed,
                          [&](int i, std::mt19937_64& rng) -> std::string {
    SimpleGraph g;
    if (i == 0) {
      g = complete_graph(3);  // triangle: 3-colorable
    } else if (i == 1) {
      g = complete_graph(4);  // K4: not 3-colorable
    } else {
      const int n = static_cast<int>(pick(rng, 2, 5));
      std::vector<std::pair<NodeId, NodeId>> edges;
      for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
          if (rng() % 100 < 55) edges.push_back({u, v});
      g = make_graph(n, std::move(edges));
    }

    const bool oracle = is_three_colorable(g);
    if (i == 0 && !oracle) return "triangle suddenly not 3-colorable";
    if (i == 1 && oracle) return "K4 suddenly 3-colorable";

    const GadgetInstance gi = coloring_reduction(g);
    const bool zero = zero_cost_feasible(gi.h, gi.spec);
    if (zero != oracle)
      return cat("zero-cost feasibility says ", zero ? "yes" : "no",
                 " but the graph is ", oracle ? "" : "not ", "3-colorable");
    if (gi.partition.has_value() != oracle)
      return "planted partition presence disagrees with colorability";
    if (gi.partition) {
      if (cost(gi.h, *gi.partition, 2, Metric::kConnectivity) != 0)
        return "planted partition has nonzero cost";
      if (!is_balanced(gi.h, *gi.partition, 2, gi.spec))
        return "planted partition violates a constraint";
    }
    const i64 expect_constraints = 1 + 2 * g.num_nodes + 3 * g.num_edges();
    if (static_cast<i64>(gi.spec.constraints.size()) != expect_constraints)
      return "constraint count differs from the recorded formula";
    if (g.num_nodes <= 3) {
      try {
        const auto s = multi_constraint_bounded_solver(
            gi.h, 2, gi.spec, 0, Metric::kConnectivity, 200000000);
        if (s.has_value() != oracle)
          return "bounded solver disagrees with the 3-colorability oracle";
      } catch (const BudgetExceeded&) {
        return "note: solver cross-check skipped";
      }
    }
    return "";
  });
  tally(c,
        "reduction optimum is zero exactly when the graph is 3-colorable "
        "(triangle yes, K4 no, plus random graphs on <= 5 nodes; solver "
        "cross-checks on <= 3 nodes)",
        results);
  return c.report;
}

// ---------------------------------------------------------------------------
// Suite: recursive
// ---------------------------------------------------------------------------

SuiteReport suite_recursive(const VerifyOptions& opt) {
  Checker c("recursive");
  std::vector<i64> sizes;
  if (opt.n > 0) {
    sizes.push_back(opt.n);
  } else {
    sizes = {24, 48};
  }
  std::map<i64, i64> rec_cost;
  const BalanceSpec spec = BalanceSpec::uniform(Rational(0));
  for (i64 n : sizes) {
    try {
      const GadgetInstance gi = recursive_counterexample(n);
      const i64 direct_claim = meta_int(gi, "direct_optimum");
      const i64 lower = meta_int(gi, "recursive_lower");
      bool ok = true;
      ok &= c.check(gi.partition &&
                        is_balanced(gi.h, *gi.partition, 4, spec) &&
                        cost(gi.h, *gi.partition, 4, Metric::kCutNet) ==
                            direct_claim,
                    cat("n=", n, ": planted 4-way partition is balanced and "
                        "cuts exactly ", direct_claim, " edges"));
      const auto direct =
          brute_force_optimum(gi.h, 4, spec, Metric::kCutNet, 200000000);
      ok &= c.check(direct.has_value() && direct->cost == direct_claim,
                    cat("n=", n, ": direct 4-way optimum is ", direct_claim,
                        " (exact search found ",
                        direct ? std::to_string(direct->cost)
                               : std::string("infeasible"),
                        ")"));
      const RecursiveResult rec = recursive_partitioner(
          gi.h, {2, 2}, Rational(0), Rounding::kStrictFloor, Metric::kCutNet,
          200000000);
      ok &= c.check(
          is_balanced(gi.h, rec.hier.leaf_of, 4, spec) &&
              cost(gi.h, rec.hier.leaf_of, 4, Metric::kCutNet) == rec.cost,
          cat("n=", n, ": recursive bisection output is balanced and its "
              "cost ", rec.cost, " matches its partition"));
      ok &= c.check(rec.cost >= lower && lower == n / 12 - 1,
                    cat("n=", n, ": recursive bisection cost ", rec.cost,
                        " >= n/12 - 1 = ", n / 12 - 1));
      if (ok) rec_cost[n] = rec.cost;
    } catch (const std::exception& e) {
      c.check(false, cat("n=", n, ": exception: ", e.what()));
    }
  }
  if (rec_cost.count(24) && rec_cost.count(48)) {
    c.check(rec_cost[48] > rec_cost[24],
            cat("suboptimality grows with n: ratio ", rec_cost[48],
                "/5 at n=48 exceeds ", rec_cost[24], "/5 at n=24, while the "
                "direct optimum stays 5"));
  }
  return c.report;
}

// ---------------------------------------------------------------------------
// Suite: twostep
// ---------------------------------------------------------------------------

SuiteReport suite_twostep(const VerifyOptions& opt) {
  Checker c("twostep");
  const int trials = opt.trials > 0 ? opt.trials : 100;

  auto results = run_jobs(trials, opt.threads, opt.seed,
                          [&](int, std::mt19937_64& rng) -> std::string {
    const int n = static_cast<int>(pick(rng, 4, 9));
    const Hypergraph h = random_hypergraph(rng, n, 6, 3, 2);
    const int g1 = opt.g1 > 0 ? opt.g1 : ((rng() % 2) ? 2 : 4);
    HierTopology t;
    t.branching = {2, 2};
    t.level_costs = {Rational(g1), Rational(1)};
    const Rational eps = (rng() % 2) ? Rational(1, 4) : Rational(0);

    const auto hier = hierarchical_optimum(h, t, eps, Rounding::kStrictFloor);
    std::optional<TwoStepResult> ts;
    try {
      ts = two_step(h, t, eps, Rounding::kStrictFloor);
    } catch (const BudgetExceeded&) {
      throw;
    } catch (const std::runtime_error&) {
      // phase one infeasible
    }
    if (hier.has_value() != ts.has_value())
      return cat("hierarchical optimum ",
                 hier ? "exists" : "does not exist",
                 " but two-step ", ts ? "succeeded" : "failed");
    if (!hier) return "";
    if (hierarchical_cost(h, hier->leaf_of, t) != hier->cost)
      return "hierarchical optimum cost does not match its labels";
    if (!is_balanced(h, hier->leaf_of, 4, BalanceSpec::uniform(eps)))
      return "hierarchical optimum is unbalanced";
    if (hierarchical_cost(h, ts->partition.leaf_of, t) != ts->cost)
      return "two-step cost does not match its labels";
    if (ts->cost < hier->cost) return "two-step beat the exact optimum";
    if (ts->cost > Rational(g1) * hier->cost)
      return cat("two-step cost ", ts->cost.to_string(),
                 " exceeds g1 * optimum = ",
                 (Rational(g1) * hier->cost).to_string());
    return "";
  });
  tally(c,
        "random instances (k=4, two levels): the two-step result is bracketed "
        "by the hierarchical optimum and g1 times it, with matching "
        "infeasibility",
        results);

  // The separating family: two-step lands a constant factor above the
  // hierarchical optimum.
  try {
    HierTopology t;
    t.branching = {2, 2};
    t.level_costs = {Rational(4), Rational(1)};
    const i64 m = 16;
    const GadgetInstance gi = twostep_counterexample(4, t, m);
    const i64 standard_claim = meta_int(gi, "standard_optimum");
    const Rational hier_claim = meta_rational(gi, "hier_optimum");
    const Rational two_claim = meta_rational(gi, "two_step_cost");
    const Rational extra = meta_rational(gi, "extra_over_flat");

    c.check(gi.partition &&
                is_balanced(gi.h, *gi.partition, 4,
                            BalanceSpec::uniform(Rational(0))) &&
                hierarchical_cost(gi.h, *gi.partition, t) == hier_claim,
            cat("separating instance (n=", gi.h.num_nodes,
                "): planted leaf assignment is balanced with hierarchical "
                "cost ", hier_claim.to_string()));

    const auto flat = brute_force_optimum(
        gi.h, 4, BalanceSpec::uniform(Rational(0)), Metric::kConnectivity,
        400000000);
    c.check(flat.has_value() && flat->cost == standard_claim,
            cat("flat connectivity optimum is ", standard_claim,
                " (exact search found ",
                flat ? std::to_string(flat->cost) : std::string("infeasible"),
                ")"));

    const auto hopt = hierarchical_optimum(gi.h, t, Rational(0),
                                           Rounding::kStrictFloor, 400000000);
    c.check(hopt.has_value() && hopt->cost == hier_claim,
            cat("hierarchical optimum is ", hier_claim.to_string(),
                " (exact search found ",
                hopt ? hopt->cost.to_string() : std::string("infeasible"),
                ")"));

    const TwoStepResult ts =
        two_step(gi.h, t, Rational(0), Rounding::kStrictFloor, 400000000);
    c.check(ts.flat_cost == standard_claim && ts.cost == two_claim &&
                hierarchical_cost(gi.h, ts.partition.leaf_of, t) == ts.cost,
            cat("two-step heuristic: phase one cost ", ts.flat_cost,
                ", final hierarchical cost ", ts.cost.to_string(),
                " (recorded ", two_claim.to_string(), ")"));

    if (hopt && hopt->cost > Rational(0)) {
      const Rational ratio = ts.cost / hopt->cost;
      const Rational bound =
          Rational(2 * 4 + 1) / (Rational(3) + extra / Rational(m));
      c.check(ratio >= bound,
              cat("suboptimality ratio ", ratio.to_string(),
                  " >= (2*g1+1)/(3 + extra/m) = ", bound.to_string(),
                  " (exact rational arithmetic)"));
      c.check(ratio >= Rational(4) / Rational(2),
              cat("suboptimality ratio ", ratio.to_string(),
                  " >= g1/2 = ", (Rational(4) / Rational(2)).to_string()));
    }
  } catch (const std::exception& e) {
    c.check(false, cat("separating instance: exception: ", e.what()));
  }
  return c.report;
}

// ---------------------------------------------------------------------------
// Suite: assignment
// ---------------------------------------------------------------------------

SuiteReport suite_assignment(const VerifyOptions& opt) {
  Checker c("assignment");
  const int trials = opt.trials > 0 ? opt.trials : 200;
  auto results = run_jobs(trials, opt.threads, opt.seed,
                          [&](int, std::mt19937_64& rng) -> std::string {
    const std::array<int, 3> ks = {4, 6, 8};
    const int k = opt.k > 0 ? opt.k : ks[static_cast<std::size_t>(rng() % 3)];
    if (k < 4 || k % 2 != 0) return cat("unsupported k=", k, " for matching");
    const int g1 = static_cast<int>(pick(rng, 1, 4));
    HierTopology t;
    t.branching = {k / 2, 2};
    t.level_costs = {Rational(g1), Rational(1)};
    const Hypergraph h = random_hypergraph(rng, k, k + 2, 4, 3);
    Partition p(static_cast<std::size_t>(k));
    std::iota(p.begin(), p.end(), 0);

    const AssignmentResult brute = optimal_assignment_bruteforce(h, p, t);
    const AssignmentResult match = optimal_assignment_matching(h, p, t);
    if (match.cost != brute.cost)
      return cat("matching assignment cost ", match.cost.to_string(),
                 " != exhaustive ", brute.cost.to_string());
    std::vector<int> seen(static_cast<std::size_t>(k), 0);
    for (int leaf : match.leaf_of_part) {
      if (leaf < 0 || leaf >= k) return "matching produced an invalid leaf";
      ++seen[static_cast<std::size_t>(leaf)];
    }
    for (int s : seen)
      if (s != 1) return "matching assignment is not a bijection";
    Partition relabeled(p.size());
    for (std::size_t v = 0; v < p.size(); ++v)
      relabeled[v] = match.leaf_of_part[static_cast<std::size_t>(p[v])];
    if (hierarchical_cost(h, relabeled, t) != match.cost)
      return "matching cost does not match its own assignment";
    return "";
  });
  tally(c,
        "matching-based assignment equals exhaustive assignment on random "
        "contracted instances (k in {4,6,8}, pair leaves, g1 in 1..4)",
        results);

  // Assignment counting: closed form vs explicit enumeration, with frozen
  // values for small branchings.
  struct Pinned {
    std::vector<int> branching;
    i64 expected;  // -1: enumeration equality only
  };
  const std::vector<Pinned> table = {
      {{2}, 1},          {{3}, 1},         {{4}, 1},       {{5}, 1},
      {{2, 2}, 3},       {{2, 3}, 10},     {{3, 2}, 15},   {{2, 4}, 35},
      {{4, 2}, 105},     {{2, 5}, -1},     {{5, 2}, -1},   {{3, 3}, 280},
      {{3, 4}, -1},      {{2, 2, 2}, 315},
  };
  int counting_bad = 0;
  std::string first_bad;
  i64 largest = 0;
  for (const Pinned& row : table) {
    HierTopology t;
    t.branching = row.branching;
    const int d = static_cast<int>(row.branching.size());
    for (int i = 0; i < d; ++i) t.level_costs.push_back(Rational(d - i));
    std::string r;
    try {
      const std::uint64_t count = count_assignments(t);
      largest = std::max<i64>(largest, static_cast<i64>(count));
      if (row.expected >= 0 &&
          count != static_cast<std::uint64_t>(row.expected))
        r = cat("closed form gives ", count, ", frozen value is ",
                row.expected);
      if (r.empty()) {
        const auto all = enumerate_assignments(t, 2000000);
        if (all.size() != count)
          r = cat("enumeration lists ", all.size(), " classes, closed form ",
                  count);
        const int k = t.num_leaves();
        for (const auto& a : all) {
          std::vector<int> seen(static_cast<std::size_t>(k), 0);
          for (int leaf : a) {
            if (leaf < 0 || leaf >= k) {
              r = "enumerated assignment has an out-of-range leaf";
              break;
            }
            ++seen[static_cast<std::size_t>(leaf)];
          }
          for (int s : seen)
            if (s != 1) r = "enumerated assignment is not a bijection";
          if (!r.empty()) break;
        }
      }
    } catch (const std::exception& e) {
      r = cat("exception: ", e.what());
    }
    if (!r.empty()) {
      std::string name = "(";
      for (std::size_t i = 0; i < row.branching.size(); ++i)
        name += (i ? "," : "") + std::to_string(row.branching[i]);
      name += ")";
      if (counting_bad == 0) first_bad = name + ": " + r;
      ++counting_bad;
    }
  }
  c.check(counting_bad == 0,
          cat("class counting matches explicit enumeration for ",
              table.size(), " branchings (largest count ", largest,
              "), including frozen values 3, 10, 15, 35, 105, 280, 315"));
  if (counting_bad > 0) c.note("       first failure: " + first_bad);
  return c.report;
}

// ---------------------------------------------------------------------------
// Suite: scheduling
// ---------------------------------------------------------------------------

SuiteReport suite_scheduling(const VerifyOptions& opt) {
  Checker c("scheduling");
  const i64 budget = 30000000;

  // Paths: a chain of n unit tasks needs exactly n steps on any k.
  {
    int bad = 0;
    for (int n = 1; n <= 20 && bad == 0; ++n)
      for (int k = 2; k <= 3; ++k)
        if (optimal_makespan(path_dag(n), k) != n) ++bad;
    c.check(bad == 0,
            "a path of n tasks has makespan exactly n for n <= 20, k in "
            "{2,3}");
  }
  // k equal chains of length L finish in exactly L steps on k processors.
  {
    int bad = 0;
    for (int k = 2; k <= 4 && bad == 0; ++k)
      for (int len = 1; len <= 5; ++len) {
        std::vector<int> lens(static_cast<std::size_t>(k), len);
        if (optimal_makespan(chains_dag(lens), k) != len) ++bad;
      }
    c.check(bad == 0,
            "k equal chains of length L have makespan exactly L = n/k "
            "(k in {2,3,4}, L <= 5)");
    c.check(optimal_makespan(chains_dag({3, 1}), 2) == 3,
            "two uneven chains (3 and 1) finish in 3 steps on 2 processors");
  }

  // Grouping hardness on path unions: the fixed placement is flawless
  // exactly when the numbers split into groups of sum b.
  struct PathCase {
    std::vector<i64> numbers;
    int t;
    i64 b;
  };
  const std::vector<PathCase> cases = {
      {{3, 4, 5}, 1, 12},
      {{3, 3, 4, 4, 5, 5}, 2, 12},
      {{3, 3, 3, 5, 5, 5}, 2, 12},
  };
  for (const PathCase& pc : cases) {
    try {
      const GadgetInstance gi =
          scheduling_hardness_paths(pc.numbers, pc.t, pc.b);
      const i64 claim = meta_int(gi, "makespan");
      const bool oracle = multiset_groups_exist(pc.numbers, pc.t, pc.b);
      const i64 mu = optimal_makespan(*gi.dag, 2, budget);
      const i64 mu_p =
          optimal_makespan_fixed_partition(*gi.dag, *gi.partition, 2, budget);
      std::string nums;
      for (std::size_t i = 0; i < pc.numbers.size(); ++i)
        nums += (i ? "," : "") + std::to_string(pc.numbers[i]);
      c.check(mu == claim && claim == 2 * pc.t * pc.b,
              cat("numbers {", nums, "}: unconstrained makespan ", mu,
                  " equals 2tb = ", 2 * pc.t * pc.b));
      c.check((mu_p == mu) == oracle,
              cat("numbers {", nums, "}: fixed placement is flawless (mu_p=",
                  mu_p, " vs mu=", mu, ") exactly when the numbers split "
                  "into ", pc.t, " groups of sum ", pc.b,
                  oracle ? " (they do)" : " (they do not)"));
      const ScheduleBalanceReport rep =
          schedule_balance_check(*gi.dag, *gi.partition, 2, Rational(0),
                                 budget);
      c.check(rep.mu == mu && rep.mu_p == mu_p && rep.accepted == oracle,
              cat("numbers {", nums, "}: the balance check report agrees "
                  "(accepted=", rep.accepted ? "yes" : "no", ")"));
    } catch (const std::exception& e) {
      c.check(false, cat("path-union case: exception: ", e.what()));
    }
  }

  // Clique hardness at bounded height: the layered placement is flawless
  // exactly when the graph has an L-clique.
  struct CliqueCase {
    SimpleGraph g;
    int level;
    std::string name;
  };
  const std::vector<CliqueCase> clique_cases = {
      {complete_graph(4), 3, "K4, L=3"},
      {complete_graph(4), 4, "K4, L=4"},
      {make_graph(4, {{0, 1}, {1, 2}, {2, 3}}), 3, "P4, L=3"},
  };
  for (const CliqueCase& cc : clique_cases) {
    try {
      const GadgetInstance gi =
          scheduling_hardness_bounded_height(cc.g, cc.level);
      const i64 claim = meta_int(gi, "makespan");
      const bool oracle = has_clique(cc.g, cc.level);
      const i64 mu = optimal_makespan(*gi.dag, 2, budget);
      const i64 mu_p =
          optimal_makespan_fixed_partition(*gi.dag, *gi.partition, 2, budget);
      c.check(mu == claim,
              cat(cc.name, ": unconstrained makespan ", mu,
                  " equals nodes+edges = ", claim));
      c.check((mu_p == mu) == oracle,
              cat(cc.name, ": two-color placement is flawless (mu_p=", mu_p,
                  " vs mu=", mu, ") exactly when a ", cc.level,
                  "-clique exists", oracle ? " (it does)" : " (it does not)"));
    } catch (const std::exception& e) {
      c.check(false, cat(cc.name, ": exception: ", e.what()));
    }
  }

  // Schedule plumbing sanity.
  {
    const Dag p3 = path_dag(3);
    Schedule good;
    good.proc = {0, 0, 0};
    good.time = {2, 5, 9};
    Schedule bad = good;
    bad.time = {2, 5, 5};
    const Schedule norm = normalize_times(good);
    c.check(validate_schedule(p3, good, 1) && !validate_schedule(p3, bad, 1) &&
                validate_schedule(p3, norm, 1) && norm.makespan() == 3 &&
                norm.time == std::vector<i64>({1, 2, 3}),
            "schedule validation accepts a legal chain schedule, rejects a "
            "time collision, and time normalization compacts to makespan 3");
    (void)opt;
  }
  return c.report;
}

// ---------------------------------------------------------------------------
// Suite: enforce
// ---------------------------------------------------------------------------

SuiteReport suite_enforce(const VerifyOptions& opt) {
  Checker c("enforce");
  (void)opt;

  // Frozen gadget sizes, derived once by hand from the capacity arithmetic.
  struct Frozen {
    i64 size_s, h;
    Rational eps;
    EnforceMode mode;
    i64 red, blue, total;
  };
  const std::vector<Frozen> frozen = {
      {3, 1, Rational(1, 4), EnforceMode::kAtMost, 4, 2, 9},
      {3, 1, Rational(1, 4), EnforceMode::kAtLeast, 6, 8, 17},
      {2, 1, Rational(1, 4), EnforceMode::kAtMost, 4, 3, 9},
      {4, 1, Rational(1, 4), EnforceMode::kAtMost, 4, 1, 9},
      {4, 2, Rational(1, 4), EnforceMode::kAtLeast, 5, 8, 17},
      {3, 1, Rational(0), EnforceMode::kExact, 2, 1, 6},
  };
  {
    int bad = 0;
    std::string first;
    for (const Frozen& f : frozen) {
      const EnforceCounts ec = enforce_set(f.size_s, f.h, f.eps, 2, f.mode);
      if (ec.fixed_red != f.red || ec.fixed_blue != f.blue ||
          ec.total != f.total) {
        if (bad == 0)
          first = cat("S=", f.size_s, ", h=", f.h, ", eps=", f.eps.to_string(),
                      ": got red=", ec.fixed_red, ", blue=", ec.fixed_blue,
                      ", total=", ec.total, ", frozen red=", f.red, ", blue=",
                      f.blue, ", total=", f.total);
        ++bad;
      }
    }
    c.check(bad == 0, cat("gadget sizes match ", frozen.size(),
                          " frozen hand-computed examples"));
    if (bad > 0) c.note("       first failure: " + first);
  }

  // Exhaustive certificate: for every S-size, h, eps and mode, a coloring
  // of S + pads extends to a balanced partition exactly when the mode allows
  // the red count, with pools held at their designated colors.
  {
    i64 combos = 0;
    i64 rejected = 0;
    int bad = 0;
    std::string first;
    const std::array<Rational, 2> epss = {Rational(0), Rational(1, 4)};
    const std::array<EnforceMode, 3> modes = {
        EnforceMode::kAtMost, EnforceMode::kAtLeast, EnforceMode::kExact};
    for (i64 s = 1; s <= 5; ++s)
      for (i64 h = 0; h <= s; ++h)
        for (const Rational& eps : epss)
          for (EnforceMode mode : modes) {
            ++combos;
            std::string r;
            try {
              const EnforceCounts ec = enforce_set(s, h, eps, 2, mode);
              const GadgetInstance inst = enforce_instance(ec);
              const i64 set_end = meta_int(inst, "set_end");
              const i64 pad_end = meta_int(inst, "pad_end");
              const i64 red_end = meta_int(inst, "red_pool_end");
              if (set_end != s || pad_end - set_end != ec.pads)
                r = "instance layout disagrees with the counts";
              for (i64 x = 0; x <= s && r.empty(); ++x) {
                bool exists = false;
                for (i64 y = 0; y <= ec.pads && r.empty(); ++y) {
                  Partition p(
                      static_cast<std::size_t>(inst.h.num_nodes), 1);
                  for (i64 v = 0; v < x; ++v)
                    p[static_cast<std::size_t>(v)] = 0;
                  for (i64 v = set_end; v < set_end + y; ++v)
                    p[static_cast<std::size_t>(v)] = 0;
                  for (i64 v = pad_end; v < red_end; ++v)
                    p[static_cast<std::size_t>(v)] = 0;
                  const bool bal = is_balanced(inst.h, p, 2, inst.spec);
                  if (bal != enforce_set_satisfied(ec, x, y))
                    r = cat("balance check and count predicate disagree at "
                            "x=", x, ", y=", y);
                  exists = exists || bal;
                }
                if (r.empty() && exists != enforce_mode_allows(ec, x))
                  r = cat("extensibility and mode disagree at x=", x);
              }
            } catch (const std::invalid_argument&) {
              if (eps != Rational(0) && mode == EnforceMode::kExact) {
                ++rejected;  // unsupported combination, correctly rejected
              } else {
                r = "unexpected rejection";
              }
            } catch (const std::exception& e) {
              r = cat("exception: ", e.what());
            }
            if (!r.empty()) {
              if (bad == 0)
                first = cat("S=", s, ", h=", h, ", eps=", eps.to_string(),
                            ", mode=", static_cast<int>(mode), ": ", r);
              ++bad;
            }
          }
    c.check(bad == 0,
            cat("exhaustive count certificate over ", combos,
                " (size, h, eps, mode) combinations (", rejected,
                " unsupported exact/eps>0 combinations correctly rejected)"));
    if (bad > 0) c.note("       first failure: " + first);
  }

  // Variable-size sets: the gadget constrains |S| itself.
  {
    int bad = 0;
    std::string first;
    i64 combos = 0;
    auto sweep = [&](i64 h, i64 h0, const Rational& eps, EnforceMode mode,
                     i64 limit) {
      ++combos;
      std::string r;
      try {
        const EnforceVariableCounts vc =
            enforce_variable_set(h, h0, eps, 2, mode);
        if (eps == Rational(0) && mode == EnforceMode::kExact &&
            (vc.fixed_red != 1 || vc.fixed_blue != h + 1))
          r = cat("frozen exact counts violated: red=", vc.fixed_red,
                  ", blue=", vc.fixed_blue);
        for (i64 size = 0; size <= limit && r.empty(); ++size) {
          Hypergraph mini;
          mini.num_nodes =
              static_cast<int>(size + vc.fixed_red + vc.fixed_blue);
          mini.normalize_and_validate();
          Partition p(static_cast<std::size_t>(mini.num_nodes), 1);
          for (i64 v = 0; v < size + vc.fixed_red; ++v)
            p[static_cast<std::size_t>(v)] = 0;
          const bool bal =
              is_balanced(mini, p, 2, BalanceSpec::uniform(eps));
          if (bal != enforce_variable_satisfied(vc, size))
            r = cat("balance and size predicate disagree at |S|=", size);
          else if (bal != enforce_variable_mode_allows(vc, size))
            r = cat("balance and mode disagree at |S|=", size);
        }
      } catch (const std::exception& e) {
        r = cat("exception: ", e.what());
      }
      if (!r.empty()) {
        if (bad == 0)
          first = cat("h=", h, ", h0=", h0, ", eps=", eps.to_string(), ": ",
                      r);
        ++bad;
      }
    };
    for (i64 h = 0; h <= 4; ++h) {
      sweep(h, h, Rational(1, 4), EnforceMode::kAtMost, h + 2);
      sweep(h, h, Rational(0), EnforceMode::kExact, h + 2);
      for (i64 extra = 0; extra <= 2; ++extra)
        sweep(h, h + extra, Rational(1, 4), EnforceMode::kAtLeast, h + extra);
    }
    int rejections = 0;
    try {
      enforce_variable_set(2, 2, Rational(1, 4), 2, EnforceMode::kExact);
    } catch (const std::invalid_argument&) {
      ++rejections;
    }
    try {
      enforce_variable_set(2, 2, Rational(0), 2, EnforceMode::kAtMost);
    } catch (const std::invalid_argument&) {
      ++rejections;
    }
    c.check(bad == 0 && rejections == 2,
            cat("variable-size certificate over ", combos,
                " (h, h0, eps, mode) combinations, with both unsupported "
                "mode/eps pairings rejected"));
    if (bad > 0) c.note("       first failure: " + first);
  }

  // Opposite-color block pairs.
  {
    int bad = 0;
    std::string first;
    for (i64 m0 = 2; m0 <= 3; ++m0)
      for (const Rational& eps : {Rational(0), Rational(1, 4)}) {
        std::string r;
        try {
          const GadgetInstance gi = fixed_color_blocks(m0, eps, 2);
          if (!gi.partition ||
              cost(gi.h, *gi.partition, 2, Metric::kCutNet) != 0 ||
              !is_balanced(gi.h, *gi.partition, 2, gi.spec))
            r = "planted partition is not a zero-cost balanced partition";
          const int total = static_cast<int>(2 * m0);
          for (std::uint64_t mask = 0; mask < (1ULL << total) && r.empty();
               ++mask) {
            Partition p(static_cast<std::size_t>(total), 0);
            for (int v = 0; v < total; ++v)
              if (mask & (1ULL << v)) p[static_cast<std::size_t>(v)] = 1;
            const bool zero =
                cost(gi.h, p, 2, Metric::kCutNet) == 0 &&
                is_balanced(gi.h, p, 2, gi.spec);
            const std::uint64_t first_block = mask & ((1ULL << m0) - 1);
            const std::uint64_t second_block = mask >> m0;
            const bool opposite =
                (first_block == 0 ||
                 first_block == (1ULL << m0) - 1) &&
                (second_block == 0 ||
                 second_block == (1ULL << m0) - 1) &&
                (first_block == 0) != (second_block == 0);
            if (zero != opposite)
              r = cat("coloring ", mask, ": zero-cost balance is ",
                      zero ? "possible" : "impossible",
                      " but the blocks are ",
                      opposite ? "" : "not ", "monochromatic and opposite");
          }
        } catch (const std::exception& e) {
          r = cat("exception: ", e.what());
        }
        if (!r.empty()) {
          if (bad == 0) first = cat("m0=", m0, ": ", r);
          ++bad;
        }
      }
    int rejections = 0;
    try {
      fixed_color_blocks(2, Rational(1), 2);
    } catch (const std::invalid_argument&) {
      ++rejections;
    }
    try {
      fixed_color_blocks(2, Rational(5, 4), 2);
    } catch (const std::invalid_argument&) {
      ++rejections;
    }
    c.check(bad == 0 && rejections == 2,
            "block pairs: zero-cost balanced colorings are exactly the "
            "monochromatic opposite ones (full enumeration, m0 in {2,3}, "
            "eps in {0,1/4}); eps >= 1 is rejected");
    if (bad > 0) c.note("       first failure: " + first);
  }
  return c.report;
}

using SuiteFn = SuiteReport (*)(const VerifyOptions&);

const std::vector<std::pair<std::string, SuiteFn>>& suite_table() {
  static const std::vector<std::pair<std::string, SuiteFn>> table = {
      {"solver-oracle", suite_solver_oracle},
      {"multi-constraint", suite_multi_constraint},
      {"recognition", suite_recognition},
      {"grid", suite_grid},
      {"block", suite_block},
      {"spes", suite_spes},
      {"ovp", suite_ovp},
      {"coloring", suite_coloring},
      {"recursive", suite_recursive},
      {"twostep", suite_twostep},
      {"assignment", suite_assignment},
      {"scheduling", suite_scheduling},
      {"enforce", suite_enforce},
  };
  return table;
}

}  // namespace

std::vector<std::string> verify_suite_names() {
  std::vector<std::string> names;
  for (const auto& [name, fn] : suite_table()) {
    (void)fn;
    names.push_back(name);
  }
  return names;
}

SuiteReport run_verify_suite(const std::string& name,
                             const VerifyOptions& opt) {
  for (const auto& [n, fn] : suite_table())
    if (n == name) return fn(opt);
  throw std::invalid_argument("unknown verification suite: " + name);
}

}  // namespace hypart
