// Copyright 2026 The hypart Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// End-to-end tests for the hypart command-line tool.  Each test spawns the
// real binary (path passed as the first program argument), captures its
// combined output, and checks both the exit status and the printed report.

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "hypart/hypergraph.hpp"
#include "hypart/io.hpp"

namespace {

std::string g_cli_path;

struct RunResult {
  int code = -1;
  std::string output;
};

std::filesystem::path test_dir() {
  static const std::filesystem::path dir = [] {
    auto d = std::filesystem::temp_directory_path() /
             ("hypart_cli_test_" + std::to_string(::getpid()));
    std::filesystem::create_directories(d);
    return d;
  }();
  return dir;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

// Runs the CLI with the given arguments, redirecting stdout and stderr into
// a scratch file, and returns the exit code together with the output.
RunResult run_cli(const std::vector<std::string>& args) {
  static int serial = 0;
  auto capture = test_dir() / ("out_" + std::to_string(serial++) + ".txt");
  std::string cmd = "\"" + g_cli_path + "\"";
  for (const auto& a : args) cmd += " \"" + a + "\"";
  cmd += " > \"" + capture.string() + "\" 2>&1";
  int status = std::system(cmd.c_str());
  RunResult r;
  r.output = read_file(capture);
  if (status == -1) {
    r.code = -1;
  } else if (WIFEXITED(status)) {
    r.code = WEXITSTATUS(status);
  } else {
    r.code = -2;
  }
  return r;
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

// A path on four nodes: edges {0,1}, {1,2}, {2,3}.
std::string path4_file() {
  static const std::string path = [] {
    hypart::Hypergraph h;
    h.num_nodes = 4;
    h.edges = {{0, 1}, {1, 2}, {2, 3}};
    h.weights = {1, 1, 1};
    auto p = test_dir() / "path4.hgr";
    hypart::save_hypergraph(p.string(), h);
    return p.string();
  }();
  return path;
}

// Four disjoint heavy pairs: {0,1}, {2,3}, {4,5}, {6,7}.
std::string pairs8_file() {
  static const std::string path = [] {
    hypart::Hypergraph h;
    h.num_nodes = 8;
    h.edges = {{0, 1}, {2, 3}, {4, 5}, {6, 7}};
    h.weights = {1, 1, 1, 1};
    auto p = test_dir() / "pairs8.hgr";
    hypart::save_hypergraph(p.string(), h);
    return p.string();
  }();
  return path;
}

TEST(Solve, BruteForceOnAPath) {
  auto out_part = (test_dir() / "path4_solution.part").string();
  auto r = run_cli({"solve", "--hgr", path4_file(), "--k", "2", "--eps", "0",
                    "--out", out_part});
  EXPECT_EQ(r.code, 0) << r.output;
  EXPECT_TRUE(contains(r.output, "cost=1 feasible=yes")) << r.output;

  auto part = hypart::load_partition(out_part);
  ASSERT_EQ(part.size(), 4u);
  hypart::Hypergraph h = hypart::load_hypergraph(path4_file());
  auto spec = hypart::BalanceSpec::uniform(hypart::Rational(0));
  EXPECT_TRUE(hypart::is_balanced(h, part, 2, spec));
  EXPECT_EQ(hypart::cost(h, part, 2, hypart::Metric::kConnectivity), 1);
}

TEST(Solve, InfeasibleInstanceReportsNoSolution) {
  hypart::Hypergraph h;
  h.num_nodes = 3;
  h.edges = {{0, 1, 2}};
  h.weights = {1};
  auto p = (test_dir() / "three.hgr").string();
  hypart::save_hypergraph(p, h);

  // floor(3/2) = 1 per part, so two parts cannot hold three nodes.
  auto r = run_cli({"solve", "--hgr", p, "--k", "2", "--eps", "0"});
  EXPECT_EQ(r.code, 1) << r.output;
  EXPECT_TRUE(contains(r.output, "cost=- feasible=no")) << r.output;
}

TEST(Solve, BoundedSearchHonoursTheCostCap) {
  auto ok = run_cli({"solve", "--hgr", path4_file(), "--k", "2", "--eps", "0",
                     "--budget", "3"});
  EXPECT_EQ(ok.code, 0) << ok.output;
  EXPECT_TRUE(contains(ok.output, "cost=1 feasible=yes")) << ok.output;

  auto tight = run_cli({"solve", "--hgr", path4_file(), "--k", "2", "--eps",
                        "0", "--budget", "0"});
  EXPECT_EQ(tight.code, 1) << tight.output;
  EXPECT_TRUE(contains(tight.output, "cost=- feasible=no")) << tight.output;
}

TEST(Solve, RecursiveModeSplitsPowerOfTwoParts) {
  auto out_part = (test_dir() / "pairs8_rec.part").string();
  auto r = run_cli({"solve", "--hgr", pairs8_file(), "--k", "4", "--eps", "0",
                    "--mode", "recursive", "--out", out_part});
  EXPECT_EQ(r.code, 0) << r.output;
  EXPECT_TRUE(contains(r.output, "cost=0 feasible=yes")) << r.output;

  auto part = hypart::load_partition(out_part);
  hypart::Hypergraph h = hypart::load_hypergraph(pairs8_file());
  EXPECT_EQ(hypart::cost(h, part, 4, hypart::Metric::kConnectivity), 0);
  auto spec = hypart::BalanceSpec::uniform(hypart::Rational(0));
  EXPECT_TRUE(hypart::is_balanced(h, part, 4, spec));
}

TEST(Solve, RecursiveModeRejectsNonPowerOfTwoParts) {
  auto r = run_cli({"solve", "--hgr", pairs8_file(), "--k", "3", "--eps", "1",
                    "--mode", "recursive"});
  EXPECT_EQ(r.code, 2) << r.output;
}

TEST(Evaluate, ReportsPerEdgeProfileCostAndBalance) {
  auto part_path = (test_dir() / "path4_eval.part").string();
  hypart::save_partition(part_path, {0, 0, 1, 1});

  auto r = run_cli({"evaluate", "--hgr", path4_file(), "--partition",
                    part_path, "--k", "2", "--metric", "cutnet", "--eps",
                    "0"});
  EXPECT_EQ(r.code, 0) << r.output;
  EXPECT_TRUE(contains(r.output, "edge 1: weight=1 lambda=1")) << r.output;
  EXPECT_TRUE(contains(r.output, "edge 2: weight=1 lambda=2")) << r.output;
  EXPECT_TRUE(contains(r.output, "edge 3: weight=1 lambda=1")) << r.output;
  EXPECT_TRUE(contains(r.output, "cost=1")) << r.output;
  EXPECT_TRUE(contains(r.output, "balanced=yes")) << r.output;
}

TEST(Evaluate, TopologyModeReportsLevelProfileAndRationalCost) {
  hypart::Hypergraph h;
  h.num_nodes = 4;
  h.edges = {{0, 1, 2, 3}};
  h.weights = {1};
  auto hgr = (test_dir() / "all4.hgr").string();
  hypart::save_hypergraph(hgr, h);

  auto part_path = (test_dir() / "all4_eval.part").string();
  hypart::save_partition(part_path, {0, 1, 2, 3});

  hypart::HierTopology t;
  t.branching = {2, 2};
  t.level_costs = {hypart::Rational(4), hypart::Rational(1)};
  auto topo = (test_dir() / "all4.topo").string();
  hypart::save_topology(topo, t);

  // One edge spanning all four leaves: one extra group at the top level
  // (cost 4) and two extra groups at the bottom (cost 1 each) on top of the
  // free base group, for a total of 4 + 2 = 6.
  auto r = run_cli({"evaluate", "--hgr", hgr, "--partition", part_path,
                    "--topology", topo});
  EXPECT_EQ(r.code, 0) << r.output;
  EXPECT_TRUE(contains(r.output, "lambda=[2 4]")) << r.output;
  EXPECT_TRUE(contains(r.output, "cost=6")) << r.output;
}

TEST(Recognize, AcceptsAChainShapedInstance) {
  auto r = run_cli({"recognize", "--hgr", path4_file()});
  EXPECT_EQ(r.code, 0) << r.output;
  EXPECT_TRUE(contains(r.output, "hyperdag=yes")) << r.output;
  EXPECT_TRUE(contains(r.output, "witness_nodes=")) << r.output;
}

TEST(Recognize, RejectsATriangleAndNamesTheViolators) {
  hypart::Hypergraph h;
  h.num_nodes = 3;
  h.edges = {{0, 1}, {0, 2}, {1, 2}};
  h.weights = {1, 1, 1};
  auto p = (test_dir() / "triangle.hgr").string();
  hypart::save_hypergraph(p, h);

  auto r = run_cli({"recognize", "--hgr", p});
  EXPECT_EQ(r.code, 1) << r.output;
  EXPECT_TRUE(contains(r.output, "hyperdag=no")) << r.output;
  EXPECT_TRUE(contains(r.output, "violating_nodes=1,2,3")) << r.output;
}

TEST(Convert, DagBecomesARecognizableHypergraph) {
  hypart::Dag d;
  d.num_nodes = 3;
  d.arcs = {{0, 1}, {1, 2}};
  auto dag_path = (test_dir() / "chain3.dag").string();
  hypart::save_dag(dag_path, d);

  auto prefix = (test_dir() / "chain3_conv").string();
  auto r = run_cli({"convert", "--dag", dag_path, "--out", prefix});
  EXPECT_EQ(r.code, 0) << r.output;
  EXPECT_TRUE(contains(r.output, "nodes=3 edges=2")) << r.output;
  EXPECT_TRUE(std::filesystem::exists(prefix + ".hgr"));
  EXPECT_TRUE(std::filesystem::exists(prefix + ".gen"));

  auto back = run_cli({"recognize", "--hgr", prefix + ".hgr"});
  EXPECT_EQ(back.code, 0) << back.output;
  EXPECT_TRUE(contains(back.output, "hyperdag=yes")) << back.output;
}

TEST(Layer, EarliestLayeringOfADiamond) {
  hypart::Dag d;
  d.num_nodes = 4;
  d.arcs = {{0, 1}, {0, 2}, {1, 3}, {2, 3}};
  auto dag_path = (test_dir() / "diamond.dag").string();
  hypart::save_dag(dag_path, d);

  auto out_layers = (test_dir() / "diamond.layers").string();
  auto r = run_cli({"layer", "--dag", dag_path, "--out", out_layers});
  EXPECT_EQ(r.code, 0) << r.output;
  EXPECT_TRUE(contains(r.output, "layers=3")) << r.output;

  auto layering = hypart::load_layering(out_layers);
  ASSERT_EQ(layering.layer_of.size(), 4u);
  EXPECT_LT(layering.layer_of[0], layering.layer_of[1]);
  EXPECT_LT(layering.layer_of[1], layering.layer_of[3]);
}

TEST(Layer, EnumerationCountsEveryValidLayering) {
  // a -> b -> c plus a -> d: node d may sit in layer 2 or layer 3.
  hypart::Dag d;
  d.num_nodes = 4;
  d.arcs = {{0, 1}, {1, 2}, {0, 3}};
  auto dag_path = (test_dir() / "fork.dag").string();
  hypart::save_dag(dag_path, d);

  auto r = run_cli({"layer", "--dag", dag_path, "--enumerate"});
  EXPECT_TRUE(contains(r.output, "layerings=2")) << r.output;
  EXPECT_TRUE(contains(r.output, "1 2 3 2")) << r.output;
  EXPECT_TRUE(contains(r.output, "1 2 3 3")) << r.output;
}

TEST(Schedule, PathTakesOneStepPerNode) {
  hypart::Dag d;
  d.num_nodes = 3;
  d.arcs = {{0, 1}, {1, 2}};
  auto dag_path = (test_dir() / "path3.dag").string();
  hypart::save_dag(dag_path, d);

  auto r = run_cli({"schedule", "--dag", dag_path, "--k", "2"});
  EXPECT_EQ(r.code, 0) << r.output;
  EXPECT_TRUE(contains(r.output, "mu=3")) << r.output;
}

TEST(Schedule, LumpedPartitionFailsTheBalanceCheck) {
  // Two disjoint chains of length two.
  hypart::Dag d;
  d.num_nodes = 4;
  d.arcs = {{0, 1}, {2, 3}};
  auto dag_path = (test_dir() / "twochains.dag").string();
  hypart::save_dag(dag_path, d);

  auto lumped = (test_dir() / "twochains_lumped.part").string();
  hypart::save_partition(lumped, {0, 0, 0, 0});
  auto bad = run_cli({"schedule", "--dag", dag_path, "--k", "2",
                      "--partition", lumped});
  EXPECT_EQ(bad.code, 1) << bad.output;
  EXPECT_TRUE(contains(bad.output, "mu=2 mu_p=4 feasible=no")) << bad.output;

  auto split = (test_dir() / "twochains_split.part").string();
  hypart::save_partition(split, {0, 0, 1, 1});
  auto good = run_cli({"schedule", "--dag", dag_path, "--k", "2",
                       "--partition", split});
  EXPECT_EQ(good.code, 0) << good.output;
  EXPECT_TRUE(contains(good.output, "mu=2 mu_p=2 feasible=yes"))
      << good.output;
}

TEST(Assign, TwoStepPipelineOnTwoPaths) {
  // Two disjoint 4-node paths; topology (2,2) with level costs 3, 1.
  hypart::Hypergraph h;
  h.num_nodes = 8;
  h.edges = {{0, 1}, {1, 2}, {2, 3}, {4, 5}, {5, 6}, {6, 7}};
  h.weights = {1, 1, 1, 1, 1, 1};
  auto hgr = (test_dir() / "twopaths.hgr").string();
  hypart::save_hypergraph(hgr, h);

  hypart::HierTopology t;
  t.branching = {2, 2};
  t.level_costs = {hypart::Rational(3), hypart::Rational(1)};
  auto topo = (test_dir() / "twopaths.topo").string();
  hypart::save_topology(topo, t);

  auto r = run_cli({"assign", "--hgr", hgr, "--topology", topo, "--method",
                    "twostep", "--eps", "0"});
  EXPECT_EQ(r.code, 0) << r.output;
  EXPECT_TRUE(contains(r.output, "flat_cost=2 feasible=yes")) << r.output;
  EXPECT_TRUE(contains(r.output, "part 1 -> leaf ")) << r.output;
}

TEST(Assign, BruteAndMatchingAgreeOnAFixedPartition) {
  // Complete graph on four nodes with one heavy edge per pairing choice.
  hypart::Hypergraph h;
  h.num_nodes = 4;
  h.edges = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
  h.weights = {10, 1, 1, 1, 1, 8};
  auto hgr = (test_dir() / "k4.hgr").string();
  hypart::save_hypergraph(hgr, h);

  auto part_path = (test_dir() / "k4.part").string();
  hypart::save_partition(part_path, {0, 1, 2, 3});

  hypart::HierTopology t;
  t.branching = {2, 2};
  t.level_costs = {hypart::Rational(5), hypart::Rational(1)};
  auto topo = (test_dir() / "k4.topo").string();
  hypart::save_topology(topo, t);

  auto brute = run_cli({"assign", "--hgr", hgr, "--topology", topo,
                        "--method", "brute", "--partition", part_path});
  EXPECT_EQ(brute.code, 0) << brute.output;

  auto out_part = (test_dir() / "k4_relabel.part").string();
  auto matching = run_cli({"assign", "--hgr", hgr, "--topology", topo,
                           "--method", "matching", "--partition", part_path,
                           "--out", out_part});
  EXPECT_EQ(matching.code, 0) << matching.output;

  auto cost_line = [](const std::string& s) {
    auto pos = s.find("cost=");
    auto end = s.find('\n', pos);
    return s.substr(pos, end - pos);
  };
  EXPECT_EQ(cost_line(brute.output), cost_line(matching.output))
      << brute.output << matching.output;

  // The relabeled partition keeps nodes with heavy ties in sibling leaves:
  // {0,1} and {2,3} should each land inside one bottom-level group.
  auto relabeled = hypart::load_partition(out_part);
  ASSERT_EQ(relabeled.size(), 4u);
  EXPECT_EQ(relabeled[0] / 2, relabeled[1] / 2);
  EXPECT_EQ(relabeled[2] / 2, relabeled[3] / 2);
  EXPECT_NE(relabeled[0] / 2, relabeled[2] / 2);
}

TEST(Generate, BlockGadgetWritesInstanceAndMeta) {
  auto prefix = (test_dir() / "gen_block").string();
  auto r = run_cli({"generate", "--gadget", "block", "--out", prefix,
                    "--params", "b=4"});
  EXPECT_EQ(r.code, 0) << r.output;
  EXPECT_TRUE(contains(r.output, "wrote " + prefix + ".hgr")) << r.output;

  auto h = hypart::load_hypergraph(prefix + ".hgr");
  EXPECT_EQ(h.num_nodes, 4);
  ASSERT_EQ(h.edges.size(), 4u);
  for (const auto& e : h.edges) EXPECT_EQ(e.size(), 3u);

  auto meta = hypart::load_meta(prefix + ".meta");
  EXPECT_EQ(meta.at("gadget"), "block");
}

TEST(Generate, RecursiveFamilyWritesPlantedArtifacts) {
  auto prefix = (test_dir() / "gen_recursive").string();
  auto r = run_cli({"generate", "--gadget", "recursive", "--out", prefix,
                    "--params", "n=24"});
  EXPECT_EQ(r.code, 0) << r.output;
  EXPECT_TRUE(std::filesystem::exists(prefix + ".hgr"));
  EXPECT_TRUE(std::filesystem::exists(prefix + ".partition"));
  EXPECT_TRUE(std::filesystem::exists(prefix + ".meta"));

  auto meta = hypart::load_meta(prefix + ".meta");
  EXPECT_EQ(meta.at("direct_optimum"), "5");

  auto h = hypart::load_hypergraph(prefix + ".hgr");
  auto planted = hypart::load_partition(prefix + ".partition");
  EXPECT_EQ(hypart::cost(h, planted, 4, hypart::Metric::kCutNet), 5);
}

TEST(Generate, SeededDrawsAreDeterministic) {
  auto a = (test_dir() / "gen_ovp_a").string();
  auto b = (test_dir() / "gen_ovp_b").string();
  auto ra = run_cli({"generate", "--gadget", "ovp", "--out", a, "--params",
                     "m=3", "d=3", "--seed", "7"});
  auto rb = run_cli({"generate", "--gadget", "ovp", "--out", b, "--params",
                     "m=3", "d=3", "--seed", "7"});
  EXPECT_EQ(ra.code, 0) << ra.output;
  EXPECT_EQ(rb.code, 0) << rb.output;
  EXPECT_EQ(read_file(a + ".hgr"), read_file(b + ".hgr"));

  auto ma = hypart::load_meta(a + ".meta");
  auto mb = hypart::load_meta(b + ".meta");
  EXPECT_EQ(ma.at("drawn_vectors"), mb.at("drawn_vectors"));
}

TEST(Generate, EnforceGadgetWritesConstraints) {
  auto prefix = (test_dir() / "gen_enforce").string();
  auto r = run_cli({"generate", "--gadget", "enforce", "--out", prefix,
                    "--params", "size=3", "h=1", "eps=1/4", "mode=atmost"});
  EXPECT_EQ(r.code, 0) << r.output;
  EXPECT_TRUE(std::filesystem::exists(prefix + ".constraints"));

  auto meta = hypart::load_meta(prefix + ".meta");
  EXPECT_EQ(meta.at("mode"), "at_most");
  auto h = hypart::load_hypergraph(prefix + ".hgr");
  EXPECT_EQ(h.num_nodes, 9);
}

TEST(Verify, BlockSuitePasses) {
  auto r = run_cli({"verify", "block", "--threads", "2"});
  EXPECT_EQ(r.code, 0) << r.output;
  EXPECT_TRUE(contains(r.output, "suite block: PASS")) << r.output;
}

TEST(ExitCodes, UnknownSubcommandIsAUsageError) {
  auto r = run_cli({"frobnicate"});
  EXPECT_EQ(r.code, 2) << r.output;
}

TEST(ExitCodes, MissingRequiredFlagIsAUsageError) {
  auto r = run_cli({"solve", "--hgr", path4_file()});
  EXPECT_EQ(r.code, 2) << r.output;
}

TEST(ExitCodes, MalformedInputIsAParseError) {
  auto bad = (test_dir() / "broken.hgr").string();
  write_file(bad, "this is not a hypergraph\n");
  auto r = run_cli({"solve", "--hgr", bad, "--k", "2"});
  EXPECT_EQ(r.code, 3) << r.output;
}

TEST(ExitCodes, ExhaustedSearchBudgetIsReported) {
  hypart::Hypergraph h;
  h.num_nodes = 5;
  h.edges = {{0, 1, 2, 3}, {0, 1, 2, 4}, {0, 1, 3, 4}, {0, 2, 3, 4},
             {1, 2, 3, 4}};
  h.weights = {1, 1, 1, 1, 1};
  auto p = (test_dir() / "block5.hgr").string();
  hypart::save_hypergraph(p, h);

  auto r = run_cli({"solve", "--hgr", p, "--k", "2", "--eps", "1",
                    "--search-budget", "1"});
  EXPECT_EQ(r.code, 4) << r.output;
}

}  // namespace

int main(int argc, char** argv) {
  ::testing::InitGoogleTest(&argc, argv);
  if (argc > 1) {
    g_cli_path = argv[1];
  }
  if (g_cli_path.empty()) {
    std::fprintf(stderr, "usage: test_cli <path-to-hypart-binary>\n");
    return 1;
  }
  return RUN_ALL_TESTS();
}
