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

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "hypart/dag.hpp"
#include "hypart/hierarchy.hpp"
#include "hypart/hypergraph.hpp"

namespace hypart {

// Thrown on any malformed input file.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// --- Hypergraph files -------------------------------------------------------
// Text format: an optional '%'-comment may appear on any line; the first data
// line is "<num_edges> <num_nodes> [fmt]" where fmt 1 means each edge line
// starts with an integer weight (fmt absent or 0 means unit weights); then
// one line per edge listing 1-indexed pins. Duplicate pins collapse and
// edges with identical pin sets aggregate their weights.
Hypergraph parse_hypergraph(std::istream& in);
void emit_hypergraph(std::ostream& out, const Hypergraph& h);

// --- Partition files --------------------------------------------------------
// One line per node with its 1-indexed part.
Partition parse_partition(std::istream& in);
void emit_partition(std::ostream& out, const Partition& p);

// --- Layering files ---------------------------------------------------------
// One line per node with its 1-indexed layer.
Layering parse_layering(std::istream& in);
void emit_layering(std::ostream& out, const Layering& l);

// --- Balance constraint files -----------------------------------------------
// One line per constraint: "<num>/<den> <floor|ceil> [v1 v2 ...]" with
// 1-indexed nodes; an empty node list means the whole node set.
BalanceSpec parse_balance_spec(std::istream& in);
void emit_balance_spec(std::ostream& out, const BalanceSpec& spec);

// --- DAG files --------------------------------------------------------------
// First line "<num_nodes> <num_arcs>", then one line "<tail> <head>" per arc,
// 1-indexed.
Dag parse_dag(std::istream& in);
void emit_dag(std::ostream& out, const Dag& d);

// --- Topology files ---------------------------------------------------------
// Two data lines: branching factors "b1 b2 ..." and level costs
// "g1 g2 ..." (integers or p/q rationals).
HierTopology parse_topology(std::istream& in);
void emit_topology(std::ostream& out, const HierTopology& t);

// --- Edge-generator sidecar files --------------------------------------------
// One line per edge: "<edge_index> <generator_node>", both 1-indexed.
std::vector<NodeId> parse_generator_map(std::istream& in);
void emit_generator_map(std::ostream& out, const std::vector<NodeId>& gen);

// --- Metadata sidecar files ---------------------------------------------------
// "key=value" per line; '%' comments allowed. Keys are unique.
std::map<std::string, std::string> parse_meta(std::istream& in);
void emit_meta(std::ostream& out,
               const std::map<std::string, std::string>& meta);

// Convenience file wrappers; throw ParseError (file missing or malformed).
Hypergraph load_hypergraph(const std::string& path);
void save_hypergraph(const std::string& path, const Hypergraph& h);
Partition load_partition(const std::string& path);
void save_partition(const std::string& path, const Partition& p);
Layering load_layering(const std::string& path);
void save_layering(const std::string& path, const Layering& l);
BalanceSpec load_balance_spec(const std::string& path);
void save_balance_spec(const std::string& path, const BalanceSpec& spec);
Dag load_dag(const std::string& path);
void save_dag(const std::string& path, const Dag& d);
HierTopology load_topology(const std::string& path);
void save_topology(const std::string& path, const HierTopology& t);
std::vector<NodeId> load_generator_map(const std::string& path);
void save_generator_map(const std::string& path,
                        const std::vector<NodeId>& gen);
std::map<std::string, std::string> load_meta(const std::string& path);
void save_meta(const std::string& path,
               const std::map<std::string, std::string>& meta);

}  // namespace hypart
