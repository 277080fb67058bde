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

#include "hypart/io.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace hypart {

namespace {

// Reads the next data line, skipping blank lines and '%' comments.
bool next_data_line(std::istream& in, std::string& line) {
  while (std::getline(in, line)) {
    std::size_t start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos) continue;
    if (line[start] == '%') continue;
    // Strip a trailing comment and surrounding whitespace.
    std::size_t comment = line.find('%');
    if (comment != std::string::npos) line = line.substr(0, comment);
    std::size_t end = line.find_last_not_of(" \t\r");
    line = line.substr(start, end - start + 1);
    return true;
  }
  return false;
}

std::vector<std::string> split_tokens(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream ss(line);
  std::string tok;
  while (ss >> tok) out.push_back(tok);
  return out;
}

std::int64_t parse_int(const std::string& tok, const std::string& what) {
  try {
    std::size_t used = 0;
    std::int64_t v = std::stoll(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw ParseError("expected integer for " + what + ", got '" + tok + "'");
  }
}

Rational parse_rational_token(const std::string& tok,
                              const std::string& what) {
  try {
    return Rational::parse(tok);
  } catch (const std::exception&) {
    throw ParseError("expected rational for " + what + ", got '" + tok + "'");
  }
}

template <typename Loader>
auto load_file(const std::string& path, Loader loader) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  return loader(in);
}

template <typename Saver>
void save_file(const std::string& path, Saver saver) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write '" + path + "'");
  saver(out);
}

}  // namespace

Rational Rational::parse(const std::string& text) {
  std::size_t slash = text.find('/');
  auto to_int = [](const std::string& s) {
    std::size_t used = 0;
    std::int64_t v = std::stoll(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  };
  if (slash == std::string::npos) return Rational(to_int(text));
  return Rational(to_int(text.substr(0, slash)),
                  to_int(text.substr(slash + 1)));
}

Hypergraph parse_hypergraph(std::istream& in) {
  std::string line;
  if (!next_data_line(in, line)) throw ParseError("hypergraph: empty input");
  auto header = split_tokens(line);
  if (header.size() < 2 || header.size() > 3)
    throw ParseError("hypergraph: header must be '<edges> <nodes> [fmt]'");
  std::int64_t num_edges = parse_int(header[0], "edge count");
  std::int64_t num_nodes = parse_int(header[1], "node count");
  if (num_edges < 0 || num_nodes < 0)
    throw ParseError("hypergraph: negative header counts");
  int fmt = 0;
  if (header.size() == 3) {
    std::int64_t f = parse_int(header[2], "format flag");
    if (f != 0 && f != 1)
      throw ParseError("hypergraph: unsupported format flag " +
                       std::to_string(f));
    fmt = static_cast<int>(f);
  }

  // Aggregate edges with identical pin sets by summing weights.
  std::map<std::vector<NodeId>, Weight> aggregated;
  std::vector<std::vector<NodeId>> order;  // first-seen order
  for (std::int64_t e = 0; e < num_edges; ++e) {
    if (!next_data_line(in, line))
      throw ParseError("hypergraph: expected " + std::to_string(num_edges) +
                       " edge lines, got " + std::to_string(e));
    auto toks = split_tokens(line);
    std::size_t first_pin = 0;
    Weight w = 1;
    if (fmt == 1) {
      if (toks.empty()) throw ParseError("hypergraph: empty edge line");
      w = parse_int(toks[0], "edge weight");
      if (w <= 0) throw ParseError("hypergraph: edge weight must be positive");
      first_pin = 1;
    }
    if (toks.size() <= first_pin)
      throw ParseError("hypergraph: edge " + std::to_string(e + 1) +
                       " has no pins");
    std::vector<NodeId> pins;
    for (std::size_t i = first_pin; i < toks.size(); ++i) {
      std::int64_t v = parse_int(toks[i], "pin");
      if (v < 1 || v > num_nodes)
        throw ParseError("hypergraph: pin " + std::to_string(v) +
                         " out of range 1.." + std::to_string(num_nodes));
      pins.push_back(static_cast<NodeId>(v - 1));
    }
    std::sort(pins.begin(), pins.end());
    pins.erase(std::unique(pins.begin(), pins.end()), pins.end());
    auto [it, inserted] = aggregated.emplace(pins, 0);
    if (inserted) order.push_back(pins);
    it->second += w;
  }
  if (next_data_line(in, line))
    throw ParseError("hypergraph: trailing data after last edge");

  Hypergraph h;
  h.num_nodes = static_cast<int>(num_nodes);
  for (auto& pins : order) {
    h.weights.push_back(aggregated[pins]);
    h.edges.push_back(std::move(pins));
  }
  h.normalize_and_validate();
  return h;
}

void emit_hypergraph(std::ostream& out, const Hypergraph& h) {
  bool weighted = std::any_of(h.weights.begin(), h.weights.end(),
                              [](Weight w) { return w != 1; });
  out << h.num_edges() << ' ' << h.num_nodes;
  if (weighted) out << " 1";
  out << '\n';
  for (int e = 0; e < h.num_edges(); ++e) {
    if (weighted) out << h.weights[e] << ' ';
    for (std::size_t i = 0; i < h.edges[e].size(); ++i) {
      if (i) out << ' ';
      out << h.edges[e][i] + 1;
    }
    out << '\n';
  }
}

namespace {

std::vector<int> parse_indexed_lines(std::istream& in,
                                     const std::string& what) {
  std::vector<int> values;
  std::string line;
  while (next_data_line(in, line)) {
    for (const auto& tok : split_tokens(line)) {
      std::int64_t v = parse_int(tok, what);
      if (v < 1) throw ParseError(what + ": index must be >= 1");
      values.push_back(static_cast<int>(v - 1));
    }
  }
  return values;
}

}  // namespace

Partition parse_partition(std::istream& in) {
  return parse_indexed_lines(in, "partition");
}

void emit_partition(std::ostream& out, const Partition& p) {
  for (int c : p) out << c + 1 << '\n';
}

Layering parse_layering(std::istream& in) {
  Layering l;
  l.layer_of = parse_indexed_lines(in, "layering");
  l.num_layers = l.layer_of.empty()
                     ? 0
                     : *std::max_element(l.layer_of.begin(),
                                         l.layer_of.end()) + 1;
  return l;
}

void emit_layering(std::ostream& out, const Layering& l) {
  for (int layer : l.layer_of) out << layer + 1 << '\n';
}

BalanceSpec parse_balance_spec(std::istream& in) {
  BalanceSpec spec;
  std::string line;
  while (next_data_line(in, line)) {
    auto toks = split_tokens(line);
    if (toks.size() < 2)
      throw ParseError("constraint: need '<eps> <floor|ceil> [nodes...]'");
    BalanceConstraint c;
    c.eps = parse_rational_token(toks[0], "eps");
    if (c.eps < Rational(0)) throw ParseError("constraint: negative eps");
    if (toks[1] == "floor") {
      c.mode = Rounding::kStrictFloor;
    } else if (toks[1] == "ceil") {
      c.mode = Rounding::kRelaxedCeil;
    } else {
      throw ParseError("constraint: mode must be 'floor' or 'ceil', got '" +
                       toks[1] + "'");
    }
    for (std::size_t i = 2; i < toks.size(); ++i) {
      std::int64_t v = parse_int(toks[i], "constraint node");
      if (v < 1) throw ParseError("constraint: node index must be >= 1");
      c.nodes.push_back(static_cast<NodeId>(v - 1));
    }
    std::sort(c.nodes.begin(), c.nodes.end());
    c.nodes.erase(std::unique(c.nodes.begin(), c.nodes.end()), c.nodes.end());
    spec.constraints.push_back(std::move(c));
  }
  return spec;
}

void emit_balance_spec(std::ostream& out, const BalanceSpec& spec) {
  for (const auto& c : spec.constraints) {
    out << c.eps.num() << '/' << c.eps.den() << ' '
        << (c.mode == Rounding::kStrictFloor ? "floor" : "ceil");
    for (NodeId v : c.nodes) out << ' ' << v + 1;
    out << '\n';
  }
}

Dag parse_dag(std::istream& in) {
  std::string line;
  if (!next_data_line(in, line)) throw ParseError("dag: empty input");
  auto header = split_tokens(line);
  if (header.size() != 2)
    throw ParseError("dag: header must be '<nodes> <arcs>'");
  std::int64_t n = parse_int(header[0], "node count");
  std::int64_t m = parse_int(header[1], "arc count");
  if (n < 0 || m < 0) throw ParseError("dag: negative header counts");
  Dag d;
  d.num_nodes = static_cast<int>(n);
  for (std::int64_t i = 0; i < m; ++i) {
    if (!next_data_line(in, line))
      throw ParseError("dag: expected " + std::to_string(m) + " arcs, got " +
                       std::to_string(i));
    auto toks = split_tokens(line);
    if (toks.size() != 2) throw ParseError("dag: arc line must be '<u> <v>'");
    std::int64_t u = parse_int(toks[0], "arc tail");
    std::int64_t v = parse_int(toks[1], "arc head");
    if (u < 1 || u > n || v < 1 || v > n)
      throw ParseError("dag: arc endpoint out of range");
    d.arcs.emplace_back(static_cast<NodeId>(u - 1),
                        static_cast<NodeId>(v - 1));
  }
  if (next_data_line(in, line))
    throw ParseError("dag: trailing data after last arc");
  try {
    d.normalize_and_validate();
  } catch (const std::invalid_argument& ex) {
    throw ParseError(std::string("dag: ") + ex.what());
  }
  return d;
}

void emit_dag(std::ostream& out, const Dag& d) {
  out << d.num_nodes << ' ' << d.num_arcs() << '\n';
  for (const auto& [u, v] : d.arcs) out << u + 1 << ' ' << v + 1 << '\n';
}

HierTopology parse_topology(std::istream& in) {
  std::string line;
  if (!next_data_line(in, line))
    throw ParseError("topology: missing branching line");
  HierTopology t;
  for (const auto& tok : split_tokens(line)) {
    std::int64_t b = parse_int(tok, "branching factor");
    if (b < 2) throw ParseError("topology: branching factor must be >= 2");
    t.branching.push_back(static_cast<int>(b));
  }
  if (!next_data_line(in, line))
    throw ParseError("topology: missing level-cost line");
  for (const auto& tok : split_tokens(line))
    t.level_costs.push_back(parse_rational_token(tok, "level cost"));
  if (next_data_line(in, line))
    throw ParseError("topology: trailing data");
  try {
    t.validate();
  } catch (const std::invalid_argument& ex) {
    throw ParseError(std::string("topology: ") + ex.what());
  }
  return t;
}

void emit_topology(std::ostream& out, const HierTopology& t) {
  for (std::size_t i = 0; i < t.branching.size(); ++i) {
    if (i) out << ' ';
    out << t.branching[i];
  }
  out << '\n';
  for (std::size_t i = 0; i < t.level_costs.size(); ++i) {
    if (i) out << ' ';
    out << t.level_costs[i].to_string();
  }
  out << '\n';
}

std::vector<NodeId> parse_generator_map(std::istream& in) {
  std::string line;
  std::vector<std::pair<std::int64_t, NodeId>> entries;
  while (next_data_line(in, line)) {
    auto toks = split_tokens(line);
    if (toks.size() != 2)
      throw ParseError("generator map: line must be '<edge> <node>'");
    std::int64_t e = parse_int(toks[0], "edge index");
    std::int64_t v = parse_int(toks[1], "generator node");
    if (e < 1 || v < 1) throw ParseError("generator map: indices are 1-based");
    entries.emplace_back(e - 1, static_cast<NodeId>(v - 1));
  }
  std::sort(entries.begin(), entries.end());
  std::vector<NodeId> gen(entries.size(), -1);
  for (const auto& [e, v] : entries) {
    if (e >= static_cast<std::int64_t>(entries.size()) || gen[e] != -1)
      throw ParseError("generator map: edge indices must be 1..m unique");
    gen[e] = v;
  }
  return gen;
}

void emit_generator_map(std::ostream& out, const std::vector<NodeId>& gen) {
  for (std::size_t e = 0; e < gen.size(); ++e)
    out << e + 1 << ' ' << gen[e] + 1 << '\n';
}

std::map<std::string, std::string> parse_meta(std::istream& in) {
  std::map<std::string, std::string> meta;
  std::string line;
  while (next_data_line(in, line)) {
    std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ParseError("meta: line must be 'key=value'");
    std::string key = line.substr(0, eq);
    std::string value = line.substr(eq + 1);
    if (key.empty()) throw ParseError("meta: empty key");
    if (!meta.emplace(key, value).second)
      throw ParseError("meta: duplicate key '" + key + "'");
  }
  return meta;
}

void emit_meta(std::ostream& out,
               const std::map<std::string, std::string>& meta) {
  for (const auto& [key, value] : meta) out << key << '=' << value << '\n';
}

Hypergraph load_hypergraph(const std::string& path) {
  return load_file(path, [](std::istream& in) { return parse_hypergraph(in); });
}
void save_hypergraph(const std::string& path, const Hypergraph& h) {
  save_file(path, [&](std::ostream& out) { emit_hypergraph(out, h); });
}
Partition load_partition(const std::string& path) {
  return load_file(path, [](std::istream& in) { return parse_partition(in); });
}
void save_partition(const std::string& path, const Partition& p) {
  save_file(path, [&](std::ostream& out) { emit_partition(out, p); });
}
Layering load_layering(const std::string& path) {
  return load_file(path, [](std::istream& in) { return parse_layering(in); });
}
void save_layering(const std::string& path, const Layering& l) {
  save_file(path, [&](std::ostream& out) { emit_layering(out, l); });
}
BalanceSpec load_balance_spec(const std::string& path) {
  return load_file(path,
                   [](std::istream& in) { return parse_balance_spec(in); });
}
void save_balance_spec(const std::string& path, const BalanceSpec& spec) {
  save_file(path, [&](std::ostream& out) { emit_balance_spec(out, spec); });
}
Dag load_dag(const std::string& path) {
  return load_file(path, [](std::istream& in) { return parse_dag(in); });
}
void save_dag(const std::string& path, const Dag& d) {
  save_file(path, [&](std::ostream& out) { emit_dag(out, d); });
}
HierTopology load_topology(const std::string& path) {
  return load_file(path, [](std::istream& in) { return parse_topology(in); });
}
void save_topology(const std::string& path, const HierTopology& t) {
  save_file(path, [&](std::ostream& out) { emit_topology(out, t); });
}
std::vector<NodeId> load_generator_map(const std::string& path) {
  return load_file(path,
                   [](std::istream& in) { return parse_generator_map(in); });
}
void save_generator_map(const std::string& path,
                        const std::vector<NodeId>& gen) {
  save_file(path, [&](std::ostream& out) { emit_generator_map(out, gen); });
}
std::map<std::string, std::string> load_meta(const std::string& path) {
  return load_file(path, [](std::istream& in) { return parse_meta(in); });
}
void save_meta(const std::string& path,
               const std::map<std::string, std::string>& meta) {
  save_file(path, [&](std::ostream& out) { emit_meta(out, meta); });
}

}  // namespace hypart
