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
#include <functional>
#include <optional>
#include <vector>

#include "hypart/hierarchy.hpp"
#include "hypart/hypergraph.hpp"

namespace hypart {

// A balanced partition together with its cost. Partitions returned by the
// solvers are canonical (parts numbered by first occurrence) and, for the
// exact solvers, lexicographically smallest among all optima.
struct SolveResult {
  Partition partition;
  Weight cost = 0;
};

// Exact optimum by iterative-deepening branch and bound over canonical
// colorings. Returns std::nullopt when no balanced partition exists.
// `budget` caps the number of explored search nodes (cumulative across
// deepening rounds); BudgetExceeded is thrown beyond it.
std::optional<SolveResult> brute_force_optimum(
    const Hypergraph& h, int k, const BalanceSpec& spec, Metric metric,
    std::int64_t budget = 100000000);

// Parameterized solver: enumerates every set of deleted edges E0 with an
// allowed-color subset per deleted edge, contracts the rest, and colors the
// contracted components by dynamic programming over balance counts. Finds an
// optimal balanced partition of cost <= max_cost, or std::nullopt when none
// exists within the bound (or no balanced partition exists at all).
std::optional<SolveResult> bounded_cost_solver(
    const Hypergraph& h, int k, const Rational& eps, Rounding mode,
    Weight max_cost, Metric metric, std::int64_t budget = 100000000);

// Same search under a conjunction of disjoint balance constraints.
std::optional<SolveResult> multi_constraint_bounded_solver(
    const Hypergraph& h, int k, const BalanceSpec& spec, Weight max_cost,
    Metric metric, std::int64_t budget = 100000000);

// One enumeration serving every bound: element L of the result equals
// multi_constraint_bounded_solver(h, k, spec, L, metric).
std::vector<std::optional<SolveResult>> bounded_cost_sweep(
    const Hypergraph& h, int k, const BalanceSpec& spec, Weight max_cost,
    Metric metric, std::int64_t budget = 100000000);

// Oracle used for one splitting step of the recursive partitioner: given an
// induced sub-hypergraph and the step's part count, produce an optimal
// balanced partition (or nullopt when none exists).
using StepOracle = std::function<std::optional<SolveResult>(
    const Hypergraph&, int k)>;

// Splits the node set recursively: level i splits every current part into
// branching[i] balanced parts, each step solved to optimality on the
// sub-hypergraph induced by the part (pins outside it are dropped). Labels
// of the result are leaf indices in depth-first order, and `cost` is the
// flat cost of the final partition on the input hypergraph. When `oracle`
// is empty, steps use brute_force_optimum with the given eps/mode/metric.
struct RecursiveResult {
  HierPartition hier;
  Weight cost = 0;
};

RecursiveResult recursive_partitioner(const Hypergraph& h,
                                      const std::vector<int>& branching,
                                      const Rational& eps, Rounding mode,
                                      Metric metric,
                                      std::int64_t budget = 100000000,
                                      const StepOracle& oracle = {});

}  // namespace hypart
