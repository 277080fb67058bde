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

// Acceptance gate.  Runs every verification suite at its full scale with a
// pinned wall-clock cap per criterion and prints exactly one PASS/FAIL line
// for each.  A criterion fails when its suite reports a failed claim, throws,
// or overruns its time cap.  The process exits nonzero if any criterion
// fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <exception>
#include <string>
#include <thread>
#include <vector>

#include "hypart/verify.hpp"

namespace {

struct Criterion {
  const char* label;  // what the criterion establishes
  const char* suite;  // verification suite that checks it
  int cap_seconds;    // wall-clock budget, pinned
};

// The scale of each suite (trial counts, instance sizes, exhaustive ranges)
// is fixed inside the suite itself; a default-constructed VerifyOptions runs
// at that full scale.  Only the time caps live here.
const std::vector<Criterion> kCriteria = {
    {"bounded search matches exhaustive optimum", "solver-oracle", 60},
    {"multi-constraint search matches exhaustive optimum", "multi-constraint",
     60},
    {"linear recognition matches reference predicate", "recognition", 30},
    {"grid splits respect the minority-side bound", "grid", 120},
    {"block splits cost at least the block degree", "block", 5},
    {"edge-selection reduction preserves optima", "spes", 120},
    {"orthogonal-vector reduction separates zero cost", "ovp", 60},
    {"coloring reduction separates zero cost", "coloring", 120},
    {"recursive bisection gap grows with instance size", "recursive", 300},
    {"two-step cost is sandwiched by the hierarchical optimum", "twostep",
     300},
    {"matching assignment agrees with brute force", "assignment", 60},
    {"makespan solver matches closed forms and 3-partition", "scheduling",
     120},
    {"cardinality enforcers certify exactly the allowed counts", "enforce",
     30},
};

}  // namespace

int main() {
  hypart::VerifyOptions opt;
  opt.seed = 0;
  opt.threads =
      std::max(1u, std::thread::hardware_concurrency());

  int failed = 0;
  for (std::size_t i = 0; i < kCriteria.size(); ++i) {
    const Criterion& c = kCriteria[i];
    const auto start = std::chrono::steady_clock::now();
    bool pass = false;
    std::vector<std::string> detail;
    try {
      hypart::SuiteReport report = hypart::run_verify_suite(c.suite, opt);
      pass = report.pass;
      if (!pass) detail = report.lines;
    } catch (const std::exception& e) {
      pass = false;
      detail.push_back(std::string("exception: ") + e.what());
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                      start)
            .count();
    const bool in_time = secs <= static_cast<double>(c.cap_seconds);
    const bool ok = pass && in_time;
    if (!ok) ++failed;
    std::printf("criterion %02zu %s: %s (%.1fs %s %ds)\n", i + 1, c.label,
                ok ? "PASS" : "FAIL", secs, in_time ? "<=" : ">",
                c.cap_seconds);
    if (!pass)
      for (const auto& line : detail) std::printf("    %s\n", line.c_str());
  }

  std::printf("acceptance: %s (%zu/%zu criteria)\n",
              failed == 0 ? "PASS" : "FAIL", kCriteria.size() - failed,
              kCriteria.size());
  return failed == 0 ? 0 : 1;
}
