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
#include <string>
#include <vector>

namespace hypart {

// One verification suite's outcome: a pass/fail verdict plus one line per
// checked claim (each line reports the inequality or equality tested and the
// computed values, so failures are diagnosable from the report alone).
struct SuiteReport {
  std::string name;
  bool pass = true;
  std::vector<std::string> lines;
};

// Knobs shared by the suites. A zero means "use the suite's default scale",
// which is the scale the acceptance gate runs at. `seed` makes randomized
// suites reproducible; `threads` parallelizes independent trials without
// changing results.
struct VerifyOptions {
  std::uint64_t seed = 0;
  int threads = 1;
  int trials = 0;  // randomized suites: number of random instances
  int lmax = 0;    // grid: largest side length checked
  int n = 0;       // recursive: single instance size (0 = both 24 and 48)
  int k = 0;       // assignment: restrict to one part count (0 = {4, 6, 8})
  int g1 = 0;      // twostep: top-level link cost in random trials
};

// Names of all suites, in canonical order.
std::vector<std::string> verify_suite_names();

// Runs one suite by name. Throws std::invalid_argument for unknown names.
SuiteReport run_verify_suite(const std::string& name,
                             const VerifyOptions& opt);

}  // namespace hypart
