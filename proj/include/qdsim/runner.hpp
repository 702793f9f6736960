// Copyright 2026 The qdsim Authors
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

#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "qdsim/gksl.hpp"
#include "qdsim/scenario.hpp"

namespace qdsim {

/// One invariant or oracle comparison: the largest violation observed and
/// the bound it is held to.
struct CheckResult {
  std::string name;
  double violation = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

struct RunReport {
  std::string name;
  std::string kind;
  std::string scenario_echo;
  std::vector<CheckResult> checks;
  std::vector<std::pair<std::string, std::string>> info;
  std::vector<std::string> warnings;
  double wall_seconds = 0.0;

  bool passed() const;
  const CheckResult* find(const std::string& check) const;
  std::string to_text() const;
};

struct RunOptions {
  /// Oracle cross-checks and invariant checks.
  bool check = true;
};

struct RunResult {
  Trajectory trajectory;
  RunReport report;
};

/// Runs the evolution a scenario describes. Output is deterministic for a
/// fixed scenario.
RunResult run(const Scenario& s, const RunOptions& opts = {});

/// Writes the CSV and SVG files requested by [output] (default:
/// `<name>.csv`) and `<name>.report.txt` into `out_dir`. Returns the files
/// written; plotting warnings are appended to the report.
std::vector<std::filesystem::path> write_outputs(const Scenario& s, RunResult& r,
                                                 const std::filesystem::path& out_dir);

}  // namespace qdsim
