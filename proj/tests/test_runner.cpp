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

#include <catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "qdsim/error.hpp"
#include "qdsim/output.hpp"
#include "qdsim/runner.hpp"
#include "qdsim/scenario.hpp"

using namespace qdsim;
using Catch::Matchers::ContainsSubstring;

namespace fs = std::filesystem;

namespace {

Scenario shipped(const std::string& name, double t_end) {
  Scenario s = load_scenario(fs::path(QDSIM_SCENARIO_DIR) / (name + ".ini"));
  s.set("integrator", "t_end", t_end);
  return s;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void require_unique_checks(const RunReport& rep) {
  std::set<std::string> seen;
  for (const CheckResult& c : rep.checks) {
    INFO(c.name);
    CHECK(seen.insert(c.name).second);
  }
}

}  // namespace

TEST_CASE("shortened shipped scenarios pass their checks", "[runner]") {
  SECTION("closed-form qubit") {
    const RunResult r = run(shipped("fig01_probability", 2.0));
    INFO(r.report.to_text());
    CHECK(r.report.passed());
    CHECK(r.report.find("ode_vs_closed_form") != nullptr);
    CHECK(r.trajectory.has_series("p_minus_g4"));
    CHECK(r.trajectory.times.back() == 2.0);
    require_unique_checks(r.report);
  }
  SECTION("single Lindblad operator") {
    const RunResult r = run(shipped("fig08_single_lindblad", 1.0));
    INFO(r.report.to_text());
    CHECK(r.report.passed());
    REQUIRE(r.report.find("kraus_vs_closed_form") != nullptr);
    CHECK(r.report.find("kraus_vs_closed_form")->violation <= 1e-10);
    require_unique_checks(r.report);
  }
  SECTION("Jaynes-Cummings blocks") {
    const RunResult r = run(shipped("jc_blocks", 2.0));
    INFO(r.report.to_text());
    CHECK(r.report.passed());
    CHECK(r.report.find("block_classification") != nullptr);
    CHECK(r.report.find("weights_sum_to_one") != nullptr);
    require_unique_checks(r.report);
  }
  SECTION("MSW neutrino, first 20000 km") {
    const RunResult r = run(shipped("fig11a_neutrino_msw", 20000.0));
    INFO(r.report.to_text());
    CHECK(r.report.find("norm_drift") != nullptr);
    CHECK(r.report.find("norm_drift")->passed);
    require_unique_checks(r.report);
  }
}

TEST_CASE("runs are deterministic", "[runner]") {
  const Scenario s = shipped("fig04_trajectory_pure", 3.0);
  const RunResult a = run(s);
  const RunResult b = run(s);
  CHECK(csv_text(a.trajectory) == csv_text(b.trajectory));
}

TEST_CASE("checks can be disabled", "[runner]") {
  const RunResult r = run(shipped("fig01_probability", 1.0), RunOptions{false});
  CHECK(r.report.checks.empty());
  CHECK(r.report.passed());
  CHECK_FALSE(r.trajectory.empty());
}

TEST_CASE("output files", "[runner]") {
  const fs::path dir = fs::temp_directory_path() / "qdsim_test_runner";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const Scenario s = shipped("fig01_probability", 1.0);
  RunResult r = run(s);
  const std::vector<fs::path> files = write_outputs(s, r, dir);
  CHECK(files.size() == 3);
  for (const fs::path& f : files) CHECK(fs::exists(f));
  CHECK(fs::exists(dir / "fig01_probability.csv"));
  CHECK(fs::exists(dir / "fig01_probability.svg"));
  const std::string report = slurp(dir / "fig01_probability.report.txt");
  CHECK_THAT(report, ContainsSubstring("check ode_vs_closed_form: PASS"));
  CHECK(slurp(dir / "fig01_probability.csv") == csv_text(r.trajectory, split_list(s.string_or("output", "observables", ""))));
  // A regular file where a directory is needed cannot be written through.
  CHECK_THROWS_AS(write_outputs(s, r, dir / "fig01_probability.csv" / "sub"), IoError);
  fs::remove_all(dir);
}
