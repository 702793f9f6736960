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

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <limits>
#include <string>

#include "qdsim/error.hpp"
#include "qdsim/scenario.hpp"
#include "test_support.hpp"

using namespace qdsim;
using Catch::Matchers::ContainsSubstring;

namespace {

const std::string kMinimal =
    "# header comment\n"
    "[scenario]\n"
    "kind = qubit-closed-form\n"
    "\n"
    "[qubit]\n"
    "omega = (0, 0, 6)\n"
    "g = (4, 0, 0)   # trailing comment\n"
    "xi = (0, 0, 1)\n"
    "[integrator]\n"
    "t_end = 10\n";

std::string replace(std::string text, const std::string& from, const std::string& to) {
  const auto pos = text.find(from);
  REQUIRE(pos != std::string::npos);
  return text.replace(pos, from.size(), to);
}

}  // namespace

TEST_CASE("minimal scenario", "[scenario]") {
  const Scenario s = parse_scenario(kMinimal);
  CHECK(s.kind() == "qubit-closed-form");
  CHECK((s.vec3("qubit", "omega") - Vec3(0, 0, 6)).norm() == 0.0);
  CHECK((s.vec3("qubit", "g") - Vec3(4, 0, 0)).norm() == 0.0);
  CHECK(s.real("integrator", "t_end") == 10.0);
  CHECK(s.real_or("integrator", "step", 0.25) == 0.25);
  CHECK(s.integer_or("integrator", "sample_stride", 3) == 3);
  CHECK(s.name_or("unnamed") == "unnamed");
  CHECK(s.entry("qubit", "g").line == 7);
  CHECK(s.has_section("qubit"));
  CHECK_FALSE(s.has("qubit", "kappa"));
  CHECK_THROWS_AS(s.entry("qubit", "kappa"), MissingKeyError);
}

TEST_CASE("CRLF input parses like LF", "[scenario]") {
  std::string crlf;
  for (char ch : kMinimal) {
    if (ch == '\n') crlf += '\r';
    crlf += ch;
  }
  CHECK(parse_scenario(crlf) == parse_scenario(kMinimal));
}

TEST_CASE("unknown keys are rejected with their line", "[scenario][errors]") {
  const std::string text = replace(kMinimal, "omega = (0, 0, 6)", "omge = (0, 0, 6)");
  try {
    parse_scenario(text);
    FAIL("no error");
  } catch (const UnknownKeyError& e) {
    CHECK(e.line() == 6);
    CHECK(e.key() == "qubit.omge");
    CHECK_THAT(std::string(e.what()), ContainsSubstring("line 6"));
  }
}

TEST_CASE("domain errors carry the offending line", "[scenario][errors]") {
  const std::string text = replace(kMinimal, "xi = (0, 0, 1)", "xi = (1.5, 0, 0)");
  try {
    parse_scenario(text);
    FAIL("no error");
  } catch (const DomainError& e) {
    CHECK_THAT(std::string(e.what()), ContainsSubstring("line 8"));
  }
  CHECK_THROWS_AS(parse_scenario(replace(kMinimal, "t_end = 10", "t_end = -1")), DomainError);
  CHECK_THROWS_AS(parse_scenario(replace(kMinimal, "qubit-closed-form", "teleporter")), DomainError);
  // Wrong arity for a three-vector is a type error at the value.
  CHECK_THROWS_AS(parse_scenario(replace(kMinimal, "(4, 0, 0)", "(4, 0)")), SyntaxError);
}

TEST_CASE("missing required keys", "[scenario][errors]") {
  try {
    parse_scenario(replace(kMinimal, "t_end = 10\n", ""));
    FAIL("no error");
  } catch (const MissingKeyError& e) {
    CHECK(e.key() == "integrator.t_end");
  }
  CHECK_THROWS_AS(parse_scenario(replace(kMinimal, "kind = qubit-closed-form\n", "")), MissingKeyError);
}

TEST_CASE("syntax errors report line and column", "[scenario][errors]") {
  SECTION("missing equals sign") {
    try {
      parse_scenario(replace(kMinimal, "t_end = 10", "t_end 10"));
      FAIL("no error");
    } catch (const SyntaxError& e) {
      CHECK(e.line() == 10);
      CHECK(e.column() >= 1);
    }
  }
  SECTION("unterminated list") {
    try {
      parse_scenario(replace(kMinimal, "(0, 0, 6)", "(0, 0, 6"));
      FAIL("no error");
    } catch (const SyntaxError& e) {
      CHECK(e.line() == 6);
    }
  }
  SECTION("bad number inside a list") {
    try {
      parse_scenario(replace(kMinimal, "(0, 0, 6)", "(0, x, 6)"));
      FAIL("no error");
    } catch (const SyntaxError& e) {
      CHECK(e.line() == 6);
      CHECK(e.column() == 13);
    }
  }
  SECTION("unclosed section header") {
    CHECK_THROWS_AS(parse_scenario(replace(kMinimal, "[qubit]", "[qubit")), SyntaxError);
  }
  SECTION("unbalanced parenthesis in free text") {
    const std::string text = kMinimal + "[output]\ntitle = p(t, omega = 6\n";
    try {
      parse_scenario(text);
      FAIL("no error");
    } catch (const SyntaxError& e) {
      CHECK(e.line() == 12);
    }
  }
}

TEST_CASE("free text may contain balanced parentheses", "[scenario]") {
  const Scenario s = parse_scenario(kMinimal + "[output]\ntitle = p_minus(t), omega = 6\n");
  CHECK(s.string_or("output", "title", "") == "p_minus(t), omega = 6");
  CHECK(parse_scenario(serialize_scenario(s)) == s);
}

TEST_CASE("sections must belong to the kind", "[scenario][errors]") {
  CHECK_THROWS(parse_scenario(kMinimal + "[neutrino]\nmode = msw\nenergy = 0.01\n"));
  CHECK_THROWS(parse_scenario(kMinimal + "[nonsense]\n"));
}

TEST_CASE("programmatic edits are revalidated", "[scenario]") {
  Scenario s = parse_scenario(kMinimal);
  s.set("integrator", "step", 0.01);
  CHECK(s.real("integrator", "step") == 0.01);
  s.set("output", "title", std::string("edited"));
  CHECK(s.string_or("output", "title", "") == "edited");
  CHECK(parse_scenario(serialize_scenario(s)) == s);
  CHECK_THROWS_AS(s.set("integrator", "t_end", -3.0), DomainError);
  CHECK_THROWS_AS(s.set("integrator", "stepp", 1.0), UnknownKeyError);
  CHECK_THROWS(s.set("qubit", "xi", std::vector<double>{2, 0, 0}));
}

TEST_CASE("real formatting round-trips", "[scenario]") {
  for (double v : {0.0, 1.0, -2.5, 0.1, 1.0 / 3.0, 6.02214076e23, 5e-324, 1e300, -0.0015}) {
    const std::string s = format_real(v);
    CHECK(std::strtod(s.c_str(), nullptr) == v);
    CHECK(s.find(',') == std::string::npos);
  }
  CHECK(format_real(10.0) == "10");
  CHECK(format_real(0.5) == "0.5");
}

TEST_CASE("serialize is the inverse of parse", "[scenario][property]") {
  SECTION("minimal") {
    const Scenario s = parse_scenario(kMinimal);
    const std::string text = serialize_scenario(s);
    CHECK(parse_scenario(text) == s);
    // Canonical text is a fixed point.
    CHECK(serialize_scenario(parse_scenario(text)) == text);
  }
  SECTION("every shipped scenario") {
    std::size_t count = 0;
    for (const auto& entry : std::filesystem::directory_iterator(QDSIM_SCENARIO_DIR)) {
      if (entry.path().extension() != ".ini") continue;
      INFO(entry.path().filename().string());
      const Scenario s = load_scenario(entry.path());
      const std::string text = serialize_scenario(s);
      CHECK(parse_scenario(text) == s);
      CHECK(serialize_scenario(parse_scenario(text)) == text);
      ++count;
    }
    CHECK(count >= 15);
  }
}

TEST_CASE("loading", "[scenario][errors]") {
  CHECK_THROWS_AS(load_scenario("/nonexistent/dir/none.ini"), IoError);
  CHECK(scenario_kinds().size() == 6);
}
