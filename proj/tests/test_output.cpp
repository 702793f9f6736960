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

#include <algorithm>
#include <clocale>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <locale>
#include <sstream>
#include <string>

#include "qdsim/error.hpp"
#include "qdsim/output.hpp"

using namespace qdsim;
using Catch::Matchers::ContainsSubstring;

namespace fs = std::filesystem;

namespace {

Trajectory sample_trajectory() {
  Trajectory t;
  t.times = {0.0, 0.5, 1.0};
  t.states.assign(3, DensityMatrix::maximally_mixed(2));
  t.add_series("a", {1.0 / 3.0, -2.0e-7, 12345.678});
  t.add_series("b", {0.1, 0.2, 0.30000000000000004});
  return t;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch_dir(const std::string& name) {
  const fs::path d = fs::temp_directory_path() / ("qdsim_test_" + name);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

// Installs a global locale with ',' as decimal separator for the scope.
class CommaLocale {
 public:
  CommaLocale() : old_(std::locale()) {
    struct Comma : std::numpunct<char> {
      char do_decimal_point() const override { return ','; }
      char do_thousands_sep() const override { return '.'; }
      std::string do_grouping() const override { return "\3"; }
    };
    std::locale::global(std::locale(std::locale::classic(), new Comma));
    // Also try the C library locale; absent locales are simply skipped.
    c_old_ = std::setlocale(LC_NUMERIC, nullptr);
    for (const char* name : {"de_DE.UTF-8", "de_DE.utf8", "fr_FR.UTF-8"}) {
      if (std::setlocale(LC_NUMERIC, name) != nullptr) break;
    }
  }
  ~CommaLocale() {
    std::locale::global(old_);
    std::setlocale(LC_NUMERIC, c_old_.c_str());
  }

 private:
  std::locale old_;
  std::string c_old_;
};

}  // namespace

TEST_CASE("csv formatting", "[output]") {
  const std::string text = csv_text(sample_trajectory());
  SECTION("header plus one line per sample, LF only") {
    CHECK(std::count(text.begin(), text.end(), '\n') == 4);
    CHECK(text.find('\r') == std::string::npos);
    CHECK(text.rfind("t,a,b\n", 0) == 0);
    CHECK(text.back() == '\n');
  }
  SECTION("17 significant digits round-trip exactly") {
    CHECK(format_csv_real(1.0 / 3.0) == "0.33333333333333331");
    CHECK(format_csv_real(0.1) == "0.10000000000000001");
    for (double v : {1.0 / 3.0, -2.0e-7, 12345.678, 0.30000000000000004, 6.02e23, -1e-300}) {
      CHECK(std::strtod(format_csv_real(v).c_str(), nullptr) == v);
    }
    std::istringstream in(text);
    std::string line;
    std::getline(in, line);
    std::getline(in, line);
    CHECK(line == format_csv_real(0.0) + "," + format_csv_real(1.0 / 3.0) + "," + format_csv_real(0.1));
  }
  SECTION("column selection and order") {
    const std::string only_b = csv_text(sample_trajectory(), {"b"});
    CHECK(only_b.rfind("t,b\n", 0) == 0);
    const std::string swapped = csv_text(sample_trajectory(), {"b", "a"});
    CHECK(swapped.rfind("t,b,a\n", 0) == 0);
  }
}

TEST_CASE("csv output ignores the global locale", "[output]") {
  const std::string reference = csv_text(sample_trajectory());
  std::string localized;
  {
    CommaLocale guard;
    localized = csv_text(sample_trajectory());
  }
  CHECK(localized == reference);
  CHECK(localized.find("0,3") == std::string::npos);
}

TEST_CASE("csv files are byte-identical across runs", "[output]") {
  const fs::path dir = scratch_dir("csv");
  emit_csv(sample_trajectory(), dir / "one.csv");
  emit_csv(sample_trajectory(), dir / "two.csv");
  const std::string a = slurp(dir / "one.csv");
  CHECK(a == slurp(dir / "two.csv"));
  CHECK(a == csv_text(sample_trajectory()));
  fs::remove_all(dir);
}

TEST_CASE("output errors", "[output][errors]") {
  CHECK_THROWS_AS(csv_text(Trajectory{}), PreconditionError);
  CHECK_THROWS_AS(csv_text(sample_trajectory(), {"nope"}), NotFoundError);
  std::vector<std::string> warnings;
  CHECK_THROWS_AS(svg_text(Trajectory{}, PlotSpec{}, warnings), PreconditionError);
  // Parent is a regular file, so the path is unwritable even for root.
  const fs::path dir = scratch_dir("errors");
  emit_csv(sample_trajectory(), dir / "plain");
  CHECK_THROWS_AS(emit_csv(sample_trajectory(), dir / "plain" / "out.csv"), IoError);
  CHECK_THROWS_AS(emit_svg(sample_trajectory(), PlotSpec{}, dir / "plain" / "out.svg"), IoError);
  fs::remove_all(dir);
}

TEST_CASE("svg plots", "[output]") {
  const Trajectory t = sample_trajectory();
  SECTION("linear axes draw every sample without warnings") {
    std::vector<std::string> warnings;
    PlotSpec spec;
    spec.title = "a & b <demo>";
    const std::string svg = svg_text(t, spec, warnings);
    CHECK(warnings.empty());
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK_THAT(svg, ContainsSubstring("<svg"));
    CHECK_THAT(svg, ContainsSubstring("</svg>"));
    CHECK_THAT(svg, ContainsSubstring("a &amp; b &lt;demo&gt;"));
    CHECK(svg.find('\r') == std::string::npos);
  }
  SECTION("log x-axis drops t = 0 with a warning") {
    std::vector<std::string> warnings;
    PlotSpec spec;
    spec.log_x = true;
    const std::string svg = svg_text(t, spec, warnings);
    REQUIRE(warnings.size() == 1);
    CHECK_THAT(warnings[0], ContainsSubstring("dropped 1"));
    CHECK_THAT(svg, ContainsSubstring("(log)"));
  }
  SECTION("log y-axis drops non-positive values per series") {
    std::vector<std::string> warnings;
    PlotSpec spec;
    spec.log_y = true;
    svg_text(t, spec, warnings);
    REQUIRE(warnings.size() == 1);
    CHECK_THAT(warnings[0], ContainsSubstring("a"));
  }
  SECTION("parametric plot and unknown series") {
    std::vector<std::string> warnings;
    PlotSpec spec;
    spec.x_axis = "a";
    spec.series = {"b"};
    CHECK_NOTHROW(svg_text(t, spec, warnings));
    spec.series = {"zzz"};
    CHECK_THROWS_AS(svg_text(t, spec, warnings), NotFoundError);
  }
  SECTION("deterministic files") {
    const fs::path dir = scratch_dir("svg");
    PlotSpec spec;
    spec.log_x = true;
    const auto w1 = emit_svg(t, spec, dir / "one.svg");
    const auto w2 = emit_svg(t, spec, dir / "two.svg");
    CHECK(w1 == w2);
    CHECK(slurp(dir / "one.svg") == slurp(dir / "two.svg"));
    fs::remove_all(dir);
  }
}

TEST_CASE("list splitting", "[output]") {
  CHECK(split_list("a, b,c") == std::vector<std::string>{"a", "b", "c"});
  CHECK(split_list("  single  ") == std::vector<std::string>{"single"});
  CHECK(split_list("").empty());
}
