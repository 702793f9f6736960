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

// qdsim: run scenario files and regenerate the shipped figure scenarios.
//
// Exit status: 0 when every check passes, 2 when a check fails, 1 on error.

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "qdsim/error.hpp"
#include "qdsim/runner.hpp"
#include "qdsim/scenario.hpp"

#ifndef QDSIM_DEFAULT_SCENARIO_DIR
#define QDSIM_DEFAULT_SCENARIO_DIR "scenarios"
#endif

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitCheckFailed = 2;

struct Job {
  fs::path file;
  std::optional<double> step;
  std::optional<double> t_end;
  bool check = true;
  fs::path out_dir;
};

struct Outcome {
  int status = kExitOk;
  std::string text;
};

Outcome run_job(const Job& job) {
  Outcome o;
  try {
    qdsim::Scenario s = qdsim::load_scenario(job.file);
    if (!s.has("scenario", "name")) s.set("scenario", "name", job.file.stem().string());
    if (job.step) s.set("integrator", "step", *job.step);
    if (job.t_end) s.set("integrator", "t_end", *job.t_end);
    qdsim::RunOptions opts;
    opts.check = job.check;
    qdsim::RunResult r = qdsim::run(s, opts);
    const auto files = qdsim::write_outputs(s, r, job.out_dir);

    const qdsim::RunReport& rep = r.report;
    o.status = rep.passed() ? kExitOk : kExitCheckFailed;
    char head[160];
    std::snprintf(head, sizeof(head), "%s %s (%s) %.2fs\n", rep.passed() ? "PASS" : "FAIL",
                  rep.name.c_str(), rep.kind.c_str(), rep.wall_seconds);
    o.text = head;
    for (const qdsim::CheckResult& c : rep.checks) {
      o.text += "  " + std::string(c.passed ? "ok   " : "FAIL ") + c.name +
                "  violation=" + qdsim::format_real(c.violation) +
                " tolerance=" + qdsim::format_real(c.tolerance) + "\n";
    }
    for (const std::string& w : rep.warnings) o.text += "  warning: " + w + "\n";
    for (const fs::path& f : files) o.text += "  wrote " + f.string() + "\n";
  } catch (const qdsim::Error& e) {
    o.status = kExitError;
    o.text = "ERROR " + job.file.string() + ": [" + std::string(qdsim::to_string(e.code())) + "] " +
             e.what() + "\n";
  } catch (const std::exception& e) {
    o.status = kExitError;
    o.text = "ERROR " + job.file.string() + ": " + e.what() + "\n";
  }
  return o;
}

int run_all(const std::vector<Job>& jobs, unsigned n_jobs) {
  std::vector<Outcome> outcomes(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) outcomes[i] = run_job(jobs[i]);
  };
  const unsigned n = std::max(1u, std::min<unsigned>(n_jobs, static_cast<unsigned>(jobs.size())));
  std::vector<std::thread> pool;
  for (unsigned k = 1; k < n; ++k) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();

  int status = kExitOk;
  for (const Outcome& o : outcomes) {
    (o.status == kExitError ? std::cerr : std::cout) << o.text;
    if (o.status == kExitError) {
      status = kExitError;
    } else if (o.status == kExitCheckFailed && status == kExitOk) {
      status = kExitCheckFailed;
    }
  }
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quasi-linear quantum dynamics simulator"};
  app.require_subcommand(1);

  std::vector<std::string> files;
  std::string out_dir = "qdsim_out";
  std::optional<double> step;
  std::optional<double> t_end;
  bool check = true;
  unsigned jobs = 1;

  CLI::App* run = app.add_subcommand("run", "Run one or more scenario files");
  run->add_option("scenario", files, "Scenario file(s)")->required();
  run->add_option("--out-dir", out_dir, "Directory for CSV, SVG and report files");
  run->add_option("--step", step, "Override [integrator] step")->check(CLI::PositiveNumber);
  run->add_option("--t-end", t_end, "Override [integrator] t_end")->check(CLI::PositiveNumber);
  run->add_flag("--check,!--no-check", check, "Run oracle and invariant checks (default on)");
  run->add_option("--jobs,-j", jobs, "Scenarios to run in parallel")->check(CLI::PositiveNumber);

  std::string scenario_dir = QDSIM_DEFAULT_SCENARIO_DIR;
  std::string fig_out = "figures";
  CLI::App* figures = app.add_subcommand("figures", "Regenerate every shipped figure scenario");
  figures->add_option("--scenario-dir", scenario_dir, "Directory of *.ini scenarios");
  figures->add_option("--out-dir", fig_out, "Output directory");
  figures->add_flag("--check,!--no-check", check, "Run oracle and invariant checks (default on)");
  figures->add_option("--jobs,-j", jobs, "Scenarios to run in parallel")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitError;
  }

  std::vector<Job> batch;
  if (*run) {
    for (const std::string& f : files) batch.push_back({f, step, t_end, check, out_dir});
  } else {
    std::error_code ec;
    std::vector<fs::path> found;
    for (const auto& entry : fs::directory_iterator(scenario_dir, ec)) {
      if (entry.path().extension() == ".ini") found.push_back(entry.path());
    }
    if (ec) {
      std::cerr << "ERROR cannot list '" << scenario_dir << "': " << ec.message() << "\n";
      return kExitError;
    }
    if (found.empty()) {
      std::cerr << "ERROR no *.ini scenarios in '" << scenario_dir << "'\n";
      return kExitError;
    }
    std::sort(found.begin(), found.end());
    for (const fs::path& f : found) batch.push_back({f, std::nullopt, std::nullopt, check, fig_out});
  }
  return run_all(batch, jobs);
}
