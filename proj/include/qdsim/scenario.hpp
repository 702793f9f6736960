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

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qdsim/linalg.hpp"

namespace qdsim {

// Scenario files are sectioned key = value text:
//
//   # comment
//   [scenario]
//   kind = qubit-closed-form
//   [qubit]
//   omega = (0, 0, 6)
//   g = (4, 0, 0)
//   xi = (0, 0, 1)
//   [integrator]
//   t_end = 10
//
// A value is a real, a parenthesized list of reals, or a bare string.
// Keys are checked against a per-section schema, and only the sections
// that belong to the scenario kind are accepted.

using ScenarioValue = std::variant<double, std::vector<double>, std::string>;

struct ScenarioEntry {
  std::string key;
  ScenarioValue value;
  std::size_t line = 0;  // 0 when set programmatically
};

struct ScenarioSection {
  std::string name;
  std::vector<ScenarioEntry> entries;
  std::size_t line = 0;
};

class Scenario {
 public:
  const std::string& kind() const;
  /// Value of [scenario] name, or `fallback`.
  std::string name_or(const std::string& fallback) const;

  const std::vector<ScenarioSection>& sections() const { return sections_; }
  bool has_section(std::string_view section) const;
  bool has(std::string_view section, std::string_view key) const;
  /// Throws MissingKeyError("section.key").
  const ScenarioEntry& entry(std::string_view section, std::string_view key) const;

  double real(std::string_view section, std::string_view key) const;
  double real_or(std::string_view section, std::string_view key, double fallback) const;
  long integer_or(std::string_view section, std::string_view key, long fallback) const;
  bool boolean_or(std::string_view section, std::string_view key, bool fallback) const;
  Vec3 vec3(std::string_view section, std::string_view key) const;
  Vec3 vec3_or(std::string_view section, std::string_view key, const Vec3& fallback) const;
  std::vector<double> list_or(std::string_view section, std::string_view key,
                              std::vector<double> fallback) const;
  std::string string_or(std::string_view section, std::string_view key,
                        const std::string& fallback) const;

  /// Inserts or replaces a value, creating the section if needed. The
  /// result is re-validated against the schema.
  void set(const std::string& section, const std::string& key, ScenarioValue value);

  /// Structural equality; source line numbers are ignored.
  friend bool operator==(const Scenario& a, const Scenario& b);

 private:
  friend Scenario parse_scenario(std::string_view text);
  std::vector<ScenarioSection> sections_;
};

/// Parses and validates. Errors: SyntaxError (line, column), UnknownKeyError
/// (line), MissingKeyError, DomainError (with the offending line).
Scenario parse_scenario(std::string_view text);
/// Reads a file (IoError if unreadable) and parses it.
Scenario load_scenario(const std::filesystem::path& path);
/// Canonical text form; parse_scenario(serialize_scenario(s)) == s.
std::string serialize_scenario(const Scenario& s);
/// Re-runs the schema and domain checks.
void validate_scenario(const Scenario& s);

/// Shortest round-trip decimal form of a double, locale independent.
std::string format_real(double v);

/// The known scenario kinds, in canonical order.
const std::vector<std::string>& scenario_kinds();

}  // namespace qdsim
