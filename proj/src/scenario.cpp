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

#include "qdsim/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

#include "qdsim/error.hpp"
#include "qdsim/numeric_policy.hpp"

namespace qdsim {

namespace {

enum class Type { Real, Int, Bool, Vec3, List, String };
enum class Domain { Any, Positive, NonNegative, UnitBall, Sign, Choice };

struct KeySpec {
  std::string_view key;
  Type type;
  bool required;
  Domain domain = Domain::Any;
  std::vector<std::string_view> choices = {};
};

struct SectionSpec {
  std::string_view name;
  std::vector<KeySpec> keys;
};

const std::vector<SectionSpec>& schema() {
  static const std::vector<SectionSpec> s = {
      {"scenario",
       {{"kind", Type::String, true, Domain::Choice,
         {"qubit-closed-form", "gksl-ode", "single-lindblad", "jaynes-cummings", "bmt", "neutrino"}},
        {"name", Type::String, false},
        {"description", Type::String, false}}},
      {"qubit",
       {{"omega", Type::Vec3, true},
        {"g", Type::Vec3, true},
        {"xi", Type::Vec3, true, Domain::UnitBall},
        {"kappa", Type::Real, false},
        {"g_scale", Type::List, false},
        {"rabi", Type::Bool, false},
        {"g_profile", Type::String, false, Domain::Choice, {"constant", "morse"}},
        {"q", Type::Real, false},
        {"nu", Type::Real, false, Domain::Positive},
        {"mean_from", Type::Real, false, Domain::NonNegative}}},
      {"lindblad",
       {{"kappa", Type::Real, false},
        {"g", Type::Real, true},
        {"omega", Type::Real, true},
        {"l", Type::Real, true},
        {"xi", Type::Vec3, true, Domain::UnitBall}}},
      {"jc",
       {{"omega_f", Type::Real, true},
        {"omega_a", Type::Real, true},
        {"g", Type::Real, true},
        {"n_max", Type::Int, false, Domain::Positive},
        {"block", Type::Int, false, Domain::NonNegative},
        {"weights", Type::List, false, Domain::NonNegative},
        {"xi", Type::Vec3, true, Domain::UnitBall}}},
      {"bmt",
       {{"E", Type::Vec3, true},
        {"B", Type::Vec3, true},
        {"p", Type::Vec3, false},
        {"xi", Type::Vec3, true, Domain::UnitBall},
        {"charge", Type::Real, false},
        {"mass", Type::Real, false, Domain::Positive},
        {"expect_spin", Type::Vec3, false, Domain::UnitBall},
        {"spin_tolerance", Type::Real, false, Domain::Positive}}},
      {"neutrino",
       {{"mode", Type::String, true, Domain::Choice, {"msw", "damping"}},
        {"energy", Type::Real, true, Domain::Positive},
        {"theta", Type::Real, false},
        {"dm2", Type::Real, false, Domain::Positive},
        {"eps", Type::Real, false, Domain::Positive},
        {"r_sun", Type::Real, false, Domain::Positive},
        {"v_scale", Type::Real, false},
        {"cutoff", Type::Real, false, Domain::Positive},
        {"g_sign", Type::Real, false, Domain::Sign},
        {"initial", Type::String, false, Domain::Choice, {"electron", "muon"}}}},
      {"integrator",
       {{"t_end", Type::Real, true, Domain::Positive},
        {"step", Type::Real, false, Domain::Positive},
        {"sample_stride", Type::Int, false, Domain::Positive}}},
      {"output",
       {{"csv", Type::String, false},
        {"svg", Type::String, false},
        {"observables", Type::String, false},
        {"x_axis", Type::String, false},
        {"log_x", Type::Bool, false},
        {"log_y", Type::Bool, false},
        {"title", Type::String, false}}},
  };
  return s;
}

std::string_view kind_section(std::string_view kind) {
  if (kind == "qubit-closed-form" || kind == "gksl-ode") return "qubit";
  if (kind == "single-lindblad") return "lindblad";
  if (kind == "jaynes-cummings") return "jc";
  if (kind == "bmt") return "bmt";
  return "neutrino";
}

const SectionSpec* find_section_spec(std::string_view name) {
  for (const SectionSpec& s : schema()) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

const KeySpec* find_key_spec(const SectionSpec& s, std::string_view key) {
  for (const KeySpec& k : s.keys) {
    if (k.key == key) return &k;
  }
  return nullptr;
}

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool is_identifier(std::string_view s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

// Parses the whole of `s` as a finite real; from_chars is locale independent.
bool parse_real(std::string_view s, double& out) {
  if (s.empty()) return false;
  const char* first = s.data();
  if (*first == '+') {
    ++first;
    if (first == s.data() + s.size() || *first == '-') return false;
  }
  const auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

std::string qualified(std::string_view section, std::string_view key) {
  return std::string(section) + "." + std::string(key);
}

// `col` is the 1-based column of the first character of `text`.
ScenarioValue parse_value(std::string_view text, std::size_t line, std::size_t col) {
  if (text.empty()) throw SyntaxError(line, col, "missing value after '='");
  if (text.front() == '(') {
    if (text.back() != ')') throw SyntaxError(line, col + text.size() - 1, "expected ')'");
    std::vector<double> values;
    std::string_view body = text.substr(1, text.size() - 2);
    std::size_t offset = 1;
    if (trim(body).empty()) throw SyntaxError(line, col + 1, "empty list");
    while (true) {
      const auto comma = body.find(',');
      const std::string_view item = body.substr(0, comma);
      const std::string_view t = trim(item);
      const std::size_t lead = item.find_first_not_of(" \t");
      double v = 0.0;
      if (!parse_real(t, v)) {
        throw SyntaxError(line, col + offset + (lead == std::string_view::npos ? 0 : lead),
                          "expected a real number in list, got '" + std::string(t) + "'");
      }
      if (!std::isfinite(v)) throw SyntaxError(line, col + offset, "non-finite number");
      values.push_back(v);
      if (comma == std::string_view::npos) break;
      body.remove_prefix(comma + 1);
      offset += comma + 1;
    }
    return values;
  }
  // Free text may carry balanced parentheses, e.g. "p(t)".
  int depth = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '(') ++depth;
    if (text[i] == ')' && --depth < 0) throw SyntaxError(line, col + i, "unbalanced parenthesis");
  }
  if (depth != 0) throw SyntaxError(line, col + text.find('('), "unbalanced parenthesis");
  double v = 0.0;
  if (parse_real(text, v)) {
    if (!std::isfinite(v)) throw SyntaxError(line, col, "non-finite number");
    return v;
  }
  return std::string(text);
}

std::string type_name(Type t) {
  switch (t) {
    case Type::Real: return "a real number";
    case Type::Int: return "an integer";
    case Type::Bool: return "true or false";
    case Type::Vec3: return "a 3-vector (x, y, z)";
    case Type::List: return "a list (a, b, ...)";
    case Type::String: return "a string";
  }
  return "?";
}

[[noreturn]] void type_error(const ScenarioEntry& e, std::string_view section, Type t) {
  throw SyntaxError(e.line, 1, qualified(section, e.key) + " must be " + type_name(t));
}

[[noreturn]] void domain_error(const ScenarioEntry& e, std::string_view section,
                               const std::string& why) {
  std::string where = e.line > 0 ? "line " + std::to_string(e.line) + ": " : "";
  throw DomainError(where + qualified(section, e.key) + " " + why);
}

void check_entry(const ScenarioEntry& e, std::string_view section, const KeySpec& k) {
  const ScenarioValue& v = e.value;
  switch (k.type) {
    case Type::Real:
      if (!std::holds_alternative<double>(v)) type_error(e, section, k.type);
      break;
    case Type::Int:
      if (!std::holds_alternative<double>(v) ||
          std::get<double>(v) != std::floor(std::get<double>(v)) ||
          std::abs(std::get<double>(v)) > 1e15) {
        type_error(e, section, k.type);
      }
      break;
    case Type::Bool:
      if (!std::holds_alternative<std::string>(v) ||
          (std::get<std::string>(v) != "true" && std::get<std::string>(v) != "false")) {
        type_error(e, section, k.type);
      }
      break;
    case Type::Vec3:
      if (!std::holds_alternative<std::vector<double>>(v) ||
          std::get<std::vector<double>>(v).size() != 3) {
        type_error(e, section, k.type);
      }
      break;
    case Type::List:
      if (!std::holds_alternative<std::vector<double>>(v)) type_error(e, section, k.type);
      break;
    case Type::String:
      if (!std::holds_alternative<std::string>(v)) type_error(e, section, k.type);
      break;
  }

  auto each_number = [&](auto&& pred, const char* why) {
    if (const double* d = std::get_if<double>(&v)) {
      if (!pred(*d)) domain_error(e, section, why);
    } else if (const auto* l = std::get_if<std::vector<double>>(&v)) {
      for (double x : *l) {
        if (!pred(x)) domain_error(e, section, why);
      }
    }
  };
  switch (k.domain) {
    case Domain::Any: break;
    case Domain::Positive:
      each_number([](double x) { return x > 0.0; }, "must be positive");
      break;
    case Domain::NonNegative:
      each_number([](double x) { return x >= 0.0; }, "must be non-negative");
      break;
    case Domain::Sign:
      each_number([](double x) { return x == 1.0 || x == -1.0; }, "must be +1 or -1");
      break;
    case Domain::UnitBall: {
      const auto& l = std::get<std::vector<double>>(v);
      const double n = std::sqrt(l[0] * l[0] + l[1] * l[1] + l[2] * l[2]);
      if (n > 1.0 + policy.bloch_radius) {
        domain_error(e, section, "has norm " + format_real(n) + " > 1");
      }
      break;
    }
    case Domain::Choice: {
      const std::string& s = std::get<std::string>(v);
      if (std::find(k.choices.begin(), k.choices.end(), s) == k.choices.end()) {
        std::string opts;
        for (std::string_view c : k.choices) opts += (opts.empty() ? "" : ", ") + std::string(c);
        domain_error(e, section, "must be one of {" + opts + "}, got '" + s + "'");
      }
      break;
    }
  }
}

const ScenarioEntry* find_entry(const std::vector<ScenarioSection>& secs, std::string_view section,
                                std::string_view key) {
  for (const ScenarioSection& s : secs) {
    if (s.name != section) continue;
    for (const ScenarioEntry& e : s.entries) {
      if (e.key == key) return &e;
    }
  }
  return nullptr;
}

void validate_sections(const std::vector<ScenarioSection>& secs) {
  const ScenarioEntry* kind_entry = find_entry(secs, "scenario", "kind");
  // Per-key schema first so that unknown keys are reported by line.
  for (const ScenarioSection& s : secs) {
    const SectionSpec* spec = find_section_spec(s.name);
    if (spec == nullptr) throw UnknownKeyError(s.line, "[" + s.name + "]");
    for (const ScenarioEntry& e : s.entries) {
      const KeySpec* k = find_key_spec(*spec, e.key);
      if (k == nullptr) throw UnknownKeyError(e.line, qualified(s.name, e.key));
      check_entry(e, s.name, *k);
    }
  }
  if (kind_entry == nullptr) throw MissingKeyError("scenario.kind");
  const std::string& kind = std::get<std::string>(kind_entry->value);
  const std::string_view model = kind_section(kind);
  for (const ScenarioSection& s : secs) {
    if (s.name != "scenario" && s.name != "integrator" && s.name != "output" && s.name != model) {
      throw UnknownKeyError(s.line, "[" + s.name + "] (not used by kind " + kind + ")");
    }
  }
  for (std::string_view required : {model, std::string_view("integrator")}) {
    const SectionSpec* spec = find_section_spec(required);
    for (const KeySpec& k : spec->keys) {
      if (k.required && find_entry(secs, required, k.key) == nullptr) {
        throw MissingKeyError(qualified(required, k.key));
      }
    }
  }

  // Cross-key rules.
  if (const ScenarioEntry* p = find_entry(secs, "qubit", "g_profile")) {
    if (std::get<std::string>(p->value) == "morse") {
      if (kind != "gksl-ode") domain_error(*p, "qubit", "= morse needs kind gksl-ode");
      for (std::string_view k : {"q", "nu"}) {
        if (find_entry(secs, "qubit", k) == nullptr) throw MissingKeyError(qualified("qubit", k));
      }
    }
  }
  if (const ScenarioEntry* gs = find_entry(secs, "qubit", "g_scale")) {
    if (std::get<std::vector<double>>(gs->value).empty()) domain_error(*gs, "qubit", "is empty");
  }
  if (kind == "jaynes-cummings") {
    const ScenarioEntry* nm = find_entry(secs, "jc", "n_max");
    const double n_max = nm ? std::get<double>(nm->value) : 16.0;
    if (const ScenarioEntry* b = find_entry(secs, "jc", "block")) {
      if (std::get<double>(b->value) > n_max) domain_error(*b, "jc", "exceeds n_max");
    }
    if (const ScenarioEntry* w = find_entry(secs, "jc", "weights")) {
      const auto& l = std::get<std::vector<double>>(w->value);
      if (static_cast<double>(l.size()) != n_max + 1.0) {
        domain_error(*w, "jc", "must have n_max + 1 entries");
      }
      double sum = 0.0;
      for (double x : l) sum += x;
      if (std::abs(sum - 1.0) > policy.trace) domain_error(*w, "jc", "must sum to 1");
    }
  }
}

void write_value(std::ostringstream& os, const ScenarioValue& v) {
  if (const double* d = std::get_if<double>(&v)) {
    os << format_real(*d);
  } else if (const auto* l = std::get_if<std::vector<double>>(&v)) {
    os << '(';
    for (std::size_t i = 0; i < l->size(); ++i) os << (i ? ", " : "") << format_real((*l)[i]);
    os << ')';
  } else {
    os << std::get<std::string>(v);
  }
}

}  // namespace

std::string format_real(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return ec == std::errc() ? std::string(buf, ptr) : std::string("nan");
}

const std::vector<std::string>& scenario_kinds() {
  static const std::vector<std::string> kinds = {"qubit-closed-form", "gksl-ode",
                                                 "single-lindblad",   "jaynes-cummings",
                                                 "bmt",               "neutrino"};
  return kinds;
}

const std::string& Scenario::kind() const {
  return std::get<std::string>(entry("scenario", "kind").value);
}

std::string Scenario::name_or(const std::string& fallback) const {
  return string_or("scenario", "name", fallback);
}

bool Scenario::has_section(std::string_view section) const {
  return std::any_of(sections_.begin(), sections_.end(),
                     [&](const ScenarioSection& s) { return s.name == section; });
}

bool Scenario::has(std::string_view section, std::string_view key) const {
  return find_entry(sections_, section, key) != nullptr;
}

const ScenarioEntry& Scenario::entry(std::string_view section, std::string_view key) const {
  const ScenarioEntry* e = find_entry(sections_, section, key);
  if (e == nullptr) throw MissingKeyError(qualified(section, key));
  return *e;
}

double Scenario::real(std::string_view section, std::string_view key) const {
  const ScenarioEntry& e = entry(section, key);
  if (const double* d = std::get_if<double>(&e.value)) return *d;
  type_error(e, section, Type::Real);
}

double Scenario::real_or(std::string_view section, std::string_view key, double fallback) const {
  return has(section, key) ? real(section, key) : fallback;
}

long Scenario::integer_or(std::string_view section, std::string_view key, long fallback) const {
  return has(section, key) ? static_cast<long>(real(section, key)) : fallback;
}

bool Scenario::boolean_or(std::string_view section, std::string_view key, bool fallback) const {
  if (!has(section, key)) return fallback;
  return string_or(section, key, "false") == "true";
}

Vec3 Scenario::vec3(std::string_view section, std::string_view key) const {
  const ScenarioEntry& e = entry(section, key);
  const auto* l = std::get_if<std::vector<double>>(&e.value);
  if (l == nullptr || l->size() != 3) type_error(e, section, Type::Vec3);
  return {(*l)[0], (*l)[1], (*l)[2]};
}

Vec3 Scenario::vec3_or(std::string_view section, std::string_view key,
                       const Vec3& fallback) const {
  return has(section, key) ? vec3(section, key) : fallback;
}

std::vector<double> Scenario::list_or(std::string_view section, std::string_view key,
                                      std::vector<double> fallback) const {
  if (!has(section, key)) return fallback;
  const ScenarioEntry& e = entry(section, key);
  const auto* l = std::get_if<std::vector<double>>(&e.value);
  if (l == nullptr) type_error(e, section, Type::List);
  return *l;
}

std::string Scenario::string_or(std::string_view section, std::string_view key,
                                const std::string& fallback) const {
  if (!has(section, key)) return fallback;
  const ScenarioEntry& e = entry(section, key);
  const auto* s = std::get_if<std::string>(&e.value);
  if (s == nullptr) type_error(e, section, Type::String);
  return *s;
}

void Scenario::set(const std::string& section, const std::string& key, ScenarioValue value) {
  std::vector<ScenarioSection> next = sections_;
  auto sec = std::find_if(next.begin(), next.end(),
                          [&](const ScenarioSection& s) { return s.name == section; });
  if (sec == next.end()) {
    next.push_back({section, {}, 0});
    sec = std::prev(next.end());
  }
  auto it = std::find_if(sec->entries.begin(), sec->entries.end(),
                         [&](const ScenarioEntry& e) { return e.key == key; });
  if (it == sec->entries.end()) {
    sec->entries.push_back({key, std::move(value), 0});
  } else {
    it->value = std::move(value);
  }
  validate_sections(next);
  sections_ = std::move(next);
}

bool operator==(const Scenario& a, const Scenario& b) {
  if (a.sections_.size() != b.sections_.size()) return false;
  for (std::size_t i = 0; i < a.sections_.size(); ++i) {
    const ScenarioSection& x = a.sections_[i];
    const ScenarioSection& y = b.sections_[i];
    if (x.name != y.name || x.entries.size() != y.entries.size()) return false;
    for (std::size_t j = 0; j < x.entries.size(); ++j) {
      if (x.entries[j].key != y.entries[j].key || x.entries[j].value != y.entries[j].value) {
        return false;
      }
    }
  }
  return true;
}

Scenario parse_scenario(std::string_view text) {
  std::vector<ScenarioSection> secs;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view raw = text.substr(0, nl);
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    const std::string_view line = trim(raw);
    if (line.empty()) continue;
    const std::size_t indent = raw.find_first_not_of(" \t") + 1;

    if (line.front() == '[') {
      if (line.back() != ']') throw SyntaxError(line_no, indent + line.size() - 1, "expected ']'");
      const std::string_view name = trim(line.substr(1, line.size() - 2));
      if (!is_identifier(name)) throw SyntaxError(line_no, indent + 1, "invalid section name");
      for (const ScenarioSection& s : secs) {
        if (s.name == name) {
          throw SyntaxError(line_no, indent, "duplicate section [" + std::string(name) + "]");
        }
      }
      secs.push_back({std::string(name), {}, line_no});
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw SyntaxError(line_no, indent, "expected 'key = value' or '[section]'");
    }
    const std::string_view key = trim(line.substr(0, eq));
    if (!is_identifier(key)) throw SyntaxError(line_no, indent, "invalid key '" + std::string(key) + "'");
    if (secs.empty()) throw SyntaxError(line_no, indent, "key outside of any section");
    const std::string_view rest = line.substr(eq + 1);
    const std::size_t lead = rest.find_first_not_of(" \t");
    const std::size_t value_col = indent + eq + 1 + (lead == std::string_view::npos ? 0 : lead);
    ScenarioSection& cur = secs.back();
    for (const ScenarioEntry& e : cur.entries) {
      if (e.key == key) throw SyntaxError(line_no, indent, "duplicate key '" + std::string(key) + "'");
    }
    cur.entries.push_back({std::string(key), parse_value(trim(rest), line_no, value_col), line_no});
  }
  validate_sections(secs);
  Scenario s;
  s.sections_ = std::move(secs);
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read scenario file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

std::string serialize_scenario(const Scenario& s) {
  std::ostringstream os;
  bool first = true;
  for (const ScenarioSection& sec : s.sections()) {
    if (!first) os << '\n';
    first = false;
    os << '[' << sec.name << "]\n";
    for (const ScenarioEntry& e : sec.entries) {
      os << e.key << " = ";
      write_value(os, e.value);
      os << '\n';
    }
  }
  return os.str();
}

void validate_scenario(const Scenario& s) { validate_sections(s.sections()); }

}  // namespace qdsim
