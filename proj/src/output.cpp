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

#include "qdsim/output.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>

#include "qdsim/error.hpp"

namespace qdsim {

namespace {

// Keeps SVG files small; CSV output is never decimated.
constexpr std::size_t kMaxPlotPoints = 4000;

constexpr std::array<const char*, 8> kPalette = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                                 "#ff7f0e", "#17becf", "#8c564b", "#7f7f7f"};

std::string fixed(double v, int precision = 2) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed, precision);
  return ec == std::errc() ? std::string(buf, ptr) : std::string("0");
}

std::string escape_xml(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  out.close();
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

std::vector<std::string> resolve_columns(const Trajectory& t, const std::vector<std::string>& cols) {
  if (!cols.empty()) return cols;
  std::vector<std::string> all;
  for (const auto& [name, values] : t.derived) all.push_back(name);
  return all;
}

struct Axis {
  double lo = 0.0;
  double hi = 1.0;
  bool log = false;

  double map(double v) const { return log ? std::log10(v) : v; }
  double frac(double v) const { return (map(v) - lo) / (hi - lo); }
};

Axis make_axis(double lo, double hi, bool log) {
  Axis a;
  a.log = log;
  a.lo = log ? std::log10(lo) : lo;
  a.hi = log ? std::log10(hi) : hi;
  if (!(a.hi > a.lo)) {
    const double pad = std::max(1.0, std::abs(a.lo)) * 0.5;
    a.lo -= pad;
    a.hi += pad;
  } else if (!log) {
    const double pad = 0.05 * (a.hi - a.lo);
    a.lo -= pad;
    a.hi += pad;
  }
  return a;
}

// Tick positions in data units.
std::vector<double> ticks(const Axis& a) {
  std::vector<double> out;
  if (a.log) {
    for (double e = std::ceil(a.lo); e <= a.hi + 1e-12; e += 1.0) out.push_back(std::pow(10.0, e));
    return out;
  }
  const double raw = (a.hi - a.lo) / 6.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    if (m * mag >= raw) {
      step = m * mag;
      break;
    }
  }
  for (double v = std::ceil(a.lo / step) * step; v <= a.hi + 1e-12 * step; v += step) {
    out.push_back(std::abs(v) < 1e-12 * step ? 0.0 : v);
  }
  return out;
}

std::string tick_label(double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 4);
  return ec == std::errc() ? std::string(buf, ptr) : std::string("?");
}

}  // namespace

std::string format_csv_real(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return ec == std::errc() ? std::string(buf, ptr) : std::string("nan");
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    const auto comma = s.find(',', start);
    std::string item = s.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string csv_text(const Trajectory& t, const std::vector<std::string>& columns) {
  if (t.empty()) throw PreconditionError("csv: empty trajectory");
  t.validate();
  const std::vector<std::string> cols = resolve_columns(t, columns);
  std::vector<const std::vector<double>*> data;
  std::string out = "t";
  for (const std::string& c : cols) {
    data.push_back(&t.series(c));
    out += ',';
    out += c;
  }
  out += '\n';
  for (std::size_t i = 0; i < t.size(); ++i) {
    out += format_csv_real(t.times[i]);
    for (const auto* d : data) {
      out += ',';
      out += format_csv_real((*d)[i]);
    }
    out += '\n';
  }
  return out;
}

void emit_csv(const Trajectory& t, const std::filesystem::path& path,
              const std::vector<std::string>& columns) {
  write_file(path, csv_text(t, columns));
}

std::string svg_text(const Trajectory& t, const PlotSpec& spec, std::vector<std::string>& warnings) {
  if (t.empty()) throw PreconditionError("svg: empty trajectory");
  t.validate();
  const std::vector<std::string> names = resolve_columns(t, spec.series);
  if (names.empty()) throw PreconditionError("svg: nothing to plot");
  const std::vector<double>& xs = spec.x_axis == "t" ? t.times : t.series(spec.x_axis);

  // Drawable samples per series.
  struct Line {
    std::string name;
    std::vector<std::pair<double, double>> pts;
  };
  std::vector<Line> lines;
  std::size_t x_dropped = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (spec.log_x && !(xs[i] > 0.0)) ++x_dropped;
  }
  if (x_dropped > 0) {
    warnings.push_back("log x-axis: dropped " + std::to_string(x_dropped) + " sample(s) with " +
                       spec.x_axis + " <= 0");
  }
  double xmin = std::numeric_limits<double>::infinity();
  double xmax = -xmin;
  double ymin = xmin;
  double ymax = -xmin;
  for (const std::string& name : names) {
    const std::vector<double>& ys = t.series(name);
    Line line{name, {}};
    std::size_t y_dropped = 0;
    for (std::size_t i = 0; i < ys.size(); ++i) {
      if (spec.log_x && !(xs[i] > 0.0)) continue;
      if (spec.log_y && !(ys[i] > 0.0)) {
        ++y_dropped;
        continue;
      }
      if (!std::isfinite(xs[i]) || !std::isfinite(ys[i])) continue;
      line.pts.emplace_back(xs[i], ys[i]);
      xmin = std::min(xmin, xs[i]);
      xmax = std::max(xmax, xs[i]);
      ymin = std::min(ymin, ys[i]);
      ymax = std::max(ymax, ys[i]);
    }
    if (y_dropped > 0) {
      warnings.push_back("log y-axis: dropped " + std::to_string(y_dropped) +
                         " non-positive sample(s) of " + name);
    }
    lines.push_back(std::move(line));
  }
  if (!std::isfinite(xmin)) {
    xmin = spec.log_x ? 1.0 : 0.0;
    xmax = spec.log_x ? 10.0 : 1.0;
    ymin = spec.log_y ? 1.0 : 0.0;
    ymax = spec.log_y ? 10.0 : 1.0;
    warnings.push_back("plot has no drawable samples");
  }
  const Axis ax = make_axis(xmin, xmax, spec.log_x);
  const Axis ay = make_axis(ymin, ymax, spec.log_y);

  const double left = 70.0;
  const double right = 20.0;
  const double top = spec.title.empty() ? 20.0 : 40.0;
  const double bottom = 50.0;
  const double w = spec.width - left - right;
  const double h = spec.height - top - bottom;
  auto px = [&](double x) { return left + w * ax.frac(x); };
  auto py = [&](double y) { return top + h * (1.0 - ay.frac(y)); };

  std::string s;
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(spec.width) +
       "\" height=\"" + std::to_string(spec.height) + "\" viewBox=\"0 0 " +
       std::to_string(spec.width) + " " + std::to_string(spec.height) + "\">\n";
  s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!spec.title.empty()) {
    s += "<text x=\"" + fixed(left + w / 2) + "\" y=\"24\" text-anchor=\"middle\" "
         "font-family=\"sans-serif\" font-size=\"15\">" + escape_xml(spec.title) + "</text>\n";
  }
  s += "<g font-family=\"sans-serif\" font-size=\"11\" stroke=\"none\" fill=\"black\">\n";
  for (double v : ticks(ax)) {
    const double x = px(v);
    s += "<line x1=\"" + fixed(x) + "\" y1=\"" + fixed(top) + "\" x2=\"" + fixed(x) + "\" y2=\"" +
         fixed(top + h) + "\" stroke=\"#e0e0e0\"/>\n";
    s += "<text x=\"" + fixed(x) + "\" y=\"" + fixed(top + h + 16) +
         "\" text-anchor=\"middle\">" + tick_label(v) + "</text>\n";
  }
  for (double v : ticks(ay)) {
    const double y = py(v);
    s += "<line x1=\"" + fixed(left) + "\" y1=\"" + fixed(y) + "\" x2=\"" + fixed(left + w) +
         "\" y2=\"" + fixed(y) + "\" stroke=\"#e0e0e0\"/>\n";
    s += "<text x=\"" + fixed(left - 6) + "\" y=\"" + fixed(y + 4) + "\" text-anchor=\"end\">" +
         tick_label(v) + "</text>\n";
  }
  s += "<text x=\"" + fixed(left + w / 2) + "\" y=\"" + fixed(top + h + 38) +
       "\" text-anchor=\"middle\">" + escape_xml(spec.x_axis) + (spec.log_x ? " (log)" : "") +
       "</text>\n";
  s += "</g>\n";
  s += "<rect x=\"" + fixed(left) + "\" y=\"" + fixed(top) + "\" width=\"" + fixed(w) +
       "\" height=\"" + fixed(h) + "\" fill=\"none\" stroke=\"black\"/>\n";

  for (std::size_t k = 0; k < lines.size(); ++k) {
    const Line& line = lines[k];
    if (line.pts.empty()) continue;
    const std::size_t stride = (line.pts.size() + kMaxPlotPoints - 1) / kMaxPlotPoints;
    s += "<polyline fill=\"none\" stroke-width=\"1.5\" stroke=\"" +
         std::string(kPalette[k % kPalette.size()]) + "\" points=\"";
    for (std::size_t i = 0; i < line.pts.size(); i += stride) {
      s += fixed(px(line.pts[i].first)) + "," + fixed(py(line.pts[i].second)) + " ";
    }
    s += fixed(px(line.pts.back().first)) + "," + fixed(py(line.pts.back().second));
    s += "\"/>\n";
  }

  s += "<g font-family=\"sans-serif\" font-size=\"12\">\n";
  for (std::size_t k = 0; k < lines.size(); ++k) {
    const double y = top + 16.0 + 16.0 * static_cast<double>(k);
    const double x = left + w - 150.0;
    s += "<line x1=\"" + fixed(x) + "\" y1=\"" + fixed(y - 4) + "\" x2=\"" + fixed(x + 20) +
         "\" y2=\"" + fixed(y - 4) + "\" stroke-width=\"2\" stroke=\"" +
         std::string(kPalette[k % kPalette.size()]) + "\"/>\n";
    s += "<text x=\"" + fixed(x + 26) + "\" y=\"" + fixed(y) + "\">" + escape_xml(lines[k].name) +
         "</text>\n";
  }
  s += "</g>\n</svg>\n";
  return s;
}

std::vector<std::string> emit_svg(const Trajectory& t, const PlotSpec& spec,
                                  const std::filesystem::path& path) {
  std::vector<std::string> warnings;
  const std::string text = svg_text(t, spec, warnings);
  write_file(path, text);
  return warnings;
}

}  // namespace qdsim
