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
#include <vector>

#include "qdsim/gksl.hpp"

namespace qdsim {

/// Fixed 17-significant-digit formatting, independent of the C++ locale.
std::string format_csv_real(double v);

/// CSV text: header `t,<series...>`, one row per sample, LF endings.
/// An empty `columns` selects every derived series in insertion order.
/// Throws PreconditionError on an empty trajectory, NotFoundError on an
/// unknown column.
std::string csv_text(const Trajectory& t, const std::vector<std::string>& columns = {});
/// Writes csv_text to `path`; IoError if it cannot be written.
void emit_csv(const Trajectory& t, const std::filesystem::path& path,
              const std::vector<std::string>& columns = {});

struct PlotSpec {
  std::string title;
  /// Series plotted on the vertical axis (all derived series if empty).
  std::vector<std::string> series;
  /// "t" for time, otherwise the name of a series (parametric plot).
  std::string x_axis = "t";
  bool log_x = false;
  bool log_y = false;
  int width = 720;
  int height = 480;
};

/// SVG text of a static line plot. Samples that cannot be drawn on a log
/// axis (coordinate <= 0) are dropped; one warning per series is appended
/// to `warnings`. Throws PreconditionError on an empty trajectory.
std::string svg_text(const Trajectory& t, const PlotSpec& spec, std::vector<std::string>& warnings);
/// Writes svg_text to `path` and returns the warnings.
std::vector<std::string> emit_svg(const Trajectory& t, const PlotSpec& spec,
                                  const std::filesystem::path& path);

/// Splits "a, b,c" into {"a", "b", "c"}.
std::vector<std::string> split_list(const std::string& s);

}  // namespace qdsim
