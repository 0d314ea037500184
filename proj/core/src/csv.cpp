// Copyright 2026 The sps-norm Authors
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

#include <cmath>
#include <fstream>
#include <iterator>

#include <fmt/format.h>

#include "spsnorm/errors.hpp"
#include "spsnorm/models.hpp"
#include "spsnorm/scenario.hpp"

namespace spsnorm {
namespace {

/// 17 significant digits; NaN prints as `nan`.
std::string number(double v) {
  if (std::isnan(v)) return "nan";
  return fmt::format("{:.16e}", v);
}

std::string describe(const Sweep& s) {
  return fmt::format("axis={} min={} max={} points={} scale={}", to_string(s.axis), s.grid.min,
                     s.grid.max, s.grid.points, to_string(s.grid.scale));
}

std::string describe_method(const ScenarioConfig& c) {
  if (c.method == Method::kAnalytic) return "analytic";
  const bool filtered = c.filter.has_value() ||
                        (c.sweep && c.sweep->axis == SweepAxis::kFilterLinewidth) ||
                        (c.outer_sweep && c.outer_sweep->axis == SweepAxis::kFilterLinewidth);
  return filtered ? "sensors" : "unfiltered";
}

}  // namespace

std::string format_csv(const ResultTable& table) {
  const ScenarioConfig& c = table.config;
  if (table.rows.empty()) throw ValidationError("result table is empty");

  fmt::memory_buffer out;
  auto line = [&out](std::string_view s) {
    out.append(s);
    out.push_back('\n');
  };

  line(fmt::format("# sps-norm {}", SPSNORM_VERSION));
  line(fmt::format("# scenario: {}", c.name));
  line(fmt::format("# preset: {}", c.preset));
  line(fmt::format("# emission: {}", c.emission.empty() ? preset_channels(c.preset).front() : c.emission));
  std::string params;
  auto effective = preset_defaults(c.preset);
  for (const auto& [k, v] : c.parameters) effective[k] = v;
  for (const auto& [k, v] : effective) params += fmt::format("{}{}={}", params.empty() ? "" : " ", k, v);
  line("# parameters: " + params);
  if (c.filter) {
    const std::string width = std::isnan(c.filter->linewidth) ? "swept" : fmt::format("{}", c.filter->linewidth);
    const std::string centre = c.filter->frequency ? fmt::format("{}", *c.filter->frequency) : "frame";
    line(fmt::format("# filter: linewidth={} frequency={}", width, centre));
  }
  line("# method: " + describe_method(c));
  if (c.sweep) line("# sweep: " + describe(*c.sweep));
  if (c.outer_sweep) line("# outer_sweep: " + describe(*c.outer_sweep));
  line(fmt::format("# order: {} series_order: {}", c.order, c.effective_series_order()));
  line(fmt::format("# tolerances: epsilon={} convergence={} residual={} truncation={}",
                   c.tolerances.epsilon, c.tolerances.convergence, c.tolerances.residual, c.tolerances.truncation));
  line(fmt::format("# max_dimension: {}", c.max_dimension));
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    if (table.rows[i].error) line(fmt::format("# row {} failed: {}", i, *table.rows[i].error));
  }

  const bool outer = c.outer_sweep.has_value();
  std::string header = outer ? "outer,axis" : "axis";
  for (int k = 2; k <= c.order + 1; ++k) header += fmt::format(",g{}", k);
  for (int n = 1; n <= c.order; ++n) header += fmt::format(",norm{}", n);
  header += ",population,p0,p1,flags";
  line(header);

  for (const auto& row : table.rows) {
    std::string s;
    if (outer) s += number(row.outer.value_or(std::nan(""))) + ",";
    s += number(row.axis);
    for (double g : row.correlators) s += "," + number(g);
    for (double n : row.norms) s += "," + number(n);
    s += "," + number(row.population) + "," + number(row.p0) + "," + number(row.p1) + ",";
    for (std::size_t i = 0; i < row.flags.size(); ++i) s += (i ? ";" : "") + row.flags[i];
    line(s);
  }
  return fmt::to_string(out);
}

void emit_csv(const ResultTable& table, const std::string& path) {
  const std::string text = format_csv(table);
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw Error("cannot open '" + path + "' for writing");
  file.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!file) throw Error("failed writing '" + path + "'");
}

}  // namespace spsnorm
