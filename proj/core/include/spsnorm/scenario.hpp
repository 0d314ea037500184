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

#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace spsnorm {

enum class SweepAxis { kFilterLinewidth, kPump, kDrive, kInteraction, kSensorFrequency };
enum class GridScale { kLinear, kLog };

std::string_view to_string(SweepAxis axis);
std::string_view to_string(GridScale scale);

struct Grid {
  double min = 0.0;
  double max = 0.0;
  int points = 1;
  GridScale scale = GridScale::kLinear;

  /// Grid values in ascending order. A single-point grid holds `min`.
  std::vector<double> values() const;
};

struct Sweep {
  SweepAxis axis = SweepAxis::kFilterLinewidth;
  Grid grid;
};

struct FilterSpec {
  double linewidth = 1.0;
  /// Lab-frame centre; defaults to the preset's frame frequency.
  std::optional<double> frequency;
};

enum class Method {
  /// Sensor method when a filter is configured, bare correlators otherwise.
  kNumerical,
  /// Closed forms of the incoherently pumped 2LS.
  kAnalytic,
};

struct Tolerances {
  /// Initial sensor coupling.
  double epsilon = 1e-3;
  /// Relative agreement of the epsilon and epsilon/2 sensor estimates.
  double convergence = 1e-3;
  double residual = 1e-10;
  double truncation = 1e-6;
};

/// One scenario section of a config file.
struct ScenarioConfig {
  std::string name;
  std::string preset;
  std::map<std::string, double> parameters;
  /// Emission channel; empty selects the preset's first channel.
  std::string emission;
  std::optional<FilterSpec> filter;
  /// Without a sweep the scenario is a single point.
  std::optional<Sweep> sweep;
  /// Optional second axis for two-dimensional maps; rows gain an `outer` column.
  std::optional<Sweep> outer_sweep;
  /// Norm index N; correlators g^(2)..g^(N+1) are reported.
  int order = 3;
  /// Highest correlator fed to the photon-number series; 0 means N + 1.
  int series_order = 0;
  std::string output;
  Tolerances tolerances;
  Method method = Method::kNumerical;
  int max_dimension = 4096;

  int effective_series_order() const { return series_order > 0 ? series_order : order + 1; }
  /// Checks preset and parameter names and that each axis applies to the preset.
  void validate() const;
};

/// Parses a YAML document whose top-level keys name scenario sections.
/// Errors carry the offending line.
std::vector<ScenarioConfig> parse_config(std::string_view text);

/// Row flags.
inline constexpr std::string_view kFlagEpsilonNonConverged = "EPS_NONCONV";
inline constexpr std::string_view kFlagSeriesTruncated = "P_TRUNC";
inline constexpr std::string_view kFlagSeriesDivergent = "P_DIVERGENT";

struct ResultRow {
  std::optional<double> outer;
  /// Swept value; without a sweep the fixed filter linewidth, or 0 when unfiltered.
  double axis = 0.0;
  /// g^(2)..g^(N+1).
  std::vector<double> correlators;
  /// 1..N norms.
  std::vector<double> norms;
  double population = 0.0;
  double p0 = 0.0;
  double p1 = 0.0;
  std::vector<std::string> flags;
  /// Set when the point failed; numeric fields are NaN.
  std::optional<std::string> error;
};

struct ResultTable {
  ScenarioConfig config;
  std::vector<ResultRow> rows;

  bool complete() const;
};

struct RunOptions {
  int jobs = 1;
};

/// Evaluates every grid point. Per-point failures are recorded in the row and
/// the run continues. Rows are in grid order (outer axis slowest).
ResultTable run_scenario(const ScenarioConfig& config, const RunOptions& options = {});

/// CSV text: `#` comment lines describing the run, a header and one line per row.
std::string format_csv(const ResultTable& table);

/// Writes format_csv(table) to `path`. Throws Error when the file cannot be written.
void emit_csv(const ResultTable& table, const std::string& path);

}  // namespace spsnorm
