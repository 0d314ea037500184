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

#include "spsnorm/scenario.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <set>
#include <thread>

#include <yaml-cpp/yaml.h>

#include "spsnorm/analytic.hpp"
#include "spsnorm/criterion.hpp"
#include "spsnorm/errors.hpp"
#include "spsnorm/models.hpp"
#include "spsnorm/sensors.hpp"
#include "spsnorm/statistics.hpp"

namespace spsnorm {
namespace {

constexpr int kMaxNormOrder = 4;
constexpr int kMaxSeriesOrder = 16;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

int line_of(const YAML::Node& node) { return node.Mark().line + 1; }

[[noreturn]] void fail(const YAML::Node& node, const std::string& message) {
  throw ParseError(message + " (line " + std::to_string(line_of(node)) + ")", line_of(node));
}

void require_map(const YAML::Node& node, const std::string& what) {
  if (!node.IsMap()) fail(node, what + " must be a mapping");
}

void reject_unknown(const YAML::Node& node, const std::set<std::string>& known, const std::string& where) {
  for (const auto& kv : node) {
    const auto key = kv.first.as<std::string>();
    if (!known.contains(key)) fail(kv.first, "unknown key '" + key + "' in " + where);
  }
}

template <typename T>
T scalar(const YAML::Node& node, const std::string& key) {
  if (!node.IsScalar()) fail(node, "'" + key + "' must be a scalar");
  try {
    return node.as<T>();
  } catch (const YAML::Exception&) {
    fail(node, "'" + key + "' has an invalid value '" + node.Scalar() + "'");
  }
}

SweepAxis parse_axis(const YAML::Node& node) {
  const auto s = scalar<std::string>(node, "axis");
  for (auto axis : {SweepAxis::kFilterLinewidth, SweepAxis::kPump, SweepAxis::kDrive,
                    SweepAxis::kInteraction, SweepAxis::kSensorFrequency}) {
    if (s == to_string(axis)) return axis;
  }
  fail(node, "unknown sweep axis '" + s + "'");
}

Sweep parse_sweep(const YAML::Node& node, const std::string& where) {
  require_map(node, where);
  reject_unknown(node, {"axis", "min", "max", "points", "scale"}, where);
  for (const char* key : {"axis", "min", "points"}) {
    if (!node[key]) fail(node, std::string("missing required key '") + key + "' in " + where);
  }
  Sweep sweep;
  sweep.axis = parse_axis(node["axis"]);
  sweep.grid.min = scalar<double>(node["min"], "min");
  sweep.grid.points = scalar<int>(node["points"], "points");
  sweep.grid.max = node["max"] ? scalar<double>(node["max"], "max") : sweep.grid.min;
  if (node["scale"]) {
    const auto s = scalar<std::string>(node["scale"], "scale");
    if (s == "lin") {
      sweep.grid.scale = GridScale::kLinear;
    } else if (s == "log") {
      sweep.grid.scale = GridScale::kLog;
    } else {
      fail(node["scale"], "grid scale must be 'lin' or 'log', got '" + s + "'");
    }
  }
  if (sweep.grid.points < 1) fail(node["points"], "a grid needs at least one point");
  if (sweep.grid.points > 1 && !node["max"]) fail(node, "missing required key 'max' in " + where);
  if (sweep.grid.points > 1 && !(sweep.grid.min < sweep.grid.max)) {
    fail(node, "grid needs min < max for more than one point");
  }
  if (sweep.grid.scale == GridScale::kLog && !(sweep.grid.min > 0.0)) {
    fail(node["min"], "logarithmic grid needs a positive minimum");
  }
  return sweep;
}

ScenarioConfig parse_section(const std::string& name, const YAML::Node& node) {
  const std::string where = "scenario '" + name + "'";
  require_map(node, where);
  reject_unknown(node,
                 {"preset", "parameters", "emission", "filter", "sweep", "outer_sweep", "order",
                  "series_order", "output", "tolerances", "method", "max_dimension"},
                 where);
  for (const char* key : {"preset", "output"}) {
    if (!node[key]) fail(node, std::string("missing required key '") + key + "' in " + where);
  }
  ScenarioConfig c;
  c.name = name;
  c.preset = scalar<std::string>(node["preset"], "preset");
  c.output = scalar<std::string>(node["output"], "output");
  if (const auto p = node["parameters"]) {
    require_map(p, "parameters");
    for (const auto& kv : p) {
      c.parameters[kv.first.as<std::string>()] = scalar<double>(kv.second, kv.first.as<std::string>());
    }
  }
  if (node["emission"]) c.emission = scalar<std::string>(node["emission"], "emission");
  if (const auto f = node["filter"]) {
    require_map(f, "filter");
    reject_unknown(f, {"linewidth", "frequency"}, "filter");
    FilterSpec spec;
    if (f["linewidth"]) spec.linewidth = scalar<double>(f["linewidth"], "linewidth");
    else spec.linewidth = kNaN;  // set by a filter_linewidth sweep
    if (f["frequency"]) spec.frequency = scalar<double>(f["frequency"], "frequency");
    c.filter = spec;
  }
  if (node["sweep"]) c.sweep = parse_sweep(node["sweep"], "sweep");
  if (node["outer_sweep"]) c.outer_sweep = parse_sweep(node["outer_sweep"], "outer_sweep");
  if (node["order"]) c.order = scalar<int>(node["order"], "order");
  if (node["series_order"]) c.series_order = scalar<int>(node["series_order"], "series_order");
  if (node["max_dimension"]) c.max_dimension = scalar<int>(node["max_dimension"], "max_dimension");
  if (const auto m = node["method"]) {
    const auto s = scalar<std::string>(m, "method");
    if (s == "numerical") {
      c.method = Method::kNumerical;
    } else if (s == "analytic") {
      c.method = Method::kAnalytic;
    } else {
      fail(m, "method must be 'numerical' or 'analytic', got '" + s + "'");
    }
  }
  if (const auto t = node["tolerances"]) {
    require_map(t, "tolerances");
    reject_unknown(t, {"epsilon", "convergence", "residual", "truncation"}, "tolerances");
    if (t["epsilon"]) c.tolerances.epsilon = scalar<double>(t["epsilon"], "epsilon");
    if (t["convergence"]) c.tolerances.convergence = scalar<double>(t["convergence"], "convergence");
    if (t["residual"]) c.tolerances.residual = scalar<double>(t["residual"], "residual");
    if (t["truncation"]) c.tolerances.truncation = scalar<double>(t["truncation"], "truncation");
  }
  try {
    c.validate();
  } catch (const ValidationError& e) {
    fail(node, std::string(e.what()) + " in " + where);
  }
  return c;
}

/// Model parameter moved by a sweep axis, or nullopt for the filter axes.
std::optional<std::string> axis_parameter(const std::string& preset, SweepAxis axis) {
  switch (axis) {
    case SweepAxis::kFilterLinewidth:
    case SweepAxis::kSensorFrequency:
      return std::nullopt;
    case SweepAxis::kPump:
      if (preset == "incoherent-2ls") return "P";
      break;
    case SweepAxis::kDrive:
      if (preset == "coherent-2ls" || preset == "biexciton" || preset == "cascade-2ls" ||
          preset == "2ls-cavity") {
        return "Omega";
      }
      if (preset.starts_with("blockade-")) return "Omega_a";
      break;
    case SweepAxis::kInteraction:
      if (preset.starts_with("blockade-")) return "U";
      if (preset == "biexciton") return "chi";
      if (preset == "2ls-cavity") return "g_c";
      break;
  }
  throw ValidationError("sweep axis '" + std::string(to_string(axis)) +
                        "' does not apply to preset '" + preset + "'");
}

struct Point {
  std::optional<double> outer;
  double axis = 0.0;
  std::map<std::string, double> parameters;
  std::optional<double> linewidth;
  std::optional<double> frequency;
};

void apply_axis(const ScenarioConfig& c, SweepAxis axis, double value, Point& p) {
  if (axis == SweepAxis::kFilterLinewidth) {
    p.linewidth = value;
  } else if (axis == SweepAxis::kSensorFrequency) {
    p.frequency = value;
  } else {
    p.parameters[*axis_parameter(c.preset, axis)] = value;
  }
}

std::vector<Point> grid_points(const ScenarioConfig& c) {
  Point base;
  base.parameters = c.parameters;
  if (c.filter) {
    if (!std::isnan(c.filter->linewidth)) base.linewidth = c.filter->linewidth;
    base.frequency = c.filter->frequency;
  }
  const std::vector<double> inner = c.sweep ? c.sweep->grid.values() : std::vector<double>{0.0};
  std::vector<std::optional<double>> outer{std::nullopt};
  if (c.outer_sweep) {
    outer.clear();
    for (double v : c.outer_sweep->grid.values()) outer.emplace_back(v);
  }
  std::vector<Point> points;
  for (const auto& o : outer) {
    for (double v : inner) {
      Point p = base;
      p.outer = o;
      if (o) apply_axis(c, c.outer_sweep->axis, *o, p);
      if (c.sweep) {
        apply_axis(c, c.sweep->axis, v, p);
        p.axis = v;
      } else if (base.linewidth) {
        p.axis = *base.linewidth;
      }
      points.push_back(std::move(p));
    }
  }
  return points;
}

/// Runs fn(i) for i in [0, n) on `jobs` threads.
void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& fn) {
  const auto workers = static_cast<std::size_t>(std::clamp(jobs, 1, 256));
  if (workers == 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  for (std::size_t w = 0; w < std::min(workers, n); ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) fn(i);
    });
  }
}

std::string error_kind(const std::exception& e) {
  if (dynamic_cast<const TruncationError*>(&e)) return "TRUNCATION";
  if (dynamic_cast<const CapacityError*>(&e)) return "CAPACITY";
  if (dynamic_cast<const DegenerateSteadyStateError*>(&e)) return "DEGENERATE";
  if (dynamic_cast<const UndefinedCorrelationError*>(&e)) return "UNDEFINED";
  if (dynamic_cast<const NonConvergentSeriesError*>(&e)) return "DIVERGENT";
  if (dynamic_cast<const ValidationError*>(&e)) return "INVALID";
  return "FAILED";
}

void add_flag(ResultRow& row, std::string_view flag) {
  if (std::find(row.flags.begin(), row.flags.end(), flag) == row.flags.end()) {
    row.flags.emplace_back(flag);
  }
}

/// p(0) and p(1) from unnormalized correlators.
void fill_probabilities(std::span<const double> big_g, ResultRow& row) {
  double* targets[] = {&row.p0, &row.p1};
  for (int n = 0; n < 2; ++n) {
    try {
      const SeriesValue v = pn_from_correlators(big_g, n);
      *targets[n] = v.value;
      if (!v.converged) add_flag(row, kFlagSeriesTruncated);
    } catch (const NonConvergentSeriesError&) {
      *targets[n] = kNaN;
      add_flag(row, kFlagSeriesDivergent);
    }
  }
}

void fill_norms(const ScenarioConfig& c, std::span<const double> g, ResultRow& row) {
  row.correlators.assign(g.begin(), g.begin() + c.order);
  const CorrelationVector cv = CorrelationVector::from_order_two(row.correlators);
  for (int n = 1; n <= c.order; ++n) row.norms.push_back(n_norm(cv, n));
}

ResultRow evaluate_analytic(const ScenarioConfig& c, const Point& p, ResultRow row) {
  const std::map<std::string, double> d = [&] {
    auto m = preset_defaults(c.preset);
    for (const auto& [k, v] : p.parameters) m[k] = v;
    return m;
  }();
  const Analytic2lsParams params{d.at("P"), d.at("gamma"), *p.linewidth};
  std::vector<double> g;
  for (int k = 2; k <= c.order + 1; ++k) g.push_back(gn_recursion(params, k));
  fill_norms(c, g, row);
  row.population = filtered_population_closed(params);
  row.p0 = pn_closed_form(params, 0);
  row.p1 = pn_closed_form(params, 1);
  return row;
}

ResultRow evaluate_numerical(const ScenarioConfig& c, const EmitterPreset& preset, const Point& p,
                             ResultRow row) {
  const int top = c.effective_series_order();
  const std::string emission = c.emission.empty() ? preset.default_emission() : c.emission;
  std::vector<double> g;
  std::vector<double> big_g{1.0};
  if (p.linewidth) {
    SensorOptions opts;
    opts.epsilon = c.tolerances.epsilon;
    opts.convergence_tolerance = c.tolerances.convergence;
    opts.max_dimension = c.max_dimension;
    opts.solver.residual_tolerance = c.tolerances.residual;
    const double frequency = p.frequency.value_or(preset.frame_frequency);
    const auto ladder = filtered_ladder(preset, emission, top, *p.linewidth, frequency, opts);
    const FilteredPopulation pop = filtered_population(preset, emission, *p.linewidth, frequency, opts);
    row.population = pop.value;
    if (!pop.converged) add_flag(row, kFlagEpsilonNonConverged);
    big_g.push_back(pop.value);
    for (const auto& fc : ladder) {
      g.push_back(fc.value);
      big_g.push_back(std::pow(pop.value, fc.order) * fc.value);
      if (!fc.converged) add_flag(row, kFlagEpsilonNonConverged);
    }
  } else {
    SteadyStateOptions solver;
    solver.residual_tolerance = c.tolerances.residual;
    const DensityMatrix rho = steady_state(build_liouvillian(preset.model), solver);
    const ComplexOperator& mode = preset.emission(emission);
    for (int k = 2; k <= top; ++k) g.push_back(unfiltered_gk(rho, mode, k));
    row.population = unnormalized_gk(rho, mode, 1);
    for (int k = 1; k <= top; ++k) big_g.push_back(unnormalized_gk(rho, mode, k));
  }
  fill_norms(c, g, row);
  fill_probabilities(big_g, row);
  return row;
}

ResultRow failed_row(const ScenarioConfig& c, ResultRow row, const std::exception& e) {
  row.correlators.assign(static_cast<std::size_t>(c.order), kNaN);
  row.norms.assign(static_cast<std::size_t>(c.order), kNaN);
  row.population = row.p0 = row.p1 = kNaN;
  row.flags.assign(1, "ERROR_" + error_kind(e));
  row.error = e.what();
  return row;
}

}  // namespace

std::string_view to_string(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::kFilterLinewidth: return "filter_linewidth";
    case SweepAxis::kPump: return "pump";
    case SweepAxis::kDrive: return "drive";
    case SweepAxis::kInteraction: return "interaction";
    case SweepAxis::kSensorFrequency: return "sensor_frequency";
  }
  return "unknown";
}

std::string_view to_string(GridScale scale) { return scale == GridScale::kLog ? "log" : "lin"; }

std::vector<double> Grid::values() const {
  if (points < 1) throw ValidationError("a grid needs at least one point");
  if (points == 1) return {min};
  if (!(min < max)) throw ValidationError("grid needs min < max for more than one point");
  if (scale == GridScale::kLog && !(min > 0.0)) {
    throw ValidationError("logarithmic grid needs a positive minimum");
  }
  std::vector<double> v;
  v.reserve(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) {
    const double t = static_cast<double>(i) / (points - 1);
    v.push_back(scale == GridScale::kLog ? min * std::pow(max / min, t) : min + (max - min) * t);
  }
  v.back() = max;
  return v;
}

void ScenarioConfig::validate() const {
  const auto defaults = preset_defaults(preset);
  for (const auto& [key, value] : parameters) {
    if (!defaults.contains(key)) {
      throw ValidationError("preset '" + preset + "' has no parameter '" + key + "'");
    }
  }
  if (!emission.empty()) {
    const auto channels = preset_channels(preset);
    if (std::find(channels.begin(), channels.end(), emission) == channels.end()) {
      throw ValidationError("preset '" + preset + "' has no emission channel '" + emission + "'");
    }
  }
  if (order < 1 || order > kMaxNormOrder) {
    throw ValidationError("order must lie in [1, " + std::to_string(kMaxNormOrder) + "]");
  }
  if (series_order != 0 && (series_order < order + 1 || series_order > kMaxSeriesOrder)) {
    throw ValidationError("series_order must lie in [order + 1, " + std::to_string(kMaxSeriesOrder) + "]");
  }
  if (output.empty()) throw ValidationError("output path is empty");
  if (!(tolerances.epsilon > 0.0) || !(tolerances.convergence > 0.0) ||
      !(tolerances.residual > 0.0) || !(tolerances.truncation > 0.0)) {
    throw ValidationError("tolerances must be positive");
  }
  if (max_dimension < 2) throw ValidationError("max_dimension must be at least 2");

  bool swept_linewidth = false;
  for (const auto* s : {&sweep, &outer_sweep}) {
    if (!s->has_value()) continue;
    (void)axis_parameter(preset, (*s)->axis);
    (void)(*s)->grid.values();
    swept_linewidth = swept_linewidth || (*s)->axis == SweepAxis::kFilterLinewidth;
    if ((*s)->axis == SweepAxis::kSensorFrequency && !filter) {
      throw ValidationError("a sensor_frequency sweep needs a filter section");
    }
  }
  if (sweep && outer_sweep && sweep->axis == outer_sweep->axis) {
    throw ValidationError("sweep and outer_sweep use the same axis");
  }
  if (filter && std::isnan(filter->linewidth) && !swept_linewidth) {
    throw ValidationError("filter linewidth is neither given nor swept");
  }
  if (filter && !std::isnan(filter->linewidth) && !(filter->linewidth > 0.0)) {
    throw ValidationError("filter linewidth must be positive");
  }
  if (method == Method::kAnalytic) {
    if (preset != "incoherent-2ls") throw ValidationError("analytic method needs preset 'incoherent-2ls'");
    if (!filter && !swept_linewidth) throw ValidationError("analytic method needs a filter linewidth");
    if (filter && filter->frequency && *filter->frequency != 0.0) {
      throw ValidationError("analytic method only covers a filter on resonance");
    }
    for (const auto* s : {&sweep, &outer_sweep}) {
      if (s->has_value() && (*s)->axis == SweepAxis::kSensorFrequency) {
        throw ValidationError("analytic method only covers a filter on resonance");
      }
    }
  }
}

std::vector<ScenarioConfig> parse_config(std::string_view text) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(text));
  } catch (const YAML::ParserException& e) {
    throw ParseError(std::string("malformed config: ") + e.msg + " (line " +
                         std::to_string(e.mark.line + 1) + ")",
                     e.mark.line + 1);
  }
  if (!root.IsMap() || root.size() == 0) {
    throw ParseError("config must map scenario names to scenario sections", root.IsNull() ? 0 : line_of(root));
  }
  std::vector<ScenarioConfig> out;
  std::set<std::string> outputs;
  for (const auto& kv : root) {
    out.push_back(parse_section(kv.first.as<std::string>(), kv.second));
    if (!outputs.insert(out.back().output).second) {
      fail(kv.second["output"], "output '" + out.back().output + "' is used by two scenarios");
    }
  }
  return out;
}

bool ResultTable::complete() const {
  return std::none_of(rows.begin(), rows.end(), [](const ResultRow& r) { return r.error.has_value(); });
}

ResultTable run_scenario(const ScenarioConfig& config, const RunOptions& options) {
  config.validate();
  const std::vector<Point> points = grid_points(config);

  // Presets depend only on model parameters; filter sweeps share one build.
  std::vector<std::map<std::string, double>> distinct;
  std::vector<std::size_t> preset_of(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    auto it = std::find(distinct.begin(), distinct.end(), points[i].parameters);
    preset_of[i] = static_cast<std::size_t>(it - distinct.begin());
    if (it == distinct.end()) distinct.push_back(points[i].parameters);
  }
  std::vector<std::shared_ptr<const EmitterPreset>> presets(distinct.size());
  std::vector<std::string> build_errors(distinct.size());
  std::vector<std::string> build_kinds(distinct.size());
  if (config.method == Method::kNumerical) {
    TruncationOptions trunc;
    trunc.target_order = config.effective_series_order();
    trunc.tolerance = config.tolerances.truncation;
    trunc.max_dimension = config.max_dimension;
    parallel_for(distinct.size(), options.jobs, [&](std::size_t i) {
      try {
        presets[i] = std::make_shared<const EmitterPreset>(make_preset(config.preset, distinct[i], trunc));
      } catch (const std::exception& e) {
        build_errors[i] = e.what();
        build_kinds[i] = error_kind(e);
      }
    });
  }

  ResultTable table;
  table.config = config;
  table.rows.resize(points.size());
  parallel_for(points.size(), options.jobs, [&](std::size_t i) {
    const Point& p = points[i];
    ResultRow row;
    row.outer = p.outer;
    row.axis = p.axis;
    try {
      if (config.method == Method::kAnalytic) {
        table.rows[i] = evaluate_analytic(config, p, std::move(row));
        return;
      }
      const auto& preset = presets[preset_of[i]];
      if (!preset) {
        ResultRow failed = failed_row(config, std::move(row), Error(build_errors[preset_of[i]]));
        failed.flags.assign(1, "ERROR_" + build_kinds[preset_of[i]]);
        table.rows[i] = std::move(failed);
        return;
      }
      table.rows[i] = evaluate_numerical(config, *preset, p, std::move(row));
    } catch (const std::exception& e) {
      ResultRow r;
      r.outer = p.outer;
      r.axis = p.axis;
      table.rows[i] = failed_row(config, std::move(r), e);
    }
  });
  return table;
}

}  // namespace spsnorm
