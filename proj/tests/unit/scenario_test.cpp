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
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "spsnorm/bundled_presets.hpp"
#include "spsnorm/errors.hpp"
#include "spsnorm/scenario.hpp"

namespace spsnorm {
namespace {

int parse_error_line(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return -1;
}

std::string data_line(const std::string& csv, int index) {
  std::istringstream in(csv);
  std::string line;
  int seen = -1;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (seen++ == index) return line;
  }
  return {};
}

std::string header_line(const std::string& csv) { return data_line(csv, -1); }

TEST(ParseConfig, FullSection) {
  const auto configs = parse_config(R"(
curve:
  preset: incoherent-2ls
  parameters: {P: 0.5}
  sweep: {axis: filter_linewidth, min: 0.1, max: 100, points: 50, scale: log}
  order: 3
  tolerances: {epsilon: 0.002, residual: 1e-11}
  output: out.csv
)");
  ASSERT_EQ(configs.size(), 1u);
  const ScenarioConfig& c = configs[0];
  EXPECT_EQ(c.name, "curve");
  EXPECT_EQ(c.preset, "incoherent-2ls");
  EXPECT_DOUBLE_EQ(c.parameters.at("P"), 0.5);
  ASSERT_TRUE(c.sweep.has_value());
  EXPECT_EQ(c.sweep->axis, SweepAxis::kFilterLinewidth);
  const auto v = c.sweep->grid.values();
  ASSERT_EQ(v.size(), 50u);
  EXPECT_DOUBLE_EQ(v.front(), 0.1);
  EXPECT_DOUBLE_EQ(v.back(), 100.0);
  EXPECT_EQ(c.order, 3);
  EXPECT_EQ(c.effective_series_order(), 4);
  EXPECT_DOUBLE_EQ(c.tolerances.epsilon, 0.002);
  EXPECT_DOUBLE_EQ(c.tolerances.residual, 1e-11);
}

TEST(ParseConfig, UnknownKeysCarryTheirLine) {
  EXPECT_EQ(parse_error_line("x:\n  preset: incoherent-2ls\n  gama: 1\n  output: x.csv\n"), 3);
  EXPECT_EQ(parse_error_line("x:\n  preset: incoherent-2ls\n  output: x.csv\n  sweep: {axis: pump, min: 1, mx: 2, points: 2}\n"), 4);
}

TEST(ParseConfig, Rejections) {
  const char* bad[] = {
      "x:\n  output: x.csv\n",                                    // missing preset
      "x:\n  preset: laser\n  output: x.csv\n",                   // unknown preset
      "x:\n  preset: incoherent-2ls\n",                           // missing output
      "x:\n  preset: incoherent-2ls\n  parameters: {Omega: 1}\n  output: x.csv\n",
      "x:\n  preset: coherent-2ls\n  sweep: {axis: pump, min: 1, max: 2, points: 3}\n  output: x.csv\n",
      "x:\n  preset: incoherent-2ls\n  sweep: {axis: pump, min: 2, max: 1, points: 3}\n  output: x.csv\n",
      "x:\n  preset: incoherent-2ls\n  sweep: {axis: pump, min: 0, max: 1, points: 3, scale: log}\n  output: x.csv\n",
      "x:\n  preset: incoherent-2ls\n  sweep: {axis: pump, min: 1, max: 2, points: 0}\n  output: x.csv\n",
      "x:\n  preset: incoherent-2ls\n  order: 5\n  output: x.csv\n",
      "x:\n  preset: coherent-2ls\n  method: analytic\n  filter: {linewidth: 1}\n  output: x.csv\n",
      "x:\n  preset: incoherent-2ls\n  output: a.csv\ny:\n  preset: incoherent-2ls\n  output: a.csv\n",
      "x: [1, 2\n",
      "",
  };
  for (const char* text : bad) EXPECT_THROW(parse_config(text), ParseError) << text;
}

TEST(RunScenario, EmptySweepGivesOneRow) {
  const auto c = parse_config("x:\n  preset: coherent-2ls\n  order: 2\n  output: x.csv\n")[0];
  const ResultTable t = run_scenario(c);
  ASSERT_EQ(t.rows.size(), 1u);
  EXPECT_TRUE(t.complete());
  EXPECT_EQ(t.rows[0].correlators.size(), 2u);
  EXPECT_EQ(t.rows[0].norms.size(), 2u);
  // A bare 2LS emits at most one photon at a time.
  EXPECT_LT(t.rows[0].correlators[0], 1e-14);
  EXPECT_TRUE(t.rows[0].flags.empty());
}

TEST(Csv, HeaderContract) {
  const auto c = parse_config(
      "x:\n  preset: incoherent-2ls\n  filter: {linewidth: 1}\n  order: 3\n  output: x.csv\n")[0];
  const std::string csv = format_csv(run_scenario(c));
  EXPECT_EQ(header_line(csv), "axis,g2,g3,g4,norm1,norm2,norm3,population,p0,p1,flags");
  EXPECT_NE(csv.find("# preset: incoherent-2ls"), std::string::npos);
  EXPECT_NE(csv.find("# tolerances: "), std::string::npos);
  EXPECT_NE(csv.find("# sps-norm "), std::string::npos);
}

TEST(Csv, OuterSweepAddsAColumnAndOrdersRows) {
  const auto c = parse_config(R"(
map:
  preset: incoherent-2ls
  method: analytic
  outer_sweep: {axis: pump, min: 0.1, max: 1, points: 2}
  sweep: {axis: filter_linewidth, min: 1, max: 3, points: 3}
  order: 1
  output: map.csv
)")[0];
  const ResultTable t = run_scenario(c, {.jobs = 2});
  ASSERT_EQ(t.rows.size(), 6u);
  EXPECT_DOUBLE_EQ(*t.rows[0].outer, 0.1);
  EXPECT_DOUBLE_EQ(t.rows[2].axis, 3.0);
  EXPECT_DOUBLE_EQ(*t.rows[3].outer, 1.0);
  EXPECT_EQ(header_line(format_csv(t)), "outer,axis,g2,norm1,population,p0,p1,flags");
}

TEST(Csv, NumbersUseSeventeenSignificantDigits) {
  const auto c = parse_config(
      "x:\n  preset: incoherent-2ls\n  method: analytic\n  filter: {linewidth: 1}\n  order: 1\n  parameters: {P: 1}\n  output: x.csv\n")[0];
  const std::string row = data_line(format_csv(run_scenario(c)), 0);
  // Without a sweep the axis column holds the filter linewidth; g2 = 0.8 up to rounding.
  EXPECT_EQ(row.substr(0, row.find(',', row.find(',') + 1)),
            "1.0000000000000000e+00,8.0000000000000004e-01");
}

TEST(Csv, NonConvergedSensorPointIsFlagged) {
  const auto c = parse_config(
      "x:\n  preset: coherent-2ls\n  parameters: {Omega: 1}\n  filter: {linewidth: 1}\n"
      "  order: 1\n  tolerances: {convergence: 1e-14}\n  output: x.csv\n")[0];
  const ResultTable t = run_scenario(c);
  ASSERT_EQ(t.rows.size(), 1u);
  EXPECT_EQ(t.rows[0].flags.front(), "EPS_NONCONV");
  EXPECT_NE(data_line(format_csv(t), 0).find(",EPS_NONCONV"), std::string::npos);
}

TEST(Csv, FailedPointsAreRecordedInTheRow) {
  // The two-mode blockade cannot host 2 sensors under this cap.
  const auto c = parse_config(
      "x:\n  preset: blockade-unconventional\n  filter: {linewidth: 1}\n  order: 1\n"
      "  max_dimension: 100\n  output: x.csv\n")[0];
  const ResultTable t = run_scenario(c);
  ASSERT_EQ(t.rows.size(), 1u);
  EXPECT_FALSE(t.complete());
  ASSERT_TRUE(t.rows[0].error.has_value());
  EXPECT_TRUE(std::isnan(t.rows[0].correlators[0]));
  const std::string csv = format_csv(t);
  EXPECT_NE(csv.find("# row 0 failed"), std::string::npos);
  EXPECT_NE(data_line(csv, 0).find(",nan,"), std::string::npos);
}

TEST(Csv, EmitWritesTheFileAndRejectsBadPaths) {
  const auto c = parse_config("x:\n  preset: coherent-2ls\n  order: 1\n  output: x.csv\n")[0];
  const ResultTable t = run_scenario(c);
  const auto path = std::filesystem::temp_directory_path() / "spsnorm_emit_test.csv";
  emit_csv(t, path.string());
  std::ifstream in(path, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  EXPECT_EQ(s.str(), format_csv(t));
  std::filesystem::remove(path);
  EXPECT_THROW(emit_csv(t, "/nonexistent-dir/x.csv"), Error);
  EXPECT_THROW(format_csv(ResultTable{c, {}}), ValidationError);
}

TEST(Csv, RerunIsByteIdentical) {
  const auto c = parse_config(R"(
x:
  preset: coherent-2ls
  parameters: {Omega: 2}
  sweep: {axis: filter_linewidth, min: 0.5, max: 5, points: 4, scale: log}
  order: 2
  output: x.csv
)")[0];
  EXPECT_EQ(format_csv(run_scenario(c, {.jobs = 1})), format_csv(run_scenario(c, {.jobs = 3})));
}

TEST(BundledPresets, ParseAndCoverTheFigures) {
  std::vector<std::string> names;
  for (const auto& p : bundled_presets()) {
    names.emplace_back(p.name);
    EXPECT_NO_THROW(parse_config(p.text)) << p.name;
  }
  EXPECT_EQ(names, (std::vector<std::string>{"fig1", "fig2a", "fig2b"}));
}

}  // namespace
}  // namespace spsnorm
