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
#include <vector>

#include <gtest/gtest.h>

#include "spsnorm/analytic.hpp"
#include "spsnorm/errors.hpp"
#include "spsnorm/models.hpp"
#include "spsnorm/sensors.hpp"

namespace spsnorm {
namespace {

TEST(Sensors, IncoherentTwoLevelMatchesRecursion) {
  const EmitterPreset p = incoherent_2ls(1.0, 1.0);
  const auto ladder = filtered_ladder(p, "sigma", 4, 2.0, 0.0);
  for (const auto& fc : ladder) {
    const double want = gn_recursion({1.0, 1.0, 2.0}, fc.order);
    EXPECT_TRUE(fc.converged);
    EXPECT_NEAR(fc.value / want, 1.0, 1e-6) << "k=" << fc.order;
  }
}

TEST(Sensors, ExcitationBlocksAgreeWithComposite) {
  const EmitterPreset p = coherent_2ls(1.5, 1.0, 0.3);
  SensorOptions blocks;
  SensorOptions composite;
  composite.method = SensorSolver::kComposite;
  for (double frequency : {0.0, 2.0}) {
    const auto a = filtered_ladder(p, "sigma", 3, 0.8, frequency, blocks);
    const auto b = filtered_ladder(p, "sigma", 3, 0.8, frequency, composite);
    for (std::size_t i = 0; i < a.size(); ++i) {
      EXPECT_NEAR(a[i].estimate / b[i].estimate, 1.0, 1e-9);
      EXPECT_NEAR(a[i].value / b[i].value, 1.0, 1e-9);
    }
  }
}

TEST(Sensors, ExchangeSymmetry) {
  const EmitterPreset p = coherent_2ls(1.0, 1.0, 0.0);
  const SensorBank bank{3, 0.5, 1.0, 0.01};
  const LindbladModel model = attach_sensors(p, "sigma", bank);
  const DensityMatrix rho = steady_state(build_liouvillian(model));
  const int lead = p.model.space().subsystem_count();
  const std::vector<std::vector<int>> singles{{0}, {1}, {2}};
  const std::vector<std::vector<int>> pairs{{0, 1}, {1, 2}, {2, 0}};
  const double n1 = sensor_moment(rho, lead, singles[0]);
  const double n2 = sensor_moment(rho, lead, pairs[0]);
  ASSERT_GT(n1, 0.0);
  ASSERT_GT(n2, 0.0);
  for (const auto& s : singles) EXPECT_NEAR(sensor_moment(rho, lead, s) / n1, 1.0, 1e-9);
  for (const auto& s : pairs) EXPECT_NEAR(sensor_moment(rho, lead, s) / n2, 1.0, 1e-9);
}

TEST(Sensors, FilteredPopulationOfTheIncoherentTwoLevelSystem) {
  const double reference = filtered_population(incoherent_2ls(1.0, 1.0), "sigma", 2.0, 0.0).value;
  EXPECT_NEAR(reference, 0.25, 1e-6);
  const auto pop = filtered_population(incoherent_2ls(2.0, 1.0), "sigma", 1.0, 0.0);
  EXPECT_TRUE(pop.converged);
  EXPECT_NEAR(pop.value, filtered_population_closed({2.0, 1.0, 1.0}), 1e-6);
}

TEST(Sensors, WideFilterPassesTheWholePopulation) {
  const auto pop = filtered_population(coherent_2ls(0.5, 1.0, 0.0), "sigma", 2000.0, 0.0);
  EXPECT_NEAR(pop.value, 1.0 / 3.0, 2e-3);
}

TEST(Sensors, ResonantMollowScanIsSymmetric) {
  const EmitterPreset p = coherent_2ls(2.0, 1.0, 0.0);
  const std::vector<double> grid{-4.0, -1.5, 1.5, 4.0};
  const auto scan = frequency_scan(p, "sigma", 2, 1.0, grid);
  ASSERT_EQ(scan.size(), grid.size());
  EXPECT_NEAR(scan[0].value / scan[3].value, 1.0, 1e-6);
  EXPECT_NEAR(scan[1].value / scan[2].value, 1.0, 1e-6);
  EXPECT_DOUBLE_EQ(scan[0].frequency, -4.0);
}

TEST(Sensors, CapacityErrorNamesTheOrder) {
  const EmitterPreset p = make_preset("blockade-conventional", {});
  SensorOptions opts;
  opts.max_dimension = 64;
  try {
    filtered_ladder(p, "a", 4, 1.0, p.frame_frequency, opts);
    FAIL() << "expected CapacityError";
  } catch (const CapacityError& e) {
    EXPECT_NE(std::string(e.what()).find('4'), std::string::npos) << e.what();
  }
}

TEST(Sensors, RejectsBadArguments) {
  const EmitterPreset p = incoherent_2ls(1.0, 1.0);
  EXPECT_THROW(filtered_gk(p, "sigma", 1, 1.0, 0.0), ValidationError);
  EXPECT_THROW(filtered_gk(p, "sigma", 2, 0.0, 0.0), ValidationError);
  SensorOptions opts;
  opts.epsilon = 0.0;
  EXPECT_THROW(filtered_gk(p, "sigma", 2, 1.0, 0.0, opts), ValidationError);
}

}  // namespace
}  // namespace spsnorm
