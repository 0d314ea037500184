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

#include "spsnorm/criterion.hpp"
#include "spsnorm/errors.hpp"
#include "spsnorm/hilbert.hpp"
#include "spsnorm/lindblad.hpp"

namespace spsnorm {
namespace {

TEST(NNorm, FakeSinglePhotonSource) {
  // Vacuum, one photon and a small three-photon admixture.
  const HilbertSpace space({4});
  const std::vector<double> p{297001.0 / 300000, 1999.0 / 200000, 0.0, 1.0 / 600000};
  const DensityMatrix rho = DensityMatrix::diagonal(space, p);
  const ComplexOperator a = bosonic_lowering(4);
  const double g2 = unfiltered_gk(rho, a, 2);
  const double g3 = unfiltered_gk(rho, a, 3);
  EXPECT_NEAR(g2, 0.1, 1e-12);
  EXPECT_NEAR(g3, 10.0, 1e-12);
  const auto g = CorrelationVector::from_order_two({g2, g3});
  EXPECT_NEAR(n_norm(g, 1), 0.1, 1e-12);
  EXPECT_NEAR(n_norm(g, 2), std::sqrt(0.01 + 100.0), 1e-12);
  EXPECT_NEAR(n_norm(g, 2), 10.0005, 1e-5);
}

TEST(NNorm, DefinitionAndEdgeCases) {
  const auto g = CorrelationVector::from_order_two({0.5, 2.0, 3.0});
  EXPECT_DOUBLE_EQ(n_norm(g, 1), 0.5);
  EXPECT_NEAR(n_norm(g, 3), std::cbrt(0.125 + 8.0 + 27.0), 1e-14);
  EXPECT_THROW(n_norm(g, 4), ValidationError);
  EXPECT_THROW(n_norm(g, 0), ValidationError);
  EXPECT_DOUBLE_EQ(n_norm(CorrelationVector::from_order_two({0.0, 0.0}), 2), 0.0);
  EXPECT_THROW(CorrelationVector::from_order_two({0.1, -1.0}), ValidationError);
}

TEST(NNorm, LargeComponentsDoNotOverflow) {
  const auto g = CorrelationVector::from_order_two({1e100, 1e150, 1e200, 1e250});
  EXPECT_NEAR(n_norm(g, 3) / 1e200, 1.0, 1e-12);
}

TEST(InfinityNorm, PicksTheLargestLowestOrder) {
  const auto g = CorrelationVector::from_order_two({0.5, 7.0, 7.0, 1.0});
  const InfinityNorm inf = infinity_norm(g);
  EXPECT_DOUBLE_EQ(inf.value, 7.0);
  EXPECT_EQ(inf.order, 3);
}

NormCurve curve(const std::string& label, const std::vector<double>& g2, std::vector<double> grid) {
  NormCurve c{label, {}};
  for (std::size_t i = 0; i < g2.size(); ++i) {
    auto g = CorrelationVector::from_order_two({g2[i], g2[i] * g2[i]});
    g.linewidth = grid[i];
    c.points.push_back(make_norm_report(label, g, 1));
  }
  return c;
}

TEST(BenchmarkCompare, RanksAgainstTheBenchmark) {
  const std::vector<double> grid{1.0, 10.0};
  const auto r = benchmark_compare(
      {curve("bench", {0.5, 0.5}, grid), curve("good", {0.1, 0.9}, grid), curve("bad", {0.7, 0.8}, grid)},
      "bench");
  EXPECT_EQ(r.ranking[0], (std::vector<std::string>{"good", "bench", "bad"}));
  EXPECT_EQ(r.ranking[1], (std::vector<std::string>{"bench", "bad", "good"}));
  EXPECT_EQ(r.beats_benchmark.at("good"), (std::vector<bool>{true, false}));
  EXPECT_EQ(r.beats_benchmark.at("bench"), (std::vector<bool>{false, false}));
}

TEST(BenchmarkCompare, RejectsMismatchedGrids) {
  EXPECT_THROW(benchmark_compare({curve("a", {0.5}, {1.0}), curve("b", {0.5}, {2.0})}, "a"),
               ValidationError);
  EXPECT_THROW(benchmark_compare({curve("a", {0.5}, {1.0})}, "missing"), ValidationError);
}

}  // namespace
}  // namespace spsnorm
