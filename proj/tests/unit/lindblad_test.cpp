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

#include <random>

#include <gtest/gtest.h>

#include "spsnorm/errors.hpp"
#include "spsnorm/lindblad.hpp"
#include "spsnorm/models.hpp"

namespace spsnorm {
namespace {

DenseMatrix random_matrix(int d, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> n;
  DenseMatrix m(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) m(i, j) = Complex(n(rng), n(rng));
  }
  return m;
}

class GeneratorProperties : public ::testing::TestWithParam<std::string> {};

TEST_P(GeneratorProperties, PreservesTraceAndHermiticity) {
  const EmitterPreset p = make_preset(GetParam(), {});
  const Superoperator l = build_liouvillian(p.model);
  const DenseMatrix x = random_matrix(l.hilbert_dimension(), 7);
  const DenseMatrix lx = l.apply(x);
  EXPECT_LT(std::abs(lx.trace()), 1e-10);
  const DenseMatrix lxd = l.apply(x.adjoint());
  EXPECT_LT((lxd - lx.adjoint()).cwiseAbs().maxCoeff(), 1e-10);
}

TEST_P(GeneratorProperties, SteadyStateIsAValidFixedPoint) {
  const EmitterPreset p = make_preset(GetParam(), {});
  const Superoperator l = build_liouvillian(p.model);
  const DensityMatrix rho = steady_state(l);
  EXPECT_LT(steady_state_residual(l, rho), 1e-10);
  EXPECT_NEAR(rho.matrix().trace().real(), 1.0, 1e-12);
}

INSTANTIATE_TEST_SUITE_P(Presets, GeneratorProperties,
                         ::testing::Values("incoherent-2ls", "coherent-2ls", "biexciton",
                                           "cascade-2ls", "blockade-conventional"));

TEST(Liouvillian, KernelIsOneDimensional) {
  for (const char* name : {"incoherent-2ls", "coherent-2ls", "cascade-2ls", "biexciton"}) {
    const auto sv = generator_singular_values(build_liouvillian(make_preset(name, {}).model));
    EXPECT_LT(sv[0], 1e-12) << name;
    EXPECT_GT(sv[1], 1e-6) << name;
  }
}

TEST(SteadyState, IncoherentTwoLevelPopulation) {
  for (double pump : {0.01, 1.0, 100.0}) {
    const EmitterPreset p = incoherent_2ls(pump, 1.0);
    const DensityMatrix rho = steady_state(build_liouvillian(p.model));
    EXPECT_NEAR(unnormalized_gk(rho, p.emission("sigma"), 1), pump / (pump + 1.0), 1e-12);
  }
}

TEST(SteadyState, CoherentTwoLevelPopulation) {
  // H = Omega (sigma + sigma^dag): n = 4 Omega^2 / (gamma^2 + 4 Delta^2 + 8 Omega^2).
  for (double omega : {0.01, 0.5, 3.0}) {
    for (double delta : {0.0, 1.5}) {
      const EmitterPreset p = coherent_2ls(omega, 1.0, delta);
      const DensityMatrix rho = steady_state(build_liouvillian(p.model));
      const double expect = 4 * omega * omega / (1.0 + 4 * delta * delta + 8 * omega * omega);
      EXPECT_NEAR(unnormalized_gk(rho, p.emission("sigma"), 1), expect, 1e-12);
    }
  }
}

TEST(SteadyState, UndampedModelIsDegenerate) {
  const ComplexOperator s = two_level_lowering();
  const LindbladModel model(s + s.dagger(), {});
  EXPECT_THROW(steady_state(build_liouvillian(model)), DegenerateSteadyStateError);
}

TEST(Cascade, TargetDoesNotActOnSource) {
  // The source's reduced state equals the standalone driven 2LS.
  const double omega = 0.7;
  const EmitterPreset cascade = cascaded_2ls(omega, 1.0, 2.0);
  const DensityMatrix rho = steady_state(build_liouvillian(cascade.model));
  const EmitterPreset alone = coherent_2ls(omega, 1.0, 0.0);
  const DensityMatrix ref = steady_state(build_liouvillian(alone.model));
  DenseMatrix reduced = DenseMatrix::Zero(2, 2);
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      for (int t = 0; t < 2; ++t) reduced(a, b) += rho.matrix()(2 * a + t, 2 * b + t);
    }
  }
  EXPECT_LT((reduced - ref.matrix()).cwiseAbs().maxCoeff(), 1e-12);
  // The target is excited by the source's output.
  EXPECT_GT(unnormalized_gk(rho, cascade.emission("sigma2"), 1), 0.01);
}

TEST(Cascade, UndrivenSourceStaysDark) {
  // Roles swapped: the undriven 2LS feeds the driven one and receives nothing back.
  const HilbertSpace space({2, 2});
  const ComplexOperator s1 = embed(two_level_lowering(), space, 0);
  const ComplexOperator s2 = embed(two_level_lowering(), space, 1);
  const LindbladModel model((s1 + s1.dagger()) * 0.7, {Dissipator{1.0, s1}, Dissipator{1.0, s2}},
                            {CascadedCoupling{s2, s1, 1.0, 1.0}});
  const DensityMatrix rho = steady_state(build_liouvillian(model));
  EXPECT_NEAR(unnormalized_gk(rho, s2, 1), 0.0, 1e-12);
}

TEST(Correlators, TwoLevelSystemsAreNilpotent) {
  for (const char* name : {"incoherent-2ls", "coherent-2ls"}) {
    const EmitterPreset p = make_preset(name, {});
    const DensityMatrix rho = steady_state(build_liouvillian(p.model));
    EXPECT_LT(unfiltered_gk(rho, p.emission("sigma"), 2), 1e-14) << name;
  }
}

TEST(Correlators, VacuumHasUndefinedG2) {
  const HilbertSpace space({3});
  const std::vector<double> p{1.0, 0.0, 0.0};
  const DensityMatrix rho = DensityMatrix::diagonal(space, p);
  EXPECT_THROW(unfiltered_gk(rho, bosonic_lowering(3), 2), UndefinedCorrelationError);
}

TEST(Correlators, FockMoments) {
  const HilbertSpace space({5});
  const std::vector<double> p{0.0, 0.0, 0.0, 1.0, 0.0};
  const DensityMatrix rho = DensityMatrix::diagonal(space, p);
  const ComplexOperator a = bosonic_lowering(5);
  EXPECT_NEAR(unnormalized_gk(rho, a, 1), 3.0, 1e-14);
  EXPECT_NEAR(unnormalized_gk(rho, a, 2), 6.0, 1e-13);
  EXPECT_NEAR(unnormalized_gk(rho, a, 3), 6.0, 1e-13);
  EXPECT_NEAR(unnormalized_gk(rho, a, 4), 0.0, 1e-13);
}

}  // namespace
}  // namespace spsnorm
