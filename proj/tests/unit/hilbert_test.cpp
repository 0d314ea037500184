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

#include <gtest/gtest.h>

#include "spsnorm/errors.hpp"
#include "spsnorm/hilbert.hpp"

namespace spsnorm {
namespace {

TEST(HilbertSpace, IndexRoundTrip) {
  const HilbertSpace space({2, 3, 4});
  ASSERT_EQ(space.dimension(), 24);
  for (int i = 0; i < space.dimension(); ++i) {
    const auto occ = space.occupations_of(i);
    EXPECT_EQ(space.index_of(occ), i);
  }
  // Slot 0 is the most significant factor.
  const std::vector<int> first{1, 0, 0};
  EXPECT_EQ(space.index_of(first), 12);
}

TEST(HilbertSpace, RejectsBadFactors) {
  EXPECT_THROW(HilbertSpace({}), InvalidDimensionError);
  EXPECT_THROW(HilbertSpace({2, 0}), InvalidDimensionError);
  EXPECT_THROW(HilbertSpace({64, 128}, 4096), CapacityError);
  EXPECT_NO_THROW(HilbertSpace({64, 64}, 4096));
}

TEST(HilbertSpace, ExtendedAppendsFactors) {
  const HilbertSpace space({3});
  const std::vector<int> extra{2, 2};
  const HilbertSpace big = space.extended(extra, 100);
  EXPECT_EQ(big.subsystem_dims(), (std::vector<int>{3, 2, 2}));
  EXPECT_THROW(space.extended(extra, 10), CapacityError);
}

TEST(ComplexOperator, BosonicCommutator) {
  const ComplexOperator a = bosonic_lowering(6);
  const ComplexOperator c = commutator(a, a.dagger());
  // [a, a^dag] = 1 except in the top level of the truncation.
  for (int n = 0; n < 5; ++n) EXPECT_NEAR(std::abs(c.matrix().coeff(n, n) - 1.0), 0.0, 1e-14);
  EXPECT_NEAR(c.matrix().coeff(5, 5).real(), -5.0, 1e-14);
}

TEST(ComplexOperator, TwoLevelLoweringIsNilpotent) {
  const ComplexOperator s = two_level_lowering();
  EXPECT_TRUE((s * s).is_zero());
  EXPECT_TRUE((s.dagger() * s).is_hermitian());
}

TEST(ComplexOperator, EmbedActsOnItsSlot) {
  const HilbertSpace space({2, 3});
  const ComplexOperator b = embed(bosonic_lowering(3), space, 1);
  const std::vector<int> in{1, 2};
  const std::vector<int> out{1, 1};
  const Eigen::VectorXcd v = b.apply(basis_state(space, in));
  EXPECT_NEAR(std::abs(v[space.index_of(out)] - std::sqrt(2.0)), 0.0, 1e-14);
  EXPECT_NEAR(v.norm(), std::sqrt(2.0), 1e-14);
  EXPECT_THROW(embed(bosonic_lowering(4), space, 1), ShapeError);
}

TEST(ComplexOperator, SpaceMismatchThrows) {
  const ComplexOperator a = bosonic_lowering(3);
  const ComplexOperator b = bosonic_lowering(4);
  EXPECT_THROW(a + b, ShapeError);
  EXPECT_THROW(a * b, ShapeError);
}

TEST(DensityMatrix, ValidatesTraceHermiticityPositivity) {
  const HilbertSpace space({2});
  DenseMatrix m(2, 2);
  m << 0.5, 0.0, 0.0, 0.6;
  EXPECT_THROW(DensityMatrix(space, m), ValidationError);
  m << 0.5, 0.1, 0.2, 0.5;
  EXPECT_THROW(DensityMatrix(space, m), ValidationError);
  m << 1.2, 0.0, 0.0, -0.2;
  EXPECT_THROW(DensityMatrix(space, m), ValidationError);
  m << 0.5, 0.5, 0.5, 0.5;
  EXPECT_NO_THROW(DensityMatrix(space, m));
}

TEST(DensityMatrix, ReducedDiagonalAndExpectation) {
  const HilbertSpace space({2, 3});
  const std::vector<double> p{0.1, 0.2, 0.05, 0.15, 0.3, 0.2};
  const DensityMatrix rho = DensityMatrix::diagonal(space, p);
  const auto r1 = rho.reduced_diagonal(1);
  EXPECT_NEAR(r1[0], 0.25, 1e-15);
  EXPECT_NEAR(r1[1], 0.5, 1e-15);
  EXPECT_NEAR(r1[2], 0.25, 1e-15);
  const ComplexOperator b = embed(bosonic_lowering(3), space, 1);
  EXPECT_NEAR(expectation(rho, b.dagger() * b).real(), 0.5 + 2 * 0.25, 1e-14);
}

}  // namespace
}  // namespace spsnorm
