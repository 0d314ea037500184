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

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

namespace spsnorm {

using Complex = std::complex<double>;
using SparseMatrix = Eigen::SparseMatrix<Complex>;
using DenseMatrix = Eigen::MatrixXcd;

/// Entries with modulus below this are dropped from sparse operators.
inline constexpr double kSparseDropTolerance = 1e-15;

/// Ordered tensor product of finite-dimensional factors. Slot 0 is the most
/// significant factor of the composite basis index.
class HilbertSpace {
 public:
  static constexpr int kDefaultMaxDimension = 4096;

  explicit HilbertSpace(std::vector<int> subsystem_dims,
                        int max_dimension = kDefaultMaxDimension);

  const std::vector<int>& subsystem_dims() const { return dims_; }
  int subsystem_count() const { return static_cast<int>(dims_.size()); }
  int subsystem_dim(int slot) const;
  int dimension() const { return dimension_; }
  int max_dimension() const { return max_dimension_; }

  /// Composite index from per-slot occupation numbers.
  int index_of(std::span<const int> occupations) const;
  /// Per-slot occupation numbers of a composite basis index.
  std::vector<int> occupations_of(int index) const;

  /// Appends factors; the cap of the result is `max_dimension`.
  HilbertSpace extended(std::span<const int> extra_dims, int max_dimension) const;

  friend bool operator==(const HilbertSpace& a, const HilbertSpace& b) {
    return a.dims_ == b.dims_;
  }

 private:
  std::vector<int> dims_;
  int dimension_ = 1;
  int max_dimension_ = kDefaultMaxDimension;
};

/// Sparse linear operator on a HilbertSpace. Immutable after construction.
class ComplexOperator {
 public:
  ComplexOperator(HilbertSpace space, SparseMatrix matrix);

  static ComplexOperator identity(const HilbertSpace& space);
  static ComplexOperator zero(const HilbertSpace& space);

  const HilbertSpace& space() const { return space_; }
  const SparseMatrix& matrix() const { return matrix_; }
  int dimension() const { return space_.dimension(); }

  ComplexOperator dagger() const;
  bool is_hermitian(double tolerance = 1e-12) const;
  bool is_zero() const { return matrix_.nonZeros() == 0; }
  /// Largest entry modulus.
  double max_abs() const;

  Eigen::VectorXcd apply(const Eigen::VectorXcd& state) const;

  ComplexOperator operator+(const ComplexOperator& other) const;
  ComplexOperator operator-(const ComplexOperator& other) const;
  ComplexOperator operator*(const ComplexOperator& other) const;
  ComplexOperator operator*(Complex scalar) const;
  friend ComplexOperator operator*(Complex scalar, const ComplexOperator& op) {
    return op * scalar;
  }
  ComplexOperator pow(int exponent) const;

 private:
  void require_same_space(const ComplexOperator& other, const char* op) const;

  HilbertSpace space_;
  SparseMatrix matrix_;
};

/// Commutator AB - BA.
ComplexOperator commutator(const ComplexOperator& a, const ComplexOperator& b);

/// Lowering operator of a two-level system, |0><1|.
ComplexOperator two_level_lowering();

/// Truncated bosonic annihilation operator on `dim` Fock levels.
ComplexOperator bosonic_lowering(int dim);

/// Lifts a single-factor operator into `slot` of a composite space.
ComplexOperator embed(const ComplexOperator& op, const HilbertSpace& space, int slot);

/// Lifts an operator acting on the leading factors of `space` (the factors of
/// op.space(), in order) by tensoring with identity on the remaining factors.
ComplexOperator embed_leading(const ComplexOperator& op, const HilbertSpace& space);

/// Basis vector |n_0 n_1 ...> of the composite space.
Eigen::VectorXcd basis_state(const HilbertSpace& space, std::span<const int> occupations);

/// Steady-state density matrix: unit trace, Hermitian and positive
/// semidefinite within numerical tolerances checked on construction.
class DensityMatrix {
 public:
  static constexpr double kTraceTolerance = 1e-10;
  static constexpr double kHermiticityTolerance = 1e-10;
  static constexpr double kPositivityTolerance = 1e-8;

  DensityMatrix(HilbertSpace space, DenseMatrix entries);

  static DensityMatrix pure(const HilbertSpace& space, const Eigen::VectorXcd& state);
  static DensityMatrix diagonal(const HilbertSpace& space, std::span<const double> probabilities);

  const HilbertSpace& space() const { return space_; }
  const DenseMatrix& matrix() const { return entries_; }
  int dimension() const { return space_.dimension(); }

  /// Diagonal of the reduced state on one factor.
  std::vector<double> reduced_diagonal(int slot) const;

 private:
  HilbertSpace space_;
  DenseMatrix entries_;
};

/// Tr(op rho).
Complex expectation(const DensityMatrix& rho, const ComplexOperator& op);

}  // namespace spsnorm
