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

#include "spsnorm/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <unsupported/Eigen/KroneckerProduct>

#include "spsnorm/errors.hpp"

namespace spsnorm {
namespace {

SparseMatrix pruned(SparseMatrix m) {
  m.prune([](Eigen::Index, Eigen::Index, const Complex& v) {
    return std::abs(v) > kSparseDropTolerance;
  });
  m.makeCompressed();
  return m;
}

SparseMatrix sparse_identity(int dim) {
  SparseMatrix id(dim, dim);
  id.setIdentity();
  return id;
}

}  // namespace

HilbertSpace::HilbertSpace(std::vector<int> subsystem_dims, int max_dimension)
    : dims_(std::move(subsystem_dims)), max_dimension_(max_dimension) {
  if (dims_.empty()) {
    throw InvalidDimensionError("Hilbert space needs at least one factor");
  }
  long long total = 1;
  for (int d : dims_) {
    if (d < 2) {
      throw InvalidDimensionError("subsystem dimension " + std::to_string(d) +
                                  " is below 2");
    }
    total *= d;
    if (total > max_dimension_) {
      throw CapacityError("composite dimension exceeds cap of " +
                          std::to_string(max_dimension_));
    }
  }
  dimension_ = static_cast<int>(total);
}

int HilbertSpace::subsystem_dim(int slot) const {
  if (slot < 0 || slot >= subsystem_count()) {
    throw ShapeError("slot " + std::to_string(slot) + " out of range for " +
                     std::to_string(subsystem_count()) + " factors");
  }
  return dims_[static_cast<std::size_t>(slot)];
}

int HilbertSpace::index_of(std::span<const int> occupations) const {
  if (static_cast<int>(occupations.size()) != subsystem_count()) {
    throw ShapeError("occupation list length does not match factor count");
  }
  int index = 0;
  for (std::size_t i = 0; i < dims_.size(); ++i) {
    if (occupations[i] < 0 || occupations[i] >= dims_[i]) {
      throw ShapeError("occupation out of range in slot " + std::to_string(i));
    }
    index = index * dims_[i] + occupations[i];
  }
  return index;
}

std::vector<int> HilbertSpace::occupations_of(int index) const {
  std::vector<int> occ(dims_.size());
  for (std::size_t i = dims_.size(); i-- > 0;) {
    occ[i] = index % dims_[i];
    index /= dims_[i];
  }
  return occ;
}

HilbertSpace HilbertSpace::extended(std::span<const int> extra_dims,
                                    int max_dimension) const {
  std::vector<int> dims = dims_;
  dims.insert(dims.end(), extra_dims.begin(), extra_dims.end());
  return HilbertSpace(std::move(dims), max_dimension);
}

ComplexOperator::ComplexOperator(HilbertSpace space, SparseMatrix matrix)
    : space_(std::move(space)), matrix_(pruned(std::move(matrix))) {
  if (matrix_.rows() != space_.dimension() || matrix_.cols() != space_.dimension()) {
    throw ShapeError("operator shape " + std::to_string(matrix_.rows()) + "x" +
                     std::to_string(matrix_.cols()) + " does not match space dimension " +
                     std::to_string(space_.dimension()));
  }
}

ComplexOperator ComplexOperator::identity(const HilbertSpace& space) {
  return ComplexOperator(space, sparse_identity(space.dimension()));
}

ComplexOperator ComplexOperator::zero(const HilbertSpace& space) {
  return ComplexOperator(space, SparseMatrix(space.dimension(), space.dimension()));
}

ComplexOperator ComplexOperator::dagger() const {
  return ComplexOperator(space_, SparseMatrix(matrix_.adjoint()));
}

bool ComplexOperator::is_hermitian(double tolerance) const {
  SparseMatrix diff = matrix_ - SparseMatrix(matrix_.adjoint());
  for (int k = 0; k < diff.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(diff, k); it; ++it) {
      if (std::abs(it.value()) > tolerance) return false;
    }
  }
  return true;
}

double ComplexOperator::max_abs() const {
  double m = 0.0;
  for (int k = 0; k < matrix_.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(matrix_, k); it; ++it) {
      m = std::max(m, std::abs(it.value()));
    }
  }
  return m;
}

Eigen::VectorXcd ComplexOperator::apply(const Eigen::VectorXcd& state) const {
  if (state.size() != dimension()) {
    throw ShapeError("state vector length does not match operator dimension");
  }
  return matrix_ * state;
}

void ComplexOperator::require_same_space(const ComplexOperator& other, const char* op) const {
  if (!(space_ == other.space_)) {
    throw ShapeError(std::string("operands of ") + op + " live on different spaces");
  }
}

ComplexOperator ComplexOperator::operator+(const ComplexOperator& other) const {
  require_same_space(other, "+");
  return ComplexOperator(space_, matrix_ + other.matrix_);
}

ComplexOperator ComplexOperator::operator-(const ComplexOperator& other) const {
  require_same_space(other, "-");
  return ComplexOperator(space_, matrix_ - other.matrix_);
}

ComplexOperator ComplexOperator::operator*(const ComplexOperator& other) const {
  require_same_space(other, "*");
  return ComplexOperator(space_, SparseMatrix(matrix_ * other.matrix_));
}

ComplexOperator ComplexOperator::operator*(Complex scalar) const {
  return ComplexOperator(space_, matrix_ * scalar);
}

ComplexOperator ComplexOperator::pow(int exponent) const {
  if (exponent < 0) throw ValidationError("negative operator power");
  ComplexOperator result = identity(space_);
  for (int i = 0; i < exponent; ++i) result = result * *this;
  return result;
}

ComplexOperator commutator(const ComplexOperator& a, const ComplexOperator& b) {
  return a * b - b * a;
}

ComplexOperator two_level_lowering() { return bosonic_lowering(2); }

ComplexOperator bosonic_lowering(int dim) {
  if (dim < 2) {
    throw InvalidDimensionError("bosonic mode needs at least 2 levels, got " +
                                std::to_string(dim));
  }
  SparseMatrix a(dim, dim);
  for (int n = 1; n < dim; ++n) a.insert(n - 1, n) = std::sqrt(static_cast<double>(n));
  return ComplexOperator(HilbertSpace({dim}), std::move(a));
}

ComplexOperator embed(const ComplexOperator& op, const HilbertSpace& space, int slot) {
  const int factor_dim = space.subsystem_dim(slot);
  if (op.dimension() != factor_dim) {
    throw ShapeError("operator of dimension " + std::to_string(op.dimension()) +
                     " cannot act on slot " + std::to_string(slot) + " of dimension " +
                     std::to_string(factor_dim));
  }
  int left = 1;
  int right = 1;
  for (int s = 0; s < space.subsystem_count(); ++s) {
    if (s < slot) left *= space.subsystem_dim(s);
    if (s > slot) right *= space.subsystem_dim(s);
  }
  SparseMatrix m = Eigen::kroneckerProduct(
      sparse_identity(left), Eigen::kroneckerProduct(op.matrix(), sparse_identity(right)).eval());
  return ComplexOperator(space, std::move(m));
}

ComplexOperator embed_leading(const ComplexOperator& op, const HilbertSpace& space) {
  const auto& inner = op.space().subsystem_dims();
  const auto& outer = space.subsystem_dims();
  if (inner.size() > outer.size() ||
      !std::equal(inner.begin(), inner.end(), outer.begin())) {
    throw ShapeError("operator factors are not a prefix of the target space");
  }
  const int right = space.dimension() / op.dimension();
  SparseMatrix m = Eigen::kroneckerProduct(op.matrix(), sparse_identity(right));
  return ComplexOperator(space, std::move(m));
}

Eigen::VectorXcd basis_state(const HilbertSpace& space, std::span<const int> occupations) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(space.dimension());
  v[space.index_of(occupations)] = 1.0;
  return v;
}

DensityMatrix::DensityMatrix(HilbertSpace space, DenseMatrix entries)
    : space_(std::move(space)), entries_(std::move(entries)) {
  const int d = space_.dimension();
  if (entries_.rows() != d || entries_.cols() != d) {
    throw ShapeError("density matrix shape does not match space dimension");
  }
  const Complex tr = entries_.trace();
  if (std::abs(tr - 1.0) > kTraceTolerance) {
    throw ValidationError("density matrix trace deviates from 1 by " +
                          std::to_string(std::abs(tr - 1.0)));
  }
  const double herm = (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
  if (herm > kHermiticityTolerance) {
    throw ValidationError("density matrix is not Hermitian (deviation " +
                          std::to_string(herm) + ")");
  }
  // rho + tol*1 admits a Cholesky factor iff its smallest eigenvalue exceeds -tol.
  DenseMatrix shifted = 0.5 * (entries_ + entries_.adjoint());
  shifted.diagonal().array() += kPositivityTolerance;
  Eigen::LLT<DenseMatrix> llt(shifted);
  if (llt.info() != Eigen::Success) {
    throw ValidationError("density matrix has an eigenvalue below -1e-8");
  }
}

DensityMatrix DensityMatrix::pure(const HilbertSpace& space, const Eigen::VectorXcd& state) {
  if (state.size() != space.dimension()) {
    throw ShapeError("state vector length does not match space dimension");
  }
  const Eigen::VectorXcd psi = state / state.norm();
  return DensityMatrix(space, psi * psi.adjoint());
}

DensityMatrix DensityMatrix::diagonal(const HilbertSpace& space,
                                      std::span<const double> probabilities) {
  if (static_cast<int>(probabilities.size()) != space.dimension()) {
    throw ShapeError("probability list length does not match space dimension");
  }
  DenseMatrix m = DenseMatrix::Zero(space.dimension(), space.dimension());
  for (int i = 0; i < space.dimension(); ++i) m(i, i) = probabilities[static_cast<std::size_t>(i)];
  return DensityMatrix(space, std::move(m));
}

std::vector<double> DensityMatrix::reduced_diagonal(int slot) const {
  const int factor_dim = space_.subsystem_dim(slot);
  std::vector<double> p(static_cast<std::size_t>(factor_dim), 0.0);
  for (int i = 0; i < dimension(); ++i) {
    const int n = space_.occupations_of(i)[static_cast<std::size_t>(slot)];
    p[static_cast<std::size_t>(n)] += entries_(i, i).real();
  }
  return p;
}

Complex expectation(const DensityMatrix& rho, const ComplexOperator& op) {
  if (!(rho.space() == op.space())) {
    throw ShapeError("expectation value of an operator on a different space");
  }
  const auto& m = op.matrix();
  const auto& r = rho.matrix();
  Complex sum = 0.0;
  for (int col = 0; col < m.outerSize(); ++col) {
    for (SparseMatrix::InnerIterator it(m, col); it; ++it) {
      sum += it.value() * r(col, it.row());
    }
  }
  return sum;
}

}  // namespace spsnorm
