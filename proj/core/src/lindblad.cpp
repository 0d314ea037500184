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

#include "spsnorm/lindblad.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/UmfPackSupport>
#include <unsupported/Eigen/IterativeSolvers>
#include <unsupported/Eigen/KroneckerProduct>

#include "spsnorm/errors.hpp"

namespace spsnorm {
namespace {

SparseMatrix sparse_identity(int dim) {
  SparseMatrix id(dim, dim);
  id.setIdentity();
  return id;
}

SparseMatrix kron(const SparseMatrix& a, const SparseMatrix& b) {
  return Eigen::kroneckerProduct(a, b);
}

void require_space(const ComplexOperator& op, const HilbertSpace& space, const char* what) {
  if (!(op.space() == space)) {
    throw ShapeError(std::string(what) + " lives on a different space than the Hamiltonian");
  }
}

/// s[i + j d] = w_i w_j, or all ones without a scale hint.
Eigen::VectorXd vectorized_scale(const std::vector<double>& w, int d) {
  Eigen::VectorXd s = Eigen::VectorXd::Ones(static_cast<Eigen::Index>(d) * d);
  if (w.empty()) return s;
  for (int j = 0; j < d; ++j) {
    for (int i = 0; i < d; ++i) {
      s[i + static_cast<Eigen::Index>(j) * d] = w[static_cast<std::size_t>(i)] * w[static_cast<std::size_t>(j)];
    }
  }
  return s;
}

double max_abs(const Eigen::VectorXcd& v) {
  return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff();
}

}  // namespace

LindbladModel::LindbladModel(ComplexOperator hamiltonian, std::vector<Dissipator> dissipators,
                             std::vector<CascadedCoupling> cascades)
    : hamiltonian_(std::move(hamiltonian)),
      dissipators_(std::move(dissipators)),
      cascades_(std::move(cascades)) {
  if (!hamiltonian_.is_hermitian(1e-12)) {
    throw ValidationError("Hamiltonian is not Hermitian");
  }
  for (const auto& d : dissipators_) {
    if (!(d.rate >= 0.0)) throw ValidationError("dissipator rate must be nonnegative");
    require_space(d.collapse, space(), "collapse operator");
  }
  for (const auto& c : cascades_) {
    if (!(c.source_rate >= 0.0) || !(c.target_rate >= 0.0)) {
      throw ValidationError("cascaded coupling rates must be nonnegative");
    }
    require_space(c.source, space(), "cascaded source operator");
    require_space(c.target, space(), "cascaded target operator");
  }
}

LindbladModel LindbladModel::with_basis_scale(std::vector<double> scale) const {
  if (!scale.empty()) {
    if (static_cast<int>(scale.size()) != space().dimension()) {
      throw ShapeError("basis scale length does not match space dimension");
    }
    for (double w : scale) {
      if (!(w > 0.0) || !std::isfinite(w)) throw ValidationError("basis scale entries must be positive");
    }
  }
  LindbladModel copy = *this;
  copy.basis_scale_ = std::move(scale);
  return copy;
}

Superoperator::Superoperator(HilbertSpace space, SparseMatrix matrix, std::vector<double> basis_scale)
    : space_(std::move(space)), matrix_(std::move(matrix)), basis_scale_(std::move(basis_scale)) {
  const long long n = static_cast<long long>(space_.dimension()) * space_.dimension();
  if (matrix_.rows() != n || matrix_.cols() != n) {
    throw ShapeError("superoperator shape does not match the squared space dimension");
  }
}

DenseMatrix Superoperator::apply(const DenseMatrix& rho) const {
  const int d = hilbert_dimension();
  if (rho.rows() != d || rho.cols() != d) throw ShapeError("density matrix shape mismatch");
  Eigen::VectorXcd v = Eigen::Map<const Eigen::VectorXcd>(rho.data(), rho.size());
  Eigen::VectorXcd out = matrix_ * v;
  return Eigen::Map<DenseMatrix>(out.data(), d, d);
}

Superoperator build_liouvillian(const LindbladModel& model) {
  const int d = model.space().dimension();
  const SparseMatrix id = sparse_identity(d);
  const Complex i_unit(0.0, 1.0);
  const SparseMatrix& h = model.hamiltonian().matrix();

  // i[rho, H] = i rho H - i H rho
  SparseMatrix l = i_unit * kron(SparseMatrix(h.transpose()), id) - i_unit * kron(id, h);

  for (const auto& diss : model.dissipators()) {
    if (diss.rate == 0.0) continue;
    const SparseMatrix& c = diss.collapse.matrix();
    const SparseMatrix cdc = c.adjoint() * c;
    l += (0.5 * diss.rate) *
         (2.0 * kron(SparseMatrix(c.conjugate()), c) - kron(id, cdc) -
          kron(SparseMatrix(cdc.transpose()), id));
  }

  for (const auto& casc : model.cascades()) {
    const double g = std::sqrt(casc.source_rate * casc.target_rate);
    if (g == 0.0) continue;
    const SparseMatrix& a = casc.source.matrix();
    const SparseMatrix& b = casc.target.matrix();
    const SparseMatrix bda = b.adjoint() * a;
    const SparseMatrix dab = a.adjoint() * b;
    // [a rho, b^dag] + [b, rho a^dag]
    l += g * (kron(SparseMatrix(b.conjugate()), a) - kron(id, bda) +
              kron(SparseMatrix(a.conjugate()), b) - kron(SparseMatrix(dab.transpose()), id));
  }

  l.prune([](Eigen::Index, Eigen::Index, const Complex& v) {
    return std::abs(v) > kSparseDropTolerance;
  });
  l.makeCompressed();
  return Superoperator(model.space(), std::move(l), model.basis_scale());
}

DensityMatrix steady_state(const Superoperator& generator, const SteadyStateOptions& options) {
  const int d = generator.hilbert_dimension();
  const Eigen::Index n = static_cast<Eigen::Index>(d) * d;
  const Eigen::VectorXd s = vectorized_scale(generator.basis_scale(), d);
  const SparseMatrix& l = generator.matrix();

  // Row 0 (the rho_00 equation) is a linear combination of the other diagonal
  // rows because the trace functional annihilates L; it carries the trace
  // constraint instead. Unknowns are rescaled as rho_ij = w_i w_j x_ij.
  std::vector<Eigen::Triplet<Complex>> triplets;
  triplets.reserve(static_cast<std::size_t>(l.nonZeros() + d));
  for (int col = 0; col < l.outerSize(); ++col) {
    for (SparseMatrix::InnerIterator it(l, col); it; ++it) {
      if (it.row() == 0) continue;
      triplets.emplace_back(it.row(), col, it.value() * (s[col] / s[it.row()]));
    }
  }
  for (int i = 0; i < d; ++i) {
    const Eigen::Index diag = i + static_cast<Eigen::Index>(i) * d;
    triplets.emplace_back(0, diag, s[diag]);
  }
  SparseMatrix a(n, n);
  a.setFromTriplets(triplets.begin(), triplets.end());
  a.makeCompressed();
  Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(n);
  rhs[0] = 1.0;

  Eigen::VectorXcd x;
  bool solved = false;
  if (n <= options.direct_solver_limit) {
    Eigen::UmfPackLU<SparseMatrix> lu;
    lu.compute(a);
    if (lu.info() == Eigen::Success) {
      x = lu.solve(rhs);
      solved = lu.info() == Eigen::Success;
    }
  } else {
    Eigen::GMRES<SparseMatrix, Eigen::IncompleteLUT<Complex>> gmres;
    gmres.preconditioner().setDroptol(1e-6);
    gmres.preconditioner().setFillfactor(20);
    gmres.set_restart(options.krylov_restart);
    gmres.setMaxIterations(options.krylov_max_iterations);
    gmres.setTolerance(options.residual_tolerance * 1e-3);
    gmres.compute(a);
    if (gmres.info() == Eigen::Success) {
      x = gmres.solve(rhs);
      solved = gmres.info() == Eigen::Success;
    }
  }
  if (!solved || !x.allFinite()) {
    throw DegenerateSteadyStateError(
        "steady-state system is singular: the generator kernel is not one-dimensional",
        std::numeric_limits<double>::infinity());
  }

  DenseMatrix rho(d, d);
  for (int j = 0; j < d; ++j) {
    for (int i = 0; i < d; ++i) {
      const Eigen::Index k = i + static_cast<Eigen::Index>(j) * d;
      rho(i, j) = x[k] * s[k];
    }
  }
  rho = 0.5 * (rho + rho.adjoint()).eval();
  rho /= rho.trace().real();

  Eigen::VectorXcd v = Eigen::Map<const Eigen::VectorXcd>(rho.data(), n);
  const double residual = max_abs(l * v);
  if (!(residual <= options.residual_tolerance)) {
    throw DegenerateSteadyStateError(
        "steady-state residual " + std::to_string(residual) + " exceeds tolerance", residual);
  }
  try {
    return DensityMatrix(generator.space(), std::move(rho));
  } catch (const ValidationError& e) {
    throw DegenerateSteadyStateError(std::string("steady state is not a valid state: ") + e.what(),
                                     residual);
  }
}

double steady_state_residual(const Superoperator& generator, const DensityMatrix& rho) {
  const DenseMatrix lr = generator.apply(rho.matrix());
  return lr.cwiseAbs().maxCoeff();
}

std::vector<double> generator_singular_values(const Superoperator& generator) {
  const DenseMatrix dense(generator.matrix());
  Eigen::BDCSVD<DenseMatrix> svd(dense);
  const Eigen::VectorXd sv = svd.singularValues();
  std::vector<double> out(sv.data(), sv.data() + sv.size());
  std::sort(out.begin(), out.end());
  return out;
}

double unnormalized_gk(const DensityMatrix& rho, const ComplexOperator& mode, int k) {
  if (k < 1) throw ValidationError("correlation order must be at least 1");
  const ComplexOperator ck = mode.pow(k);
  const Complex value = expectation(rho, ck.dagger() * ck);
  if (std::abs(value.imag()) > 1e-10) {
    throw ValidationError("normally ordered moment has an imaginary part " +
                          std::to_string(value.imag()));
  }
  return value.real();
}

double unfiltered_gk(const DensityMatrix& rho, const ComplexOperator& mode, int k) {
  if (k < 2) throw ValidationError("unfiltered correlation order must be at least 2");
  const double population = unnormalized_gk(rho, mode, 1);
  if (!(population > 1e-300)) {
    throw UndefinedCorrelationError(
        "g^(" + std::to_string(k) + ") undefined: mode population is " + std::to_string(population),
        population);
  }
  return unnormalized_gk(rho, mode, k) / std::pow(population, k);
}

}  // namespace spsnorm
