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

#include <vector>

#include "spsnorm/hilbert.hpp"

namespace spsnorm {

/// Lindblad term (rate/2)(2 c rho c^dag - c^dag c rho - rho c^dag c).
struct Dissipator {
  double rate = 0.0;
  ComplexOperator collapse;
};

/// Unidirectional coupling of a source channel into a target channel.
///
/// Contributes only the cross terms
///   sqrt(source_rate * target_rate) ([source rho, target^dag] + [target, rho source^dag])
/// of the cascaded-systems generator. The independent decays of both channels
/// must be present in the model as ordinary dissipators with the same rates.
struct CascadedCoupling {
  ComplexOperator source;
  ComplexOperator target;
  double source_rate = 0.0;
  double target_rate = 0.0;
};

/// Time-independent generator of a Lindblad master equation.
class LindbladModel {
 public:
  LindbladModel(ComplexOperator hamiltonian, std::vector<Dissipator> dissipators,
                std::vector<CascadedCoupling> cascades = {});

  const HilbertSpace& space() const { return hamiltonian_.space(); }
  const ComplexOperator& hamiltonian() const { return hamiltonian_; }
  const std::vector<Dissipator>& dissipators() const { return dissipators_; }
  const std::vector<CascadedCoupling>& cascades() const { return cascades_; }

  /// Per-basis-state magnitude hints w_i (density matrix entries are expected
  /// to scale as w_i w_j). Used only to condition the steady-state solve; an
  /// empty vector means no hint.
  const std::vector<double>& basis_scale() const { return basis_scale_; }
  LindbladModel with_basis_scale(std::vector<double> scale) const;

 private:
  ComplexOperator hamiltonian_;
  std::vector<Dissipator> dissipators_;
  std::vector<CascadedCoupling> cascades_;
  std::vector<double> basis_scale_;
};

/// Generator acting on column-stacked density matrices, vec(rho)[i + j d] = rho(i, j).
class Superoperator {
 public:
  Superoperator(HilbertSpace space, SparseMatrix matrix, std::vector<double> basis_scale = {});

  const HilbertSpace& space() const { return space_; }
  const SparseMatrix& matrix() const { return matrix_; }
  int hilbert_dimension() const { return space_.dimension(); }
  const std::vector<double>& basis_scale() const { return basis_scale_; }

  DenseMatrix apply(const DenseMatrix& rho) const;

 private:
  HilbertSpace space_;
  SparseMatrix matrix_;
  std::vector<double> basis_scale_;
};

/// Assembles d rho/dt = i[rho, H] + sum_c (rate/2) L_c rho + cascaded cross terms.
Superoperator build_liouvillian(const LindbladModel& model);

struct SteadyStateOptions {
  double residual_tolerance = 1e-10;
  /// Systems with more unknowns than this use restarted GMRES instead of a
  /// sparse LU factorization.
  int direct_solver_limit = 1 << 19;
  int krylov_restart = 60;
  int krylov_max_iterations = 4000;
};

/// Unique steady state of `generator`, from the trace-constrained linear system.
/// Throws DegenerateSteadyStateError when the system is singular or the
/// residual |L rho|_inf exceeds the tolerance.
DensityMatrix steady_state(const Superoperator& generator,
                           const SteadyStateOptions& options = {});

/// Largest |L rho| entry.
double steady_state_residual(const Superoperator& generator, const DensityMatrix& rho);

/// Singular values of the dense generator in ascending order. Only practical
/// for small systems; used to check that the kernel is one-dimensional.
std::vector<double> generator_singular_values(const Superoperator& generator);

/// <(c^dag)^k c^k>.
double unnormalized_gk(const DensityMatrix& rho, const ComplexOperator& mode, int k);

/// Zero-delay g^(k) = <(c^dag)^k c^k> / <c^dag c>^k.
double unfiltered_gk(const DensityMatrix& rho, const ComplexOperator& mode, int k);

}  // namespace spsnorm
