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

#include <functional>
#include <span>
#include <vector>

#include "spsnorm/hilbert.hpp"

namespace spsnorm {

/// Population G^(1) and normalized correlators g^(2..K) of one light field.
struct CorrelatorLadder {
  double population = 0.0;
  /// normalized[i] holds g^(i + 2).
  std::vector<double> normalized;

  int max_order() const { return static_cast<int>(normalized.size()) + 1; }
  double g(int k) const;
  void validate() const;
};

/// Unnormalized correlators indexed by order: G[0] = 1, G[k] = (G^(1))^k g^(k).
std::vector<double> unnormalized_ladder(const CorrelatorLadder& ladder);

struct SeriesValue {
  double value = 0.0;
  /// False when the correlator list ended before the termination test passed.
  bool converged = false;
  int terms = 0;
};

/// p(n) = sum_{k >= n} (-1)^{k+n} G^(k) / (n! (k-n)!) over the supplied
/// correlators (G[k] = G^(k), G[0] = 1). Stops once three consecutive terms are
/// below 1e-12 and non-increasing in magnitude, or at an exactly zero
/// correlator. Throws NonConvergentSeriesError
/// when the terms are still growing where the list ends.
SeriesValue pn_from_correlators(std::span<const double> unnormalized, int n);

struct PhotonDistribution {
  std::vector<double> probabilities;
  /// Set when some p(n) came from a truncated series or the support was cut.
  bool truncated = false;

  double total() const;
  double p(int n) const;
  /// Checks p(n) in [-1e-9, 1] and, for untruncated distributions, |sum - 1| <= 1e-6.
  void validate() const;
};

/// p(0..n_max) from unnormalized correlators.
PhotonDistribution distribution_from_correlators(std::span<const double> unnormalized, int n_max);

/// 3 sqrt(3) / (4 e): the largest p(1) of any convex mixture of Gaussian states.
double filip_mista_bound();

/// p1 beyond the Gaussian-mixture bound. Throws ValidationError outside [0, 1].
bool is_strong_quantum(double p1);

/// Smallest pump at which `p1_of_pump` crosses the Gaussian-mixture bound,
/// bracketed in [lower, upper].
double strong_quantum_pump_threshold(const std::function<double(double)>& p1_of_pump,
                                     double lower, double upper);

/// Photon-number distribution of one factor: the diagonal of its reduced state.
PhotonDistribution fock_distribution(const DensityMatrix& rho, int mode_slot);

}  // namespace spsnorm
