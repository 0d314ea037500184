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

namespace spsnorm {

/// Incoherently pumped two-level system seen through a Lorentzian filter.
struct Analytic2lsParams {
  double pump = 0.0;
  double gamma = 1.0;
  /// Filter linewidth. Zero is admitted only by gn_recursion (its thermal limit).
  double linewidth = 1.0;

  /// Power-broadened emitter linewidth gamma + P.
  double emitter_linewidth() const { return gamma + pump; }
  void validate() const;
};

/// Filtered g^(n) by the order-to-order recursion, with g^(1) = 1.
double gn_recursion(const Analytic2lsParams& params, int n);

/// P Gamma / (Gamma_s Gamma + Gamma_s^2), Gamma_s = gamma + P.
double filtered_population_closed(const Analytic2lsParams& params);

/// Generalized hypergeometric 1F2(a; b1, b2; z) by term recursion.
double hyp1f2(double a, double b1, double b2, double z);

/// C_0 .. C_{n_max} with C_0 = 1.
std::vector<double> cn_coefficients(const Analytic2lsParams& params, int n_max);

/// Closed-form photon-number probability of the filtered emission,
/// p(n) = C_n 1F2(n + 1; n + (r + 1)/2, n + r; -P / (2 Gamma)) with r = Gamma_s / Gamma.
double pn_closed_form(const Analytic2lsParams& params, int n);

/// p(0..n) in closed form, stopping early at the first n with C_n < 1e-12.
std::vector<double> closed_form_distribution(const Analytic2lsParams& params, int n_max);

}  // namespace spsnorm
