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

#include "spsnorm/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "spsnorm/errors.hpp"

namespace spsnorm {
namespace {

constexpr double kTailCutoff = 1e-12;
constexpr int kMaxSeriesTerms = 100000;

bool is_nonpositive_integer(double x) { return x <= 0.0 && std::floor(x) == x; }

/// [Gamma_s + (n-1) Gamma][Gamma_s + (2n-1) Gamma]
double step_denominator(const Analytic2lsParams& p, int n) {
  const double gs = p.emitter_linewidth();
  return (gs + (n - 1) * p.linewidth) * (gs + (2 * n - 1) * p.linewidth);
}

}  // namespace

void Analytic2lsParams::validate() const {
  if (!(gamma > 0.0)) throw ValidationError("gamma must be positive");
  if (!(pump >= 0.0)) throw ValidationError("pump must be nonnegative");
  if (!(linewidth >= 0.0) || !std::isfinite(linewidth)) {
    throw ValidationError("filter linewidth must be nonnegative and finite");
  }
}

double gn_recursion(const Analytic2lsParams& params, int n) {
  params.validate();
  if (n < 1) throw ValidationError("correlation order must be at least 1, got " + std::to_string(n));
  const double gs = params.emitter_linewidth();
  double g = 1.0;
  for (int m = 2; m <= n; ++m) {
    g *= m * gs * (gs + params.linewidth) / step_denominator(params, m);
  }
  return g;
}

double filtered_population_closed(const Analytic2lsParams& params) {
  params.validate();
  const double gs = params.emitter_linewidth();
  const double gamma_f = params.linewidth;
  return params.pump * gamma_f / (gs * gamma_f + gs * gs);
}

double hyp1f2(double a, double b1, double b2, double z) {
  if (is_nonpositive_integer(b1) || is_nonpositive_integer(b2)) {
    throw ValidationError("1F2 lower parameter is a nonpositive integer (pole)");
  }
  // Before every Pochhammer factor has turned positive a small term says nothing about the tail.
  const double settle = std::max({0.0, -a, -b1, -b2}) + 1.0;
  // Extended precision absorbs the cancellation of the alternating series at large |z|.
  const long double la = a, lb1 = b1, lb2 = b2, lz = z;
  long double term = 1.0L;
  long double sum = 1.0L;
  int small_run = 0;
  for (int m = 0; m < kMaxSeriesTerms; ++m) {
    term *= (la + m) / ((lb1 + m) * (lb2 + m)) * lz / (m + 1);
    sum += term;
    if (term == 0.0L) break;  // a is a nonpositive integer: the series terminates
    if (m + 1 > settle && std::abs(term) < 1e-16L * std::abs(sum)) {
      if (++small_run == 3) break;
    } else {
      small_run = 0;
    }
  }
  return static_cast<double>(sum);
}

std::vector<double> cn_coefficients(const Analytic2lsParams& params, int n_max) {
  params.validate();
  if (n_max < 0) throw ValidationError("n_max must be nonnegative");
  std::vector<double> c{1.0};
  for (int n = 1; n <= n_max; ++n) {
    c.push_back(c.back() * params.pump * params.linewidth / step_denominator(params, n));
  }
  return c;
}

double pn_closed_form(const Analytic2lsParams& params, int n) {
  params.validate();
  if (n < 0) throw ValidationError("photon number must be nonnegative");
  if (!(params.linewidth > 0.0)) {
    throw ValidationError("closed-form distribution needs a positive filter linewidth");
  }
  const double ratio = params.emitter_linewidth() / params.linewidth;
  const double cn = cn_coefficients(params, n).back();
  if (cn == 0.0) return 0.0;
  // Resumming the correlator series with G^(k) = k! C_k gives the lower
  // parameter n + (ratio + 1) / 2; n + 1/2 + ratio does not normalize.
  return cn * hyp1f2(n + 1.0, n + (ratio + 1.0) / 2.0, n + ratio,
                     -params.pump / (2.0 * params.linewidth));
}

std::vector<double> closed_form_distribution(const Analytic2lsParams& params, int n_max) {
  const std::vector<double> c = cn_coefficients(params, n_max);
  std::vector<double> p;
  for (int n = 0; n <= n_max; ++n) {
    p.push_back(pn_closed_form(params, n));
    if (c[static_cast<std::size_t>(n)] < kTailCutoff) break;
  }
  return p;
}

}  // namespace spsnorm
