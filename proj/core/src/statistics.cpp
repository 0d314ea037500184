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

#include "spsnorm/statistics.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

#include <boost/math/tools/roots.hpp>

#include "spsnorm/errors.hpp"

namespace spsnorm {
namespace {

constexpr double kTermTolerance = 1e-12;
constexpr int kSmallTermRun = 3;

}  // namespace

double CorrelatorLadder::g(int k) const {
  if (k == 1) return 1.0;
  if (k < 1 || k > max_order()) {
    throw ValidationError("ladder holds no g^(" + std::to_string(k) + ")");
  }
  return normalized[static_cast<std::size_t>(k - 2)];
}

void CorrelatorLadder::validate() const {
  if (!(population >= 0.0)) throw ValidationError("ladder population must be nonnegative");
  for (std::size_t i = 0; i < normalized.size(); ++i) {
    if (!(normalized[i] >= 0.0)) {
      throw ValidationError("g^(" + std::to_string(i + 2) + ") must be nonnegative");
    }
  }
}

std::vector<double> unnormalized_ladder(const CorrelatorLadder& ladder) {
  ladder.validate();
  std::vector<double> big_g{1.0};
  for (int k = 1; k <= ladder.max_order(); ++k) {
    big_g.push_back(std::pow(ladder.population, k) * ladder.g(k));
  }
  return big_g;
}

SeriesValue pn_from_correlators(std::span<const double> unnormalized, int n) {
  if (n < 0) throw ValidationError("photon number must be nonnegative");
  const int last = static_cast<int>(unnormalized.size()) - 1;
  SeriesValue out;
  if (n > last) return out;  // no information about this photon number

  const double n_factorial = std::tgamma(n + 1.0);
  std::vector<double> partial_sums;
  double sum = 0.0;
  double previous = std::numeric_limits<double>::infinity();
  double current = std::numeric_limits<double>::infinity();
  int small_run = 0;
  for (int k = n; k <= last; ++k) {
    previous = current;
    const double sign = ((k + n) % 2 == 0) ? 1.0 : -1.0;
    current = std::abs(unnormalized[static_cast<std::size_t>(k)] /
                       (n_factorial * std::tgamma(k - n + 1.0)));
    sum += sign * current;
    partial_sums.push_back(sum);
    ++out.terms;
    // An exactly vanishing moment bounds the photon-number support, so every
    // later moment vanishes too.
    if (current == 0.0) {
      out.value = sum;
      out.converged = true;
      return out;
    }
    if (current < kTermTolerance && current <= previous) {
      if (++small_run == kSmallTermRun) {
        out.value = sum;
        out.converged = true;
        return out;
      }
    } else {
      small_run = 0;
    }
  }
  const bool growing = out.terms >= 2 && current >= kTermTolerance && current >= previous;
  if (growing) {
    throw NonConvergentSeriesError("p(" + std::to_string(n) +
                                       ") series does not converge: terms are not decreasing "
                                       "where the correlator list ends",
                                   std::move(partial_sums));
  }
  out.value = sum;
  return out;
}

double PhotonDistribution::total() const {
  return std::accumulate(probabilities.begin(), probabilities.end(), 0.0);
}

double PhotonDistribution::p(int n) const {
  if (n < 0) throw ValidationError("photon number must be nonnegative");
  return n < static_cast<int>(probabilities.size()) ? probabilities[static_cast<std::size_t>(n)] : 0.0;
}

void PhotonDistribution::validate() const {
  for (std::size_t n = 0; n < probabilities.size(); ++n) {
    if (!(probabilities[n] >= -1e-9 && probabilities[n] <= 1.0 + 1e-9)) {
      throw ValidationError("p(" + std::to_string(n) + ") = " + std::to_string(probabilities[n]) +
                            " lies outside [0, 1]");
    }
  }
  if (!truncated && std::abs(total() - 1.0) > 1e-6) {
    throw ValidationError("distribution sums to " + std::to_string(total()));
  }
}

PhotonDistribution distribution_from_correlators(std::span<const double> unnormalized, int n_max) {
  PhotonDistribution dist;
  for (int n = 0; n <= n_max; ++n) {
    const SeriesValue v = pn_from_correlators(unnormalized, n);
    dist.probabilities.push_back(v.value);
    if (!v.converged) dist.truncated = true;
  }
  return dist;
}

double filip_mista_bound() { return 3.0 * std::numbers::sqrt3 / (4.0 * std::numbers::e); }

bool is_strong_quantum(double p1) {
  if (!(p1 >= 0.0 && p1 <= 1.0)) {
    throw ValidationError("p(1) = " + std::to_string(p1) + " is not a probability");
  }
  return p1 > filip_mista_bound();
}

double strong_quantum_pump_threshold(const std::function<double(double)>& p1_of_pump, double lower,
                                     double upper) {
  const double bound = filip_mista_bound();
  const auto f = [&](double pump) { return p1_of_pump(pump) - bound; };
  if (f(lower) * f(upper) > 0.0) {
    throw ValidationError("pump bracket does not straddle the Gaussian-mixture bound");
  }
  boost::uintmax_t iterations = 200;
  const auto [lo, hi] = boost::math::tools::toms748_solve(
      f, lower, upper, boost::math::tools::eps_tolerance<double>(50), iterations);
  return 0.5 * (lo + hi);
}

PhotonDistribution fock_distribution(const DensityMatrix& rho, int mode_slot) {
  PhotonDistribution dist;
  dist.probabilities = rho.reduced_diagonal(mode_slot);
  return dist;
}

}  // namespace spsnorm
