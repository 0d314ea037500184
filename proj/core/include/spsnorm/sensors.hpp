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

#include <span>
#include <string_view>
#include <vector>

#include "spsnorm/lindblad.hpp"
#include "spsnorm/models.hpp"

namespace spsnorm {

/// k identical two-level sensors weakly coupled to one emission channel.
struct SensorBank {
  int count = 1;
  /// Lab-frame sensor frequency.
  double frequency = 0.0;
  double linewidth = 1.0;
  double coupling = 1e-3;
};

/// How the sensor-augmented steady state is solved.
///
/// kExcitationBlocks splits the state into blocks <A| rho |B> labelled by the
/// sets A, B of excited sensors. Exchange symmetry of identical sensors
/// reduces them to classes (|A - B|, |B - A|, |A n B|), each an emitter-sized
/// operator, and the coupled block equations are solved by Gauss-Seidel
/// sweeps with one factorization per class. kComposite factorizes the full
/// composite generator; it is exact but only practical for small emitters.
enum class SensorSolver { kExcitationBlocks, kComposite };

struct SensorOptions {
  /// Initial sensor coupling; halved until the back-action bound holds.
  double epsilon = 1e-3;
  /// Largest admissible sensor/emitter population ratio.
  double backaction_ratio = 1e-4;
  /// Relative agreement of the epsilon and epsilon/2 estimates for `converged`.
  double convergence_tolerance = 1e-3;
  int max_dimension = HilbertSpace::kDefaultMaxDimension;
  SensorSolver method = SensorSolver::kExcitationBlocks;
  SteadyStateOptions solver;
};

/// Filtered zero-delay correlation g_Gamma^(k) in the vanishing-coupling limit.
struct FilteredCorrelation {
  int order = 2;
  double linewidth = 0.0;
  double frequency = 0.0;
  /// Coupling used for the first estimate; the second uses epsilon / 2.
  double epsilon = 0.0;
  double estimate = 0.0;
  double estimate_half = 0.0;
  /// Richardson extrapolation in epsilon^2 of the two estimates.
  double extrapolated = 0.0;
  double value = 0.0;
  bool converged = false;
};

/// Emitter model enlarged by `bank.count` sensors appended after the emitter
/// factors. Throws CapacityError when the composite exceeds `max_dimension`.
LindbladModel attach_sensors(const EmitterPreset& preset, std::string_view emission,
                             const SensorBank& bank,
                             int max_dimension = HilbertSpace::kDefaultMaxDimension);

/// <n_{s_1} ... n_{s_m}> for the listed sensors (0-based, in attachment order)
/// of a sensor-augmented steady state with `emitter_factors` leading factors.
double sensor_moment(const DensityMatrix& rho, int emitter_factors, std::span<const int> sensors);

/// g_Gamma^(k) at lab frequency `frequency`.
FilteredCorrelation filtered_gk(const EmitterPreset& preset, std::string_view emission, int k,
                                double linewidth, double frequency, const SensorOptions& options = {});

/// g_Gamma^(2..max_order) from a single max_order-sensor model; entry i holds order i + 2.
std::vector<FilteredCorrelation> filtered_ladder(const EmitterPreset& preset,
                                                 std::string_view emission, int max_order,
                                                 double linewidth, double frequency,
                                                 const SensorOptions& options = {});

struct FilteredPopulation {
  double value = 0.0;
  double estimate = 0.0;
  double estimate_half = 0.0;
  double epsilon = 0.0;
  bool converged = false;
};

/// Population transmitted by a Lorentzian filter of width `linewidth`.
///
/// The raw one-sensor population is converted to a filtered emitter population
/// with a calibration constant taken, at the same linewidth and coupling, from
/// a reference incoherently pumped 2LS (P = gamma = 1) whose filtered
/// population is known in closed form.
FilteredPopulation filtered_population(const EmitterPreset& preset, std::string_view emission,
                                       double linewidth, double frequency,
                                       const SensorOptions& options = {});

/// filtered_gk at every grid frequency, in grid order.
std::vector<FilteredCorrelation> frequency_scan(const EmitterPreset& preset,
                                                std::string_view emission, int k, double linewidth,
                                                std::span<const double> frequencies,
                                                const SensorOptions& options = {});

}  // namespace spsnorm
