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

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "spsnorm/lindblad.hpp"

namespace spsnorm {

struct EmissionChannel {
  std::string name;
  ComplexOperator op;
};

/// A built emitter: its Lindblad model in a rotating frame plus the operators
/// whose light can be detected. Rates and energies are in units of the
/// reference decay rate.
struct EmitterPreset {
  std::string name;
  std::map<std::string, double> parameters;
  LindbladModel model;
  std::vector<EmissionChannel> emission_ops;
  /// Lab-frame frequency of the rotating frame the model is written in.
  double frame_frequency = 0.0;
  /// Total emitter excitation number; H_lab = H + frame_frequency * N for the
  /// undriven part.
  ComplexOperator excitation_number;

  const ComplexOperator& emission(std::string_view channel) const;
  const std::string& default_emission() const { return emission_ops.front().name; }
};

/// Controls the Fock-space truncation check of the bosonic builders: the
/// unfiltered g^(k), k = 2..target_order, of the default emission channel must
/// change by less than `tolerance` (relative) when n_max grows by 2.
struct TruncationOptions {
  int target_order = 4;
  double tolerance = 1e-6;
  bool auto_escalate = true;
  int max_dimension = HilbertSpace::kDefaultMaxDimension;
};

/// Default bosonic truncation for resolving g^(k).
inline int default_n_max(int target_order) { return target_order + 3; }

EmitterPreset incoherent_2ls(double pump, double gamma);

EmitterPreset coherent_2ls(double drive, double gamma, double detuning);

/// Biexciton cascade of two exciton spins, driven by a V-polarized laser at the
/// exciton frequency `omega` (also the frame frequency).
EmitterPreset biexciton(double omega, double chi, double drive, double gamma);

struct PolaritonParams {
  double omega = 0.275;
  double g = 3.0;
  double U = 0.0425;
  double drive = 0.01;
  double omega_laser = 0.0;
  double gamma_a = 1.0;
  double gamma_b = 1.0;
  int n_max = 7;
};

/// Two coupled Kerr modes with mode a driven. For g == 0 mode b stays in the
/// vacuum and is dropped, leaving the single-mode conventional blockade.
EmitterPreset polariton_blockade(const PolaritonParams& params,
                                 const TruncationOptions& truncation = {});

/// A coherently driven 2LS whose output unidirectionally drives a second 2LS.
EmitterPreset cascaded_2ls(double drive, double gamma_source, double gamma_target);

/// Coherently driven 2LS coupled to a lossy cavity mode; light detected from the cavity.
EmitterPreset twolevel_in_cavity(double coupling, double kappa, double gamma, double drive,
                                 int n_max, const TruncationOptions& truncation = {});

/// Names accepted by make_preset.
const std::vector<std::string>& preset_names();

/// Emission channels of a named preset; the first is the default.
std::vector<std::string> preset_channels(const std::string& name);

/// Default parameter set of a named preset.
std::map<std::string, double> preset_defaults(const std::string& name);

/// Builds a named preset with `overrides` applied on top of its defaults.
/// Unknown preset names or parameter keys raise ValidationError.
EmitterPreset make_preset(const std::string& name, const std::map<std::string, double>& overrides,
                          const TruncationOptions& truncation = {});

}  // namespace spsnorm
