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

#include "spsnorm/models.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <string>

#include "spsnorm/errors.hpp"

namespace spsnorm {
namespace {

void require_positive(double value, const char* name) {
  if (!(value > 0.0)) {
    throw ValidationError(std::string(name) + " must be positive");
  }
}

void require_nonnegative(double value, const char* name) {
  if (!(value >= 0.0)) {
    throw ValidationError(std::string(name) + " must be nonnegative");
  }
}

/// Unfiltered g^(2..order) of the default channel, or nullopt for a dark mode.
std::optional<std::vector<double>> unfiltered_ladder(const EmitterPreset& preset, int order) {
  const DensityMatrix rho = steady_state(build_liouvillian(preset.model));
  const ComplexOperator& mode = preset.emission(preset.default_emission());
  if (!(unnormalized_gk(rho, mode, 1) > 1e-300)) return std::nullopt;
  std::vector<double> g;
  for (int k = 2; k <= order; ++k) g.push_back(unfiltered_gk(rho, mode, k));
  return g;
}

/// Builds at n_max and n_max + 2 and escalates n_max until the default
/// channel's unfiltered correlators agree to the requested tolerance.
EmitterPreset build_truncated(const std::function<EmitterPreset(int)>& build, int n_max,
                              const TruncationOptions& opts) {
  for (;;) {
    EmitterPreset coarse = build(n_max);
    std::optional<EmitterPreset> fine;
    try {
      fine = build(n_max + 2);
    } catch (const CapacityError&) {
      throw TruncationError("cannot verify truncation at n_max = " + std::to_string(n_max) +
                                ": n_max + 2 exceeds the dimension cap",
                            n_max);
    }
    const auto g_coarse = unfiltered_ladder(coarse, opts.target_order);
    const auto g_fine = unfiltered_ladder(*fine, opts.target_order);
    bool adequate = !g_coarse.has_value() && !g_fine.has_value();
    if (g_coarse && g_fine) {
      adequate = true;
      for (std::size_t i = 0; i < g_coarse->size(); ++i) {
        const double ref = std::max(std::abs((*g_fine)[i]), 1e-12);
        if (std::abs((*g_coarse)[i] - (*g_fine)[i]) / ref > opts.tolerance) adequate = false;
      }
    }
    if (adequate) {
      coarse.parameters["n_max"] = n_max;
      return coarse;
    }
    if (!opts.auto_escalate) {
      throw TruncationError("Fock truncation n_max = " + std::to_string(n_max) +
                                " is inadequate; try n_max = " + std::to_string(n_max + 2),
                            n_max + 2);
    }
    ++n_max;
  }
}

ComplexOperator lowering_in(const HilbertSpace& space, int slot) {
  return embed(bosonic_lowering(space.subsystem_dim(slot)), space, slot);
}

}  // namespace

const ComplexOperator& EmitterPreset::emission(std::string_view channel) const {
  for (const auto& e : emission_ops) {
    if (e.name == channel) return e.op;
  }
  std::string known;
  for (const auto& e : emission_ops) known += (known.empty() ? "" : ", ") + e.name;
  throw ValidationError("preset '" + name + "' has no emission channel '" + std::string(channel) +
                        "' (available: " + known + ")");
}

EmitterPreset incoherent_2ls(double pump, double gamma) {
  require_positive(gamma, "gamma");
  require_nonnegative(pump, "P");
  const ComplexOperator sigma = two_level_lowering();
  const HilbertSpace& space = sigma.space();
  LindbladModel model(ComplexOperator::zero(space),
                      {Dissipator{gamma, sigma}, Dissipator{pump, sigma.dagger()}});
  return EmitterPreset{"incoherent-2ls",
                       {{"P", pump}, {"gamma", gamma}},
                       std::move(model),
                       {{"sigma", sigma}},
                       0.0,
                       sigma.dagger() * sigma};
}

EmitterPreset coherent_2ls(double drive, double gamma, double detuning) {
  require_positive(gamma, "gamma");
  const ComplexOperator sigma = two_level_lowering();
  const ComplexOperator n = sigma.dagger() * sigma;
  const ComplexOperator h = n * detuning + (sigma + sigma.dagger()) * drive;
  LindbladModel model(h, {Dissipator{gamma, sigma}});
  // Emitter at zero frequency, laser at -detuning.
  return EmitterPreset{"coherent-2ls",
                       {{"Omega", drive}, {"gamma", gamma}, {"detuning", detuning}},
                       std::move(model),
                       {{"sigma", sigma}},
                       -detuning,
                       n};
}

EmitterPreset biexciton(double omega, double chi, double drive, double gamma) {
  require_positive(gamma, "gamma");
  const HilbertSpace space({2, 2});
  const ComplexOperator up = embed(two_level_lowering(), space, 0);
  const ComplexOperator down = embed(two_level_lowering(), space, 1);
  const double r = 1.0 / std::sqrt(2.0);
  const ComplexOperator sigma_h = (up - down) * r;
  const ComplexOperator sigma_v = (up + down) * r;
  const ComplexOperator n_up = up.dagger() * up;
  const ComplexOperator n_down = down.dagger() * down;
  const ComplexOperator h = (n_up * n_down) * (-chi) + (sigma_v + sigma_v.dagger()) * drive;
  LindbladModel model(h, {Dissipator{gamma, up}, Dissipator{gamma, down}});
  return EmitterPreset{"biexciton",
                       {{"omega", omega}, {"chi", chi}, {"Omega", drive}, {"gamma", gamma}},
                       std::move(model),
                       {{"V", sigma_v}, {"H", sigma_h}},
                       omega,
                       n_up + n_down};
}

EmitterPreset polariton_blockade(const PolaritonParams& p, const TruncationOptions& truncation) {
  require_positive(p.gamma_a, "gamma_a");
  require_positive(p.gamma_b, "gamma_b");
  if (p.n_max < 3) throw ValidationError("polariton truncation n_max must be at least 3");
  const bool single_mode = p.g == 0.0;
  const auto build = [&](int n_max) {
    const int levels = n_max + 1;
    const HilbertSpace space(single_mode ? std::vector<int>{levels} : std::vector<int>{levels, levels},
                             truncation.max_dimension);
    const double detuning = p.omega - p.omega_laser;
    const ComplexOperator a = lowering_in(space, 0);
    const ComplexOperator ad = a.dagger();
    ComplexOperator h = (ad * a) * detuning + (ad * ad * a * a) * p.U + (a + ad) * p.drive;
    ComplexOperator number = ad * a;
    std::vector<Dissipator> diss{{p.gamma_a, a}};
    std::vector<EmissionChannel> channels{{"a", a}};
    if (!single_mode) {
      const ComplexOperator b = lowering_in(space, 1);
      const ComplexOperator bd = b.dagger();
      h = h + (bd * b) * detuning + (ad * b + bd * a) * p.g + (bd * bd * b * b) * p.U;
      number = number + bd * b;
      diss.push_back({p.gamma_b, b});
      channels.push_back({"b", b});
    }
    return EmitterPreset{single_mode ? "blockade-conventional" : "blockade-unconventional",
                         {{"omega", p.omega},
                          {"g", p.g},
                          {"U", p.U},
                          {"Omega_a", p.drive},
                          {"omega_L", p.omega_laser},
                          {"gamma_a", p.gamma_a},
                          {"gamma_b", p.gamma_b}},
                         LindbladModel(h, std::move(diss)),
                         std::move(channels),
                         p.omega_laser,
                         number};
  };
  return build_truncated(build, p.n_max, truncation);
}

EmitterPreset cascaded_2ls(double drive, double gamma_source, double gamma_target) {
  require_positive(gamma_source, "gamma_1");
  require_positive(gamma_target, "gamma_2");
  const HilbertSpace space({2, 2});
  const ComplexOperator s1 = embed(two_level_lowering(), space, 0);
  const ComplexOperator s2 = embed(two_level_lowering(), space, 1);
  const ComplexOperator h = (s1 + s1.dagger()) * drive;
  LindbladModel model(h, {Dissipator{gamma_source, s1}, Dissipator{gamma_target, s2}},
                      {CascadedCoupling{s1, s2, gamma_source, gamma_target}});
  return EmitterPreset{"cascade-2ls",
                       {{"Omega", drive}, {"gamma_1", gamma_source}, {"gamma_2", gamma_target}},
                       std::move(model),
                       {{"sigma2", s2}, {"sigma1", s1}},
                       0.0,
                       s1.dagger() * s1 + s2.dagger() * s2};
}

EmitterPreset twolevel_in_cavity(double coupling, double kappa, double gamma, double drive,
                                 int n_max, const TruncationOptions& truncation) {
  require_positive(kappa, "kappa");
  require_positive(gamma, "gamma");
  if (n_max < 2) throw ValidationError("cavity truncation n_max must be at least 2");
  const auto build = [&](int n) {
    const HilbertSpace space({2, n + 1}, truncation.max_dimension);
    const ComplexOperator sigma = embed(two_level_lowering(), space, 0);
    const ComplexOperator a = lowering_in(space, 1);
    const ComplexOperator h =
        (a.dagger() * sigma + sigma.dagger() * a) * coupling + (sigma + sigma.dagger()) * drive;
    return EmitterPreset{"2ls-cavity",
                         {{"g_c", coupling}, {"kappa", kappa}, {"gamma", gamma}, {"Omega", drive}},
                         LindbladModel(h, {Dissipator{kappa, a}, Dissipator{gamma, sigma}}),
                         {{"a", a}, {"sigma", sigma}},
                         0.0,
                         sigma.dagger() * sigma + a.dagger() * a};
  };
  return build_truncated(build, n_max, truncation);
}

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names{
      "incoherent-2ls",          "coherent-2ls", "biexciton",  "blockade-conventional",
      "blockade-unconventional", "cascade-2ls",  "2ls-cavity"};
  return names;
}

std::vector<std::string> preset_channels(const std::string& name) {
  if (name == "incoherent-2ls" || name == "coherent-2ls") return {"sigma"};
  if (name == "biexciton") return {"V", "H"};
  if (name == "blockade-conventional") return {"a"};
  if (name == "blockade-unconventional") return {"a", "b"};
  if (name == "cascade-2ls") return {"sigma2", "sigma1"};
  if (name == "2ls-cavity") return {"a", "sigma"};
  throw ValidationError("unknown preset '" + name + "'");
}

std::map<std::string, double> preset_defaults(const std::string& name) {
  // n_max = 0 selects default_n_max(target_order).
  if (name == "incoherent-2ls") return {{"P", 0.01}, {"gamma", 1.0}};
  if (name == "coherent-2ls") return {{"Omega", 0.01}, {"gamma", 1.0}, {"detuning", 0.0}};
  if (name == "biexciton") return {{"omega", 0.0}, {"chi", 40.0}, {"Omega", 10.0}, {"gamma", 1.0}};
  if (name == "blockade-conventional" || name == "blockade-unconventional") {
    return {{"omega", 0.275},
            {"g", name == "blockade-conventional" ? 0.0 : 3.0},
            {"U", 0.0425},
            {"Omega_a", 0.01},
            {"omega_L", 0.0},
            {"gamma_a", 1.0},
            {"gamma_b", 1.0},
            {"n_max", 0.0}};
  }
  if (name == "cascade-2ls") return {{"Omega", 0.01}, {"gamma_1", 1.0}, {"gamma_2", 1.0}};
  if (name == "2ls-cavity") {
    return {{"g_c", 1.0}, {"kappa", 100.0}, {"gamma", 1.0}, {"Omega", 0.01}, {"n_max", 0.0}};
  }
  throw ValidationError("unknown preset '" + name + "'");
}

EmitterPreset make_preset(const std::string& name, const std::map<std::string, double>& overrides,
                          const TruncationOptions& truncation) {
  std::map<std::string, double> p = preset_defaults(name);
  for (const auto& [key, value] : overrides) {
    if (!p.contains(key)) {
      throw ValidationError("preset '" + name + "' has no parameter '" + key + "'");
    }
    p[key] = value;
  }
  const auto n_max = [&]() {
    const int n = static_cast<int>(std::lround(p.at("n_max")));
    return n > 0 ? n : default_n_max(truncation.target_order);
  };

  if (name == "incoherent-2ls") return incoherent_2ls(p.at("P"), p.at("gamma"));
  if (name == "coherent-2ls") return coherent_2ls(p.at("Omega"), p.at("gamma"), p.at("detuning"));
  if (name == "biexciton") return biexciton(p.at("omega"), p.at("chi"), p.at("Omega"), p.at("gamma"));
  if (name == "cascade-2ls") return cascaded_2ls(p.at("Omega"), p.at("gamma_1"), p.at("gamma_2"));
  if (name == "2ls-cavity") {
    return twolevel_in_cavity(p.at("g_c"), p.at("kappa"), p.at("gamma"), p.at("Omega"), n_max(),
                              truncation);
  }
  PolaritonParams pp;
  pp.omega = p.at("omega");
  pp.g = p.at("g");
  pp.U = p.at("U");
  pp.drive = p.at("Omega_a");
  pp.omega_laser = p.at("omega_L");
  pp.gamma_a = p.at("gamma_a");
  pp.gamma_b = p.at("gamma_b");
  pp.n_max = n_max();
  EmitterPreset preset = polariton_blockade(pp, truncation);
  preset.name = name;
  return preset;
}

}  // namespace spsnorm
