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

#include "spsnorm/sensors.hpp"

#include <algorithm>
#include <cmath>
#include <bit>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <string>

#include <Eigen/UmfPackSupport>

#include "spsnorm/analytic.hpp"
#include "spsnorm/errors.hpp"

namespace spsnorm {
namespace {

constexpr int kMaxCouplingHalvings = 40;
constexpr int kMaxSweeps = 200;
constexpr double kSweepTolerance = 1e-13;

struct SensorSolve {
  std::vector<double> populations;  // per sensor
  std::vector<double> correlations;  // g estimate for orders 2..count
  double emitter_population = 0.0;
};

using CouplingSolver = std::function<SensorSolve(double)>;

double richardson(double coarse, double fine) { return (4.0 * fine - coarse) / 3.0; }

bool agrees(double coarse, double fine, double tolerance) {
  return std::abs(coarse - fine) / std::max(std::abs(fine), 1e-12) <= tolerance;
}

void require_populated(double emitter_population, std::string_view emission) {
  if (!(emitter_population > 1e-300)) {
    throw UndefinedCorrelationError("filtered correlation undefined: emitter channel '" +
                                        std::string(emission) + "' has zero population",
                                    emitter_population);
  }
}

SensorSolve composite_solve(const EmitterPreset& preset, std::string_view emission,
                            const SensorBank& bank, const SensorOptions& options) {
  const LindbladModel model = attach_sensors(preset, emission, bank, options.max_dimension);
  const DensityMatrix rho = steady_state(build_liouvillian(model), options.solver);
  const int emitter_factors = preset.model.space().subsystem_count();

  SensorSolve out;
  const ComplexOperator c = embed_leading(preset.emission(emission), model.space());
  out.emitter_population = expectation(rho, c.dagger() * c).real();
  require_populated(out.emitter_population, emission);
  for (int i = 0; i < bank.count; ++i) {
    const int one[] = {i};
    out.populations.push_back(sensor_moment(rho, emitter_factors, one));
    if (!(out.populations.back() > 1e-300)) {
      throw UndefinedCorrelationError("filtered correlation undefined: sensor population is zero",
                                      out.populations.back());
    }
  }
  std::vector<int> subset;
  double denominator = out.populations[0];
  subset.push_back(0);
  for (int j = 1; j < bank.count; ++j) {
    subset.push_back(j);
    denominator *= out.populations[static_cast<std::size_t>(j)];
    out.correlations.push_back(sensor_moment(rho, emitter_factors, subset) / denominator);
  }
  return out;
}

/// Sensor-augmented steady state in excitation blocks (see SensorSolver).
///
/// Class (p, q, r) stands for <A| rho |B> with |A - B| = p, |B - A| = q and
/// |A n B| = r; with m = k - p - q - r untouched sensors it obeys
///   0 = (L_E - i D (p - q) - G/2 (p + q + 2r)) X + G m X(p, q, r+1)
///       - i e [r c X(p, q+1, r-1) + p c X(p-1, q, r) + q c^ X(p, q-1, r+1) + m c^ X(p+1, q, r)]
///       + i e [p X(p-1, q, r+1) c + m X(p, q+1, r) c + r X(p+1, q, r-1) c^ + q X(p, q-1, r) c^]
/// where c^ = c^dag, D is the sensor detuning, G the linewidth, e the coupling.
class ExcitationBlockSolver {
 public:
  ExcitationBlockSolver(const EmitterPreset& preset, std::string_view emission, const SensorBank& bank,
                        const SensorOptions& options)
      : emission_(emission),
        k_(bank.count),
        linewidth_(bank.linewidth),
        detuning_(bank.frequency - preset.frame_frequency),
        d_(preset.model.space().dimension()),
        c_(preset.emission(emission).matrix()),
        cd_(c_.adjoint()),
        residual_tolerance_(options.solver.residual_tolerance) {
    const long long composite = static_cast<long long>(d_) << k_;
    if (k_ > 20 || composite > options.max_dimension) {
      throw CapacityError("attaching " + std::to_string(k_) + " sensors to a " + std::to_string(d_) +
                          "-dimensional emitter exceeds the dimension cap of " +
                          std::to_string(options.max_dimension));
    }
    const Superoperator generator = build_liouvillian(preset.model);
    liouvillian_ = generator.matrix();

    index_.assign(static_cast<std::size_t>((k_ + 1) * (k_ + 1) * (k_ + 1)), -1);
    for (int level = 0; level <= 2 * k_; ++level) {
      for (int r = 0; 2 * r <= level; ++r) {
        for (int p = level - 2 * r; p >= 0; --p) {
          const int q = level - 2 * r - p;
          if (p + q + r > k_) continue;
          index_[flat(p, q, r)] = static_cast<int>(classes_.size());
          classes_.push_back({p, q, r});
        }
      }
    }
    for (const auto& cls : classes_) {
      if (cls.p < cls.q) continue;  // conjugate of (q, p, r)
      factor_for(cls);
    }
  }

  SensorSolve solve(double epsilon) const {
    const Complex ie(0.0, epsilon);
    std::vector<DenseMatrix> x(classes_.size(), DenseMatrix::Zero(d_, d_));
    bool converged = false;
    for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
      double change = 0.0;
      for (std::size_t i = 0; i < classes_.size(); ++i) {
        const Class& cls = classes_[i];
        if (cls.p < cls.q) {
          x[i] = x[at(cls.q, cls.p, cls.r)].adjoint();
          continue;
        }
        const DenseMatrix source = coupling_terms(x, cls, ie);
        Eigen::VectorXcd rhs = -Eigen::Map<const Eigen::VectorXcd>(source.data(), source.size());
        const Factor& f = *factors_.at(shift_key(cls));
        if (cls.p == 0 && cls.q == 0 && cls.r == 0) {
          Complex excited = 0.0;
          for (int r = 1; r <= k_; ++r) excited += binomial(k_, r) * x[at(0, 0, r)].trace();
          rhs[0] = 1.0 - excited;
        }
        Eigen::VectorXcd sol = f.lu.solve(rhs);
        if (f.lu.info() != Eigen::Success || !sol.allFinite()) {
          throw DegenerateSteadyStateError("sensor block system is singular",
                                           std::numeric_limits<double>::infinity());
        }
        DenseMatrix updated = Eigen::Map<DenseMatrix>(sol.data(), d_, d_);
        const double scale = updated.cwiseAbs().maxCoeff();
        if (scale > 0.0) change = std::max(change, (updated - x[i]).cwiseAbs().maxCoeff() / scale);
        x[i] = std::move(updated);
      }
      converged = change <= kSweepTolerance;
    }
    if (!converged) {
      throw DegenerateSteadyStateError("sensor block iteration did not converge",
                                       std::numeric_limits<double>::infinity());
    }
    check_residual(x, ie);
    return observables(x);
  }

 private:
  struct Class {
    int p, q, r;
  };
  struct Factor {
    SparseMatrix matrix;
    Eigen::UmfPackLU<SparseMatrix> lu;
  };

  std::size_t flat(int p, int q, int r) const {
    return static_cast<std::size_t>((p * (k_ + 1) + q) * (k_ + 1) + r);
  }
  std::size_t at(int p, int q, int r) const { return static_cast<std::size_t>(index_[flat(p, q, r)]); }
  static std::pair<int, int> shift_key(const Class& c) { return {c.p - c.q, c.p + c.q + 2 * c.r}; }

  static double binomial(int n, int r) {
    double b = 1.0;
    for (int i = 1; i <= r; ++i) b = b * (n - r + i) / i;
    return b;
  }

  Complex shift(const Class& c) const {
    return Complex(-0.5 * linewidth_ * (c.p + c.q + 2 * c.r), -detuning_ * (c.p - c.q));
  }

  void factor_for(const Class& cls) {
    const auto key = shift_key(cls);
    if (factors_.contains(key)) return;
    auto f = std::make_unique<Factor>();
    const Eigen::Index n = liouvillian_.rows();
    if (key == std::pair<int, int>{0, 0}) {
      // Row 0 carries the trace constraint, as in steady_state.
      std::vector<Eigen::Triplet<Complex>> t;
      for (int col = 0; col < liouvillian_.outerSize(); ++col) {
        for (SparseMatrix::InnerIterator it(liouvillian_, col); it; ++it) {
          if (it.row() != 0) t.emplace_back(it.row(), col, it.value());
        }
      }
      for (int i = 0; i < d_; ++i) t.emplace_back(0, i + static_cast<Eigen::Index>(i) * d_, 1.0);
      f->matrix.resize(n, n);
      f->matrix.setFromTriplets(t.begin(), t.end());
    } else {
      SparseMatrix id(n, n);
      id.setIdentity();
      f->matrix = liouvillian_ + shift(cls) * id;
    }
    f->matrix.makeCompressed();
    f->lu.compute(f->matrix);
    if (f->lu.info() != Eigen::Success) {
      throw DegenerateSteadyStateError("sensor block system is singular",
                                       std::numeric_limits<double>::infinity());
    }
    factors_.emplace(key, std::move(f));
  }

  /// Everything in the class equation except the diagonal (L_E + shift) X.
  DenseMatrix coupling_terms(const std::vector<DenseMatrix>& x, const Class& c, Complex ie) const {
    const int p = c.p, q = c.q, r = c.r, m = k_ - p - q - r;
    DenseMatrix s = DenseMatrix::Zero(d_, d_);
    if (m > 0) {
      s += (linewidth_ * m) * x[at(p, q, r + 1)];
      s -= (ie * double(m)) * (cd_ * x[at(p + 1, q, r)]);
      s += (ie * double(m)) * (x[at(p, q + 1, r)] * c_);
    }
    if (r > 0) {
      s -= (ie * double(r)) * (c_ * x[at(p, q + 1, r - 1)]);
      s += (ie * double(r)) * (x[at(p + 1, q, r - 1)] * cd_);
    }
    if (p > 0) {
      s -= (ie * double(p)) * (c_ * x[at(p - 1, q, r)]);
      s += (ie * double(p)) * (x[at(p - 1, q, r + 1)] * c_);
    }
    if (q > 0) {
      s -= (ie * double(q)) * (cd_ * x[at(p, q - 1, r + 1)]);
      s += (ie * double(q)) * (x[at(p, q - 1, r)] * cd_);
    }
    return s;
  }

  void check_residual(const std::vector<DenseMatrix>& x, Complex ie) const {
    double residual = 0.0;
    for (std::size_t i = 0; i < classes_.size(); ++i) {
      const Class& cls = classes_[i];
      const Eigen::VectorXcd v = Eigen::Map<const Eigen::VectorXcd>(x[i].data(), x[i].size());
      Eigen::VectorXcd lhs = liouvillian_ * v + shift(cls) * v;
      const DenseMatrix s = coupling_terms(x, cls, ie);
      lhs += Eigen::Map<const Eigen::VectorXcd>(s.data(), s.size());
      residual = std::max(residual, lhs.cwiseAbs().maxCoeff());
    }
    if (!(residual <= residual_tolerance_)) {
      throw DegenerateSteadyStateError(
          "sensor steady-state residual " + std::to_string(residual) + " exceeds tolerance", residual);
    }
  }

  SensorSolve observables(const std::vector<DenseMatrix>& x) const {
    // <n_1 ... n_j> sums the diagonal blocks whose excited set contains sensors 1..j.
    const auto moment = [&](int j) {
      double sum = 0.0;
      for (int r = j; r <= k_; ++r) sum += binomial(k_ - j, r - j) * x[at(0, 0, r)].trace().real();
      return sum;
    };
    SensorSolve out;
    for (int r = 0; r <= k_; ++r) {
      out.emitter_population += binomial(k_, r) * (cd_ * c_ * x[at(0, 0, r)]).trace().real();
    }
    require_populated(out.emitter_population, emission_);
    const double population = moment(1);
    if (!(population > 1e-300)) {
      throw UndefinedCorrelationError("filtered correlation undefined: sensor population is zero",
                                      population);
    }
    out.populations.assign(static_cast<std::size_t>(k_), population);
    for (int j = 2; j <= k_; ++j) out.correlations.push_back(moment(j) / std::pow(population, j));
    return out;
  }

  std::string emission_;
  int k_;
  double linewidth_;
  double detuning_;
  int d_;
  SparseMatrix c_;
  SparseMatrix cd_;
  double residual_tolerance_;
  SparseMatrix liouvillian_;
  std::vector<Class> classes_;
  std::vector<int> index_;
  std::map<std::pair<int, int>, std::unique_ptr<Factor>> factors_;
};

/// Fixes everything but the coupling: the returned solver maps epsilon to sensor observables.
CouplingSolver make_solver(const EmitterPreset& preset, std::string_view emission, SensorBank bank,
                           const SensorOptions& options) {
  if (options.method == SensorSolver::kComposite) {
    return [&preset, emission, bank, options](double epsilon) mutable {
      bank.coupling = epsilon;
      return composite_solve(preset, emission, bank, options);
    };
  }
  auto blocks = std::make_shared<const ExcitationBlockSolver>(preset, emission, bank, options);
  return [blocks](double epsilon) { return blocks->solve(epsilon); };
}

struct CouplingPair {
  SensorSolve coarse;
  SensorSolve fine;
  double epsilon = 0.0;
};

/// Solves at the largest coupling (starting from options.epsilon) that
/// respects the back-action bound, then at half of it.
CouplingPair solve_coupling_pair(const CouplingSolver& solve, const SensorOptions& options) {
  if (!(options.epsilon > 0.0)) throw ValidationError("sensor coupling must be positive");
  double epsilon = options.epsilon;
  SensorSolve coarse = solve(epsilon);
  for (int halving = 0;; ++halving) {
    const double worst = *std::max_element(coarse.populations.begin(), coarse.populations.end());
    if (worst <= options.backaction_ratio * coarse.emitter_population) break;
    if (halving == kMaxCouplingHalvings) {
      throw ValidationError("sensor back-action bound unreachable by halving the coupling");
    }
    epsilon *= 0.5;
    coarse = solve(epsilon);
  }
  SensorSolve fine = solve(0.5 * epsilon);
  return {std::move(coarse), std::move(fine), epsilon};
}

void validate_filter(double linewidth) {
  if (!(linewidth > 0.0) || !std::isfinite(linewidth)) {
    throw ValidationError("filter linewidth must be positive and finite");
  }
}

}  // namespace

LindbladModel attach_sensors(const EmitterPreset& preset, std::string_view emission,
                             const SensorBank& bank, int max_dimension) {
  if (bank.count < 1) throw ValidationError("sensor bank needs at least one sensor");
  validate_filter(bank.linewidth);
  if (!(bank.coupling > 0.0)) throw ValidationError("sensor coupling must be positive");

  const LindbladModel& base = preset.model;
  const std::vector<int> sensor_dims(static_cast<std::size_t>(bank.count), 2);
  HilbertSpace space = [&] {
    try {
      return base.space().extended(sensor_dims, max_dimension);
    } catch (const CapacityError&) {
      throw CapacityError("attaching " + std::to_string(bank.count) + " sensors to a " +
                          std::to_string(base.space().dimension()) +
                          "-dimensional emitter exceeds the dimension cap of " +
                          std::to_string(max_dimension));
    }
  }();

  const ComplexOperator c = embed_leading(preset.emission(emission), space);
  const ComplexOperator cd = c.dagger();
  ComplexOperator h = embed_leading(base.hamiltonian(), space);
  std::vector<Dissipator> dissipators;
  for (const auto& d : base.dissipators()) {
    dissipators.push_back({d.rate, embed_leading(d.collapse, space)});
  }
  std::vector<CascadedCoupling> cascades;
  for (const auto& cc : base.cascades()) {
    cascades.push_back({embed_leading(cc.source, space), embed_leading(cc.target, space),
                        cc.source_rate, cc.target_rate});
  }
  const int first_sensor = base.space().subsystem_count();
  const double detuning = bank.frequency - preset.frame_frequency;
  for (int i = 0; i < bank.count; ++i) {
    const ComplexOperator s = embed(two_level_lowering(), space, first_sensor + i);
    const ComplexOperator sd = s.dagger();
    h = h + (sd * s) * detuning + (sd * c + cd * s) * bank.coupling;
    dissipators.push_back({bank.linewidth, s});
  }

  // Each excited sensor carries an amplitude of order 2 epsilon / Gamma.
  const double sensor_weight = std::min(1.0, 2.0 * bank.coupling / bank.linewidth);
  const int emitter_dim = base.space().dimension();
  const int sensor_states = space.dimension() / emitter_dim;
  std::vector<double> scale(static_cast<std::size_t>(space.dimension()));
  for (int e = 0; e < emitter_dim; ++e) {
    const double we = base.basis_scale().empty() ? 1.0 : base.basis_scale()[static_cast<std::size_t>(e)];
    for (int bits = 0; bits < sensor_states; ++bits) {
      scale[static_cast<std::size_t>(e * sensor_states + bits)] =
          we * std::pow(sensor_weight, std::popcount(static_cast<unsigned>(bits)));
    }
  }
  return LindbladModel(h, std::move(dissipators), std::move(cascades)).with_basis_scale(std::move(scale));
}

double sensor_moment(const DensityMatrix& rho, int emitter_factors, std::span<const int> sensors) {
  const HilbertSpace& space = rho.space();
  const int count = space.subsystem_count() - emitter_factors;
  if (count < 1) throw ShapeError("state carries no sensors");
  unsigned mask = 0;
  for (int s : sensors) {
    if (s < 0 || s >= count) throw ShapeError("sensor index out of range");
    if (space.subsystem_dim(emitter_factors + s) != 2) throw ShapeError("sensor factor is not two-level");
    mask |= 1u << (count - 1 - s);
  }
  const int sensor_states = 1 << count;
  double sum = 0.0;
  for (int i = 0; i < rho.dimension(); ++i) {
    if ((static_cast<unsigned>(i % sensor_states) & mask) == mask) sum += rho.matrix()(i, i).real();
  }
  return sum;
}

std::vector<FilteredCorrelation> filtered_ladder(const EmitterPreset& preset,
                                                 std::string_view emission, int max_order,
                                                 double linewidth, double frequency,
                                                 const SensorOptions& options) {
  if (max_order < 2) throw ValidationError("filtered correlation order must be at least 2");
  validate_filter(linewidth);
  preset.emission(emission);
  const CouplingPair pair = solve_coupling_pair(
      make_solver(preset, emission, SensorBank{max_order, frequency, linewidth, options.epsilon}, options),
      options);

  std::vector<FilteredCorrelation> out;
  for (int k = 2; k <= max_order; ++k) {
    FilteredCorrelation fc;
    fc.order = k;
    fc.linewidth = linewidth;
    fc.frequency = frequency;
    fc.epsilon = pair.epsilon;
    fc.estimate = pair.coarse.correlations[static_cast<std::size_t>(k - 2)];
    fc.estimate_half = pair.fine.correlations[static_cast<std::size_t>(k - 2)];
    fc.extrapolated = richardson(fc.estimate, fc.estimate_half);
    fc.value = fc.extrapolated;
    fc.converged = agrees(fc.estimate, fc.estimate_half, options.convergence_tolerance);
    out.push_back(fc);
  }
  return out;
}

FilteredCorrelation filtered_gk(const EmitterPreset& preset, std::string_view emission, int k,
                                double linewidth, double frequency, const SensorOptions& options) {
  if (k < 2) throw ValidationError("filtered correlation order must be at least 2");
  return filtered_ladder(preset, emission, k, linewidth, frequency, options).back();
}

FilteredPopulation filtered_population(const EmitterPreset& preset, std::string_view emission,
                                       double linewidth, double frequency,
                                       const SensorOptions& options) {
  validate_filter(linewidth);
  const EmitterPreset reference = incoherent_2ls(1.0, 1.0);
  const double reference_closed =
      filtered_population_closed(Analytic2lsParams{1.0, 1.0, linewidth});

  preset.emission(emission);
  const CouplingPair pair = solve_coupling_pair(
      make_solver(preset, emission, SensorBank{1, frequency, linewidth, options.epsilon}, options),
      options);
  const CouplingSolver reference_solver = make_solver(
      reference, reference.default_emission(),
      SensorBank{1, reference.frame_frequency, linewidth, options.epsilon}, options);
  const auto reference_population = [&](double coupling) {
    return reference_solver(coupling).populations[0];
  };
  FilteredPopulation out;
  out.epsilon = pair.epsilon;
  out.estimate = pair.coarse.populations[0] * reference_closed / reference_population(pair.epsilon);
  out.estimate_half =
      pair.fine.populations[0] * reference_closed / reference_population(0.5 * pair.epsilon);
  out.value = richardson(out.estimate, out.estimate_half);
  out.converged = agrees(out.estimate, out.estimate_half, options.convergence_tolerance);
  return out;
}

std::vector<FilteredCorrelation> frequency_scan(const EmitterPreset& preset,
                                                std::string_view emission, int k, double linewidth,
                                                std::span<const double> frequencies,
                                                const SensorOptions& options) {
  if (frequencies.empty()) throw ValidationError("frequency grid is empty");
  std::vector<FilteredCorrelation> out;
  out.reserve(frequencies.size());
  for (double w : frequencies) out.push_back(filtered_gk(preset, emission, k, linewidth, w, options));
  return out;
}

}  // namespace spsnorm
