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

#include "spsnorm/criterion.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "spsnorm/errors.hpp"

namespace spsnorm {

CorrelationVector CorrelationVector::from_order_two(std::vector<double> components) {
  for (std::size_t i = 0; i < components.size(); ++i) {
    if (!(components[i] >= 0.0)) {
      throw ValidationError("g^(" + std::to_string(i + 2) + ") must be nonnegative");
    }
  }
  return CorrelationVector(std::move(components));
}

double CorrelationVector::at(int order) const {
  if (order < 2 || order > max_order()) {
    throw ValidationError("correlation vector holds no g^(" + std::to_string(order) + ")");
  }
  return components_[static_cast<std::size_t>(order - 2)];
}

double n_norm(const CorrelationVector& g, int n) {
  if (n < 1) throw ValidationError("norm index must be at least 1");
  if (g.max_order() < n + 1) {
    throw ValidationError(std::to_string(n) + "-norm needs g^(" + std::to_string(n + 1) +
                          "), which is missing");
  }
  // Scale by the largest component so that large orders cannot overflow.
  double largest = 0.0;
  for (int k = 2; k <= n + 1; ++k) largest = std::max(largest, g.at(k));
  if (largest == 0.0) return 0.0;
  double sum = 0.0;
  for (int k = 2; k <= n + 1; ++k) sum += std::pow(g.at(k) / largest, n);
  return largest * std::pow(sum, 1.0 / n);
}

InfinityNorm infinity_norm(const CorrelationVector& g) {
  if (g.max_order() < 2) throw ValidationError("infinity norm of an empty correlation vector");
  InfinityNorm best{g.at(2), 2};
  for (int k = 3; k <= g.max_order(); ++k) {
    if (g.at(k) > best.value) best = {g.at(k), k};
  }
  return best;
}

NormReport make_norm_report(const std::string& label, const CorrelationVector& g, int n) {
  NormReport r;
  r.n = n;
  r.value = n_norm(g, n);
  for (int k = 2; k <= n + 1; ++k) r.components.push_back(g.at(k));
  r.source_label = label;
  r.linewidth = g.linewidth;
  r.frequency = g.frequency;
  return r;
}

BenchmarkComparison benchmark_compare(const std::vector<NormCurve>& curves,
                                      const std::string& benchmark_label) {
  if (curves.empty()) throw ValidationError("no curves to compare");
  const auto bench = std::find_if(curves.begin(), curves.end(),
                                  [&](const NormCurve& c) { return c.label == benchmark_label; });
  if (bench == curves.end()) {
    throw ValidationError("benchmark curve '" + benchmark_label + "' is missing");
  }
  const std::size_t points = bench->points.size();
  if (points == 0) throw ValidationError("benchmark curve is empty");

  BenchmarkComparison out;
  for (const auto& p : bench->points) out.linewidths.push_back(p.linewidth.value_or(0.0));
  for (const auto& curve : curves) {
    if (curve.points.size() != points) {
      throw ValidationError("curve '" + curve.label + "' is on a different grid");
    }
    for (std::size_t i = 0; i < points; ++i) {
      const NormReport& p = curve.points[i];
      const NormReport& b = bench->points[i];
      if (p.n != b.n) throw ValidationError("curve '" + curve.label + "' uses a different N");
      if (p.linewidth.has_value() != b.linewidth.has_value() ||
          (p.linewidth && std::abs(*p.linewidth - *b.linewidth) > 1e-12 * std::abs(*b.linewidth))) {
        throw ValidationError("curve '" + curve.label + "' is on a different grid");
      }
    }
  }

  out.ranking.resize(points);
  for (std::size_t i = 0; i < points; ++i) {
    std::vector<std::size_t> order(curves.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return curves[a].points[i].value < curves[b].points[i].value;
    });
    for (std::size_t idx : order) out.ranking[i].push_back(curves[idx].label);
  }
  for (const auto& curve : curves) {
    auto& flags = out.beats_benchmark[curve.label];
    for (std::size_t i = 0; i < points; ++i) {
      flags.push_back(curve.points[i].value < bench->points[i].value);
    }
  }
  return out;
}

}  // namespace spsnorm
