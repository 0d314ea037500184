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
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace spsnorm {

/// Zero-delay correlators g^(2), g^(3), ... addressed by their correlation order.
class CorrelationVector {
 public:
  /// `components[0]` is g^(2).
  static CorrelationVector from_order_two(std::vector<double> components);

  double at(int order) const;
  int max_order() const { return static_cast<int>(components_.size()) + 1; }
  std::span<const double> components() const { return components_; }

  /// Filter provenance; unset for unfiltered correlators.
  std::optional<double> linewidth;
  std::optional<double> frequency;

 private:
  explicit CorrelationVector(std::vector<double> c) : components_(std::move(c)) {}
  std::vector<double> components_;
};

/// (sum_{k=2}^{N+1} (g^(k))^N)^(1/N).
double n_norm(const CorrelationVector& g, int n);

struct InfinityNorm {
  double value = 0.0;
  /// Order of the largest component; ties go to the lowest order.
  int order = 2;
};

InfinityNorm infinity_norm(const CorrelationVector& g);

struct NormReport {
  int n = 1;
  double value = 0.0;
  /// g^(2) .. g^(N+1).
  std::vector<double> components;
  std::string source_label;
  std::optional<double> linewidth;
  std::optional<double> frequency;
};

NormReport make_norm_report(const std::string& label, const CorrelationVector& g, int n);

/// One source's reports over a filter-linewidth grid.
struct NormCurve {
  std::string label;
  std::vector<NormReport> points;
};

struct BenchmarkComparison {
  std::vector<double> linewidths;
  /// Per grid point, labels ordered from smallest (best) to largest norm.
  std::vector<std::vector<std::string>> ranking;
  /// Per source, whether its norm lies strictly below the benchmark's at each grid point.
  std::map<std::string, std::vector<bool>> beats_benchmark;
};

/// Ranks sources against the benchmark curve. All curves must share N and the
/// linewidth grid; otherwise ValidationError.
BenchmarkComparison benchmark_compare(const std::vector<NormCurve>& curves,
                                      const std::string& benchmark_label);

}  // namespace spsnorm
