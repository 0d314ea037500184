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

#include <stdexcept>
#include <string>
#include <vector>

namespace spsnorm {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidDimensionError : public Error {
 public:
  using Error::Error;
};

/// Operands live on incompatible Hilbert spaces or have mismatched shapes.
class ShapeError : public Error {
 public:
  using Error::Error;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

/// The composite space would exceed the configured dimension cap.
class CapacityError : public Error {
 public:
  using Error::Error;
};

class DegenerateSteadyStateError : public Error {
 public:
  DegenerateSteadyStateError(const std::string& what, double residual)
      : Error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

/// A normalized correlator was requested for a mode with zero population.
class UndefinedCorrelationError : public Error {
 public:
  UndefinedCorrelationError(const std::string& what, double population)
      : Error(what), population_(population) {}
  double population() const { return population_; }

 private:
  double population_;
};

class TruncationError : public Error {
 public:
  TruncationError(const std::string& what, int suggested_n_max)
      : Error(what), suggested_n_max_(suggested_n_max) {}
  int suggested_n_max() const { return suggested_n_max_; }

 private:
  int suggested_n_max_;
};

/// The alternating correlator-to-probability series does not converge on the
/// supplied correlators. Carries the partial sums for diagnosis.
class NonConvergentSeriesError : public Error {
 public:
  NonConvergentSeriesError(const std::string& what, std::vector<double> partial_sums)
      : Error(what), partial_sums_(std::move(partial_sums)) {}
  const std::vector<double>& partial_sums() const { return partial_sums_; }

 private:
  std::vector<double> partial_sums_;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line) : Error(what), line_(line) {}
  /// 1-based line in the config text, 0 when unknown.
  int line() const { return line_; }

 private:
  int line_;
};

}  // namespace spsnorm
