// Copyright 2026 The Interf-MS Authors
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

namespace interfms {

/// Gate or qudit dimension is not usable (e.g. N = 0).
class InvalidDimension : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed user input (files, config documents, flag values).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Vector/matrix sizes disagree.
class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A physical argument is outside its domain (non-positive mass, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A matrix handed to GateMatrix is not unitary.
class NonUnitary : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Mass ratios have no rational approximation within the search bounds.
/// Carries the best per-path residual found by a floating-point scan so
/// callers can still report diagnostics.
class NonCommensurableMasses : public std::runtime_error {
 public:
  NonCommensurableMasses(const std::string& what, std::vector<double> residuals)
      : std::runtime_error(what), min_residuals_(std::move(residuals)) {}
  const std::vector<double>& min_residuals() const { return min_residuals_; }

 private:
  std::vector<double> min_residuals_;
};

/// Lorentz-force formulas are undefined for q = 0.
class NeutralSpecies : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The leakage matrix cannot be inverted reliably.
class Unidentifiable : public std::runtime_error {
 public:
  Unidentifiable(const std::string& what, double condition)
      : std::runtime_error(what), condition_(condition) {}
  double condition_number() const { return condition_; }

 private:
  double condition_;
};

}  // namespace interfms
