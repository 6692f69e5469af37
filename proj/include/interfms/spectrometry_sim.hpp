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

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "interfms/error_model.hpp"

namespace interfms {

/// Relative abundances of the N species: non-negative, summing to 1.
class AbundanceVector {
 public:
  /// Throws DomainError if an entry is negative or the sum is off by more
  /// than `tol`.
  explicit AbundanceVector(std::vector<double> values, double tol = 1e-12);

  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t k) const { return values_[k]; }
  std::span<const double> values() const { return values_; }

 private:
  std::vector<double> values_;
};

/// Particle counts per detector channel.
struct CountRecord {
  std::uint64_t total_particles = 0;
  std::vector<std::uint64_t> counts;
  std::uint64_t seed = 0;
};

/// Particles per independently seeded batch in simulate_counts.
inline constexpr std::uint64_t kCountBatchSize = 1 << 16;

/// Each particle draws its species from the abundances, then its exit
/// channel from that species' leakage row. Batch b of kCountBatchSize
/// particles uses RandomStream::derive(seed, b).
CountRecord simulate_counts(const AbundanceVector& abundances, const LeakageMatrix& leakage,
                            std::uint64_t total, std::uint64_t seed);

struct SpectrumEstimate {
  std::vector<double> abundances;
  std::vector<double> uncertainty;      // one standard deviation per entry
  std::vector<double> observed_fractions;
  double condition_number = 0.0;
  bool constrained = false;             // the non-negativity bound was active
};

/// Condition number above which a leakage matrix is treated as singular.
inline constexpr double kMaxLeakageCondition = 1e8;

/// Unfolds the leakage: minimises |P^T a - f|^2 over a >= 0, sum(a) = 1,
/// where f are the observed channel fractions. Uncertainties propagate the
/// multinomial covariance of f through P^{-T}.
///
/// Throws DimensionMismatch on size mismatch, DomainError on an empty record,
/// Unidentifiable when cond(P) > kMaxLeakageCondition.
SpectrumEstimate reconstruct_spectrum(const CountRecord& counts, const LeakageMatrix& leakage);

/// Cyclotron radius R = m v / (q B). Throws NeutralSpecies for q = 0.
double ams_radius(double mass_kg, double velocity_mps, double charge_c, double field_t);

/// Delta R = (v / B)(m2/q2 - m1/q1); the spatial separation of the two beams
/// is twice this.
double ams_separation(double m1_kg, double q1_c, double m2_kg, double q2_c, double velocity_mps,
                      double field_t);

}  // namespace interfms
