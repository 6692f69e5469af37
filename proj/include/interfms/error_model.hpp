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

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "interfms/qudit_algebra.hpp"
#include "interfms/sorter_design.hpp"

namespace interfms {

/// Length errors dL_s of every path, s = 0..N-1 [m]. Only dL_s - dL_0 matters.
struct PathFluctuation {
  std::vector<double> delta_length_m;
};

/// The N-1 independent phase errors d_s = dphi_{0,s} (s = 1..N-1) of the
/// reference species plus the mass ratios m_k / m_0. The error seen by
/// species k on path s is (m_k / m_0) d_s, and path 0 carries none.
class PhaseErrorVector {
 public:
  /// base_errors_rad has N-1 entries, mass_ratios has N with mass_ratios[0] == 1.
  PhaseErrorVector(std::vector<double> base_errors_rad, std::vector<double> mass_ratios);
  static PhaseErrorVector zero(std::vector<double> mass_ratios);

  std::size_t size() const { return ratios_.size(); }
  /// d_s, with d_0 = 0.
  double base(std::size_t s) const { return s == 0 ? 0.0 : base_[s - 1]; }
  /// dphi_{k,s} = (m_k / m_0) d_s.
  double phase(std::size_t k, std::size_t s) const { return ratios_[k] * base(s); }
  std::span<const double> base_errors() const { return base_; }
  std::span<const double> mass_ratios() const { return ratios_; }

 private:
  std::vector<double> base_;
  std::vector<double> ratios_;
};

/// Row-stochastic N x N matrix, p(k, s) = probability that species k exits
/// path s.
class LeakageMatrix {
 public:
  /// Throws DomainError unless entries lie in [0, 1] and rows sum to 1
  /// (both within `tol`). Round-off excursions below 0 are clamped.
  static LeakageMatrix from_probabilities(Eigen::MatrixXd p, double tol = 1e-12);
  static LeakageMatrix identity(std::size_t n);

  std::size_t size() const { return static_cast<std::size_t>(p_.rows()); }
  double operator()(std::size_t k, std::size_t s) const {
    return p_(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(s));
  }
  const Eigen::MatrixXd& matrix() const { return p_; }
  /// max_k |sum_s p(k, s) - 1|
  double max_row_sum_error() const;

 private:
  explicit LeakageMatrix(Eigen::MatrixXd p) : p_(std::move(p)) {}
  Eigen::MatrixXd p_;
};

std::vector<double> mass_ratios(std::span<const Species> species);

/// d_s = 2 pi (dL_s - dL_0) m_0 v / h. Requires N >= 2 and one fluctuation
/// entry per species.
PhaseErrorVector phases_from_fluctuation(const PathFluctuation& fluctuation,
                                         std::span<const Species> species, double velocity_mps);

/// C(Z_N^err): |k, s> -> exp(i dphi_{k,s}) w^{ks} |k, s>.
GateMatrix controlled_z_err(const PhaseErrorVector& errors);

/// C(X_N^err) = (I (x) F^dagger) C(Z_N^err) (I (x) F), assembled as its mass
/// blocks E_k = F^dagger D_k F.
GateMatrix controlled_x_err(const PhaseErrorVector& errors);

/// p(k, s) = |<k, s| sorter |k, 0>|^2 for a two-qudit sorter unitary.
LeakageMatrix leakage_from_sorter(const GateMatrix& sorter);

LeakageMatrix simulate_leakage(const PhaseErrorVector& errors);

/// Diagonal phase gate of a concrete device: species k on path s picks up
/// 2 pi (dL_s + f_s - f_0) m_k v / h, with f the optional fluctuation.
GateMatrix device_phase_gate(const SorterDesign& design, const PathFluctuation* fluctuation = nullptr);

/// Leakage of a concrete device, (I (x) F^dagger) device_phase_gate (I (x) F).
LeakageMatrix device_leakage(const SorterDesign& design, const PathFluctuation* fluctuation = nullptr);

/// Closed-form amplitudes for three species.
struct AnalyticLeakageN3 {
  std::array<std::array<Complex, 3>, 3> amplitudes;  // c[k][s]
  LeakageMatrix probabilities;
};

/// Row 0 of the probabilities uses the cosine formulas for p_{0,s}; rows 1
/// and 2 are |c_{k,s}|^2.
AnalyticLeakageN3 analytic_leakage_n3(double delta1_rad, double delta2_rad, double ratio1,
                                      double ratio2);

/// Evenly spaced samples lo..hi inclusive. steps == 1 yields {lo}.
struct SweepRange {
  double lo = 0.0;
  double hi = 0.0;
  std::size_t steps = 1;

  std::vector<double> points() const;
};

struct SweepResult {
  std::vector<double> delta1_rad;
  std::vector<double> delta2_rad;
  /// Row-major over (delta1, delta2): index i * delta2.size() + j.
  std::vector<LeakageMatrix> leakage;

  double p00(std::size_t i, std::size_t j) const { return leakage[i * delta2_rad.size() + j](0, 0); }
  double min_p00() const;
};

/// Leakage over a delta1 x delta2 grid applied to paths 1 and 2; any further
/// paths are error free. Needs N = mass_ratios.size() >= 3.
SweepResult sweep_leakage(const SweepRange& delta1, const SweepRange& delta2,
                          std::span<const double> mass_ratios);

/// CSV with header delta1_rad,delta2_rad,p00 (plus p_k_s for every entry when
/// all_probabilities is set). Doubles are written in shortest round-trip form.
void write_sweep_csv(std::ostream& out, const SweepResult& sweep, bool all_probabilities = false);

struct MonteCarloSummary {
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  double sigma_length_m = 0.0;
  std::vector<double> mean_diagonal;  // mean of p(k, k) per species
  std::vector<double> std_diagonal;   // sample standard deviation (0 for one trial)
};

/// Draws dL_s ~ Normal(0, sigma) independently per path and trial, using
/// RandomStream::derive(seed, trial) for trial `trial`.
MonteCarloSummary monte_carlo_leakage(const SorterDesign& design, double sigma_length_m,
                                      std::size_t trials, std::uint64_t seed);

/// The fluctuation sampled for a single trial of monte_carlo_leakage.
PathFluctuation sample_fluctuation(std::size_t n, double sigma_length_m, std::uint64_t seed,
                                   std::uint64_t trial);

}  // namespace interfms
