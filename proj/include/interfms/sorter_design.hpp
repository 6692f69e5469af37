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
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace interfms {

/// Default tolerance on the sorting-condition phase residuals [rad].
inline constexpr double kDefaultPhaseTol = 1e-9;

/// A mass species to be sorted.
struct Species {
  std::string name;
  double mass_kg = 0.0;
};

/// Multimode-interference coupler implementing the DFT on N ports.
struct MmiGeometry {
  double width_m = 0.0;
  double length_m = 0.0;
  std::size_t ports = 0;
  double wavelength_m = 0.0;  // design wavelength the length was computed for
};

/// An N-path sorter: species k exits port k.
///
/// delta_length_m[s] is L_s - L_0 (so entry 0 is exactly zero) and
/// windings[k][s] is the integer n_{k,s} in
///   delta_length_m[s] * m_k * v / h = k*s/N + n_{k,s}.
struct SorterDesign {
  double velocity_mps = 0.0;
  std::vector<Species> species;
  std::vector<double> delta_length_m;
  std::vector<std::vector<std::int64_t>> windings;
  std::optional<MmiGeometry> coupler;
  double phase_tol_rad = kDefaultPhaseTol;

  std::size_t size() const { return species.size(); }

  /// Throws DomainError describing the first violated structural invariant.
  void validate() const;
};

/// Two-arm Mach-Zehnder solution: m1 exits output 1, m2 exits output 2.
struct TwoSpeciesSolution {
  bool feasible = false;
  std::int64_t k1 = 0;
  std::int64_t k2 = 0;
  double delta_length_m = 0.0;
  double phase1_rad = 0.0;  // 2 pi k1 when feasible
  double phase2_rad = 0.0;  // (2 k2 + 1) pi when feasible
  /// |m1/m2 - 2k1/(2k2+1)| / (m1/m2) for the returned (k1, k2). When
  /// infeasible, (k1, k2) is the best approximation seen.
  double ratio_error = 0.0;
};

struct NPathOptions {
  std::int64_t max_winding = 1000;
  std::int64_t denom_bound = 10000;
  double ratio_rel_tol = 1e-9;
  double phase_tol_rad = kDefaultPhaseTol;
};

struct NPathResult {
  bool feasible = false;
  std::optional<SorterDesign> design;
  /// Per path s: min over scanned lengths of max_k |frac(dL_s m_k v / h - k s / N)|,
  /// in cycles (multiply by 2 pi for radians). Entry 0 is always 0.
  std::vector<double> min_residual_cycles;
  /// Integer mass lattice a_k with m_k / m_0 ~= a_k / a_0.
  std::vector<std::int64_t> mass_lattice;
};

/// r_{k,s} = wrap(2 pi dL_s m_k v / h - 2 pi k s / N) into (-pi, pi].
struct PhaseResiduals {
  std::vector<std::vector<double>> residual_rad;  // [k][s]
  double max_abs_rad = 0.0;
  bool valid = false;                 // max_abs_rad <= phase_tol
  bool windings_consistent = false;   // stored n_{k,s} match the lengths
};

struct Fraction {
  std::int64_t num = 0;
  std::int64_t den = 1;
};

/// lambda = h / (m v). Throws DomainError unless both are positive.
double de_broglie_wavelength(double mass_kg, double velocity_mps);

/// 2 pi dL m v / h, unreduced.
double phase_shift(double delta_length_m, double mass_kg, double velocity_mps);

/// Velocity at which dL equals `winding` de Broglie wavelengths.
double implied_velocity(double mass_kg, double delta_length_m, std::int64_t winding = 1);

/// Best continued-fraction convergent of x with den <= denom_bound, if it is
/// within rel_tol (relative). x must be positive.
std::optional<Fraction> rationalize(double x, std::int64_t denom_bound, double rel_tol);

/// Smallest k1 in [1, max_k], k2 in [0, max_k] with m1/m2 = 2k1/(2k2+1)
/// (common velocity). Never throws for infeasible ratios; see `feasible`.
TwoSpeciesSolution solve_two_species(double m1_kg, double m2_kg, double velocity_mps,
                                     std::int64_t max_k, double rel_tol = 1e-9);

/// Solves the perfect-sorting conditions for all paths at once, picking the
/// shortest feasible dL_s per path.
///
/// Throws DomainError for fewer than two species, non-positive or repeated
/// masses; NonCommensurableMasses when a mass ratio has no rational
/// approximation within the bounds.
NPathResult solve_n_path(std::span<const Species> species, double velocity_mps,
                         const NPathOptions& options = {});

PhaseResiduals verify_design(const SorterDesign& design);

/// True iff the phases 2 pi k s / N (s = 0..N-1) are pairwise distinct mod 2 pi.
bool distinct_phases_check(std::size_t n, std::size_t k);

/// D_N = 4 W^2 / (lambda N).
double mmi_length(double width_m, double wavelength_m, std::size_t ports);
MmiGeometry make_mmi(double width_m, double wavelength_m, std::size_t ports);

/// Path-length control needed for N species: min_k lambda_k / N.
double path_error_budget(std::span<const double> wavelengths_m, std::size_t n);

}  // namespace interfms
