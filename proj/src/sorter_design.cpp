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

#include "interfms/sorter_design.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "interfms/constants.hpp"
#include "interfms/errors.hpp"

namespace interfms {

namespace {

using Wide = __int128;

void require_positive(double value, const std::string& what) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw DomainError(what + " must be positive and finite");
  }
}

// Distance from x to the nearest integer, in [0, 0.5].
double cycle_distance(double x) { return std::abs(x - std::nearbyint(x)); }

// Largest residual over species for path s when dL = x reference wavelengths.
double max_species_residual(std::span<const double> ratios, std::size_t s, double x) {
  const std::size_t n = ratios.size();
  double worst = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double target = static_cast<double>((k * s) % n) / static_cast<double>(n);
    worst = std::max(worst, cycle_distance(x * ratios[k] - target));
  }
  return worst;
}

std::vector<double> residual_scan(std::span<const double> ratios, std::int64_t max_winding) {
  const std::size_t n = ratios.size();
  std::vector<double> best(n, 0.0);
  for (std::size_t s = 1; s < n; ++s) {
    best[s] = std::numeric_limits<double>::infinity();
    for (std::int64_t x = 1; x <= max_winding; ++x) {
      best[s] = std::min(best[s], max_species_residual(ratios, s, static_cast<double>(x)));
    }
  }
  return best;
}

}  // namespace

void SorterDesign::validate() const {
  const std::size_t n = size();
  if (n < 1) throw DomainError("design has no species");
  require_positive(velocity_mps, "velocity");
  for (const auto& sp : species) require_positive(sp.mass_kg, "mass");
  if (delta_length_m.size() != n) throw DomainError("design needs one path length per species");
  if (delta_length_m[0] != 0.0) throw DomainError("reference path length difference must be 0");
  for (double dl : delta_length_m) {
    if (!(dl >= 0.0) || !std::isfinite(dl)) throw DomainError("path length differences must be >= 0");
  }
  if (windings.size() != n) throw DomainError("winding matrix must be N x N");
  for (const auto& row : windings) {
    if (row.size() != n) throw DomainError("winding matrix must be N x N");
    if (row[0] != 0) throw DomainError("windings on the reference path must be 0");
  }
}

double de_broglie_wavelength(double mass_kg, double velocity_mps) {
  require_positive(mass_kg, "mass");
  require_positive(velocity_mps, "velocity");
  return kPlanck / (mass_kg * velocity_mps);
}

double phase_shift(double delta_length_m, double mass_kg, double velocity_mps) {
  return kTwoPi * delta_length_m / de_broglie_wavelength(mass_kg, velocity_mps);
}

double implied_velocity(double mass_kg, double delta_length_m, std::int64_t winding) {
  require_positive(mass_kg, "mass");
  require_positive(delta_length_m, "path length difference");
  if (winding <= 0) throw DomainError("winding must be positive");
  return static_cast<double>(winding) * kPlanck / (mass_kg * delta_length_m);
}

std::optional<Fraction> rationalize(double x, std::int64_t denom_bound, double rel_tol) {
  require_positive(x, "value to rationalize");
  if (denom_bound < 1) throw DomainError("denominator bound must be >= 1");

  // Convergents p_i/q_i of the continued fraction of x:
  // p_i = a_i p_{i-1} + p_{i-2}, q_i = a_i q_{i-1} + q_{i-2}.
  std::int64_t p1 = 1, p2 = 0;
  std::int64_t q1 = 0, q2 = 1;
  std::optional<Fraction> best;
  double rest = x;
  for (int iter = 0; iter < 64; ++iter) {
    const double a_real = std::floor(rest);
    if (a_real > 1e15) break;
    const auto a = static_cast<std::int64_t>(a_real);
    const Wide p = Wide(a) * p1 + p2;
    const Wide q = Wide(a) * q1 + q2;
    if (q > denom_bound || p > std::numeric_limits<std::int64_t>::max()) break;
    p2 = p1;
    q2 = q1;
    p1 = static_cast<std::int64_t>(p);
    q1 = static_cast<std::int64_t>(q);
    best = Fraction{p1, q1};
    const double frac = rest - a_real;
    if (frac < 1e-15) break;
    rest = 1.0 / frac;
  }
  if (!best || best->num == 0) return std::nullopt;
  const double approx = static_cast<double>(best->num) / static_cast<double>(best->den);
  if (std::abs(approx - x) > rel_tol * x) return std::nullopt;
  return best;
}

TwoSpeciesSolution solve_two_species(double m1_kg, double m2_kg, double velocity_mps,
                                     std::int64_t max_k, double rel_tol) {
  require_positive(m1_kg, "mass m1");
  require_positive(m2_kg, "mass m2");
  require_positive(velocity_mps, "velocity");
  if (m1_kg == m2_kg) throw DomainError("two-species sorting needs distinct masses");
  if (max_k < 1) throw DomainError("max_k must be >= 1");

  const double ratio = m1_kg / m2_kg;
  TwoSpeciesSolution out;
  out.ratio_error = std::numeric_limits<double>::infinity();
  for (std::int64_t k1 = 1; k1 <= max_k && !out.feasible; ++k1) {
    for (std::int64_t k2 = 0; k2 <= max_k; ++k2) {
      const double candidate = 2.0 * static_cast<double>(k1) / static_cast<double>(2 * k2 + 1);
      const double err = std::abs(candidate - ratio) / ratio;
      if (err < out.ratio_error) {
        out.ratio_error = err;
        out.k1 = k1;
        out.k2 = k2;
      }
      if (err <= rel_tol) {
        out.feasible = true;
        out.ratio_error = err;
        out.k1 = k1;
        out.k2 = k2;
        break;
      }
    }
  }
  out.delta_length_m = static_cast<double>(out.k1) * de_broglie_wavelength(m1_kg, velocity_mps);
  out.phase1_rad = phase_shift(out.delta_length_m, m1_kg, velocity_mps);
  out.phase2_rad = phase_shift(out.delta_length_m, m2_kg, velocity_mps);
  return out;
}

NPathResult solve_n_path(std::span<const Species> species, double velocity_mps,
                         const NPathOptions& options) {
  const std::size_t n = species.size();
  if (n < 2) throw DomainError("sorting needs at least two species");
  require_positive(velocity_mps, "velocity");
  if (options.max_winding < 1) throw DomainError("max_winding must be >= 1");
  for (const auto& sp : species) require_positive(sp.mass_kg, "mass of '" + sp.name + "'");
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (species[i].mass_kg == species[j].mass_kg) {
        throw DomainError("species '" + species[i].name + "' and '" + species[j].name +
                          "' have the same mass");
      }
    }
  }

  std::vector<double> ratios(n);
  for (std::size_t k = 0; k < n; ++k) ratios[k] = species[k].mass_kg / species[0].mass_kg;

  // Rationalize m_k/m_0 = p_k/q_k and put everything over a_0 = lcm(q_k).
  std::vector<Fraction> fractions(n, Fraction{1, 1});
  Wide common = 1;
  for (std::size_t k = 1; k < n; ++k) {
    auto f = rationalize(ratios[k], options.denom_bound, options.ratio_rel_tol);
    if (!f) {
      throw NonCommensurableMasses("mass ratio of '" + species[k].name + "' to '" + species[0].name +
                                       "' has no rational approximation with denominator <= " +
                                       std::to_string(options.denom_bound),
                                   residual_scan(ratios, options.max_winding));
    }
    fractions[k] = *f;
    common = common / std::gcd(static_cast<std::int64_t>(common), f->den) * f->den;
    if (common > (Wide(1) << 40)) {
      throw NonCommensurableMasses("common denominator of the mass ratios is too large",
                                   residual_scan(ratios, options.max_winding));
    }
  }
  const auto a0 = static_cast<std::int64_t>(common);
  NPathResult result;
  result.mass_lattice.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    result.mass_lattice[k] = fractions[k].num * (a0 / fractions[k].den);
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (result.mass_lattice[i] == result.mass_lattice[j]) {
        throw DomainError("species '" + species[i].name + "' and '" + species[j].name +
                          "' are indistinguishable at this rationalization tolerance");
      }
    }
  }

  const double lambda0 = de_broglie_wavelength(species[0].mass_kg, velocity_mps);
  const auto nn = static_cast<Wide>(n);
  const Wide modulus = nn * a0;

  SorterDesign design;
  design.velocity_mps = velocity_mps;
  design.species.assign(species.begin(), species.end());
  design.delta_length_m.assign(n, 0.0);
  design.windings.assign(n, std::vector<std::int64_t>(n, 0));
  design.phase_tol_rad = options.phase_tol_rad;

  result.min_residual_cycles.assign(n, 0.0);
  result.feasible = true;
  const double tol_cycles = options.phase_tol_rad / kTwoPi;

  for (std::size_t s = 1; s < n; ++s) {
    // The k = 0 row of the conditions reads x = n_{0,s}, so dL_s must be a
    // whole number x of reference wavelengths; only those are scanned.
    bool found = false;
    double best = std::numeric_limits<double>::infinity();
    for (std::int64_t x = 1; x <= options.max_winding && !found; ++x) {
      best = std::min(best, max_species_residual(ratios, s, static_cast<double>(x)));
      std::vector<std::int64_t> column(n, 0);
      bool exact = true;
      for (std::size_t k = 0; k < n && exact; ++k) {
        // x a_k / a_0 - k s / N = (N x a_k - k s a_0) / (N a_0) must be an integer.
        const Wide numer = nn * x * result.mass_lattice[k] - Wide(k * s) * a0;
        if (numer % modulus != 0) {
          exact = false;
          break;
        }
        const Wide winding = numer / modulus;
        if (winding > options.max_winding || winding < -options.max_winding) {
          exact = false;
          break;
        }
        column[k] = static_cast<std::int64_t>(winding);
      }
      if (!exact) continue;
      if (max_species_residual(ratios, s, static_cast<double>(x)) > tol_cycles) continue;
      design.delta_length_m[s] = static_cast<double>(x) * lambda0;
      for (std::size_t k = 0; k < n; ++k) design.windings[k][s] = column[k];
      found = true;
    }
    result.min_residual_cycles[s] = best;
    if (!found) result.feasible = false;
  }

  if (result.feasible) {
    for (std::size_t s = 1; s < n; ++s) {
      result.min_residual_cycles[s] =
          max_species_residual(ratios, s, design.delta_length_m[s] / lambda0);
    }
    result.design = std::move(design);
  }
  return result;
}

PhaseResiduals verify_design(const SorterDesign& design) {
  design.validate();
  const std::size_t n = design.size();
  PhaseResiduals out;
  out.residual_rad.assign(n, std::vector<double>(n, 0.0));
  out.windings_consistent = true;
  for (std::size_t k = 0; k < n; ++k) {
    const double inv_lambda = 1.0 / de_broglie_wavelength(design.species[k].mass_kg, design.velocity_mps);
    for (std::size_t s = 0; s < n; ++s) {
      const double cycles = design.delta_length_m[s] * inv_lambda;
      const double target = static_cast<double>((k * s) % n) / static_cast<double>(n);
      const double centred = (cycles - target) - std::nearbyint(cycles - target);
      double r = kTwoPi * centred;
      if (r <= -kPi) r += kTwoPi;
      out.residual_rad[k][s] = r;
      out.max_abs_rad = std::max(out.max_abs_rad, std::abs(r));

      const double unreduced = cycles - static_cast<double>(k * s) / static_cast<double>(n);
      if (std::nearbyint(unreduced) != static_cast<double>(design.windings[k][s])) {
        out.windings_consistent = false;
      }
    }
  }
  out.valid = out.max_abs_rad <= design.phase_tol_rad;
  return out;
}

bool distinct_phases_check(std::size_t n, std::size_t k) {
  if (n == 0 || k >= n) throw DomainError("distinct_phases_check needs 0 <= k < N");
  // Phase 2 pi k s / N is identified by the residue k s mod N.
  std::vector<bool> seen(n, false);
  for (std::size_t s = 0; s < n; ++s) {
    const std::size_t residue = (k * s) % n;
    if (seen[residue]) return false;
    seen[residue] = true;
  }
  return true;
}

double mmi_length(double width_m, double wavelength_m, std::size_t ports) {
  require_positive(width_m, "coupler width");
  require_positive(wavelength_m, "wavelength");
  if (ports == 0) throw DomainError("coupler needs at least one port");
  return 4.0 * width_m * width_m / (wavelength_m * static_cast<double>(ports));
}

MmiGeometry make_mmi(double width_m, double wavelength_m, std::size_t ports) {
  return MmiGeometry{width_m, mmi_length(width_m, wavelength_m, ports), ports, wavelength_m};
}

double path_error_budget(std::span<const double> wavelengths_m, std::size_t n) {
  if (wavelengths_m.empty()) throw DomainError("need at least one wavelength");
  if (n < 2) throw DomainError("sorting needs at least two species");
  for (double w : wavelengths_m) require_positive(w, "wavelength");
  return *std::min_element(wavelengths_m.begin(), wavelengths_m.end()) / static_cast<double>(n);
}

}  // namespace interfms
