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

#include "interfms/error_model.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <ostream>
#include <string>

#include "interfms/constants.hpp"
#include "interfms/errors.hpp"
#include "interfms/random.hpp"

namespace interfms {

namespace {

Complex omega_power(std::size_t n, std::size_t exponent) {
  return std::polar(1.0, kTwoPi * static_cast<double>(exponent % n) / static_cast<double>(n));
}

// exp(2 pi i * cycles), reducing to the nearest whole cycle first.
Complex cycles_to_phase(double cycles) {
  return std::polar(1.0, kTwoPi * (cycles - std::nearbyint(cycles)));
}

std::string format_double(double x) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  (void)ec;
  return std::string(buf, end);
}

// F^dagger D F for a diagonal D.
Matrix conjugate_by_dft(const Matrix& f, const Eigen::VectorXcd& diag) {
  return f.adjoint() * diag.asDiagonal() * f;
}

}  // namespace

PhaseErrorVector::PhaseErrorVector(std::vector<double> base_errors_rad,
                                   std::vector<double> mass_ratios)
    : base_(std::move(base_errors_rad)), ratios_(std::move(mass_ratios)) {
  if (ratios_.empty()) throw InvalidDimension("phase error vector needs at least one species");
  if (base_.size() + 1 != ratios_.size()) {
    throw DimensionMismatch("expected " + std::to_string(ratios_.size() - 1) +
                            " base phase errors, got " + std::to_string(base_.size()));
  }
  if (ratios_[0] != 1.0) throw DomainError("mass ratio of the reference species must be 1");
  for (double r : ratios_) {
    if (!(r > 0.0) || !std::isfinite(r)) throw DomainError("mass ratios must be positive");
  }
  for (double e : base_) {
    if (!std::isfinite(e)) throw DomainError("phase errors must be finite");
  }
}

PhaseErrorVector PhaseErrorVector::zero(std::vector<double> mass_ratios) {
  const std::size_t n = mass_ratios.size();
  return PhaseErrorVector(std::vector<double>(n == 0 ? 0 : n - 1, 0.0), std::move(mass_ratios));
}

LeakageMatrix LeakageMatrix::from_probabilities(Eigen::MatrixXd p, double tol) {
  if (p.rows() != p.cols() || p.rows() == 0) {
    throw DimensionMismatch("leakage matrix must be square and non-empty");
  }
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    double& v = p.data()[i];
    if (!(v >= -tol && v <= 1.0 + tol)) throw DomainError("leakage probabilities must lie in [0, 1]");
    v = std::clamp(v, 0.0, 1.0);
  }
  LeakageMatrix out(std::move(p));
  if (out.max_row_sum_error() > tol) throw DomainError("leakage matrix rows must sum to 1");
  return out;
}

LeakageMatrix LeakageMatrix::identity(std::size_t n) {
  if (n == 0) throw InvalidDimension("leakage matrix needs at least one species");
  const auto d = static_cast<Eigen::Index>(n);
  return LeakageMatrix(Eigen::MatrixXd::Identity(d, d));
}

double LeakageMatrix::max_row_sum_error() const {
  return (p_.rowwise().sum().array() - 1.0).abs().maxCoeff();
}

std::vector<double> mass_ratios(std::span<const Species> species) {
  if (species.empty()) throw InvalidDimension("need at least one species");
  std::vector<double> out;
  out.reserve(species.size());
  for (const auto& sp : species) {
    if (!(sp.mass_kg > 0.0)) throw DomainError("mass of '" + sp.name + "' must be positive");
    out.push_back(sp.mass_kg / species[0].mass_kg);
  }
  out[0] = 1.0;
  return out;
}

PhaseErrorVector phases_from_fluctuation(const PathFluctuation& fluctuation,
                                         std::span<const Species> species, double velocity_mps) {
  const std::size_t n = species.size();
  if (n < 2) throw DomainError("phase errors need at least two species");
  if (fluctuation.delta_length_m.size() != n) {
    throw DimensionMismatch("fluctuation needs one entry per path");
  }
  const double lambda0 = de_broglie_wavelength(species[0].mass_kg, velocity_mps);
  std::vector<double> base(n - 1);
  for (std::size_t s = 1; s < n; ++s) {
    const double relative = fluctuation.delta_length_m[s] - fluctuation.delta_length_m[0];
    base[s - 1] = kTwoPi * relative / lambda0;
  }
  return PhaseErrorVector(std::move(base), mass_ratios(species));
}

GateMatrix controlled_z_err(const PhaseErrorVector& errors) {
  const std::size_t n = errors.size();
  std::vector<double> phases(n * n);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t s = 0; s < n; ++s) {
      phases[BasisIndex{k, s}.flat(n)] =
          kTwoPi * static_cast<double>((k * s) % n) / static_cast<double>(n) + errors.phase(k, s);
    }
  }
  return GateMatrix::diagonal_phases(phases);
}

GateMatrix controlled_x_err(const PhaseErrorVector& errors) {
  const std::size_t n = errors.size();
  const Matrix f = dft_matrix(n).matrix();
  std::vector<Matrix> blocks;
  blocks.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    Eigen::VectorXcd d(static_cast<Eigen::Index>(n));
    for (std::size_t s = 0; s < n; ++s) {
      d(static_cast<Eigen::Index>(s)) = omega_power(n, k * s) * std::polar(1.0, errors.phase(k, s));
    }
    blocks.push_back(conjugate_by_dft(f, d));
  }
  return GateMatrix::block_diagonal(blocks);
}

LeakageMatrix leakage_from_sorter(const GateMatrix& sorter) {
  const std::size_t dim = sorter.dim();
  const auto n = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(dim))));
  if (n * n != dim) throw InvalidDimension("sorter must act on an N^2-dimensional space");
  const auto d = static_cast<Eigen::Index>(n);
  Eigen::MatrixXd p(d, d);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t input = BasisIndex{k, 0}.flat(n);
    for (std::size_t s = 0; s < n; ++s) {
      p(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(s)) =
          std::norm(sorter(BasisIndex{k, s}.flat(n), input));
    }
  }
  return LeakageMatrix::from_probabilities(std::move(p));
}

LeakageMatrix simulate_leakage(const PhaseErrorVector& errors) {
  return leakage_from_sorter(controlled_x_err(errors));
}

GateMatrix device_phase_gate(const SorterDesign& design, const PathFluctuation* fluctuation) {
  design.validate();
  const std::size_t n = design.size();
  if (fluctuation && fluctuation->delta_length_m.size() != n) {
    throw DimensionMismatch("fluctuation needs one entry per path");
  }
  const auto d = static_cast<Eigen::Index>(n * n);
  Matrix m = Matrix::Zero(d, d);
  for (std::size_t k = 0; k < n; ++k) {
    const double inv_lambda =
        1.0 / de_broglie_wavelength(design.species[k].mass_kg, design.velocity_mps);
    for (std::size_t s = 0; s < n; ++s) {
      double length = design.delta_length_m[s];
      if (fluctuation) length += fluctuation->delta_length_m[s] - fluctuation->delta_length_m[0];
      const auto flat = static_cast<Eigen::Index>(BasisIndex{k, s}.flat(n));
      m(flat, flat) = cycles_to_phase(length * inv_lambda);
    }
  }
  return GateMatrix::from_matrix(std::move(m));
}

LeakageMatrix device_leakage(const SorterDesign& design, const PathFluctuation* fluctuation) {
  const GateMatrix f = on_path(dft_matrix(design.size()));
  return leakage_from_sorter(f.adjoint() * device_phase_gate(design, fluctuation) * f);
}

AnalyticLeakageN3 analytic_leakage_n3(double delta1_rad, double delta2_rad, double ratio1,
                                      double ratio2) {
  const Complex w = std::polar(1.0, kTwoPi / 3.0);
  const Complex w2 = std::polar(1.0, -kTwoPi / 3.0);
  const auto e = [](double phi) { return std::polar(1.0, phi); };

  const Complex a0 = e(delta1_rad), b0 = e(delta2_rad);
  const Complex a1 = e(delta1_rad * ratio1), b1 = e(delta2_rad * ratio1);
  const Complex a2 = e(delta1_rad * ratio2), b2 = e(delta2_rad * ratio2);
  const double third = 1.0 / 3.0;

  std::array<std::array<Complex, 3>, 3> c{};
  c[0] = {third * (1.0 + a0 + b0), third * (1.0 + w2 * a0 + w * b0), third * (1.0 + w * a0 + w2 * b0)};
  c[1] = {third * (1.0 + w * a1 + w2 * b1), third * (1.0 + a1 + b1), third * (1.0 + w2 * a1 + w * b1)};
  c[2] = {third * (1.0 + w2 * a2 + w * b2), third * (1.0 + w * a2 + w2 * b2), third * (1.0 + a2 + b2)};

  const double t = kTwoPi / 3.0;
  const double d1 = delta1_rad, d2 = delta2_rad;
  Eigen::MatrixXd p(3, 3);
  p(0, 0) = third + 2.0 / 9.0 * (std::cos(d1) + std::cos(d2) + std::cos(d1 - d2));
  p(0, 1) = third + 2.0 / 9.0 * (std::cos(d1 - t) + std::cos(d2 + t) + std::cos(d1 - d2 + t));
  p(0, 2) = third + 2.0 / 9.0 * (std::cos(d1 + t) + std::cos(d2 - t) + std::cos(d1 - d2 - t));
  for (Eigen::Index k = 1; k < 3; ++k) {
    for (Eigen::Index s = 0; s < 3; ++s) {
      p(k, s) = std::norm(c[static_cast<std::size_t>(k)][static_cast<std::size_t>(s)]);
    }
  }
  return AnalyticLeakageN3{c, LeakageMatrix::from_probabilities(std::move(p))};
}

std::vector<double> SweepRange::points() const {
  if (steps == 0) throw DomainError("sweep range needs at least one step");
  if (!std::isfinite(lo) || !std::isfinite(hi)) throw DomainError("sweep bounds must be finite");
  std::vector<double> out(steps);
  if (steps == 1) {
    out[0] = lo;
    return out;
  }
  const double span = hi - lo;
  const double denom = static_cast<double>(steps - 1);
  for (std::size_t i = 0; i < steps; ++i) out[i] = lo + span * (static_cast<double>(i) / denom);
  out.back() = hi;
  return out;
}

double SweepResult::min_p00() const {
  double best = 1.0;
  for (const auto& l : leakage) best = std::min(best, l(0, 0));
  return best;
}

SweepResult sweep_leakage(const SweepRange& delta1, const SweepRange& delta2,
                          std::span<const double> mass_ratios) {
  const std::size_t n = mass_ratios.size();
  if (n < 3) throw InvalidDimension("a two-error sweep needs at least three species");
  SweepResult out;
  out.delta1_rad = delta1.points();
  out.delta2_rad = delta2.points();
  out.leakage.reserve(out.delta1_rad.size() * out.delta2_rad.size());
  const std::vector<double> ratios(mass_ratios.begin(), mass_ratios.end());
  for (double d1 : out.delta1_rad) {
    for (double d2 : out.delta2_rad) {
      std::vector<double> base(n - 1, 0.0);
      base[0] = d1;
      base[1] = d2;
      out.leakage.push_back(simulate_leakage(PhaseErrorVector(std::move(base), ratios)));
    }
  }
  return out;
}

void write_sweep_csv(std::ostream& out, const SweepResult& sweep, bool all_probabilities) {
  const std::size_t n = sweep.leakage.empty() ? 0 : sweep.leakage.front().size();
  out << "delta1_rad,delta2_rad,p00";
  if (all_probabilities) {
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t s = 0; s < n; ++s) {
        if (k == 0 && s == 0) continue;
        out << ",p_" << k << '_' << s;
      }
    }
  }
  out << '\n';
  for (std::size_t i = 0; i < sweep.delta1_rad.size(); ++i) {
    for (std::size_t j = 0; j < sweep.delta2_rad.size(); ++j) {
      const LeakageMatrix& l = sweep.leakage[i * sweep.delta2_rad.size() + j];
      out << format_double(sweep.delta1_rad[i]) << ',' << format_double(sweep.delta2_rad[j]) << ','
          << format_double(l(0, 0));
      if (all_probabilities) {
        for (std::size_t k = 0; k < n; ++k) {
          for (std::size_t s = 0; s < n; ++s) {
            if (k == 0 && s == 0) continue;
            out << ',' << format_double(l(k, s));
          }
        }
      }
      out << '\n';
    }
  }
}

PathFluctuation sample_fluctuation(std::size_t n, double sigma_length_m, std::uint64_t seed,
                                   std::uint64_t trial) {
  RandomStream rng = RandomStream::derive(seed, trial);
  PathFluctuation f;
  f.delta_length_m.resize(n);
  for (double& x : f.delta_length_m) x = sigma_length_m * rng.normal();
  return f;
}

MonteCarloSummary monte_carlo_leakage(const SorterDesign& design, double sigma_length_m,
                                      std::size_t trials, std::uint64_t seed) {
  design.validate();
  if (trials == 0) throw DomainError("Monte-Carlo needs at least one trial");
  if (!(sigma_length_m >= 0.0) || !std::isfinite(sigma_length_m)) {
    throw DomainError("sigma_L must be >= 0");
  }
  const std::size_t n = design.size();
  MonteCarloSummary out;
  out.trials = trials;
  out.seed = seed;
  out.sigma_length_m = sigma_length_m;
  out.mean_diagonal.assign(n, 0.0);
  std::vector<double> m2(n, 0.0);

  // Welford accumulation in trial order.
  for (std::size_t t = 0; t < trials; ++t) {
    const PathFluctuation f = sample_fluctuation(n, sigma_length_m, seed, t);
    const LeakageMatrix l =
        simulate_leakage(phases_from_fluctuation(f, design.species, design.velocity_mps));
    const double count = static_cast<double>(t + 1);
    for (std::size_t k = 0; k < n; ++k) {
      const double x = l(k, k);
      const double delta = x - out.mean_diagonal[k];
      out.mean_diagonal[k] += delta / count;
      m2[k] += delta * (x - out.mean_diagonal[k]);
    }
  }
  out.std_diagonal.assign(n, 0.0);
  if (trials > 1) {
    for (std::size_t k = 0; k < n; ++k) {
      out.std_diagonal[k] = std::sqrt(m2[k] / static_cast<double>(trials - 1));
    }
  }
  return out;
}

}  // namespace interfms
