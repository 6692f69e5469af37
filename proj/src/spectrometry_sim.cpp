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

#include "interfms/spectrometry_sim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "interfms/errors.hpp"
#include "interfms/random.hpp"

namespace interfms {

namespace {

struct ConstrainedFit {
  Eigen::VectorXd a;
  double objective = std::numeric_limits<double>::infinity();
};

// min |A_S a_S - f|^2 subject to sum(a_S) = 1 on the columns in `support`,
// via the KKT system. Returns nullopt-like empty vector when singular.
ConstrainedFit fit_on_support(const Eigen::MatrixXd& a, const Eigen::VectorXd& f,
                              const std::vector<Eigen::Index>& support) {
  const auto m = static_cast<Eigen::Index>(support.size());
  Eigen::MatrixXd sub(a.rows(), m);
  for (Eigen::Index j = 0; j < m; ++j) sub.col(j) = a.col(support[static_cast<std::size_t>(j)]);

  Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(m + 1, m + 1);
  kkt.topLeftCorner(m, m) = 2.0 * sub.transpose() * sub;
  kkt.block(0, m, m, 1).setOnes();
  kkt.block(m, 0, 1, m).setOnes();
  Eigen::VectorXd rhs(m + 1);
  rhs.head(m) = 2.0 * sub.transpose() * f;
  rhs(m) = 1.0;

  Eigen::FullPivLU<Eigen::MatrixXd> lu(kkt);
  ConstrainedFit out;
  if (!lu.isInvertible()) return out;
  const Eigen::VectorXd sol = lu.solve(rhs);
  Eigen::VectorXd full = Eigen::VectorXd::Zero(a.cols());
  for (Eigen::Index j = 0; j < m; ++j) {
    if (sol(j) < -1e-14) return out;
    full(support[static_cast<std::size_t>(j)]) = std::max(0.0, sol(j));
  }
  out.a = full;
  out.objective = (a * full - f).squaredNorm();
  return out;
}

}  // namespace

AbundanceVector::AbundanceVector(std::vector<double> values, double tol)
    : values_(std::move(values)) {
  if (values_.empty()) throw DimensionMismatch("abundance vector is empty");
  double sum = 0.0;
  for (double v : values_) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw DomainError("abundances must be non-negative");
    sum += v;
  }
  if (std::abs(sum - 1.0) > tol) throw DomainError("abundances must sum to 1");
}

CountRecord simulate_counts(const AbundanceVector& abundances, const LeakageMatrix& leakage,
                            std::uint64_t total, std::uint64_t seed) {
  const std::size_t n = abundances.size();
  if (leakage.size() != n) {
    throw DimensionMismatch("abundances have " + std::to_string(n) + " species but leakage is " +
                            std::to_string(leakage.size()) + "x" + std::to_string(leakage.size()));
  }
  if (total == 0) throw DomainError("need at least one particle");

  const CategoricalSampler species_sampler(abundances.values());
  std::vector<CategoricalSampler> channel_samplers;
  channel_samplers.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const Eigen::VectorXd row = leakage.matrix().row(static_cast<Eigen::Index>(k));
    channel_samplers.emplace_back(std::span<const double>(row.data(), n));
  }

  CountRecord out;
  out.total_particles = total;
  out.seed = seed;
  out.counts.assign(n, 0);
  const std::uint64_t batches = (total + kCountBatchSize - 1) / kCountBatchSize;
  for (std::uint64_t b = 0; b < batches; ++b) {
    RandomStream rng = RandomStream::derive(seed, b);
    const std::uint64_t in_batch = std::min(kCountBatchSize, total - b * kCountBatchSize);
    for (std::uint64_t i = 0; i < in_batch; ++i) {
      const std::size_t k = species_sampler.sample(rng);
      ++out.counts[channel_samplers[k].sample(rng)];
    }
  }
  return out;
}

SpectrumEstimate reconstruct_spectrum(const CountRecord& counts, const LeakageMatrix& leakage) {
  const std::size_t n = leakage.size();
  if (counts.counts.size() != n) throw DimensionMismatch("count record does not match leakage size");
  std::uint64_t total = 0;
  for (auto c : counts.counts) total += c;
  if (total == 0) throw DomainError("count record is empty");
  if (counts.total_particles != 0 && counts.total_particles != total) {
    throw DomainError("count record total does not match its channel counts");
  }
  if (leakage.max_row_sum_error() > 1e-12) throw DomainError("leakage rows must sum to 1");

  const auto d = static_cast<Eigen::Index>(n);
  const double total_d = static_cast<double>(total);
  Eigen::VectorXd f(d);
  for (Eigen::Index s = 0; s < d; ++s) {
    f(s) = static_cast<double>(counts.counts[static_cast<std::size_t>(s)]) / total_d;
  }

  const Eigen::MatrixXd& p = leakage.matrix();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(p);
  const auto& sv = svd.singularValues();
  const double smallest = sv(d - 1);
  const double condition =
      smallest > 0.0 ? sv(0) / smallest : std::numeric_limits<double>::infinity();
  if (!(condition <= kMaxLeakageCondition)) {
    throw Unidentifiable("leakage matrix is singular or ill-conditioned", condition);
  }

  // Channel fractions are f = P^T a.
  const Eigen::MatrixXd a_map = p.transpose();
  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(a_map);
  Eigen::VectorXd a = lu.solve(f);

  SpectrumEstimate out;
  out.condition_number = condition;
  if ((a.array() < 0.0).any()) {
    if (n > 20) throw InvalidDimension("constrained unfolding supports at most 20 species");
    out.constrained = true;
    ConstrainedFit best;
    const std::uint64_t subsets = std::uint64_t{1} << n;
    for (std::uint64_t mask = 1; mask < subsets; ++mask) {
      std::vector<Eigen::Index> support;
      for (std::size_t k = 0; k < n; ++k) {
        if (mask & (std::uint64_t{1} << k)) support.push_back(static_cast<Eigen::Index>(k));
      }
      ConstrainedFit fit = fit_on_support(a_map, f, support);
      if (fit.objective < best.objective) best = std::move(fit);
    }
    a = best.a;
  }

  // Multinomial covariance at the fitted channel fractions.
  const Eigen::VectorXd fitted = a_map * a;
  Eigen::MatrixXd cov_f = -fitted * fitted.transpose();
  cov_f.diagonal() += fitted;
  cov_f /= total_d;
  const Eigen::MatrixXd inv = lu.inverse();
  const Eigen::MatrixXd cov_a = inv * cov_f * inv.transpose();

  out.abundances.assign(a.data(), a.data() + d);
  out.observed_fractions.assign(f.data(), f.data() + d);
  out.uncertainty.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    out.uncertainty[k] = std::sqrt(std::max(0.0, cov_a(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k))));
  }
  return out;
}

double ams_radius(double mass_kg, double velocity_mps, double charge_c, double field_t) {
  if (charge_c == 0.0) throw NeutralSpecies("the Lorentz force cannot deflect a neutral species");
  if (!(mass_kg > 0.0)) throw DomainError("mass must be positive");
  if (!(velocity_mps > 0.0)) throw DomainError("velocity must be positive");
  if (!(field_t > 0.0)) throw DomainError("magnetic field must be positive");
  return mass_kg * velocity_mps / (charge_c * field_t);
}

double ams_separation(double m1_kg, double q1_c, double m2_kg, double q2_c, double velocity_mps,
                      double field_t) {
  if (q1_c == 0.0 || q2_c == 0.0) {
    throw NeutralSpecies("the Lorentz force cannot deflect a neutral species");
  }
  if (!(m1_kg > 0.0) || !(m2_kg > 0.0)) throw DomainError("masses must be positive");
  if (!(velocity_mps > 0.0)) throw DomainError("velocity must be positive");
  if (!(field_t > 0.0)) throw DomainError("magnetic field must be positive");
  return velocity_mps / field_t * (m2_kg / q2_c - m1_kg / q1_c);
}

}  // namespace interfms
