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

#include <cmath>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "interfms/constants.hpp"
#include "interfms/errors.hpp"
#include "oracles.hpp"

namespace interfms {
namespace {

constexpr double kTol = 1e-12;
const double kTwoPiOver15 = 2 * oracle::kPiRef / 15;
const double kTwoPiOver30 = 2 * oracle::kPiRef / 30;

std::vector<Species> from_mass_numbers(const std::vector<int>& numbers) {
  std::vector<Species> out;
  for (int a : numbers) out.push_back({"m" + std::to_string(a), a * kAtomicMassUnit});
  return out;
}

/// c_{k,s} = (1/N) sum_j exp(i phi_{k,j}) w^{j (k - s)}, summed by hand.
std::vector<std::vector<oracle::cplx>> oracle_amplitudes(const std::vector<double>& base,
                                                        const std::vector<double>& ratios) {
  const std::size_t n = ratios.size();
  std::vector<std::vector<oracle::cplx>> c(n, std::vector<oracle::cplx>(n));
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t s = 0; s < n; ++s) {
      oracle::cplx sum = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        const double d = j == 0 ? 0.0 : base[j - 1];
        const double turn = 2 * oracle::kPiRef * static_cast<double>(j) *
                            (static_cast<double>(k) - static_cast<double>(s)) / static_cast<double>(n);
        sum += std::polar(1.0, ratios[k] * d + turn);
      }
      c[k][s] = sum / static_cast<double>(n);
    }
  }
  return c;
}

/// Rotate so that the s = 0 entry is nonnegative real.
std::vector<oracle::cplx> fix_phase(std::vector<oracle::cplx> row) {
  if (std::abs(row[0]) < 1e-9) return row;
  const oracle::cplx u = std::conj(row[0]) / std::abs(row[0]);
  for (auto& x : row) x *= u;
  return row;
}

TEST(PhaseErrorVector, StoresScaledPhases) {
  const PhaseErrorVector e({0.1, 0.2}, {1.0, 1.5, 2.0});
  EXPECT_EQ(e.phase(0, 0), 0.0);
  EXPECT_EQ(e.phase(2, 0), 0.0);
  EXPECT_DOUBLE_EQ(e.phase(1, 2), 0.3);
  EXPECT_DOUBLE_EQ(e.phase(2, 1), 0.2);
  EXPECT_THROW(PhaseErrorVector({0.1}, {1.0, 1.5, 2.0}), DimensionMismatch);
  EXPECT_THROW(PhaseErrorVector({0.1}, {2.0, 1.5}), DomainError);
  EXPECT_THROW(PhaseErrorVector({NAN}, {1.0, 1.5}), DomainError);
}

TEST(LeakageMatrix, Validation) {
  Eigen::MatrixXd bad(2, 2);
  bad << 0.5, 0.6, 0.5, 0.5;
  EXPECT_THROW(LeakageMatrix::from_probabilities(bad), DomainError);
  bad << 1.2, -0.2, 0.5, 0.5;
  EXPECT_THROW(LeakageMatrix::from_probabilities(bad), DomainError);
  EXPECT_THROW(LeakageMatrix::from_probabilities(Eigen::MatrixXd(2, 3)), DimensionMismatch);
  Eigen::MatrixXd tiny(1, 1);
  tiny << 1.0 + 1e-14;
  EXPECT_NO_THROW(LeakageMatrix::from_probabilities(tiny));
}

TEST(PhasesFromFluctuation, Examples) {
  const auto species = from_mass_numbers({12, 13, 14});
  const double v = 1.0;
  const double lambda0 = de_broglie_wavelength(species[0].mass_kg, v);
  const PhaseErrorVector flat = phases_from_fluctuation({{1e-9, 1e-9, 1e-9}}, species, v);
  EXPECT_EQ(flat.base(1), 0.0);
  EXPECT_EQ(flat.base(2), 0.0);

  const PhaseErrorVector one = phases_from_fluctuation({{0.0, lambda0, 0.0}}, species, v);
  EXPECT_NEAR(one.base(1), kTwoPi, 1e-12);

  const PhaseErrorVector fifteenth =
      phases_from_fluctuation({{0.0, lambda0 / 15, lambda0 / 15}}, species, v);
  EXPECT_NEAR(fifteenth.base(1), kTwoPiOver15, 1e-12);
  EXPECT_NEAR(fifteenth.base(2), kTwoPiOver15, 1e-12);
  EXPECT_NEAR(fifteenth.mass_ratios()[2], 14.0 / 12.0, 1e-12);

  EXPECT_THROW(phases_from_fluctuation({{0.0, 0.0}}, species, v), DimensionMismatch);
  EXPECT_THROW(phases_from_fluctuation({{0.0}}, from_mass_numbers({12}), v), DomainError);
}

TEST(ControlledZErr, ZeroErrorsGiveIdealGate) {
  for (std::size_t n = 2; n <= 5; ++n) {
    std::vector<double> ratios(n, 1.0);
    for (std::size_t k = 1; k < n; ++k) ratios[k] = 1.0 + 0.1 * static_cast<double>(k);
    EXPECT_LE(max_abs_diff(controlled_z_err(PhaseErrorVector::zero(ratios)).matrix(), controlled_z(n).matrix()), kTol);
  }
}

TEST(ControlledZErr, ThreePathListing) {
  const double d1 = 0.3, d2 = -0.7, r1 = 13.0 / 12.0, r2 = 14.0 / 12.0;
  const GateMatrix g = controlled_z_err(PhaseErrorVector({d1, d2}, {1.0, r1, r2}));
  const oracle::cplx w = std::polar(1.0, 2 * oracle::kPiRef / 3);
  const auto e = [](double x) { return std::polar(1.0, x); };
  const oracle::cplx want[9] = {1.0,        e(d1),          e(d2),         1.0,          w * e(d1 * r1),
                                w * w * e(d2 * r1), 1.0, w * w * e(d1 * r2), w * e(d2 * r2)};
  for (std::size_t i = 0; i < 9; ++i) {
    for (std::size_t j = 0; j < 9; ++j) {
      const oracle::cplx expect = i == j ? want[i] : 0.0;
      EXPECT_NEAR(std::abs(g(i, j) - expect), 0.0, kTol) << i << "," << j;
    }
  }
}

TEST(ControlledXErr, ZeroErrorsGiveIdealGate) {
  for (std::size_t n = 1; n <= 6; ++n) {
    const std::vector<double> ratios(n, 1.0);
    EXPECT_LE(max_abs_diff(controlled_x_err(PhaseErrorVector::zero(ratios)).matrix(), controlled_x(n).matrix()), kTol);
  }
}

TEST(ControlledXErr, MatchesKroneckerConstruction) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> phase(-oracle::kPiRef, oracle::kPiRef);
  std::uniform_real_distribution<double> ratio(0.5, 3.0);
  for (std::size_t n = 2; n <= 6; ++n) {
    std::vector<double> base(n - 1), ratios(n, 1.0);
    for (auto& b : base) b = phase(rng);
    for (std::size_t k = 1; k < n; ++k) ratios[k] = ratio(rng);
    const PhaseErrorVector e(base, ratios);
    const GateMatrix f = on_path(dft_matrix(n));
    const GateMatrix via_kron = f.adjoint() * controlled_z_err(e) * f;
    EXPECT_LE(max_abs_diff(controlled_x_err(e).matrix(), via_kron.matrix()), kTol) << "N=" << n;
  }
}

TEST(ControlledXErr, BlockDiagonalAndUnitary) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> phase(-4.0, 4.0);
  std::uniform_real_distribution<double> ratio(0.2, 5.0);
  for (int trial = 0; trial < 40; ++trial) {
    for (std::size_t n = 2; n <= 8; ++n) {
      std::vector<double> base(n - 1), ratios(n, 1.0);
      for (auto& b : base) b = phase(rng);
      for (std::size_t k = 1; k < n; ++k) ratios[k] = ratio(rng);
      const GateMatrix g = controlled_x_err(PhaseErrorVector(base, ratios));
      EXPECT_LE(g.unitarity_defect(), kTol);
      double off = 0.0;
      for (std::size_t r = 0; r < n * n; ++r) {
        for (std::size_t c = 0; c < n * n; ++c) {
          if (r / n != c / n) off = std::max(off, std::abs(g(r, c)));
        }
      }
      EXPECT_LT(off, kTol);
    }
  }
}

TEST(SimulateLeakage, Examples) {
  EXPECT_LE((simulate_leakage(PhaseErrorVector::zero({1.0, 1.1, 1.2})).matrix() - Eigen::MatrixXd::Identity(3, 3))
                .cwiseAbs()
                .maxCoeff(),
            kTol);

  const LeakageMatrix l = simulate_leakage(PhaseErrorVector({kTwoPiOver15, kTwoPiOver15}, {1.0, 1.0, 1.0}));
  EXPECT_NEAR(l(0, 0), 0.96158, 1e-5);
  EXPECT_NEAR(l(0, 1), 0.019212, 1e-6);
  EXPECT_NEAR(l(0, 2), 0.019212, 1e-6);
  const auto cosines = oracle::p0_cosines(kTwoPiOver15, kTwoPiOver15);
  for (std::size_t s = 0; s < 3; ++s) EXPECT_NEAR(l(0, s), cosines[s], kTol);

  const LeakageMatrix swap = simulate_leakage(PhaseErrorVector({oracle::kPiRef}, {1.0, 1.0}));
  EXPECT_NEAR(swap(0, 0), 0.0, kTol);
  EXPECT_NEAR(swap(0, 1), 1.0, kTol);
}

TEST(SimulateLeakage, TwoPathMatchesMachZehnder) {
  for (double phi = -3.0; phi <= 3.0; phi += 0.25) {
    const LeakageMatrix l = simulate_leakage(PhaseErrorVector({phi}, {1.0, 1.0}));
    // The ideal two-path sorter routes species 0 through an interferometer
    // with relative phase phi + pi on its second arm, landing on port 0 at phi = 0.
    const auto mzi = oracle::mzi_output(phi);
    EXPECT_NEAR(l(0, 0), mzi[0], kTol);
    EXPECT_NEAR(l(0, 1), mzi[1], kTol);
  }
}

TEST(SimulateLeakage, MatchesHandSummedAmplitudes) {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> phase(-3.0, 3.0);
  std::uniform_real_distribution<double> ratio(0.3, 4.0);
  for (int trial = 0; trial < 100; ++trial) {
    for (std::size_t n = 2; n <= 6; ++n) {
      std::vector<double> base(n - 1), ratios(n, 1.0);
      for (auto& b : base) b = phase(rng);
      for (std::size_t k = 1; k < n; ++k) ratios[k] = ratio(rng);
      const auto c = oracle_amplitudes(base, ratios);
      const LeakageMatrix l = simulate_leakage(PhaseErrorVector(base, ratios));
      for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t s = 0; s < n; ++s) EXPECT_NEAR(l(k, s), std::norm(c[k][s]), kTol);
      }
    }
  }
}

TEST(SimulateLeakage, RowsAreStochastic) {
  std::mt19937_64 rng(14);
  std::uniform_real_distribution<double> phase(-10.0, 10.0);
  std::uniform_real_distribution<double> ratio(0.1, 10.0);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(trial % 7);
    std::vector<double> base(n - 1), ratios(n, 1.0);
    for (auto& b : base) b = phase(rng);
    for (std::size_t k = 1; k < n; ++k) ratios[k] = ratio(rng);
    const LeakageMatrix l = simulate_leakage(PhaseErrorVector(base, ratios));
    EXPECT_LE(l.max_row_sum_error(), kTol);
    EXPECT_GE(l.matrix().minCoeff(), 0.0);
    EXPECT_LE(l.matrix().maxCoeff(), 1.0);
  }
}

TEST(SimulateLeakage, GlobalFluctuationIsInvisible) {
  const auto species = from_mass_numbers({12, 13, 14, 17});
  std::mt19937_64 rng(15);
  std::normal_distribution<double> shift(0.0, 1e-7);
  for (int trial = 0; trial < 50; ++trial) {
    const double c = shift(rng);
    const PhaseErrorVector e = phases_from_fluctuation({{c, c, c, c}}, species, 3.0);
    for (std::size_t s = 0; s < 4; ++s) EXPECT_EQ(e.base(s), 0.0);
    EXPECT_LE((simulate_leakage(e).matrix() - Eigen::MatrixXd::Identity(4, 4)).cwiseAbs().maxCoeff(), kTol);
  }
}

TEST(SimulateLeakage, PeriodicInBaseErrorForIntegerRatios) {
  std::mt19937_64 rng(16);
  std::uniform_real_distribution<double> phase(-3.0, 3.0);
  const std::vector<double> ratios = {1.0, 2.0, 3.0, 5.0};
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> base(3);
    for (auto& b : base) b = phase(rng);
    const LeakageMatrix a = simulate_leakage(PhaseErrorVector(base, ratios));
    for (std::size_t s = 0; s < 3; ++s) {
      std::vector<double> shifted = base;
      shifted[s] += kTwoPi;
      const LeakageMatrix b = simulate_leakage(PhaseErrorVector(shifted, ratios));
      EXPECT_LE((a.matrix() - b.matrix()).cwiseAbs().maxCoeff(), kTol);
    }
  }
}

TEST(AnalyticLeakage, Examples) {
  const AnalyticLeakageN3 ideal = analytic_leakage_n3(0.0, 0.0, 1.3, 1.7);
  EXPECT_NEAR(ideal.probabilities(0, 0), 1.0, kTol);
  EXPECT_NEAR(ideal.probabilities(0, 1), 0.0, kTol);
  EXPECT_NEAR(ideal.probabilities(0, 2), 0.0, kTol);

  const AnalyticLeakageN3 a = analytic_leakage_n3(kTwoPiOver15, kTwoPiOver15, 1.0, 1.0);
  EXPECT_NEAR(a.probabilities(0, 0), 1.0 / 3 + 2.0 / 9 * (2 * std::cos(kTwoPiOver15) + 1), kTol);
  EXPECT_NEAR(a.probabilities(0, 0), 0.9616, 1e-4);
}

TEST(AnalyticLeakage, AgreesWithNumericRoute) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> phase(-oracle::kPiRef, oracle::kPiRef);
  std::uniform_real_distribution<double> ratio(0.2, 5.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const double d1 = phase(rng), d2 = phase(rng), r1 = ratio(rng), r2 = ratio(rng);
    const AnalyticLeakageN3 a = analytic_leakage_n3(d1, d2, r1, r2);
    const LeakageMatrix numeric = simulate_leakage(PhaseErrorVector({d1, d2}, {1.0, r1, r2}));
    EXPECT_LE((a.probabilities.matrix() - numeric.matrix()).cwiseAbs().maxCoeff(), kTol);
    EXPECT_LE(a.probabilities.max_row_sum_error(), kTol);

    const GateMatrix g = controlled_x_err(PhaseErrorVector({d1, d2}, {1.0, r1, r2}));
    for (std::size_t k = 0; k < 3; ++k) {
      std::vector<oracle::cplx> analytic(a.amplitudes[k].begin(), a.amplitudes[k].end());
      std::vector<oracle::cplx> gate(3);
      for (std::size_t s = 0; s < 3; ++s) gate[s] = g(BasisIndex{k, s}.flat(3), BasisIndex{k, 0}.flat(3));
      // Fix the sector phase on the largest entry when s = 0 vanishes.
      analytic = fix_phase(analytic);
      gate = fix_phase(gate);
      if (std::abs(analytic[0]) < 1e-9) continue;
      for (std::size_t s = 0; s < 3; ++s) EXPECT_NEAR(std::abs(analytic[s] - gate[s]), 0.0, kTol);
    }
  }
}

TEST(DeviceRoute, MatchesAbstractRoute) {
  const auto species = from_mass_numbers({12, 13, 14});
  const SorterDesign d = *solve_n_path(species, 1.0).design;
  EXPECT_LE((device_leakage(d).matrix() - Eigen::MatrixXd::Identity(3, 3)).cwiseAbs().maxCoeff(), 1e-9);

  const double lambda0 = de_broglie_wavelength(species[0].mass_kg, 1.0);
  const PathFluctuation f{{2e-10, lambda0 / 15 + 2e-10, -lambda0 / 40 + 2e-10}};
  const LeakageMatrix device = device_leakage(d, &f);
  const LeakageMatrix abstract = simulate_leakage(phases_from_fluctuation(f, species, 1.0));
  EXPECT_LE((device.matrix() - abstract.matrix()).cwiseAbs().maxCoeff(), 1e-9);
  EXPECT_LT(device(0, 0), 1.0 - 1e-3);
}

TEST(Sweep, SinglePointAtOrigin) {
  const std::vector<double> ratios = {1.0, 13.0 / 12.0, 14.0 / 12.0};
  const SweepResult r = sweep_leakage({0.0, 0.0, 1}, {0.0, 0.0, 1}, ratios);
  ASSERT_EQ(r.leakage.size(), 1u);
  EXPECT_NEAR(r.p00(0, 0), 1.0, kTol);
}

TEST(Sweep, SameSignErrorsKeepLeakageSmall) {
  const std::vector<double> ratios = {1.0, 1.0, 1.0};
  const SweepResult wide = sweep_leakage({0.0, kTwoPiOver15, 31}, {0.0, kTwoPiOver15, 31}, ratios);
  EXPECT_GE(wide.min_p00(), 0.96);
  EXPECT_NEAR(wide.min_p00(), 0.96158, 1e-5);
  const SweepResult narrow = sweep_leakage({0.0, kTwoPiOver30, 31}, {0.0, kTwoPiOver30, 31}, ratios);
  EXPECT_LT(1.0 - narrow.min_p00(), 0.01);
  EXPECT_NEAR(1.0 - narrow.min_p00(), 0.0097, 1e-4);
}

TEST(Sweep, OppositeSignCornersLeakMore) {
  // p00 depends on cos(d1 - d2), so (a, -a) loses more than (a, a).
  const std::vector<double> ratios = {1.0, 1.0, 1.0};
  const SweepResult full = sweep_leakage({-kTwoPiOver15, kTwoPiOver15, 31}, {-kTwoPiOver15, kTwoPiOver15, 31}, ratios);
  EXPECT_NEAR(full.min_p00(), 0.888049, 1e-6);
  EXPECT_NEAR(full.p00(0, 30), 0.888049, 1e-6);
  EXPECT_NEAR(full.p00(30, 0), 0.888049, 1e-6);
  EXPECT_NEAR(full.p00(30, 30), 0.96158, 1e-5);
  const SweepResult narrow = sweep_leakage({-kTwoPiOver30, kTwoPiOver30, 31}, {-kTwoPiOver30, kTwoPiOver30, 31}, ratios);
  EXPECT_NEAR(1.0 - narrow.min_p00(), 0.0290, 2e-4);
}

TEST(Sweep, MatchesCosineFormula) {
  const std::vector<double> ratios = {1.0, 13.0 / 12.0, 14.0 / 12.0};
  const SweepResult r = sweep_leakage({-1.0, 1.0, 9}, {-0.5, 2.0, 7}, ratios);
  for (std::size_t i = 0; i < 9; ++i) {
    for (std::size_t j = 0; j < 7; ++j) {
      EXPECT_NEAR(r.p00(i, j), oracle::p0_cosines(r.delta1_rad[i], r.delta2_rad[j])[0], kTol);
    }
  }
  EXPECT_EQ(r.delta1_rad.front(), -1.0);
  EXPECT_EQ(r.delta1_rad.back(), 1.0);
}

TEST(Sweep, RequiresThreeSpeciesAndSteps) {
  const std::vector<double> two = {1.0, 1.2};
  EXPECT_THROW(sweep_leakage({0, 1, 2}, {0, 1, 2}, two), InvalidDimension);
  const std::vector<double> three = {1.0, 1.1, 1.2};
  EXPECT_THROW(sweep_leakage({0, 1, 0}, {0, 1, 2}, three), DomainError);
}

TEST(Sweep, CsvIsDeterministicWithHeader) {
  const std::vector<double> ratios = {1.0, 13.0 / 12.0, 14.0 / 12.0};
  std::ostringstream a, b, full;
  write_sweep_csv(a, sweep_leakage({-0.4, 0.4, 5}, {-0.4, 0.4, 5}, ratios));
  write_sweep_csv(b, sweep_leakage({-0.4, 0.4, 5}, {-0.4, 0.4, 5}, ratios));
  const std::string text = a.str();
  EXPECT_EQ(text, b.str());
  EXPECT_EQ(text.substr(0, text.find('\n')), "delta1_rad,delta2_rad,p00");
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 26);

  write_sweep_csv(full, sweep_leakage({0.0, 0.0, 1}, {0.0, 0.0, 1}, ratios), true);
  std::istringstream lines(full.str());
  std::string header, row;
  std::getline(lines, header);
  std::getline(lines, row);
  EXPECT_EQ(header, "delta1_rad,delta2_rad,p00,p_0_1,p_0_2,p_1_0,p_1_1,p_1_2,p_2_0,p_2_1,p_2_2");
  std::vector<double> fields;
  std::istringstream cells(row);
  for (std::string cell; std::getline(cells, cell, ',');) fields.push_back(std::stod(cell));
  const std::vector<double> want = {0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 1};
  ASSERT_EQ(fields.size(), want.size());
  for (std::size_t i = 0; i < want.size(); ++i) EXPECT_NEAR(fields[i], want[i], kTol);
}

class MonteCarlo : public ::testing::Test {
 protected:
  SorterDesign design = *solve_n_path(from_mass_numbers({12, 13, 14}), 1.0).design;
};

TEST_F(MonteCarlo, ZeroSigmaIsPerfect) {
  const MonteCarloSummary s = monte_carlo_leakage(design, 0.0, 20, 1);
  for (std::size_t k = 0; k < 3; ++k) {
    EXPECT_NEAR(s.mean_diagonal[k], 1.0, kTol);
    EXPECT_NEAR(s.std_diagonal[k], 0.0, kTol);
  }
}

TEST_F(MonteCarlo, WavelengthScaleNoiseDegradesSorting) {
  const double lambda_min = de_broglie_wavelength(design.species[2].mass_kg, design.velocity_mps);
  const MonteCarloSummary s = monte_carlo_leakage(design, lambda_min / 3, 500, 42);
  for (std::size_t k = 0; k < 3; ++k) {
    EXPECT_LT(s.mean_diagonal[k], 0.9);
    EXPECT_GT(s.std_diagonal[k], 0.05);
  }
  const MonteCarloSummary quiet = monte_carlo_leakage(design, lambda_min / 300, 500, 42);
  for (std::size_t k = 0; k < 3; ++k) EXPECT_GT(quiet.mean_diagonal[k], 0.999);
}

TEST_F(MonteCarlo, SameSeedSameResult) {
  const MonteCarloSummary a = monte_carlo_leakage(design, 5e-9, 50, 99);
  const MonteCarloSummary b = monte_carlo_leakage(design, 5e-9, 50, 99);
  const MonteCarloSummary c = monte_carlo_leakage(design, 5e-9, 50, 100);
  EXPECT_EQ(a.mean_diagonal, b.mean_diagonal);
  EXPECT_EQ(a.std_diagonal, b.std_diagonal);
  EXPECT_NE(a.mean_diagonal, c.mean_diagonal);
}

TEST_F(MonteCarlo, RejectsBadArguments) {
  EXPECT_THROW(monte_carlo_leakage(design, 1e-9, 0, 1), DomainError);
  EXPECT_THROW(monte_carlo_leakage(design, -1e-9, 10, 1), DomainError);
  const MonteCarloSummary one = monte_carlo_leakage(design, 1e-9, 1, 1);
  for (double x : one.std_diagonal) EXPECT_EQ(x, 0.0);
}

TEST(SampleFluctuation, DeterministicPerTrial) {
  const PathFluctuation a = sample_fluctuation(4, 1e-9, 7, 3);
  const PathFluctuation b = sample_fluctuation(4, 1e-9, 7, 3);
  const PathFluctuation c = sample_fluctuation(4, 1e-9, 7, 4);
  EXPECT_EQ(a.delta_length_m, b.delta_length_m);
  EXPECT_NE(a.delta_length_m, c.delta_length_m);
  ASSERT_EQ(a.delta_length_m.size(), 4u);
}

}  // namespace
}  // namespace interfms
