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

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "interfms/constants.hpp"
#include "interfms/error_model.hpp"
#include "interfms/json_io.hpp"
#include "interfms/qudit_algebra.hpp"
#include "interfms/sorter_design.hpp"
#include "interfms/spectrometry_sim.hpp"
#include "oracles.hpp"

namespace {

using namespace interfms;

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Criterion {
  int id;
  std::string title;
  double time_limit_s;  // <= 0 means no limit
  std::function<Outcome()> check;
};

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string fmt(const char* f, double a, double b) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

constexpr double kCarbon12 = 1.99e-26;

Outcome carbon_two_species() {
  const double m14 = 7.0 / 6.0 * kCarbon12;
  const TwoSpeciesSolution fast = solve_two_species(kCarbon12, m14, 100.0, 100);
  const TwoSpeciesSolution slow = solve_two_species(kCarbon12, m14, 1.0, 100);
  Outcome o;
  o.pass = fast.feasible && slow.feasible && fast.k1 == 3 && fast.k2 == 3 &&
           std::abs(fast.delta_length_m - 1e-9) <= 0.02e-9 && std::abs(slow.delta_length_m - 1e-7) <= 0.02e-7;
  o.detail = fmt("dL(100 m/s) = %.6g m, dL(1 m/s) = %.6g m", fast.delta_length_m, slow.delta_length_m) +
             " k1=" + std::to_string(fast.k1) + " k2=" + std::to_string(fast.k2);
  return o;
}

Outcome mmi_geometry() {
  const double d5 = mmi_length(1e-6, de_broglie_wavelength(kCarbon12, 1.0), 5);
  return {std::abs(d5 - 24e-6) <= 0.02 * 24e-6, fmt("D5 = %.5g m", d5)};
}

Outcome gate_identity() {
  double worst = 0.0;
  for (std::size_t n = 2; n <= 8; ++n) {
    const auto perm = oracle::shift_permutation(n);
    const GateMatrix cx = controlled_x(n);
    for (std::size_t r = 0; r < n * n; ++r) {
      for (std::size_t c = 0; c < n * n; ++c) worst = std::max(worst, std::abs(cx(r, c) - perm[r][c]));
    }
  }
  return {worst <= 1e-12, fmt("max entry error %.3g over N = 2..8", worst)};
}

Outcome analytic_vs_numeric() {
  std::mt19937_64 rng(2026);
  std::uniform_real_distribution<double> phase(-oracle::kPiRef, oracle::kPiRef);
  std::uniform_real_distribution<double> ratio(0.2, 5.0);
  double worst = 0.0, worst_row = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double d1 = phase(rng), d2 = phase(rng), r1 = ratio(rng), r2 = ratio(rng);
    const LeakageMatrix l = simulate_leakage(PhaseErrorVector({d1, d2}, {1.0, r1, r2}));
    const auto cosines = oracle::p0_cosines(d1, d2);
    const AnalyticLeakageN3 a = analytic_leakage_n3(d1, d2, r1, r2);
    for (std::size_t s = 0; s < 3; ++s) {
      worst = std::max(worst, std::abs(l(0, s) - cosines[s]));
      for (std::size_t k = 0; k < 3; ++k) worst = std::max(worst, std::abs(l(k, s) - a.probabilities(k, s)));
    }
    worst_row = std::max(worst_row, l.max_row_sum_error());
  }
  return {worst <= 1e-12 && worst_row <= 1e-12, fmt("max |dp| = %.3g, max row-sum error = %.3g", worst, worst_row)};
}

Outcome leakage_claim() {
  const std::vector<double> ratios = {1.0, 13.0 / 12.0, 14.0 / 12.0};
  const double a = kTwoPi / 15, b = kTwoPi / 30;
  const SweepResult wide = sweep_leakage({-a, a, 101}, {-a, a, 101}, ratios);
  const SweepResult narrow = sweep_leakage({-b, b, 101}, {-b, b, 101}, ratios);
  const double min_p00 = wide.min_p00();
  const double max_leak = 1.0 - narrow.min_p00();
  return {min_p00 >= 0.96 && max_leak < 0.01,
          fmt("min p00 on +-2pi/15 = %.6f (need >= 0.96); ", min_p00) +
              fmt("max leakage on +-2pi/30 = %.4f (need < 0.01)", max_leak)};
}

Outcome leakage_claim_same_sign() {
  const std::vector<double> ratios = {1.0, 13.0 / 12.0, 14.0 / 12.0};
  const double a = kTwoPi / 15, b = kTwoPi / 30;
  double min_p00 = 1.0, max_leak = 0.0;
  for (double sign : {1.0, -1.0}) {
    const SweepResult wide = sweep_leakage({0.0, sign * a, 101}, {0.0, sign * a, 101}, ratios);
    const SweepResult narrow = sweep_leakage({0.0, sign * b, 101}, {0.0, sign * b, 101}, ratios);
    min_p00 = std::min(min_p00, wide.min_p00());
    max_leak = std::max(max_leak, 1.0 - narrow.min_p00());
  }
  return {min_p00 >= 0.96 && max_leak < 0.01,
          fmt("same-sign quadrants: min p00 = %.6f, max leakage = %.4f", min_p00, max_leak)};
}

Outcome zero_error_sorting() {
  std::mt19937_64 rng(6);
  std::uniform_int_distribution<int> count(2, 5);
  std::uniform_int_distribution<int> mass_number(4, 60);
  std::uniform_real_distribution<double> velocity(0.5, 500.0);
  std::size_t designs = 0;
  double worst = 0.0;
  bool all_verified = true;
  for (int trial = 0; trial < 400; ++trial) {
    const int n = count(rng);
    std::vector<int> numbers;
    while (static_cast<int>(numbers.size()) < n) {
      const int m = mass_number(rng);
      if (std::find(numbers.begin(), numbers.end(), m) == numbers.end()) numbers.push_back(m);
    }
    std::vector<Species> species;
    for (int m : numbers) species.push_back({"m" + std::to_string(m), m * kAtomicMassUnit});
    const NPathResult r = solve_n_path(species, velocity(rng));
    if (!r.feasible) continue;
    const PhaseResiduals res = verify_design(*r.design);
    if (!res.valid) {
      all_verified = false;
      continue;
    }
    ++designs;
    const LeakageMatrix l = device_leakage(*r.design);
    const auto dim = static_cast<Eigen::Index>(r.design->size());
    worst = std::max(worst, (l.matrix() - Eigen::MatrixXd::Identity(dim, dim)).cwiseAbs().maxCoeff());
  }
  return {all_verified && designs >= 30 && worst <= 1e-9,
          std::to_string(designs) + " verified designs" + fmt(", max |P - I| = %.3g", worst)};
}

Outcome global_fluctuation() {
  std::vector<Species> species;
  for (int m : {12, 13, 14, 16}) species.push_back({"m" + std::to_string(m), m * kAtomicMassUnit});
  std::mt19937_64 rng(7);
  std::normal_distribution<double> shift(0.0, 1e-6);
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const double c = shift(rng);
    const LeakageMatrix l = simulate_leakage(phases_from_fluctuation({{c, c, c, c}}, species, 2.0));
    worst = std::max(worst, (l.matrix() - Eigen::MatrixXd::Identity(4, 4)).cwiseAbs().maxCoeff());
  }
  return {worst <= 1e-12, fmt("max |P - I| = %.3g", worst)};
}

Outcome coprimality() {
  std::size_t mismatches = 0, checked = 0;
  for (std::size_t n = 1; n <= 64; ++n) {
    for (std::size_t k = 0; k < n; ++k, ++checked) {
      if (distinct_phases_check(n, k) != (std::gcd(n, k) == 1)) ++mismatches;
    }
  }
  return {mismatches == 0, std::to_string(checked) + " pairs, " + std::to_string(mismatches) + " mismatches"};
}

Outcome round_trip() {
  const std::vector<double> truth = {0.9, 0.05, 0.05};
  const double d = kTwoPi / 15;
  const LeakageMatrix l = simulate_leakage(PhaseErrorVector({d, d}, {1.0, 13.0 / 12.0, 14.0 / 12.0}));
  const auto once = [&] {
    const CountRecord counts = simulate_counts(AbundanceVector(truth), l, 1'000'000, 20261017);
    const SpectrumEstimate e = reconstruct_spectrum(counts, l);
    json doc = {{"counts", counts.counts},
                {"abundances", e.abundances},
                {"uncertainty", e.uncertainty}};
    return std::make_pair(e, doc.dump());
  };
  const auto [e, first] = once();
  const auto second = once().second;
  double worst_z = 0.0;
  for (std::size_t k = 0; k < 3; ++k) worst_z = std::max(worst_z, std::abs(e.abundances[k] - truth[k]) / e.uncertainty[k]);
  return {worst_z <= 5.0 && first == second,
          fmt("max |a - truth| / sigma = %.3f", worst_z) + (first == second ? ", rerun identical" : ", rerun differs")};
}

Outcome implied_velocity_check() {
  const double v = implied_velocity(kCarbon12, 1e-9, 1);
  return {std::abs(v - 33.3) <= 0.005 * 33.3, fmt("v = %.5g m/s", v)};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "carbon two-species design", 1.0, carbon_two_species},
      {2, "MMI length for N = 5", 1.0, mmi_geometry},
      {3, "controlled-X gate identity", 1.0, gate_identity},
      {4, "analytic vs numeric leakage", 5.0, analytic_vs_numeric},
      {5, "leakage bounds over symmetric error square", 10.0, leakage_claim},
      {6, "zero-error sorting of verified designs", 0.0, zero_error_sorting},
      {7, "global fluctuation robustness", 0.0, global_fluctuation},
      {8, "coprimality check", 0.0, coprimality},
      {9, "end-to-end round trip", 30.0, round_trip},
      {10, "implied velocity", 0.0, implied_velocity_check},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.time_limit_s > 0 && seconds > c.time_limit_s) {
      o.pass = false;
      o.detail += fmt(" (took %.2f s, limit %.0f s)", seconds, c.time_limit_s);
    }
    if (!o.pass) ++failures;
    std::printf("%s AC%-2d %s: %s [%.3f s]\n", o.pass ? "PASS" : "FAIL", c.id, c.title.c_str(), o.detail.c_str(),
                seconds);
  }

  const Outcome info = leakage_claim_same_sign();
  std::printf("INFO AC5 bounds %s when both errors share a sign: %s\n", info.pass ? "hold" : "do not hold",
              info.detail.c_str());
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
