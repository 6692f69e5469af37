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

#include "interfms/cli.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "interfms/constants.hpp"
#include "interfms/error_model.hpp"
#include "interfms/errors.hpp"
#include "interfms/json_io.hpp"
#include "interfms/random.hpp"
#include "interfms/sorter_design.hpp"
#include "interfms/spectrometry_sim.hpp"

#ifndef INTERFMS_VERSION
#define INTERFMS_VERSION "unknown"
#endif

namespace interfms::cli {

namespace {

using Clock = std::chrono::steady_clock;

// Reproduction record written next to every output file.
struct RunManifest {
  std::string command;
  json parameters = json::object();
  std::optional<std::uint64_t> seed;
  std::vector<std::string> outputs;
  double duration_s = 0.0;

  json to_json() const {
    json out;
    out["command"] = command;
    out["tool_version"] = tool_version();
    out["parameters"] = parameters;
    out["seed"] = seed ? json(*seed) : json(nullptr);
    out["outputs"] = outputs;
    out["wall_clock_s"] = duration_s;
    out["constants"] = {{"planck_J_s", kPlanck},
                        {"atomic_mass_unit_kg", kAtomicMassUnit},
                        {"elementary_charge_C", kElementaryCharge}};
    return out;
  }
};

void write_manifest(RunManifest manifest, Clock::time_point start) {
  if (manifest.outputs.empty()) return;
  manifest.duration_s = std::chrono::duration<double>(Clock::now() - start).count();
  write_json_file(manifest.outputs.front() + ".manifest.json", manifest.to_json());
}

std::string sci(double x, int digits = 6) {
  std::ostringstream os;
  os << std::setprecision(digits) << x;
  return os.str();
}

// ---------------------------------------------------------------- design --

struct DesignArgs {
  std::string species_file;
  double velocity = 0.0;
  std::int64_t max_winding = 1000;
  std::int64_t denom_bound = 10000;
  double phase_tol = kDefaultPhaseTol;
  std::optional<double> mmi_width;
  std::string out;
};

json residual_report(const std::string& status, const std::string& message,
                     const std::vector<double>& cycles) {
  std::vector<double> rad;
  for (double c : cycles) rad.push_back(kTwoPi * c);
  return {{"status", status},
          {"message", message},
          {"min_residual_cycles", cycles},
          {"min_residual_rad", rad}};
}

void print_residuals(std::ostream& out, const std::vector<double>& cycles) {
  out << "  path  min max_k |residual| [rad]\n";
  for (std::size_t s = 1; s < cycles.size(); ++s) {
    out << "  " << std::setw(4) << s << "  " << sci(kTwoPi * cycles[s]) << '\n';
  }
}

int cmd_design(const DesignArgs& a, std::ostream& out, std::ostream& err) {
  const auto start = Clock::now();
  RunManifest manifest;
  manifest.command = "design";
  manifest.parameters = {{"species_file", a.species_file},
                         {"velocity_mps", a.velocity},
                         {"max_winding", a.max_winding},
                         {"denom_bound", a.denom_bound},
                         {"phase_tol_rad", a.phase_tol},
                         {"mmi_width_m", a.mmi_width ? json(*a.mmi_width) : json(nullptr)}};
  if (!a.out.empty()) manifest.outputs.push_back(a.out);

  const auto species = species_from_json(read_json_file(a.species_file));
  NPathOptions opts;
  opts.max_winding = a.max_winding;
  opts.denom_bound = a.denom_bound;
  opts.phase_tol_rad = a.phase_tol;

  NPathResult result;
  try {
    result = solve_n_path(species, a.velocity, opts);
  } catch (const NonCommensurableMasses& e) {
    err << "design infeasible: " << e.what() << '\n';
    print_residuals(out, e.min_residuals());
    if (!a.out.empty()) {
      write_json_file(a.out, residual_report("non_commensurable", e.what(), e.min_residuals()));
      write_manifest(manifest, start);
    }
    return kInfeasible;
  }

  if (!result.feasible) {
    err << "design infeasible: no path lengths within max_winding = " << a.max_winding << '\n';
    print_residuals(out, result.min_residual_cycles);
    if (!a.out.empty()) {
      write_json_file(a.out, residual_report("infeasible", "no solution within bounds",
                                             result.min_residual_cycles));
      write_manifest(manifest, start);
    }
    return kInfeasible;
  }

  SorterDesign design = *result.design;
  const double lambda0 = de_broglie_wavelength(species[0].mass_kg, a.velocity);
  if (a.mmi_width) design.coupler = make_mmi(*a.mmi_width, lambda0, design.size());

  const std::size_t n = design.size();
  out << "Sorter design: N = " << n << ", v = " << sci(a.velocity) << " m/s\n";
  std::vector<double> wavelengths;
  for (std::size_t k = 0; k < n; ++k) {
    wavelengths.push_back(de_broglie_wavelength(species[k].mass_kg, a.velocity));
    out << "  species " << k << " '" << species[k].name << "': m = " << sci(species[k].mass_kg)
        << " kg, lambda = " << sci(wavelengths.back()) << " m\n";
  }
  out << "  path  dL [m]          dL [nm]       windings n_{k,s} (k = 0..N-1)\n";
  for (std::size_t s = 0; s < n; ++s) {
    out << "  " << std::setw(4) << s << "  " << std::left << std::setw(14)
        << sci(design.delta_length_m[s]) << "  " << std::setw(12)
        << sci(design.delta_length_m[s] * 1e9) << std::right << " ";
    for (std::size_t k = 0; k < n; ++k) out << ' ' << design.windings[k][s];
    out << '\n';
  }
  out << "  path-length control budget (min lambda / N): " << sci(path_error_budget(wavelengths, n))
      << " m\n";
  if (design.coupler) {
    out << "  MMI coupler: W = " << sci(design.coupler->width_m) << " m, D_N = "
        << sci(design.coupler->length_m) << " m (lambda_0 = " << sci(lambda0) << " m)\n";
  }

  if (!a.out.empty()) {
    json doc = design_to_json(design);
    doc["status"] = "feasible";
    doc["mass_lattice"] = result.mass_lattice;
    write_json_file(a.out, doc);
    write_manifest(manifest, start);
  }
  return kSuccess;
}

// ---------------------------------------------------------------- verify --

struct VerifyArgs {
  std::string design_file;
  std::string out;
};

int cmd_verify(const VerifyArgs& a, std::ostream& out, std::ostream& err) {
  const auto start = Clock::now();
  const SorterDesign design = design_from_json(read_json_file(a.design_file));
  const PhaseResiduals r = verify_design(design);
  const std::size_t n = design.size();
  out << "Phase residuals [rad] (rows: species k, columns: path s)\n";
  for (std::size_t k = 0; k < n; ++k) {
    out << "  k=" << k << ':';
    for (std::size_t s = 0; s < n; ++s) out << ' ' << std::setw(13) << sci(r.residual_rad[k][s], 4);
    out << '\n';
  }
  out << "  max |residual| = " << sci(r.max_abs_rad) << " rad, tolerance " << sci(design.phase_tol_rad)
      << " rad: " << (r.valid ? "VALID" : "INVALID") << '\n';
  if (!r.windings_consistent) err << "warning: stored windings do not match the path lengths\n";
  if (!a.out.empty()) {
    write_json_file(a.out, residuals_to_json(r));
    RunManifest m;
    m.command = "verify";
    m.parameters = {{"design_file", a.design_file}};
    m.outputs.push_back(a.out);
    write_manifest(m, start);
  }
  return r.valid ? kSuccess : kInfeasible;
}

// ----------------------------------------------------------------- sweep --

struct SweepArgs {
  std::size_t n = 3;
  std::vector<double> ratios;
  std::vector<double> delta1_range{0.0, 0.0};
  std::vector<double> delta2_range{0.0, 0.0};
  std::size_t steps = 101;
  bool all_probabilities = false;
  std::string out;
};

int cmd_sweep(const SweepArgs& a, std::ostream& out, std::ostream& err) {
  const auto start = Clock::now();
  std::vector<double> ratios = a.ratios;
  if (ratios.empty()) ratios.assign(a.n, 1.0);
  if (ratios.size() != a.n) {
    err << "error: --ratios needs exactly N = " << a.n << " values\n";
    return kInputError;
  }
  if (a.steps == 0 || a.delta1_range.size() != 2 || a.delta2_range.size() != 2 ||
      a.delta1_range[0] > a.delta1_range[1] || a.delta2_range[0] > a.delta2_range[1]) {
    err << "error: empty sweep range (need lo <= hi and --steps >= 1)\n";
    return kInputError;
  }
  const SweepRange r1{a.delta1_range[0], a.delta1_range[1], a.steps};
  const SweepRange r2{a.delta2_range[0], a.delta2_range[1], a.steps};
  const SweepResult sweep = sweep_leakage(r1, r2, ratios);

  if (a.out.empty()) {
    write_sweep_csv(out, sweep, a.all_probabilities);
    return kSuccess;
  }
  std::ofstream file(a.out);
  if (!file) throw InputError("cannot write '" + a.out + "'");
  write_sweep_csv(file, sweep, a.all_probabilities);
  file.close();
  out << "Swept " << sweep.leakage.size() << " points; min p00 = " << sci(sweep.min_p00(), 10)
      << ", max leakage 1 - p00 = " << sci(1.0 - sweep.min_p00(), 10) << '\n';
  RunManifest m;
  m.command = "sweep";
  m.parameters = {{"n", a.n},
                  {"ratios", ratios},
                  {"delta1_range_rad", a.delta1_range},
                  {"delta2_range_rad", a.delta2_range},
                  {"steps", a.steps},
                  {"all_probabilities", a.all_probabilities}};
  m.outputs.push_back(a.out);
  write_manifest(m, start);
  return kSuccess;
}

// ------------------------------------------------------------ montecarlo --

struct MonteCarloArgs {
  std::string design_file;
  double sigma_l = 0.0;
  std::size_t trials = 1000;
  std::uint64_t seed = 0;
  std::string out;
};

int cmd_montecarlo(const MonteCarloArgs& a, std::ostream& out, std::ostream&) {
  const auto start = Clock::now();
  const SorterDesign design = design_from_json(read_json_file(a.design_file));
  const MonteCarloSummary mc = monte_carlo_leakage(design, a.sigma_l, a.trials, a.seed);
  out << "Monte-Carlo: " << mc.trials << " trials, sigma_L = " << sci(a.sigma_l) << " m, seed "
      << a.seed << '\n';
  for (std::size_t k = 0; k < design.size(); ++k) {
    out << "  species " << k << " '" << design.species[k].name << "': p_kk = "
        << sci(mc.mean_diagonal[k], 8) << " +- " << sci(mc.std_diagonal[k], 4) << '\n';
  }
  if (!a.out.empty()) {
    json doc = {{"trials", mc.trials},
                {"seed", mc.seed},
                {"sigma_L_m", mc.sigma_length_m},
                {"species", species_to_json(design.species)},
                {"mean_diagonal", mc.mean_diagonal},
                {"std_diagonal", mc.std_diagonal}};
    write_json_file(a.out, doc);
    RunManifest m;
    m.command = "montecarlo";
    m.parameters = {{"design_file", a.design_file}, {"sigma_L_m", a.sigma_l}, {"trials", a.trials}};
    m.seed = a.seed;
    m.outputs.push_back(a.out);
    write_manifest(m, start);
  }
  return kSuccess;
}

// -------------------------------------------------------------- simulate --

struct SimulateArgs {
  std::string config_file;
  std::string out;
};

int cmd_simulate(const SimulateArgs& a, std::ostream& out, std::ostream& err) {
  const auto start = Clock::now();
  const ExperimentConfig cfg = experiment_from_json(read_json_file(a.config_file));
  const std::size_t n = cfg.species.size();
  const AbundanceVector truth(cfg.abundances);

  json doc;
  doc["config"] = experiment_to_json(cfg);
  std::vector<double> ratios = mass_ratios(cfg.species);
  std::optional<PhaseErrorVector> errors;
  if (cfg.delta_phi_rad) {
    errors.emplace(*cfg.delta_phi_rad, ratios);
  } else if (cfg.sigma_length_m) {
    // Separate stream from the counting batches.
    const PathFluctuation f = sample_fluctuation(n, *cfg.sigma_length_m, splitmix64(cfg.seed), 0);
    doc["sampled_fluctuation_m"] = f.delta_length_m;
    errors.emplace(phases_from_fluctuation(f, cfg.species, cfg.velocity_mps));
  } else {
    errors.emplace(PhaseErrorVector::zero(ratios));
  }
  doc["phase_errors_rad"] = std::vector<double>(errors->base_errors().begin(), errors->base_errors().end());

  const LeakageMatrix leakage = simulate_leakage(*errors);
  const CountRecord counts = simulate_counts(truth, leakage, cfg.total_particles, cfg.seed);
  doc["leakage"] = leakage_to_json(leakage);
  doc["counts"] = counts.counts;
  doc["total_particles"] = counts.total_particles;
  doc["seed"] = counts.seed;

  out << "Simulated " << counts.total_particles << " particles (seed " << counts.seed << ")\n";
  try {
    const SpectrumEstimate est = reconstruct_spectrum(counts, leakage);
    doc["reconstruction"] = {{"identifiable", true},
                             {"abundances", est.abundances},
                             {"uncertainty", est.uncertainty},
                             {"observed_fractions", est.observed_fractions},
                             {"condition_number", est.condition_number},
                             {"constrained", est.constrained}};
    out << "  channel  counts      true      reconstructed +- 1 sigma\n";
    for (std::size_t k = 0; k < n; ++k) {
      out << "  " << std::setw(7) << k << "  " << std::setw(10) << counts.counts[k] << "  "
          << std::setw(8) << sci(cfg.abundances[k], 4) << "  " << sci(est.abundances[k], 6) << " +- "
          << sci(est.uncertainty[k], 3) << "  (" << cfg.species[k].name << ")\n";
    }
  } catch (const Unidentifiable& e) {
    err << "warning: " << e.what() << " (condition number " << sci(e.condition_number()) << ")\n";
    doc["reconstruction"] = {{"identifiable", false},
                             {"condition_number", e.condition_number()},
                             {"message", e.what()}};
  }

  if (!a.out.empty()) {
    write_json_file(a.out, doc);
    RunManifest m;
    m.command = "simulate";
    m.parameters = {{"config_file", a.config_file}, {"config", experiment_to_json(cfg)}};
    m.seed = cfg.seed;
    m.outputs.push_back(a.out);
    write_manifest(m, start);
  }
  return kSuccess;
}

// ----------------------------------------------------------- ams-compare --

struct AmsArgs {
  std::string species_file;
  double velocity = 1e5;
  double charge_e = 1.0;
  double field = 1.0;
  double interf_velocity = 1.0;
  std::string out;
};

int cmd_ams_compare(const AmsArgs& a, std::ostream& out, std::ostream&) {
  const auto start = Clock::now();
  const auto species = species_from_json(read_json_file(a.species_file));
  const double q = a.charge_e * kElementaryCharge;

  json ams = json::object();
  json radii = json::array();
  out << "AMS (Lorentz force): v = " << sci(a.velocity) << " m/s, B = " << sci(a.field)
      << " T, q = " << sci(a.charge_e) << " e\n";
  for (const auto& sp : species) {
    const double r = ams_radius(sp.mass_kg, a.velocity, q, a.field);
    radii.push_back(r);
    out << "  " << sp.name << ": R = " << sci(r) << " m\n";
  }
  json separations = json::array();
  for (std::size_t k = 1; k < species.size(); ++k) {
    const double dr = ams_separation(species[k - 1].mass_kg, q, species[k].mass_kg, q, a.velocity, a.field);
    separations.push_back({{"from", species[k - 1].name}, {"to", species[k].name}, {"delta_R_m", dr},
                           {"separation_m", 2.0 * dr}});
    out << "  " << species[k - 1].name << " -> " << species[k].name << ": separation 2 dR = "
        << sci(2.0 * dr) << " m\n";
  }
  ams["radius_m"] = radii;
  ams["pairs"] = separations;

  json interf = json::object();
  json lambdas = json::array();
  out << "Interferometric sorting: v = " << sci(a.interf_velocity) << " m/s\n";
  for (const auto& sp : species) {
    const double l = de_broglie_wavelength(sp.mass_kg, a.interf_velocity);
    lambdas.push_back(l);
    out << "  " << sp.name << ": lambda = " << sci(l) << " m\n";
  }
  interf["wavelength_m"] = lambdas;
  if (species.size() >= 2) {
    try {
      const NPathResult r = solve_n_path(species, a.interf_velocity);
      interf["feasible"] = r.feasible;
      if (r.feasible) {
        interf["delta_L_m"] = r.design->delta_length_m;
        out << "  path differences:";
        for (std::size_t s = 1; s < r.design->size(); ++s) out << ' ' << sci(r.design->delta_length_m[s]) << " m";
        out << '\n';
      }
    } catch (const NonCommensurableMasses&) {
      interf["feasible"] = false;
    }
  }

  if (!a.out.empty()) {
    json doc = {{"species", species_to_json(species)},
                {"ams", ams},
                {"interferometric", interf},
                {"ams_velocity_mps", a.velocity},
                {"field_T", a.field},
                {"charge_e", a.charge_e},
                {"interf_velocity_mps", a.interf_velocity}};
    write_json_file(a.out, doc);
    RunManifest m;
    m.command = "ams-compare";
    m.parameters = {{"species_file", a.species_file},
                    {"ams_velocity_mps", a.velocity},
                    {"charge_e", a.charge_e},
                    {"field_T", a.field},
                    {"interf_velocity_mps", a.interf_velocity}};
    m.outputs.push_back(a.out);
    write_manifest(m, start);
  }
  return kSuccess;
}

}  // namespace

const char* tool_version() { return INTERFMS_VERSION; }

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Interferometric mass spectrometry: sorter design, leakage analysis and "
               "spectrum simulation.\nUnits: masses in kg (or u in species files), velocities "
               "in m/s, lengths in m, phases in rad."};
  app.name("interfms");
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(tool_version()));

  DesignArgs design;
  auto* design_cmd = app.add_subcommand("design", "Solve the perfect-sorting conditions for a species list.");
  design_cmd->add_option("species-file", design.species_file,
                         "JSON array of {name, mass_kg} or {name, mass_u}")->required();
  design_cmd->add_option("--velocity", design.velocity, "Common species velocity [m/s]")->required();
  design_cmd->add_option("--max-winding", design.max_winding,
                         "Largest |n_{k,s}| (whole wavelengths) searched [dimensionless]")->capture_default_str();
  design_cmd->add_option("--denom-bound", design.denom_bound,
                         "Largest denominator for rational mass ratios [dimensionless]")->capture_default_str();
  design_cmd->add_option("--phase-tol", design.phase_tol, "Phase residual tolerance [rad]")->capture_default_str();
  design_cmd->add_option("--mmi-width", design.mmi_width, "Coupler width W; adds D_N to the design [m]");
  design_cmd->add_option("--out", design.out, "Design JSON output path (lengths in m)");

  VerifyArgs verify;
  auto* verify_cmd = app.add_subcommand("verify", "Check a design's phase residuals (in rad).");
  verify_cmd->add_option("design-file", verify.design_file,
                         "Design JSON (velocity in m/s, masses in kg, lengths in m)")->required();
  verify_cmd->add_option("--out", verify.out, "Residual table JSON output path [rad]");

  SweepArgs sweep;
  auto* sweep_cmd = app.add_subcommand("sweep", "Grid of p00 over two phase errors, as CSV.");
  sweep_cmd->add_option("--n", sweep.n, "Number of species/paths, >= 3 [dimensionless]")->capture_default_str();
  sweep_cmd->add_option("--ratios", sweep.ratios,
                        "Mass ratios m_k/m_0, comma separated, first must be 1 [dimensionless]")
      ->delimiter(',');
  sweep_cmd->add_option("--delta1-range", sweep.delta1_range, "lo,hi for the path-1 phase error [rad]")
      ->expected(2)->delimiter(',');
  sweep_cmd->add_option("--delta2-range", sweep.delta2_range, "lo,hi for the path-2 phase error [rad]")
      ->expected(2)->delimiter(',');
  sweep_cmd->add_option("--steps", sweep.steps, "Grid points per axis [count]")->capture_default_str();
  sweep_cmd->add_flag("--all-probabilities", sweep.all_probabilities, "Also write every p_k_s column");
  sweep_cmd->add_option("--out", sweep.out, "CSV output path (stdout if omitted); phases in rad");

  MonteCarloArgs mc;
  auto* mc_cmd = app.add_subcommand("montecarlo", "Leakage statistics under random path-length errors.");
  mc_cmd->add_option("design-file", mc.design_file, "Design JSON (lengths in m, velocity in m/s)")->required();
  mc_cmd->add_option("--sigma-L", mc.sigma_l, "Standard deviation of each path-length error [m]")->required();
  mc_cmd->add_option("--trials", mc.trials, "Number of trials [count]")->capture_default_str();
  mc_cmd->add_option("--seed", mc.seed, "Random seed [integer]")->capture_default_str();
  mc_cmd->add_option("--out", mc.out, "Summary JSON output path");

  SimulateArgs sim;
  auto* sim_cmd = app.add_subcommand("simulate", "End-to-end counting and spectrum reconstruction.");
  sim_cmd->add_option("experiment-config", sim.config_file,
                      "Experiment JSON: species (kg or u), velocity_mps [m/s], abundances, "
                      "total_particles, seed, errors {delta_phi_rad [rad] | sigma_L_m [m]}")->required();
  sim_cmd->add_option("--out", sim.out, "Results JSON output path");

  AmsArgs ams;
  auto* ams_cmd = app.add_subcommand("ams-compare", "Compare Lorentz-force and interferometric separation.");
  ams_cmd->add_option("species-file", ams.species_file, "JSON species list (kg or u)")->required();
  ams_cmd->add_option("--velocity", ams.velocity, "AMS ion velocity [m/s]")->capture_default_str();
  ams_cmd->add_option("--charge", ams.charge_e, "Ion charge in elementary charges [e]")->capture_default_str();
  ams_cmd->add_option("--field", ams.field, "Magnetic field B [T]")->capture_default_str();
  ams_cmd->add_option("--interf-velocity", ams.interf_velocity,
                      "Velocity for the interferometric comparison [m/s]")->capture_default_str();
  ams_cmd->add_option("--out", ams.out, "Comparison JSON output path (lengths in m)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kInputError;
  }

  try {
    if (design_cmd->parsed()) return cmd_design(design, out, err);
    if (verify_cmd->parsed()) return cmd_verify(verify, out, err);
    if (sweep_cmd->parsed()) return cmd_sweep(sweep, out, err);
    if (mc_cmd->parsed()) return cmd_montecarlo(mc, out, err);
    if (sim_cmd->parsed()) return cmd_simulate(sim, out, err);
    if (ams_cmd->parsed()) return cmd_ams_compare(ams, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}

}  // namespace interfms::cli
