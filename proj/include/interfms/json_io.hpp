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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "interfms/error_model.hpp"
#include "interfms/sorter_design.hpp"
#include "interfms/spectrometry_sim.hpp"

namespace interfms {

using json = nlohmann::json;

// Species lists: [{"name": ..., "mass_kg": ...} | {"name": ..., "mass_u": ...}].
std::vector<Species> species_from_json(const json& doc);
json species_to_json(const std::vector<Species>& species);

json design_to_json(const SorterDesign& design);
SorterDesign design_from_json(const json& doc);

json residuals_to_json(const PhaseResiduals& residuals);
json leakage_to_json(const LeakageMatrix& leakage);

/// Experiment description for end-to-end simulation.
struct ExperimentConfig {
  std::vector<Species> species;
  double velocity_mps = 0.0;
  std::vector<double> abundances;
  std::uint64_t total_particles = 0;
  std::uint64_t seed = 0;
  /// Exactly one of these may be set; neither means an ideal sorter.
  std::optional<std::vector<double>> delta_phi_rad;  // base errors d_1..d_{N-1}
  std::optional<double> sigma_length_m;
};

ExperimentConfig experiment_from_json(const json& doc);
json experiment_to_json(const ExperimentConfig& config);

/// Reads and parses a UTF-8 JSON file; throws InputError with the path on failure.
json read_json_file(const std::string& path);
/// Writes doc with two-space indentation and a trailing newline.
void write_json_file(const std::string& path, const json& doc);

}  // namespace interfms
