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

#include "interfms/json_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "interfms/constants.hpp"
#include "interfms/errors.hpp"

namespace interfms {

namespace {

double positive_number(const json& obj, const char* key) {
  if (!obj.contains(key) || !obj.at(key).is_number()) {
    throw InputError(std::string("missing numeric field '") + key + "'");
  }
  const double v = obj.at(key).get<double>();
  if (!(v > 0.0) || !std::isfinite(v)) throw InputError(std::string("field '") + key + "' must be positive");
  return v;
}

std::vector<double> number_array(const json& v, const char* key) {
  if (!v.is_array()) throw InputError(std::string("field '") + key + "' must be an array of numbers");
  std::vector<double> out;
  for (const auto& x : v) {
    if (!x.is_number()) throw InputError(std::string("field '") + key + "' must be an array of numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

std::uint64_t unsigned_field(const json& obj, const char* key) {
  const bool ok = obj.contains(key) && obj.at(key).is_number_integer() &&
                  (obj.at(key).is_number_unsigned() || obj.at(key).get<std::int64_t>() >= 0);
  if (!ok) throw InputError(std::string("field '") + key + "' must be a non-negative integer");
  return obj.at(key).get<std::uint64_t>();
}

}  // namespace

std::vector<Species> species_from_json(const json& doc) {
  const json& list = doc.is_object() && doc.contains("species") ? doc.at("species") : doc;
  if (!list.is_array() || list.empty()) throw InputError("species list must be a non-empty array");
  std::vector<Species> out;
  for (const auto& item : list) {
    if (!item.is_object()) throw InputError("each species must be an object");
    Species sp;
    if (!item.contains("name") || !item.at("name").is_string()) {
      throw InputError("each species needs a string 'name'");
    }
    sp.name = item.at("name").get<std::string>();
    const bool has_kg = item.contains("mass_kg");
    const bool has_u = item.contains("mass_u");
    if (has_kg == has_u) throw InputError("species '" + sp.name + "' needs exactly one of mass_kg, mass_u");
    sp.mass_kg = has_kg ? positive_number(item, "mass_kg") : positive_number(item, "mass_u") * kAtomicMassUnit;
    out.push_back(std::move(sp));
  }
  return out;
}

json species_to_json(const std::vector<Species>& species) {
  json out = json::array();
  for (const auto& sp : species) out.push_back({{"name", sp.name}, {"mass_kg", sp.mass_kg}});
  return out;
}

json design_to_json(const SorterDesign& design) {
  json out;
  out["N"] = design.size();
  out["velocity_mps"] = design.velocity_mps;
  out["species"] = species_to_json(design.species);
  out["delta_L_m"] = design.delta_length_m;
  out["windings"] = design.windings;
  out["phase_tol_rad"] = design.phase_tol_rad;
  if (design.coupler) {
    out["coupler"] = {{"width_m", design.coupler->width_m},
                      {"length_m", design.coupler->length_m},
                      {"ports", design.coupler->ports},
                      {"wavelength_m", design.coupler->wavelength_m}};
  } else {
    out["coupler"] = nullptr;
  }
  return out;
}

SorterDesign design_from_json(const json& doc) {
  if (!doc.is_object()) throw InputError("design must be a JSON object");
  SorterDesign d;
  try {
    d.velocity_mps = positive_number(doc, "velocity_mps");
    d.species = species_from_json(doc.at("species"));
    d.delta_length_m = number_array(doc.at("delta_L_m"), "delta_L_m");
    d.windings = doc.at("windings").get<std::vector<std::vector<std::int64_t>>>();
    if (doc.contains("phase_tol_rad")) d.phase_tol_rad = positive_number(doc, "phase_tol_rad");
    if (doc.contains("coupler") && !doc.at("coupler").is_null()) {
      const json& c = doc.at("coupler");
      d.coupler = MmiGeometry{positive_number(c, "width_m"), positive_number(c, "length_m"),
                              c.at("ports").get<std::size_t>(), positive_number(c, "wavelength_m")};
    }
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed design: ") + e.what());
  }
  if (doc.contains("N") && doc.at("N") != d.size()) throw InputError("design field N disagrees with species");
  try {
    d.validate();
  } catch (const DomainError& e) {
    throw InputError(std::string("malformed design: ") + e.what());
  }
  return d;
}

json residuals_to_json(const PhaseResiduals& residuals) {
  return {{"residual_rad", residuals.residual_rad},
          {"max_abs_rad", residuals.max_abs_rad},
          {"valid", residuals.valid},
          {"windings_consistent", residuals.windings_consistent}};
}

json leakage_to_json(const LeakageMatrix& leakage) {
  json rows = json::array();
  for (std::size_t k = 0; k < leakage.size(); ++k) {
    json row = json::array();
    for (std::size_t s = 0; s < leakage.size(); ++s) row.push_back(leakage(k, s));
    rows.push_back(std::move(row));
  }
  return rows;
}

ExperimentConfig experiment_from_json(const json& doc) {
  if (!doc.is_object()) throw InputError("experiment config must be a JSON object");
  ExperimentConfig c;
  try {
    c.species = species_from_json(doc.at("species"));
    c.velocity_mps = positive_number(doc, "velocity_mps");
    c.abundances = number_array(doc.at("abundances"), "abundances");
    c.total_particles = unsigned_field(doc, "total_particles");
    c.seed = unsigned_field(doc, "seed");
    if (doc.contains("errors") && !doc.at("errors").is_null()) {
      const json& e = doc.at("errors");
      if (!e.is_object()) throw InputError("'errors' must be an object");
      const bool phi = e.contains("delta_phi_rad");
      const bool sigma = e.contains("sigma_L_m");
      if (phi && sigma) throw InputError("'errors' takes delta_phi_rad or sigma_L_m, not both");
      if (phi) c.delta_phi_rad = number_array(e.at("delta_phi_rad"), "delta_phi_rad");
      if (sigma) {
        if (!e.at("sigma_L_m").is_number() || !(e.at("sigma_L_m").get<double>() >= 0.0)) {
          throw InputError("sigma_L_m must be a non-negative number");
        }
        c.sigma_length_m = e.at("sigma_L_m").get<double>();
      }
    }
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed experiment config: ") + e.what());
  }
  if (c.species.size() < 2) throw InputError("experiment needs at least two species");
  if (c.abundances.size() != c.species.size()) {
    throw InputError("abundances must have one entry per species");
  }
  if (c.delta_phi_rad && c.delta_phi_rad->size() + 1 != c.species.size()) {
    throw InputError("delta_phi_rad must have N-1 entries");
  }
  if (c.total_particles == 0) throw InputError("total_particles must be >= 1");
  return c;
}

json experiment_to_json(const ExperimentConfig& config) {
  json out;
  out["species"] = species_to_json(config.species);
  out["velocity_mps"] = config.velocity_mps;
  out["abundances"] = config.abundances;
  out["total_particles"] = config.total_particles;
  out["seed"] = config.seed;
  if (config.delta_phi_rad) {
    out["errors"] = {{"delta_phi_rad", *config.delta_phi_rad}};
  } else if (config.sigma_length_m) {
    out["errors"] = {{"sigma_L_m", *config.sigma_length_m}};
  } else {
    out["errors"] = nullptr;
  }
  return out;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError("'" + path + "' is not valid JSON: " + e.what());
  }
}

void write_json_file(const std::string& path, const json& doc) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << doc.dump(2) << '\n';
  if (!out) throw InputError("failed writing '" + path + "'");
}

}  // namespace interfms
