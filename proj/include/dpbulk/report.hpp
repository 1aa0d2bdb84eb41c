#pragma once

#include <iosfwd>
#include <json.hpp>
#include <string>
#include <vector>

#include "dpbulk/catness.hpp"
#include "dpbulk/gaussian_dynamics.hpp"
#include "dpbulk/heating_budget.hpp"
#include "dpbulk/material.hpp"
#include "dpbulk/mode_census.hpp"

namespace dpbulk::report {

using Json = nlohmann::ordered_json;

/// 12 significant digits, locale independent; "inf"/"-inf"/"nan" for
/// non-finite values.
std::string format_number(double value);

/// Deterministic JSON text: insertion-ordered keys, numbers via format_number,
/// non-finite numbers emitted as strings.
std::string dump(const Json& value, int indent = 2);

Json to_json(const Material& mat);
Json to_json(const DerivedScales& scales);
Json to_json(const MassConfiguration& cfg);
Json to_json(const CatnessResult& res);
Json to_json(const ModeCensus& census);
Json to_json(const HeatingBudget& budget);
Json to_json(const GaussianState& state);

/// Strict parsers: exactly the documented keys, numeric fields must be numbers.
/// Throw ValidationError.
Material material_from_json(const nlohmann::json& j);
MassConfiguration mass_configuration_from_json(const nlohmann::json& j);

nlohmann::json read_json_file(const std::string& path);
Material load_material(const std::string& path);
MassConfiguration load_mass_configuration(const std::string& path);

/// k_x,k_y,k_z,k_mag,omega_k,class
void write_modes_csv(std::ostream& out, const std::vector<ModeSpec>& modes);

struct TimeSample {
  double t = 0.0;
  GaussianState state;
  double energy = 0.0;
};

/// t,mean_u,mean_pi,cov_uu,cov_upi,cov_pipi,energy
void write_timeseries_csv(std::ostream& out, const std::vector<TimeSample>& samples);

}  // namespace dpbulk::report
