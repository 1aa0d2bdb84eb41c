#include "dpbulk/report.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

#include "dpbulk/errors.hpp"

namespace dpbulk::report {

namespace {

void dump_into(const Json& v, int indent, int depth, std::string& out) {
  const std::string pad(static_cast<std::size_t>(indent * (depth + 1)), ' ');
  const std::string closing_pad(static_cast<std::size_t>(indent * depth), ' ');
  const char* nl = indent > 0 ? "\n" : "";
  switch (v.type()) {
    case Json::value_t::object: {
      if (v.empty()) {
        out += "{}";
        return;
      }
      out += "{";
      out += nl;
      bool first = true;
      for (auto it = v.begin(); it != v.end(); ++it) {
        if (!first) {
          out += ",";
          out += nl;
        }
        first = false;
        out += pad;
        out += Json(it.key()).dump();
        out += indent > 0 ? ": " : ":";
        dump_into(it.value(), indent, depth + 1, out);
      }
      out += nl;
      out += closing_pad;
      out += "}";
      return;
    }
    case Json::value_t::array: {
      if (v.empty()) {
        out += "[]";
        return;
      }
      out += "[";
      out += nl;
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) {
          out += ",";
          out += nl;
        }
        out += pad;
        dump_into(v[i], indent, depth + 1, out);
      }
      out += nl;
      out += closing_pad;
      out += "]";
      return;
    }
    case Json::value_t::number_float: {
      const double x = v.get<double>();
      out += std::isfinite(x) ? format_number(x) : "\"" + format_number(x) + "\"";
      return;
    }
    default:
      out += v.dump();
  }
}

// Rejects keys outside `allowed` and requires every key in `required`.
void check_keys(const nlohmann::json& j, const std::set<std::string>& allowed,
                const std::set<std::string>& required, const std::string& what) {
  if (!j.is_object()) throw ValidationError(what + " must be a JSON object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key()))
      throw ValidationError("unknown key '" + it.key() + "' in " + what);
  for (const auto& key : required)
    if (!j.contains(key)) throw ValidationError("missing key '" + key + "' in " + what);
}

double number(const nlohmann::json& j, const std::string& key, const std::string& what) {
  const auto& v = j.at(key);
  if (!v.is_number()) throw ValidationError("'" + key + "' in " + what + " must be a number");
  return v.get<double>();
}

}  // namespace

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 12);
  return std::string(buf, res.ptr);
}

std::string dump(const Json& value, int indent) {
  std::string out;
  dump_into(value, indent, 0, out);
  return out;
}

Json to_json(const Material& mat) {
  Json j;
  j["name"] = mat.name;
  j["mass_density"] = mat.mass_density;
  j["m_av"] = mat.m_av;
  j["m_sq_av"] = mat.m_sq_av;
  j["sigma"] = mat.sigma;
  j["c_l"] = mat.c_l;
  return j;
}

Json to_json(const DerivedScales& s) {
  Json j;
  j["variant"] = std::string(to_string(s.variant));
  j["f_nucl_simple"] = s.f_nucl_simple;
  j["f_nucl_acoustic"] = s.f_nucl_acoustic;
  j["omega_G_nucl"] = s.omega_G_nucl;
  j["lambda_dominance"] = s.lambda_dominance;
  j["heating_per_dof"] = s.heating_per_dof;
  return j;
}

Json to_json(const MassConfiguration& cfg) {
  Json j;
  j["sigma"] = cfg.sigma;
  Json points = Json::array();
  for (const auto& p : cfg.points) {
    Json pt;
    pt["r"] = Json::array({p.r[0], p.r[1], p.r[2]});
    pt["m"] = p.m;
    points.push_back(pt);
  }
  j["points"] = points;
  return j;
}

Json to_json(const CatnessResult& r) {
  Json j;
  j["u11"] = r.u11;
  j["u22"] = r.u22;
  j["u12"] = r.u12;
  j["ell_g_sq"] = r.ell_g_sq;
  j["tau_g"] = r.tau_g;
  return j;
}

Json to_json(const ModeCensus& c) {
  Json j;
  j["total_modes_below_cutoff"] = c.total_modes_below_cutoff;
  j["nuclei_count"] = c.nuclei_count;
  j["ratio"] = c.ratio;
  j["dominance_boundary_inv_k"] = c.dominance_boundary_inv_k;
  return j;
}

Json to_json(const HeatingBudget& b) {
  Json j;
  j["total_mass"] = b.total_mass;
  j["nuclei_count"] = b.nuclei_count;
  j["total_standard_rate"] = b.total_standard_rate;
  j["per_constituent_rate"] = b.per_constituent_rate;
  j["per_dof_rate_simple"] = b.per_dof_rate_simple;
  j["constituent_to_dof_factor"] = b.constituent_to_dof_factor;
  j["omega_G_acoustic"] = b.omega_G_acoustic;
  j["n_components"] = b.n_components;
  j["per_mode_rate"] = b.per_mode_rate;
  j["modes_heated"] = b.modes_heated;
  j["modes_to_nuclei"] = b.modes_to_nuclei;
  j["total_cutoff_rate"] = b.total_cutoff_rate;
  j["cutoff_lambda"] = b.cutoff_lambda ? Json(*b.cutoff_lambda) : Json(nullptr);
  Json notes;
  notes["total_standard_rate"] =
      "G hbar sigma^-3 M / (2 sqrt(4 pi)); rate of energy gain of all constituents";
  notes["per_constituent_rate"] = "total_standard_rate * m_av / M";
  notes["per_dof_rate_simple"] =
      "hbar omega^2 / 2 with omega^2 = 4 pi G f_nucl / 3, f_nucl = m_av / (4 pi sigma^2)^1.5";
  notes["constituent_to_dof_factor"] =
      "the two per-constituent chains differ by an O(1) factor; both are reported";
  notes["per_mode_rate"] =
      "n_components * hbar omega_G^2 / 2 with the acoustic (mass-squared weighted) f_nucl";
  notes["modes_heated"] = "continuum count V k_c^3 / (6 pi^2), k_c = 1 / cutoff_lambda";
  notes["total_cutoff_rate"] = "modes_heated * per_mode_rate";
  notes["magnitude_remark"] =
      "for 1 g at sigma = 1e-12 cm the formula gives ~10 erg/s; order-of-magnitude "
      "estimates of ~100 erg/s quoted for this model are ~10x above the formula value";
  j["notes"] = notes;
  return j;
}

Json to_json(const GaussianState& s) {
  Json j;
  j["mean_u"] = s.mean_u;
  j["mean_pi"] = s.mean_pi;
  j["cov_uu"] = s.cov_uu;
  j["cov_upi"] = s.cov_upi;
  j["cov_pipi"] = s.cov_pipi;
  return j;
}

Material material_from_json(const nlohmann::json& j) {
  const std::set<std::string> fields{"mass_density", "m_av", "m_sq_av", "sigma", "c_l"};
  std::set<std::string> allowed = fields;
  allowed.insert("name");
  check_keys(j, allowed, fields, "material");
  Material m;
  if (j.contains("name")) {
    if (!j["name"].is_string()) throw ValidationError("material 'name' must be a string");
    m.name = j["name"].get<std::string>();
  }
  m.mass_density = number(j, "mass_density", "material");
  m.m_av = number(j, "m_av", "material");
  m.m_sq_av = number(j, "m_sq_av", "material");
  m.sigma = number(j, "sigma", "material");
  m.c_l = number(j, "c_l", "material");
  validate(m);
  return m;
}

MassConfiguration mass_configuration_from_json(const nlohmann::json& j) {
  check_keys(j, {"sigma", "points"}, {"sigma", "points"}, "mass configuration");
  MassConfiguration cfg;
  cfg.sigma = number(j, "sigma", "mass configuration");
  const auto& pts = j.at("points");
  if (!pts.is_array()) throw ValidationError("'points' must be an array");
  for (const auto& p : pts) {
    check_keys(p, {"r", "m"}, {"r", "m"}, "point");
    const auto& r = p.at("r");
    if (!r.is_array() || r.size() != 3)
      throw ValidationError("point 'r' must be an array of 3 numbers");
    PointMass pm;
    for (std::size_t i = 0; i < 3; ++i) {
      if (!r[i].is_number()) throw ValidationError("point 'r' must hold numbers");
      pm.r[i] = r[i].get<double>();
    }
    pm.m = number(p, "m", "point");
    cfg.points.push_back(pm);
  }
  validate(cfg);
  return cfg;
}

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError("invalid JSON in '" + path + "': " + e.what());
  }
}

Material load_material(const std::string& path) { return material_from_json(read_json_file(path)); }

MassConfiguration load_mass_configuration(const std::string& path) {
  return mass_configuration_from_json(read_json_file(path));
}

void write_modes_csv(std::ostream& out, const std::vector<ModeSpec>& modes) {
  out << "k_x,k_y,k_z,k_mag,omega_k,class\n";
  for (const auto& m : modes)
    out << format_number(m.k_vector[0]) << ',' << format_number(m.k_vector[1]) << ','
        << format_number(m.k_vector[2]) << ',' << format_number(m.k_mag) << ','
        << format_number(m.omega_k) << ',' << to_string(m.classification) << '\n';
}

void write_timeseries_csv(std::ostream& out, const std::vector<TimeSample>& samples) {
  out << "t,mean_u,mean_pi,cov_uu,cov_upi,cov_pipi,energy\n";
  for (const auto& s : samples)
    out << format_number(s.t) << ',' << format_number(s.state.mean_u) << ','
        << format_number(s.state.mean_pi) << ',' << format_number(s.state.cov_uu) << ','
        << format_number(s.state.cov_upi) << ',' << format_number(s.state.cov_pipi) << ','
        << format_number(s.energy) << '\n';
}

}  // namespace dpbulk::report
