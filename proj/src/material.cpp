#include "dpbulk/material.hpp"

#include <cmath>
#include <string>

#include "dpbulk/constants.hpp"
#include "dpbulk/errors.hpp"

namespace dpbulk {

std::string_view to_string(NuclearDensity which) {
  return which == NuclearDensity::Simple ? "simple" : "acoustic";
}

NuclearDensity nuclear_density_from_string(std::string_view text) {
  if (text == "simple") return NuclearDensity::Simple;
  if (text == "acoustic") return NuclearDensity::Acoustic;
  throw ValidationError("unknown nuclear density variant '" + std::string(text) +
                        "' (expected simple|acoustic)");
}

void validate(const Material& mat) {
  auto positive = [&](double v, const char* field) {
    if (!(v > 0.0) || !std::isfinite(v))
      throw ValidationError(std::string("material field '") + field +
                            "' must be positive and finite");
  };
  positive(mat.mass_density, "mass_density");
  positive(mat.m_av, "m_av");
  positive(mat.m_sq_av, "m_sq_av");
  positive(mat.sigma, "sigma");
  positive(mat.c_l, "c_l");
  // <m^2> >= <m>^2, with slack for values typed in by hand.
  if (mat.m_sq_av < mat.m_av * mat.m_av * (1.0 - 1e-12))
    throw ValidationError("material field 'm_sq_av' must be >= m_av^2");
}

double gaussian_self_overlap(double sigma) {
  return std::pow(4.0 * pi * sigma * sigma, -1.5);
}

double newton_oscillator_frequency(double f_nucl) {
  return std::sqrt(4.0 * pi * constants().G * f_nucl / 3.0);
}

double heating_per_dof(double omega) { return 0.5 * constants().hbar * omega * omega; }

DerivedScales derive_scales(const Material& mat, NuclearDensity which) {
  validate(mat);
  DerivedScales s;
  s.variant = which;
  const double overlap = gaussian_self_overlap(mat.sigma);
  s.f_nucl_simple = mat.m_av * overlap;
  s.f_nucl_acoustic = (mat.m_sq_av / mat.m_av) * overlap;
  const double f = which == NuclearDensity::Simple ? s.f_nucl_simple : s.f_nucl_acoustic;
  s.omega_G_nucl = newton_oscillator_frequency(f);
  s.lambda_dominance = mat.c_l / s.omega_G_nucl;
  s.heating_per_dof = heating_per_dof(s.omega_G_nucl);
  return s;
}

std::vector<Material> material_presets() {
  using units::amu;
  // Quartz, SiO2: one Si and two O per formula unit.
  const double m_si = 28.0855 * amu;
  const double m_o = 15.999 * amu;
  const double quartz_m_av = (m_si + 2.0 * m_o) / 3.0;
  const double quartz_m_sq_av = (m_si * m_si + 2.0 * m_o * m_o) / 3.0;
  const double m_w = 183.84 * amu;
  const double m_default = 20.0 * amu;

  return {
      {"paper-default", 1.0, m_default, m_default * m_default, 1.0e-12, 1.0e5},
      {"rock", 2.7, quartz_m_av, quartz_m_sq_av, 1.0e-12, 6.0e5},
      {"tungsten", 19.3, m_w, m_w * m_w, 1.0e-12, 5.22e5},
  };
}

Material material_preset(std::string_view name) {
  for (auto& m : material_presets())
    if (m.name == name) return m;
  throw ValidationError("unknown material preset '" + std::string(name) + "'");
}

}  // namespace dpbulk
