#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace dpbulk {

/// Homogeneous bulk material. All fields CGS.
struct Material {
  std::string name;
  double mass_density = 0.0;  ///< f = M/V, g/cm^3
  double m_av = 0.0;          ///< average nucleus mass, g
  double m_sq_av = 0.0;       ///< average squared nucleus mass <m^2>, g^2
  double sigma = 0.0;         ///< mass smearing width, cm
  double c_l = 0.0;           ///< longitudinal sound velocity, cm/s
};

/// Which 'nuclear' density feeds the Newton-oscillator frequency.
///   Simple:   m_av / (4 pi sigma^2)^{3/2}
///   Acoustic: (<m^2>/m_av) / (4 pi sigma^2)^{3/2}
enum class NuclearDensity { Simple, Acoustic };

std::string_view to_string(NuclearDensity which);
NuclearDensity nuclear_density_from_string(std::string_view text);

struct DerivedScales {
  NuclearDensity variant = NuclearDensity::Acoustic;
  double f_nucl_simple = 0.0;     ///< g/cm^3
  double f_nucl_acoustic = 0.0;   ///< g/cm^3
  double omega_G_nucl = 0.0;      ///< rad/s, from the selected variant
  double lambda_dominance = 0.0;  ///< c_l / omega_G_nucl, cm (1/k, not 2 pi/k)
  double heating_per_dof = 0.0;   ///< hbar omega^2 / 2, erg/s
};

/// Throws ValidationError unless every field is positive and m_sq_av >= m_av^2.
void validate(const Material& mat);

/// Self-overlap of the smearing Gaussian, (4 pi sigma^2)^{-3/2}, cm^-3.
double gaussian_self_overlap(double sigma);

double newton_oscillator_frequency(double f_nucl);
double heating_per_dof(double omega);

DerivedScales derive_scales(const Material& mat,
                            NuclearDensity which = NuclearDensity::Acoustic);

/// Built-in materials: "paper-default", "rock", "tungsten".
std::vector<Material> material_presets();
/// Throws ValidationError for an unknown name.
Material material_preset(std::string_view name);

}  // namespace dpbulk
