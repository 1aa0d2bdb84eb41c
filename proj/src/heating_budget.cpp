#include "dpbulk/heating_budget.hpp"

#include <cmath>

#include "dpbulk/constants.hpp"
#include "dpbulk/errors.hpp"
#include "dpbulk/mode_census.hpp"

namespace dpbulk {

double standard_heating_rate(double sigma, double M) {
  if (!(sigma > 0.0) || !(M > 0.0)) throw ValidationError("sigma and mass must be positive");
  const auto c = constants();
  return c.G * c.hbar / (sigma * sigma * sigma) * M / (2.0 * std::sqrt(4.0 * pi));
}

double interatomic_spacing(const Material& mat) {
  validate(mat);
  return std::cbrt(mat.m_av / mat.mass_density);
}

HeatingBudget standard_budget(const Material& mat, double M, int n_components) {
  validate(mat);
  if (!(M > 0.0)) throw ValidationError("mass must be positive");
  if (n_components != 1 && n_components != 3)
    throw ValidationError("n_components must be 1 or 3");

  HeatingBudget b;
  b.total_mass = M;
  b.nuclei_count = M / mat.m_av;
  b.total_standard_rate = standard_heating_rate(mat.sigma, M);
  b.per_constituent_rate = b.total_standard_rate * mat.m_av / M;
  b.per_dof_rate_simple = derive_scales(mat, NuclearDensity::Simple).heating_per_dof;
  b.constituent_to_dof_factor = b.per_constituent_rate / b.per_dof_rate_simple;
  b.omega_G_acoustic = derive_scales(mat, NuclearDensity::Acoustic).omega_G_nucl;
  b.n_components = n_components;
  b.per_mode_rate = n_components * heating_per_dof(b.omega_G_acoustic);
  b.total_cutoff_rate = b.modes_heated * b.per_mode_rate;
  return b;
}

HeatingBudget cutoff_budget(const Material& mat, double M, double volume, double lambda,
                            int n_components, std::optional<double> omega_G) {
  HeatingBudget b = standard_budget(mat, M, n_components);
  if (!(volume > 0.0)) throw ValidationError("volume must be positive");
  if (!(lambda > 0.0)) throw ValidationError("cutoff lambda must be positive");
  if (lambda <= interatomic_spacing(mat))
    throw ValidationError("cutoff lambda is below the interatomic spacing");
  if (omega_G) {
    if (!(*omega_G > 0.0)) throw ValidationError("omega_G override must be positive");
    b.omega_G_acoustic = *omega_G;
    b.per_mode_rate = n_components * heating_per_dof(*omega_G);
  }
  b.cutoff_lambda = lambda;
  b.modes_heated = count_modes_below(volume, lambda);
  b.modes_to_nuclei = b.modes_heated / b.nuclei_count;
  b.total_cutoff_rate = b.modes_heated * b.per_mode_rate;
  return b;
}

}  // namespace dpbulk
