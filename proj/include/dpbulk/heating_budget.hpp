#pragma once

#include <optional>

#include "dpbulk/material.hpp"

namespace dpbulk {

struct HeatingBudget {
  double total_mass = 0.0;             ///< g
  double nuclei_count = 0.0;           ///< M / m_av
  double total_standard_rate = 0.0;    ///< G hbar sigma^-3 M / (2 sqrt(4 pi)), erg/s
  double per_constituent_rate = 0.0;   ///< total_standard_rate * m_av / M, erg/s
  double per_dof_rate_simple = 0.0;    ///< hbar w^2 / 2 with the simple nuclear density, erg/s
  double constituent_to_dof_factor = 0.0;  ///< per_constituent_rate / per_dof_rate_simple
  double omega_G_acoustic = 0.0;       ///< rad/s, drives the per-mode rate
  int n_components = 3;
  double per_mode_rate = 0.0;          ///< n_components hbar w^2 / 2, erg/s
  double modes_heated = 0.0;           ///< modes with 1/k > cutoff_lambda
  double modes_to_nuclei = 0.0;
  double total_cutoff_rate = 0.0;      ///< modes_heated * per_mode_rate, erg/s
  std::optional<double> cutoff_lambda; ///< cm; empty for the standard model
};

/// Rate of energy gain of mass M with smearing width sigma, erg/s.
double standard_heating_rate(double sigma, double M);

/// (m_av / mass_density)^{1/3}, cm.
double interatomic_spacing(const Material& mat);

HeatingBudget standard_budget(const Material& mat, double M, int n_components = 3);

/// Wavelength-cutoff model: only modes with 1/k > lambda in `volume` are
/// heated. `omega_G` overrides the acoustic Newton-oscillator frequency.
/// Rejects lambda below the interatomic spacing.
HeatingBudget cutoff_budget(const Material& mat, double M, double volume, double lambda,
                            int n_components = 3,
                            std::optional<double> omega_G = std::nullopt);

}  // namespace dpbulk
