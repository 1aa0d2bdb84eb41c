#include "dpbulk/mode_census.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dpbulk/constants.hpp"
#include "dpbulk/errors.hpp"

namespace dpbulk {

namespace {

void validate(const BoxSpec& box) {
  for (double L : box.edge_lengths)
    if (!(L > 0.0) || !std::isfinite(L))
      throw ValidationError("box edge lengths must be positive");
}

// Visits every integer triple n != 0 with |k(n)| <= k_max, column by column.
template <typename Column>
void for_each_column(const BoxSpec& box, double k_max_nominal, Column&& column) {
  const auto& L = box.edge_lengths;
  // Points on the sphere surface count as inside despite rounding in k_max.
  const double k_max = k_max_nominal * (1.0 + 1e-12);
  const double r0 = k_max * L[0] / (2.0 * pi);
  const auto n0 = static_cast<long long>(std::floor(r0));
  for (long long i = -n0; i <= n0; ++i) {
    const double kx = 2.0 * pi * static_cast<double>(i) / L[0];
    const double rem_x = k_max * k_max - kx * kx;
    if (rem_x < 0.0) continue;
    const auto n1 = static_cast<long long>(std::floor(std::sqrt(rem_x) * L[1] / (2.0 * pi)));
    for (long long j = -n1; j <= n1; ++j) {
      const double ky = 2.0 * pi * static_cast<double>(j) / L[1];
      const double rem_y = rem_x - ky * ky;
      if (rem_y < 0.0) continue;
      auto n2 = static_cast<long long>(std::floor(std::sqrt(rem_y) * L[2] / (2.0 * pi)));
      // Guard the floor against rounding at the sphere surface.
      auto inside = [&](long long k) {
        const double kz = 2.0 * pi * static_cast<double>(k) / L[2];
        return kx * kx + ky * ky + kz * kz <= k_max * k_max;
      };
      while (n2 >= 0 && !inside(n2)) --n2;
      while (inside(n2 + 1)) ++n2;
      if (n2 < 0) continue;
      column(i, j, n2);
    }
  }
}

}  // namespace

std::string_view to_string(ModeClass c) {
  switch (c) {
    case ModeClass::DecoherenceDominated: return "decoherence";
    case ModeClass::Crossover: return "crossover";
    case ModeClass::ElasticityDominated: return "elasticity";
  }
  return "unknown";
}

ModeClass classify_mode(double k_mag, double c_l, double omega_G, double margin) {
  const double omega_k = c_l * k_mag;
  if (omega_k * margin < omega_G) return ModeClass::DecoherenceDominated;
  if (omega_k > margin * omega_G) return ModeClass::ElasticityDominated;
  return ModeClass::Crossover;
}

double dominance_boundary(const Material& mat) {
  return derive_scales(mat, NuclearDensity::Acoustic).lambda_dominance;
}

double count_lattice_modes(const BoxSpec& box, double k_max) {
  validate(box);
  if (!(k_max >= 0.0)) throw ValidationError("k_max must be non-negative");
  double count = 0.0;
  for_each_column(box, k_max, [&](long long, long long, long long n2) {
    count += static_cast<double>(2 * n2 + 1);
  });
  return count - 1.0;  // origin
}

std::vector<ModeSpec> enumerate_modes(const BoxSpec& box, const Material& mat, double k_max,
                                      double dominance_margin, std::size_t max_modes) {
  validate(box);
  const double max_edge = *std::max_element(box.edge_lengths.begin(), box.edge_lengths.end());
  if (!(k_max > 2.0 * pi / max_edge))
    throw ValidationError("k_max must exceed 2 pi / max(edge)");
  if (!(dominance_margin >= 1.0)) throw ValidationError("dominance margin must be >= 1");
  const double expected = count_lattice_modes(box, k_max);
  if (expected > static_cast<double>(max_modes))
    throw ValidationError("enumeration would produce " + std::to_string(expected) +
                          " modes, above the limit of " + std::to_string(max_modes) +
                          "; use count_modes_below");

  const double omega_G = derive_scales(mat, NuclearDensity::Acoustic).omega_G_nucl;
  const auto& L = box.edge_lengths;
  std::vector<ModeSpec> modes;
  modes.reserve(static_cast<std::size_t>(expected));
  for_each_column(box, k_max, [&](long long i, long long j, long long n2) {
    for (long long k = -n2; k <= n2; ++k) {
      if (i == 0 && j == 0 && k == 0) continue;
      ModeSpec m;
      m.k_vector = {2.0 * pi * static_cast<double>(i) / L[0],
                    2.0 * pi * static_cast<double>(j) / L[1],
                    2.0 * pi * static_cast<double>(k) / L[2]};
      m.k_mag = std::sqrt(m.k_vector[0] * m.k_vector[0] + m.k_vector[1] * m.k_vector[1] +
                          m.k_vector[2] * m.k_vector[2]);
      m.omega_k = mat.c_l * m.k_mag;
      m.classification = classify_mode(m.k_mag, mat.c_l, omega_G, dominance_margin);
      modes.push_back(m);
    }
  });
  std::sort(modes.begin(), modes.end(), [](const ModeSpec& a, const ModeSpec& b) {
    if (a.k_mag != b.k_mag) return a.k_mag < b.k_mag;
    return a.k_vector < b.k_vector;
  });
  return modes;
}

double count_modes_below(double box_volume, double inv_k_cutoff) {
  if (!(box_volume > 0.0)) throw ValidationError("box volume must be positive");
  if (!(inv_k_cutoff > 0.0)) throw ValidationError("wavelength cutoff must be positive");
  const double k_c = 1.0 / inv_k_cutoff;
  return std::round(box_volume * k_c * k_c * k_c / (6.0 * pi * pi));
}

ModeCensus mode_census(const Material& mat, double box_volume, double mass,
                       double inv_k_cutoff) {
  validate(mat);
  if (!(mass > 0.0)) throw ValidationError("mass must be positive");
  ModeCensus c;
  c.total_modes_below_cutoff = count_modes_below(box_volume, inv_k_cutoff);
  c.nuclei_count = mass / mat.m_av;
  c.ratio = c.total_modes_below_cutoff / c.nuclei_count;
  c.dominance_boundary_inv_k = dominance_boundary(mat);
  return c;
}

}  // namespace dpbulk
