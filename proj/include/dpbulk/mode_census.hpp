#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "dpbulk/catness.hpp"
#include "dpbulk/material.hpp"

namespace dpbulk {

/// Rectangular box with periodic boundaries.
struct BoxSpec {
  Vec3 edge_lengths{};  ///< cm

  double volume() const { return edge_lengths[0] * edge_lengths[1] * edge_lengths[2]; }
};

/// Ordered: DecoherenceDominated < Crossover < ElasticityDominated.
enum class ModeClass { DecoherenceDominated = 0, Crossover = 1, ElasticityDominated = 2 };

std::string_view to_string(ModeClass c);

/// One longitudinal acoustic mode. k_vector is never zero (k = 0 is the c.o.m.).
struct ModeSpec {
  Vec3 k_vector{};        ///< cm^-1
  double k_mag = 0.0;     ///< cm^-1
  double omega_k = 0.0;   ///< c_l * k_mag, rad/s
  ModeClass classification = ModeClass::Crossover;
};

/// Mode counts are integer-valued but held as double: 1 g of matter has ~1e22
/// nuclei, beyond the 64-bit integer range.
struct ModeCensus {
  double total_modes_below_cutoff = 0.0;
  double nuclei_count = 0.0;
  double ratio = 0.0;                     ///< modes / nuclei
  double dominance_boundary_inv_k = 0.0;  ///< c_l / omega_G, cm
};

/// "c_l k << omega_G" with "<<" read as a factor of `margin`.
ModeClass classify_mode(double k_mag, double c_l, double omega_G, double margin);

/// 1/k at which c_l k = omega_G (acoustic nuclear density), cm.
double dominance_boundary(const Material& mat);

/// All k = 2 pi (n1/L1, n2/L2, n3/L3) with 0 < |k| <= k_max, sorted by
/// (k_mag, k_vector). Throws ValidationError when more than `max_modes` modes
/// would be produced; use count_modes_below for large counts.
std::vector<ModeSpec> enumerate_modes(const BoxSpec& box, const Material& mat, double k_max,
                                      double dominance_margin = 10.0,
                                      std::size_t max_modes = 5'000'000);

/// Exact number of nonzero lattice k-vectors with |k| <= k_max.
double count_lattice_modes(const BoxSpec& box, double k_max);

/// Continuum estimate V k_c^3 / (6 pi^2), k_c = 1/inv_k_cutoff, rounded.
double count_modes_below(double box_volume, double inv_k_cutoff);

/// Modes with 1/k > cutoff against the nuclei in `mass` grams of `mat`.
ModeCensus mode_census(const Material& mat, double box_volume, double mass, double inv_k_cutoff);

}  // namespace dpbulk
