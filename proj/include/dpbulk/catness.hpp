#pragma once

#include <array>
#include <vector>

namespace dpbulk {

using Vec3 = std::array<double, 3>;

struct PointMass {
  Vec3 r{};        ///< position, cm
  double m = 0.0;  ///< mass, g

  friend auto operator<=>(const PointMass&, const PointMass&) = default;
};

/// Point masses, each smeared by the normalized Gaussian
/// g(r) = (2 pi sigma^2)^{-3/2} exp(-r^2 / 2 sigma^2).
struct MassConfiguration {
  std::vector<PointMass> points;
  double sigma = 0.0;  ///< cm
};

struct CatnessResult {
  double u11 = 0.0;       ///< erg
  double u22 = 0.0;       ///< erg
  double u12 = 0.0;       ///< erg
  double ell_g_sq = 0.0;  ///< -u11 - u22 + 2 u12, erg
  double tau_g = 0.0;     ///< hbar / ell_g_sq, s; +inf when ell_g_sq == 0
};

void validate(const MassConfiguration& cfg);

/// Newton interaction energy of two smeared point masses at distance d:
/// -G m1 m2 erf(d / 2 sigma) / d, with the d -> 0 limit -G m1 m2 / (sigma sqrt(pi)).
double smeared_pair_energy(double m1, double m2, double d, double sigma);

/// U_12 = sum over all (a in f1, b in f2) of smeared_pair_energy. Self pairs are
/// included when f1 and f2 share points. The summation order is canonical, so
/// pair_potential(f1, f2) == pair_potential(f2, f1) bitwise.
double pair_potential(const MassConfiguration& f1, const MassConfiguration& f2);

CatnessResult catness(const MassConfiguration& f1, const MassConfiguration& f2);

MassConfiguration translated(MassConfiguration cfg, const Vec3& shift);

/// Real-space grid for the quadrature oracle.
struct QuadratureGrid {
  double spacing = 0.0;  ///< cm; must be <= sigma/3
  double margin = 0.0;   ///< cm around the bounding box; must be >= 6 sigma
  std::size_t max_points = std::size_t{1} << 26;  ///< cap on the padded FFT grid
};

/// Grid with spacing sigma/6 and margin 6 sigma.
QuadratureGrid default_quadrature_grid(double sigma);

/// Independent check of pair_potential: samples the smeared densities on a
/// Cartesian grid, convolves with 1/|r| by zero-padded FFT and integrates.
/// The 1/|r| singularity is handled by the punctured trapezoidal rule with the
/// simple-cubic lattice-sum weight at the origin, which makes the rule
/// fourth-order for smooth densities.
CatnessResult catness_quadrature_oracle(const MassConfiguration& f1,
                                        const MassConfiguration& f2,
                                        const QuadratureGrid& grid);

}  // namespace dpbulk
