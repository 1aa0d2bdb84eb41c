#include "dpbulk/catness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "dpbulk/constants.hpp"
#include "dpbulk/errors.hpp"

namespace dpbulk {

namespace {

// Neumaier-compensated running sum; order is fixed by the caller.
struct CompensatedSum {
  double sum = 0.0;
  double carry = 0.0;

  void add(double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x))
      carry += (sum - t) + x;
    else
      carry += (x - t) + sum;
    sum = t;
  }
  double value() const { return sum + carry; }
};

double distance(const Vec3& a, const Vec3& b) {
  const double dx = a[0] - b[0], dy = a[1] - b[1], dz = a[2] - b[2];
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

void check_pair(const MassConfiguration& f1, const MassConfiguration& f2) {
  validate(f1);
  validate(f2);
  if (f1.sigma != f2.sigma)
    throw ValidationError("mass configurations have different sigma");
}

}  // namespace

void validate(const MassConfiguration& cfg) {
  if (!(cfg.sigma > 0.0) || !std::isfinite(cfg.sigma))
    throw ValidationError("mass configuration sigma must be positive");
  if (cfg.points.empty()) throw ValidationError("mass configuration is empty");
  for (const auto& p : cfg.points) {
    if (!(p.m > 0.0) || !std::isfinite(p.m))
      throw ValidationError("point masses must be positive");
    for (double x : p.r)
      if (!std::isfinite(x)) throw ValidationError("point position is not finite");
  }
}

double smeared_pair_energy(double m1, double m2, double d, double sigma) {
  const double G = constants().G;
  if (d < 1e-6 * sigma) return -G * m1 * m2 / (sigma * std::sqrt(pi));
  return -G * m1 * m2 * std::erf(d / (2.0 * sigma)) / d;
}

double pair_potential(const MassConfiguration& f1, const MassConfiguration& f2) {
  check_pair(f1, f2);
  // Canonical outer/inner order makes the result symmetric bit for bit.
  const bool swap = std::lexicographical_compare(f2.points.begin(), f2.points.end(),
                                                 f1.points.begin(), f1.points.end());
  const auto& outer = swap ? f2.points : f1.points;
  const auto& inner = swap ? f1.points : f2.points;
  CompensatedSum total;
  for (const auto& a : outer)
    for (const auto& b : inner)
      total.add(smeared_pair_energy(a.m, b.m, distance(a.r, b.r), f1.sigma));
  return total.value();
}

CatnessResult catness(const MassConfiguration& f1, const MassConfiguration& f2) {
  CatnessResult res;
  res.u12 = pair_potential(f1, f2);
  res.u11 = pair_potential(f1, f1);
  res.u22 = pair_potential(f2, f2);
  res.ell_g_sq = -(res.u11 + res.u22) + 2.0 * res.u12;
  res.tau_g = res.ell_g_sq == 0.0 ? std::numeric_limits<double>::infinity()
                                  : constants().hbar / res.ell_g_sq;
  return res;
}

MassConfiguration translated(MassConfiguration cfg, const Vec3& shift) {
  for (auto& p : cfg.points)
    for (int i = 0; i < 3; ++i) p.r[i] += shift[i];
  return cfg;
}

QuadratureGrid default_quadrature_grid(double sigma) {
  QuadratureGrid g;
  g.spacing = sigma / 6.0;
  g.margin = 6.0 * sigma;
  return g;
}

}  // namespace dpbulk
