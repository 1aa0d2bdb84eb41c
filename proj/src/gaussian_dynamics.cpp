#include "dpbulk/gaussian_dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dpbulk/constants.hpp"
#include "dpbulk/errors.hpp"

namespace dpbulk {

namespace {

// sin(x)/x
double sinc(double x) {
  if (std::abs(x) < 1e-4) return 1.0 - x * x / 6.0 * (1.0 - x * x / 20.0);
  return std::sin(x) / x;
}

// (t/2 - sin(2 w t)/(4 w)) / w^2, finite as w -> 0 (t^3/3).
double sin_squared_integral(double w, double t) {
  const double x = w * t;
  if (std::abs(x) < 1e-2) {
    const double x2 = x * x;
    return t * t * t * (1.0 / 3.0 - x2 / 15.0 + 2.0 * x2 * x2 / 315.0 - x2 * x2 * x2 / 2835.0);
  }
  return (0.5 * t - std::sin(2.0 * x) / (4.0 * w)) / (w * w);
}

struct Derivative {
  double mean_u, mean_pi, cov_uu, cov_upi, cov_pipi;
};

Derivative rhs(const GaussianState& s, const ModeDynamicsParams& p, double hbar) {
  const double mu = p.mode_mass;
  const double stiff = mu * p.omega_k * p.omega_k;
  return {s.mean_pi / mu, -stiff * s.mean_u, 2.0 * s.cov_upi / mu,
          s.cov_pipi / mu - stiff * s.cov_uu,
          -2.0 * stiff * s.cov_upi + hbar * mu * p.omega_G * p.omega_G};
}

GaussianState axpy(const GaussianState& s, double a, const Derivative& d) {
  return {s.mean_u + a * d.mean_u, s.mean_pi + a * d.mean_pi, s.cov_uu + a * d.cov_uu,
          s.cov_upi + a * d.cov_upi, s.cov_pipi + a * d.cov_pipi};
}

GaussianState rk4(GaussianState s, const ModeDynamicsParams& p, double t, long steps) {
  const double hbar = constants().hbar;
  const double dt = t / static_cast<double>(steps);
  for (long i = 0; i < steps; ++i) {
    const Derivative k1 = rhs(s, p, hbar);
    const Derivative k2 = rhs(axpy(s, 0.5 * dt, k1), p, hbar);
    const Derivative k3 = rhs(axpy(s, 0.5 * dt, k2), p, hbar);
    const Derivative k4 = rhs(axpy(s, dt, k3), p, hbar);
    s.mean_u += dt / 6.0 * (k1.mean_u + 2.0 * k2.mean_u + 2.0 * k3.mean_u + k4.mean_u);
    s.mean_pi += dt / 6.0 * (k1.mean_pi + 2.0 * k2.mean_pi + 2.0 * k3.mean_pi + k4.mean_pi);
    s.cov_uu += dt / 6.0 * (k1.cov_uu + 2.0 * k2.cov_uu + 2.0 * k3.cov_uu + k4.cov_uu);
    s.cov_upi += dt / 6.0 * (k1.cov_upi + 2.0 * k2.cov_upi + 2.0 * k3.cov_upi + k4.cov_upi);
    s.cov_pipi +=
        dt / 6.0 * (k1.cov_pipi + 2.0 * k2.cov_pipi + 2.0 * k3.cov_pipi + k4.cov_pipi);
  }
  return s;
}

void check_time(double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw ValidationError("time must be finite and >= 0");
}

}  // namespace

void validate(const GaussianState& s) {
  for (double v : {s.mean_u, s.mean_pi, s.cov_uu, s.cov_upi, s.cov_pipi})
    if (!std::isfinite(v)) throw ValidationError("Gaussian state has non-finite moments");
  if (!(s.cov_uu > 0.0) || !(s.cov_pipi > 0.0))
    throw ValidationError("Gaussian state variances must be positive");
  const double hbar = constants().hbar;
  if (uncertainty_determinant(s) < 0.25 * hbar * hbar * (1.0 - 1e-9))
    throw ValidationError("Gaussian state violates the Robertson-Schroedinger bound");
}

void validate(const ModeDynamicsParams& p) {
  if (!(p.mode_mass > 0.0) || !std::isfinite(p.mode_mass))
    throw ValidationError("mode mass must be positive");
  if (!(p.omega_k >= 0.0) || !std::isfinite(p.omega_k))
    throw ValidationError("omega_k must be >= 0");
  if (!(p.omega_G >= 0.0) || !std::isfinite(p.omega_G))
    throw ValidationError("omega_G must be >= 0");
  if (p.n_components != 1 && p.n_components != 3)
    throw ValidationError("n_components must be 1 or 3");
}

double uncertainty_determinant(const GaussianState& s) {
  return s.cov_uu * s.cov_pipi - s.cov_upi * s.cov_upi;
}

GaussianState oscillator_ground_state(double mode_mass, double omega_k) {
  if (!(mode_mass > 0.0) || !(omega_k > 0.0))
    throw ValidationError("ground state needs positive mode mass and frequency");
  const double hbar = constants().hbar;
  return {0.0, 0.0, hbar / (2.0 * mode_mass * omega_k), 0.0, 0.5 * hbar * mode_mass * omega_k};
}

GaussianState minimum_uncertainty_state(double width) {
  if (!(width > 0.0)) throw ValidationError("packet width must be positive");
  const double hbar = constants().hbar;
  return {0.0, 0.0, width * width, 0.0, hbar * hbar / (4.0 * width * width)};
}

GaussianState evolve_mode(const GaussianState& s, const ModeDynamicsParams& p, double t) {
  validate(s);
  validate(p);
  check_time(t);
  const double hbar = constants().hbar;
  const double mu = p.mode_mass;
  const double w = p.omega_k;
  const double x = w * t;
  const double c = std::cos(x);
  // Flow matrix [[c, a], [-b, c]] of the harmonic part.
  const double a = t / mu * sinc(x);            // sin(wt)/(mu w)
  const double b = mu * w * w * t * sinc(x);    // mu w sin(wt)

  GaussianState out;
  out.mean_u = c * s.mean_u + a * s.mean_pi;
  out.mean_pi = -b * s.mean_u + c * s.mean_pi;
  out.cov_uu = c * c * s.cov_uu + 2.0 * a * c * s.cov_upi + a * a * s.cov_pipi;
  out.cov_upi = -b * c * s.cov_uu + (c * c - a * b) * s.cov_upi + a * c * s.cov_pipi;
  out.cov_pipi = b * b * s.cov_uu - 2.0 * b * c * s.cov_upi + c * c * s.cov_pipi;

  // Integrated diffusion D = hbar mu w_G^2 in the pi-pi slot, transported by the flow.
  const double D = hbar * mu * p.omega_G * p.omega_G;
  const double sx = sinc(x);
  out.cov_uu += D / (mu * mu) * sin_squared_integral(w, t);
  out.cov_upi += D / mu * 0.5 * t * t * sx * sx;
  out.cov_pipi += D * (t - w * w * sin_squared_integral(w, t));
  return out;
}

double moment_distance(const GaussianState& a, const GaussianState& b) {
  const double su = std::sqrt(std::max(a.cov_uu, b.cov_uu));
  const double sp = std::sqrt(std::max(a.cov_pipi, b.cov_pipi));
  auto rel = [](double x, double y, double scale) {
    return std::abs(x - y) / std::max({std::abs(x), std::abs(y), scale});
  };
  return std::max({rel(a.mean_u, b.mean_u, su), rel(a.mean_pi, b.mean_pi, sp),
                   rel(a.cov_uu, b.cov_uu, su * su), rel(a.cov_upi, b.cov_upi, su * sp),
                   rel(a.cov_pipi, b.cov_pipi, sp * sp)});
}

GaussianState integrate_mode(const GaussianState& s, const ModeDynamicsParams& p, double t,
                             double tolerance) {
  validate(s);
  validate(p);
  check_time(t);
  if (t == 0.0) return s;
  long steps = std::max(16L, static_cast<long>(std::ceil(p.omega_k * t / 0.05)));
  constexpr long kMaxSteps = 1L << 24;
  GaussianState coarse = rk4(s, p, t, steps);
  while (steps <= kMaxSteps) {
    GaussianState fine = rk4(s, p, t, 2 * steps);
    if (moment_distance(coarse, fine) < tolerance) return fine;
    coarse = fine;
    steps *= 2;
  }
  throw NumericalGuardError("RK4 step control did not converge within " +
                            std::to_string(kMaxSteps) + " steps");
}

double mode_energy(const GaussianState& s, const ModeDynamicsParams& p) {
  const double mu = p.mode_mass;
  const double kinetic = (s.cov_pipi + s.mean_pi * s.mean_pi) / (2.0 * mu);
  const double potential =
      0.5 * mu * p.omega_k * p.omega_k * (s.cov_uu + s.mean_u * s.mean_u);
  return static_cast<double>(p.n_components) * (kinetic + potential);
}

ComState evolve_com(const ComState& state, double M, double omega_G, double t) {
  if (!(M > 0.0)) throw ValidationError("c.o.m. mass must be positive");
  if (!(omega_G >= 0.0)) throw ValidationError("omega_G must be >= 0");
  check_time(t);
  const double hbar = constants().hbar;
  const double w2 = omega_G * omega_G;
  ComState out;
  for (std::size_t i = 0; i < 3; ++i) {
    const GaussianState& s = state.axes[i];
    validate(s);
    GaussianState& o = out.axes[i];
    o.mean_u = s.mean_u + s.mean_pi * t / M;
    o.mean_pi = s.mean_pi;
    o.cov_pipi = s.cov_pipi + hbar * M * w2 * t;
    o.cov_upi = s.cov_upi + s.cov_pipi * t / M + 0.5 * hbar * w2 * t * t;
    o.cov_uu = s.cov_uu + 2.0 * s.cov_upi * t / M + s.cov_pipi * t * t / (M * M) +
               hbar * w2 * t * t * t / (3.0 * M);
  }
  return out;
}

double com_kinetic_energy(const ComState& state, double M) {
  double e = 0.0;
  for (const auto& s : state.axes) e += (s.cov_pipi + s.mean_pi * s.mean_pi) / (2.0 * M);
  return e;
}

double com_superposition_decay_rate(double M, double omega_G, double d) {
  return M * omega_G * omega_G * d * d / (2.0 * constants().hbar);
}

double small_displacement_ratio(const GaussianState& s, double sigma) {
  if (!(sigma > 0.0)) throw ValidationError("sigma must be positive");
  return std::sqrt(s.cov_uu + s.mean_u * s.mean_u) / sigma;
}

}  // namespace dpbulk
