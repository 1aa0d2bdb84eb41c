#include "dpbulk/fock_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "dpbulk/constants.hpp"
#include "dpbulk/errors.hpp"

namespace dpbulk {

namespace {

std::string short_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
constexpr std::complex<double> kI{0.0, 1.0};

void check_n_max(int n_max) {
  if (n_max < 4) throw ValidationError("Fock truncation n_max must be >= 4");
}

ModeDynamicsParams scalar_params(ModeDynamicsParams p) {
  validate(p);
  if (!(p.omega_k > 0.0)) throw ValidationError("Fock oracle needs omega_k > 0");
  p.n_components = 1;
  return p;
}

Matrix annihilation(int n) {
  Matrix a = Matrix::Zero(n, n);
  for (int k = 1; k < n; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
  return a;
}

// Dimensionless diffusion strength (w_G / w_k)^2.
double diffusion_strength(const ModeDynamicsParams& p) {
  const double r = p.omega_G / p.omega_k;
  return r * r;
}

FockState from_vector(const ModeDynamicsParams& params, const Vector& psi) {
  FockState s;
  s.n_max = static_cast<int>(psi.size());
  s.params = params;
  s.rho = psi * psi.adjoint();
  return s;
}

// exp(A) v by Taylor series; A is small enough in norm for this to converge.
Vector apply_exponential(const Matrix& A, const Vector& v) {
  Vector term = v;
  Vector sum = v;
  for (int k = 1; k < 400; ++k) {
    term = A * term / static_cast<double>(k);
    sum += term;
    if (term.norm() < 1e-18 * sum.norm()) return sum;
  }
  throw NumericalGuardError("displacement series did not converge");
}

// D(alpha) S(r)|0> in the first n levels, built in a padded basis and truncated.
Vector gaussian_vector(int n, std::complex<double> alpha, double r) {
  const int padded = n + 60 + static_cast<int>(4.0 * std::norm(alpha));
  Vector psi = Vector::Zero(padded);
  const double t = std::tanh(r);
  psi(0) = 1.0 / std::sqrt(std::cosh(r));
  for (int k = 2; k < padded; k += 2)
    psi(k) = psi(k - 2) * (-t) * std::sqrt(static_cast<double>(k - 1) / static_cast<double>(k));
  if (alpha != 0.0) {
    const Matrix a = annihilation(padded);
    const Matrix gen = alpha * a.adjoint() - std::conj(alpha) * a;
    psi = apply_exponential(gen, psi);
  }
  Vector out = psi.head(n);
  const double kept = out.squaredNorm();
  if (1.0 - kept > 1e-12)
    throw NumericalGuardError("Gaussian state does not fit in n_max = " + std::to_string(n) +
                              " levels (lost " + short_number(1.0 - kept) + ")");
  return out / std::sqrt(kept);
}

Matrix lindblad_rhs(const Matrix& rho, const FockOperators& ops, double gamma) {
  const Matrix comm = ops.u * rho - rho * ops.u;
  return -kI * (ops.H * rho - rho * ops.H) - 0.5 * gamma * (ops.u * comm - comm * ops.u);
}

double top_population(const Matrix& rho) {
  const auto n = rho.rows();
  return rho(n - 1, n - 1).real() + rho(n - 2, n - 2).real();
}

double expectation(const Matrix& rho, const Matrix& op) { return (rho * op).trace().real(); }

// Hermite functions psi_n(x) in natural units.
Eigen::VectorXd hermite_functions(int n, double x) {
  Eigen::VectorXd psi(n);
  psi(0) = std::pow(pi, -0.25) * std::exp(-0.5 * x * x);
  if (n > 1) psi(1) = std::sqrt(2.0) * x * psi(0);
  for (int k = 2; k < n; ++k)
    psi(k) = std::sqrt(2.0 / k) * x * psi(k - 1) - std::sqrt((k - 1.0) / k) * psi(k - 2);
  return psi;
}

}  // namespace

NaturalUnits natural_units(const ModeDynamicsParams& params) {
  const ModeDynamicsParams p = scalar_params(params);
  const double hbar = constants().hbar;
  NaturalUnits u;
  u.length = std::sqrt(hbar / (p.mode_mass * p.omega_k));
  u.momentum = std::sqrt(hbar * p.mode_mass * p.omega_k);
  u.time = 1.0 / p.omega_k;
  u.energy = hbar * p.omega_k;
  return u;
}

GaussianState to_natural(const GaussianState& s, const NaturalUnits& u) {
  return {s.mean_u / u.length, s.mean_pi / u.momentum, s.cov_uu / (u.length * u.length),
          s.cov_upi / (u.length * u.momentum), s.cov_pipi / (u.momentum * u.momentum)};
}

GaussianState to_cgs(const GaussianState& s, const NaturalUnits& u) {
  return {s.mean_u * u.length, s.mean_pi * u.momentum, s.cov_uu * u.length * u.length,
          s.cov_upi * u.length * u.momentum, s.cov_pipi * u.momentum * u.momentum};
}

FockOperators build_operators(int n_max) {
  check_n_max(n_max);
  const Matrix a = annihilation(n_max);
  const Matrix ad = a.adjoint();
  FockOperators ops;
  ops.u = (a + ad) / std::sqrt(2.0);
  ops.pi = kI * (ad - a) / std::sqrt(2.0);
  ops.H = 0.5 * (ops.pi * ops.pi + ops.u * ops.u);
  return ops;
}

FockOperators build_operators(int n_max, const ModeDynamicsParams& params) {
  const NaturalUnits nu = natural_units(params);
  FockOperators ops = build_operators(n_max);
  ops.u *= nu.length;
  ops.pi *= nu.momentum;
  ops.H *= nu.energy;
  return ops;
}

FockState fock_ground_state(const ModeDynamicsParams& params, int n_max) {
  check_n_max(n_max);
  Vector psi = Vector::Zero(n_max);
  psi(0) = 1.0;
  return from_vector(scalar_params(params), psi);
}

FockState fock_gaussian_state(const ModeDynamicsParams& params, int n_max,
                              std::complex<double> alpha, double squeeze_r) {
  check_n_max(n_max);
  return from_vector(scalar_params(params), gaussian_vector(n_max, alpha, squeeze_r));
}

FockState fock_cat_state(const ModeDynamicsParams& params, int n_max, double d) {
  check_n_max(n_max);
  const ModeDynamicsParams p = scalar_params(params);
  const double d_nat = d / natural_units(p).length;
  // <u> = sqrt(2) Re alpha = d/2
  const std::complex<double> alpha{d_nat / (2.0 * std::sqrt(2.0)), 0.0};
  Vector psi = gaussian_vector(n_max, alpha, 0.0) + gaussian_vector(n_max, -alpha, 0.0);
  psi.normalize();
  return from_vector(p, psi);
}

FockInvariants check_invariants(const FockState& s) {
  FockInvariants inv;
  inv.trace_error = std::abs(s.rho.trace() - 1.0);
  inv.hermiticity_error = (s.rho - s.rho.adjoint()).cwiseAbs().maxCoeff();
  const Matrix herm = 0.5 * (s.rho + s.rho.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> eig(herm, Eigen::EigenvaluesOnly);
  inv.min_eigenvalue = eig.eigenvalues().minCoeff();
  inv.top_population = top_population(s.rho);
  return inv;
}

double max_fock_step(const FockState& s) {
  const double gamma = diffusion_strength(s.params);
  const FockOperators ops = build_operators(s.n_max);
  const double u2 = std::max(expectation(s.rho, ops.u * ops.u), 0.5);
  const double bound_nat = 0.01 * std::min(1.0, gamma > 0.0 ? 1.0 / (gamma * u2) : 1.0);
  return bound_nat / s.params.omega_k;
}

FockState evolve_fock(const FockState& state, double t, double dt) {
  const ModeDynamicsParams p = scalar_params(state.params);
  if (!(t >= 0.0) || !std::isfinite(t)) throw ValidationError("time must be finite and >= 0");
  if (!(dt > 0.0)) throw ValidationError("time step must be positive");
  if (dt > max_fock_step(state) * (1.0 + 1e-12))
    throw ValidationError("time step does not resolve the oscillation and decoherence scales");

  const long steps = std::max(1L, static_cast<long>(std::ceil(t / dt - 1e-9)));
  const double h = t * p.omega_k / static_cast<double>(steps);
  const double gamma = diffusion_strength(p);
  const FockOperators ops = build_operators(state.n_max);

  FockState out = state;
  out.params = p;
  Matrix& rho = out.rho;
  if (t == 0.0) return out;
  for (long i = 0; i < steps; ++i) {
    const Matrix k1 = lindblad_rhs(rho, ops, gamma);
    const Matrix k2 = lindblad_rhs(rho + 0.5 * h * k1, ops, gamma);
    const Matrix k3 = lindblad_rhs(rho + 0.5 * h * k2, ops, gamma);
    const Matrix k4 = lindblad_rhs(rho + h * k3, ops, gamma);
    rho += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    const double leak = top_population(rho);
    if (leak > kLeakageLimit)
      throw NumericalGuardError("Fock truncation leakage: top-level population " +
                                short_number(leak) + " exceeds " +
                                short_number(kLeakageLimit));
  }
  const double drift = std::abs(rho.trace() - 1.0);
  if (drift > 1e-9 * static_cast<double>(steps))
    throw NumericalGuardError("Fock evolution lost trace: drift " + short_number(drift));
  return out;
}

GaussianState fock_moments_natural(const FockState& s) {
  const FockOperators ops = build_operators(s.n_max);
  GaussianState m;
  m.mean_u = expectation(s.rho, ops.u);
  m.mean_pi = expectation(s.rho, ops.pi);
  m.cov_uu = expectation(s.rho, ops.u * ops.u) - m.mean_u * m.mean_u;
  m.cov_pipi = expectation(s.rho, ops.pi * ops.pi) - m.mean_pi * m.mean_pi;
  const Matrix sym = 0.5 * (ops.u * ops.pi + ops.pi * ops.u);
  m.cov_upi = expectation(s.rho, sym) - m.mean_u * m.mean_pi;
  return m;
}

GaussianState fock_moments(const FockState& s) {
  return to_cgs(fock_moments_natural(s), natural_units(s.params));
}

double fock_energy(const FockState& s) {
  const FockOperators ops = build_operators(s.n_max);
  return expectation(s.rho, ops.H) * natural_units(s.params).energy;
}

double u_excess_kurtosis(const FockState& s) {
  const FockOperators ops = build_operators(s.n_max);
  const double mean = expectation(s.rho, ops.u);
  const Matrix du = ops.u - mean * Matrix::Identity(s.n_max, s.n_max);
  const Matrix du2 = du * du;
  const double m2 = expectation(s.rho, du2);
  const double m4 = expectation(s.rho, du2 * du2);
  return m4 / (m2 * m2) - 3.0;
}

std::complex<double> position_matrix_element(const FockState& s, double x, double xp) {
  const Eigen::VectorXcd left = hermite_functions(s.n_max, x).cast<std::complex<double>>();
  const Eigen::VectorXcd right = hermite_functions(s.n_max, xp).cast<std::complex<double>>();
  return (left.transpose() * s.rho * right)(0, 0);
}

CoherenceDecay coherence_decay_fock(const ModeDynamicsParams& params, double d, double t_final,
                                    int n_samples, int n_max) {
  const ModeDynamicsParams p = scalar_params(params);
  if (!(d >= 0.0)) throw ValidationError("separation d must be >= 0");
  if (!(t_final > 0.0)) throw ValidationError("t_final must be positive");
  if (n_samples < 2) throw ValidationError("need at least 2 samples");

  const NaturalUnits nu = natural_units(p);
  const double x = 0.5 * d / nu.length;
  FockState state = fock_cat_state(p, n_max, d);
  const double initial = std::abs(position_matrix_element(state, -x, x));
  if (!(initial > 0.0)) throw NumericalGuardError("cat coherence vanishes at t = 0");

  CoherenceDecay out;
  out.predicted_rate = com_superposition_decay_rate(p.mode_mass, p.omega_G, d);
  out.times.push_back(0.0);
  out.magnitudes.push_back(1.0);
  const double segment = t_final / n_samples;
  for (int k = 1; k <= n_samples; ++k) {
    state = evolve_fock(state, segment, max_fock_step(state));
    out.times.push_back(segment * k);
    out.magnitudes.push_back(std::abs(position_matrix_element(state, -x, x)) / initial);
  }

  // Least squares of log(magnitude) against t.
  double st = 0.0, sy = 0.0, stt = 0.0, sty = 0.0;
  const double n = static_cast<double>(out.times.size());
  for (std::size_t i = 0; i < out.times.size(); ++i) {
    const double t = out.times[i];
    const double y = std::log(out.magnitudes[i]);
    st += t;
    sy += y;
    stt += t * t;
    sty += t * y;
  }
  out.fitted_rate = -(n * sty - st * sy) / (n * stt - st * st);
  return out;
}

}  // namespace dpbulk
