#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "dpbulk/gaussian_dynamics.hpp"

namespace dpbulk {

/// Oscillator units of one mode: length sqrt(hbar/(mu w_k)), momentum
/// sqrt(hbar mu w_k), time 1/w_k, energy hbar w_k. The Fock oracle works in
/// these units internally (hbar = mu = w_k = 1).
struct NaturalUnits {
  double length = 0.0;
  double momentum = 0.0;
  double time = 0.0;
  double energy = 0.0;
};

/// Requires omega_k > 0.
NaturalUnits natural_units(const ModeDynamicsParams& params);
GaussianState to_natural(const GaussianState& cgs, const NaturalUnits& units);
GaussianState to_cgs(const GaussianState& natural, const NaturalUnits& units);

/// Ladder-operator matrices u = (a + a^+)/sqrt(2), pi = i (a^+ - a)/sqrt(2),
/// H = (pi^2 + u^2)/2 on levels 0..n_max-1. Natural units.
struct FockOperators {
  Eigen::MatrixXcd u;
  Eigen::MatrixXcd pi;
  Eigen::MatrixXcd H;
};

/// n_max >= 4. The truncation corrupts [u, pi] in the top level only.
FockOperators build_operators(int n_max);
/// Same matrices scaled to CGS for the mode `params`.
FockOperators build_operators(int n_max, const ModeDynamicsParams& params);

/// Dense density matrix of one scalar quadrature (n_components is forced to 1).
/// rho is dimensionless, in the number basis.
struct FockState {
  int n_max = 0;
  Eigen::MatrixXcd rho;
  ModeDynamicsParams params;
};

FockState fock_ground_state(const ModeDynamicsParams& params, int n_max);

/// D(alpha) S(r) |0>, with alpha and r in natural units: <u> = sqrt(2) Re alpha,
/// <pi> = sqrt(2) Im alpha, Var u = exp(-2r)/2 before displacement.
FockState fock_gaussian_state(const ModeDynamicsParams& params, int n_max,
                              std::complex<double> alpha, double squeeze_r = 0.0);

/// Normalized (|+d/2> + |-d/2>) of displaced ground states; d in CGS mode units.
FockState fock_cat_state(const ModeDynamicsParams& params, int n_max, double d);

struct FockInvariants {
  double trace_error = 0.0;        ///< |tr rho - 1|
  double hermiticity_error = 0.0;  ///< max |rho - rho^+|
  double min_eigenvalue = 0.0;
  double top_population = 0.0;     ///< population of the two highest levels
};

FockInvariants check_invariants(const FockState& state);

/// Population of the top two levels above which evolution aborts.
inline constexpr double kLeakageLimit = 1e-6;

/// Integrates drho/dt = -(i/hbar)[H, rho] - (mu w_G^2 / 2 hbar)[u, [u, rho]]
/// with fixed-step RK4 for time t (s) using steps no longer than dt (s).
/// Throws ValidationError if dt does not resolve both time scales, and
/// NumericalGuardError on truncation leakage or trace drift.
FockState evolve_fock(const FockState& state, double t, double dt);

/// Largest admissible step for `state`, s:
/// 0.01 min(1/w_k, hbar / (mu w_G^2 <u^2>)).
double max_fock_step(const FockState& state);

/// Five moments in natural units / in CGS.
GaussianState fock_moments_natural(const FockState& state);
GaussianState fock_moments(const FockState& state);

/// <H>, erg.
double fock_energy(const FockState& state);

/// <du^4>/<du^2>^2 - 3 for the position distribution.
double u_excess_kurtosis(const FockState& state);

/// <x|rho|x'> with x, x' in natural length units.
std::complex<double> position_matrix_element(const FockState& state, double x, double xp);

struct CoherenceDecay {
  std::vector<double> times;       ///< s
  std::vector<double> magnitudes;  ///< |<-d/2|rho(t)|+d/2>| / same at t = 0
  double fitted_rate = 0.0;        ///< 1/s, least-squares slope of -log(magnitude)
  double predicted_rate = 0.0;     ///< mu w_G^2 d^2 / (2 hbar)
};

/// Evolves the cat state of separation d (cm) and tracks its position-basis
/// coherence. Intended for w_k t_final << 1.
CoherenceDecay coherence_decay_fock(const ModeDynamicsParams& params, double d,
                                    double t_final, int n_samples, int n_max = 30);

}  // namespace dpbulk
