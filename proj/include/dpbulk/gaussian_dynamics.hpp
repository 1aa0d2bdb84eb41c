#pragma once

#include <array>

namespace dpbulk {

/// First and symmetrized second central moments of one canonical pair (u, pi)
/// with [u, pi] = i hbar.
///
/// Mode normalization: u_k, pi_k are the Fourier components of the displacement
/// and momentum fields with the 1/sqrt(V) convention, so the kinetic mass of
/// every mode is the bulk density (mode_mass = f, g/cm^3) and the stiffness is
/// f c_l^2 k^2. A complex mode (u_k, u_-k) splits into two real quadratures,
/// each evolving as an independent GaussianState.
struct GaussianState {
  double mean_u = 0.0;
  double mean_pi = 0.0;
  double cov_uu = 0.0;
  double cov_upi = 0.0;  ///< <(du dpi + dpi du)/2>
  double cov_pipi = 0.0;
};

struct ModeDynamicsParams {
  double mode_mass = 0.0;  ///< mu, g/cm^3 for acoustic modes (g for the c.o.m.)
  double omega_k = 0.0;    ///< rad/s; 0 gives a free mode
  double omega_G = 0.0;    ///< Newton-oscillator frequency, rad/s
  int n_components = 3;    ///< scalar quadratures sharing this state (1 or 3)
};

/// Per-axis states of the centre of mass, (mean_u, mean_pi) read as (X, P).
struct ComState {
  std::array<GaussianState, 3> axes{};
};

void validate(const GaussianState& state);
void validate(const ModeDynamicsParams& params);

/// cov_uu cov_pipi - cov_upi^2, compared against hbar^2/4.
double uncertainty_determinant(const GaussianState& state);

/// Ground state of the oscillator (mu, omega_k); omega_k must be positive.
GaussianState oscillator_ground_state(double mode_mass, double omega_k);
/// Minimum-uncertainty packet with position spread `width` (cm or mode units).
GaussianState minimum_uncertainty_state(double width);

/// Exact moments at time t (s) under
///   d<u>/dt = <pi>/mu,          d<pi>/dt = -mu w_k^2 <u>,
///   dCuu/dt = 2 Cupi/mu,        dCupi/dt = Cpipi/mu - mu w_k^2 Cuu,
///   dCpipi/dt = -2 mu w_k^2 Cupi + hbar mu w_G^2.
/// Closed form: harmonic flow plus the integrated momentum diffusion.
GaussianState evolve_mode(const GaussianState& state, const ModeDynamicsParams& params,
                          double t);

/// Same ODEs by fixed-step RK4. The step count is doubled until halving the
/// step changes every moment by less than `tolerance` (relative to the scale
/// of its moment family).
GaussianState integrate_mode(const GaussianState& state, const ModeDynamicsParams& params,
                             double t, double tolerance = 1e-10);

/// Scale-aware relative distance between two states; used for step control
/// and for cross-checking the two evolution routes.
double moment_distance(const GaussianState& a, const GaussianState& b);

/// <H> = n_components * [(Cpipi + <pi>^2)/(2 mu) + mu w_k^2 (Cuu + <u>^2)/2], erg.
double mode_energy(const GaussianState& state, const ModeDynamicsParams& params);

/// Free particle of mass M with position decoherence, per axis:
/// Cpp += hbar M w^2 t, Cxp += Cpp t/M + hbar w^2 t^2/2,
/// Cxx += 2 Cxp t/M + Cpp t^2/M^2 + hbar w^2 t^3/(3M).
ComState evolve_com(const ComState& state, double M, double omega_G, double t);

/// Kinetic energy sum over the three axes, erg.
double com_kinetic_energy(const ComState& state, double M);

/// Decay rate of <X|rho|X'> for |X - X'| = d: M w^2 d^2 / (2 hbar), 1/s.
double com_superposition_decay_rate(double M, double omega_G, double d);

/// sqrt(Cuu + <u>^2) / sigma. Values >= 0.1 leave the small-displacement regime
/// the decoherence term was derived in.
double small_displacement_ratio(const GaussianState& state, double sigma);
inline constexpr double kSmallDisplacementLimit = 0.1;

}  // namespace dpbulk
