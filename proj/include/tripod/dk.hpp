#pragma once

#include <array>
#include <limits>

#include "tripod/config.hpp"
#include "tripod/liouville.hpp"

namespace tripod::dk {

// Closed-form analytics for the overlap ordering with equal dephasing rates. Every entry point
// throws Error(WrongOrdering) for any other ordering or for unequal rates. Times are in units of
// the pulse width T = cfg.width.

/// Coefficients of the decoupled (s, u) pair and the decay of v.
struct SuCoefficients {
  double omega_su = 0.0;
  double delta_su = 0.0;
  double gamma_v = 0.0;
};

/// Closed forms in theta for a common rate gamma.
SuCoefficients su_coefficients(double theta, double gamma);
SuCoefficients su_two_level(double t, const PulseConfig& cfg);

/// Reduced time x = 4 t tau / T^2.
double reduced_time(double t, const PulseConfig& cfg);

/// Chirp profile f1(x): Delta(t) = gamma f1(x).
double chirp_profile(double x);
/// Coupling profile f2(x): d(xi)/dt = (tau/T^2) f2(x).
double coupling_profile(double x);

/// Rotation angle diagonalizing the (s, u) generator. Because Omega_su and Delta_su vanish together
/// at x = 0, their ratio -2 sqrt 2/(1 + e^x) is smooth and the principal arctangent is continuous.
struct XiAngle {
  double xi = 0.0;
  double xi_dot = 0.0;
};

XiAngle xi_angle(double t, const PulseConfig& cfg);

/// Eigenvalues (Delta_su/2)(1 +- sec 2 xi) of the (s, u) generator.
struct Energies {
  double plus = 0.0;
  double minus = 0.0;
};

Energies energies(double t, const PulseConfig& cfg);

/// Sech/tanh model fitted to the coupling and chirp near the coupling maximum.
struct DKParams {
  double amplitude = 0.0;  ///< A (1/T)
  double t_eff = 0.0;      ///< effective duration (T)
  double t_max = 0.0;      ///< coupling maximum (T)
  double d_const = 0.0;    ///< constant decay offset D (1/T)
  double b = 0.0;          ///< tanh chirp amplitude B (1/T)
  double alpha = 0.0;
  double beta = 0.0;
  double delta = 0.0;
};

/// arctan(2 sqrt 2)/(2 pi), the coupling area over 2 pi.
double alpha_constant();

/// Throws Error(ZeroDelay) for tau = 0.
DKParams dk_params(const PulseConfig& cfg);
DKParams dk_params(double gamma, double tau, double width = 1.0);

/// Asymptotic survival and transition amplitudes of the sech/tanh model.
struct DKAmplitudes {
  double u_pp = 0.0;
  double u_mp = 0.0;
};

/// Throws Error(GammaPole) when a gamma-function argument lies within 1e-12 of a pole.
DKAmplitudes dk_amplitudes(const DKParams& p);

/// Integrands of the adiabatic exponents as functions of the reduced time.
double g_minus(double x);
double g_plus(double x);
double g_s(double x);

/// Dimensionless constants of the adiabatic exponents.
struct AdiabaticConstants {
  double c_s = 0.0;
  double c_u = 0.0;
  double error_estimate = 0.0;
};

/// Adaptive Gauss-Kronrod quadrature over the half lines at relative tolerance `tol`.
/// Throws Error(QuadratureFailed) when the error estimate exceeds 1e-8.
AdiabaticConstants adiabatic_constants(double tol = 1e-12);

/// Exponents I_s = -c_s gamma T^2/(4 tau) and the finite part -c_u gamma T^2/(4 tau) of I_u.
/// The remaining part of I_u is the factor exp(-gamma t) applied by the observables.
struct AdiabaticIntegrals {
  double i_s = 0.0;
  double i_u_finite = 0.0;
  double c_s = 0.0;
  double c_u = 0.0;
};

AdiabaticIntegrals adiabatic_integrals(const PulseConfig& cfg);

/// Final dark-state population and the real part of the dark coherence evaluated at time t.
struct DarkObservables {
  double rho_a11 = 0.0;
  double re_rho_a12 = 0.0;
};

DarkObservables analytic_dark_observables(const PulseConfig& cfg, double t);

/// F^2 = rho^a_11 + Re rho^a_12(t); for infinite t only the population survives.
double analytic_fidelity(const PulseConfig& cfg, double t = std::numeric_limits<double>::infinity());

/// Leading-order expansion of analytic_fidelity for gamma T^2/tau << 1.
double weak_dephasing_fidelity(const PulseConfig& cfg, double t);

/// Bare-basis state after the pulses built from the analytic dark observables at time t.
DensityMatrix analytic_bare_state(const PulseConfig& cfg, double t);
/// Final bare populations (independent of t).
std::array<double, 4> analytic_bare_populations(const PulseConfig& cfg);

}  // namespace tripod::dk
