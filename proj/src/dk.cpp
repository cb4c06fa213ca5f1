#include "tripod/dk.hpp"

#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <fmt/format.h>

#include "tripod/frame.hpp"
#include "tripod/special.hpp"

namespace tripod::dk {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;
constexpr double kSqrt3 = std::numbers::sqrt3;
const double kAtan2Sqrt2 = std::atan(2.0 * kSqrt2);

void require_overlap(const PulseConfig& cfg) {
  if (cfg.ordering != Ordering::Overlap)
    throw Error(ErrorCode::WrongOrdering,
                fmt::format("closed-form analytics require the overlap ordering, got {}", to_string(cfg.ordering)));
  if (!cfg.gamma.is_uniform())
    throw Error(ErrorCode::WrongOrdering, "closed-form analytics require equal dephasing rates");
}

void require_delay(double tau) {
  if (tau == 0.0) throw Error(ErrorCode::ZeroDelay, "pulse delay tau must be non-zero for the crossing model");
}

// sec(2 xi) = sqrt(1 + 8/(1 + e^x)^2), written for either sign of x.
double sec_two_xi(double x) {
  if (x <= 0.0) {
    const double e = std::exp(x);
    return std::sqrt(1.0 + 8.0 / ((1.0 + e) * (1.0 + e)));
  }
  const double y = std::exp(-x);
  const double q = y / (1.0 + y);
  return std::sqrt(1.0 + 8.0 * q * q);
}

// Delta_su / gamma in reduced time: (1 - e^{2x})/(2 + e^x)^2.
double detuning_profile(double x) {
  if (x <= 0.0) {
    const double e = std::exp(x);
    return (1.0 - e * e) / ((2.0 + e) * (2.0 + e));
  }
  const double y = std::exp(-x);
  return (y * y - 1.0) / ((2.0 * y + 1.0) * (2.0 * y + 1.0));
}

double integrate_half_line(auto f, double a, double b, double tol, double& error) {
  double err = 0.0;
  const double value = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 25, tol, &err);
  error += err;
  return value;
}

}  // namespace

SuCoefficients su_coefficients(double theta, double gamma) {
  const double s2t = std::sin(2.0 * theta);
  const double ct2 = std::cos(theta) * std::cos(theta);
  const double st2 = std::sin(theta) * std::sin(theta);
  SuCoefficients c;
  c.omega_su = 0.25 * gamma * (0.75 * s2t * s2t - ct2);
  c.delta_su = 0.25 * gamma * (0.75 * s2t * s2t + ct2) - gamma * st2;
  c.gamma_v = gamma * ct2;
  return c;
}

SuCoefficients su_two_level(double t, const PulseConfig& cfg) {
  require_overlap(cfg);
  return su_coefficients(mixing_angles(t, cfg).theta, cfg.gamma.common_rate());
}

double reduced_time(double t, const PulseConfig& cfg) { return 4.0 * t * cfg.tau / (cfg.width * cfg.width); }

double chirp_profile(double x) { return detuning_profile(x) * sec_two_xi(x); }

double coupling_profile(double x) {
  if (x <= 0.0) {
    const double e = std::exp(x);
    return 4.0 * kSqrt2 * e / ((1.0 + e) * (1.0 + e) + 8.0);
  }
  const double y = std::exp(-x);
  return 4.0 * kSqrt2 * y / ((1.0 + y) * (1.0 + y) + 8.0 * y * y);
}

XiAngle xi_angle(double t, const PulseConfig& cfg) {
  require_overlap(cfg);
  const double x = reduced_time(t, cfg);
  XiAngle out;
  // tan(2 xi) = 2 sqrt 2 Omega_su / Delta_su = -2 sqrt 2/(1 + e^x).
  const double ratio = x <= 0.0 ? 2.0 * kSqrt2 / (1.0 + std::exp(x)) : 2.0 * kSqrt2 * std::exp(-x) / (1.0 + std::exp(-x));
  out.xi = -0.5 * std::atan(ratio);
  out.xi_dot = cfg.tau / (cfg.width * cfg.width) * coupling_profile(x);
  return out;
}

Energies energies(double t, const PulseConfig& cfg) {
  require_overlap(cfg);
  const double x = reduced_time(t, cfg);
  const double delta_su = cfg.gamma.common_rate() * detuning_profile(x);
  const double sec = sec_two_xi(x);
  return {0.5 * delta_su * (1.0 + sec), 0.5 * delta_su * (1.0 - sec)};
}

double alpha_constant() { return kAtan2Sqrt2 / (2.0 * std::numbers::pi); }

DKParams dk_params(double gamma, double tau, double width) {
  require_delay(tau);
  const double t2 = width * width;
  DKParams p;
  p.amplitude = tau / (kSqrt2 * t2);
  p.t_eff = t2 * kAtan2Sqrt2 / (kSqrt2 * std::numbers::pi * tau);
  p.t_max = t2 / (4.0 * tau) * std::atanh(0.8);
  p.d_const = -4.0 * std::sqrt(6.0) * gamma / 25.0;
  p.b = -64.0 * kSqrt3 * gamma * kAtan2Sqrt2 / (125.0 * std::numbers::pi);
  p.alpha = p.amplitude * p.t_eff;
  p.beta = 0.5 * p.b * p.t_eff;
  p.delta = 0.5 * p.d_const * p.t_eff;
  return p;
}

DKParams dk_params(const PulseConfig& cfg) {
  require_overlap(cfg);
  return dk_params(cfg.gamma.common_rate(), cfg.tau, cfg.width);
}

DKAmplitudes dk_amplitudes(const DKParams& p) {
  const double r = std::hypot(p.beta, p.alpha);
  const double a = p.alpha;
  const double b = p.beta;
  const double d = p.delta;
  const std::array<double, 8> args = {0.5 + d - b, 0.5 + d + b, 0.5 + d + r, 0.5 + d - r,
                                      0.5 + d - b, 0.5 - d - b, 1.0 - b + r, 1.0 - b - r};
  for (double x : args)
    if (special::pole_distance(x) < 1e-12)
      throw Error(ErrorCode::GammaPole,
                  fmt::format("gamma-function argument {} is at a pole (beta = {}, delta = {})", x, b, d));
  using special::gamma;
  DKAmplitudes out;
  out.u_pp = gamma(args[0]) / gamma(args[2]) * gamma(args[1]) / gamma(args[3]);
  out.u_mp = a * gamma(args[4]) / gamma(args[6]) * gamma(args[5]) / gamma(args[7]);
  return out;
}

double g_minus(double x) {
  if (x <= 0.0) {
    const double e = std::exp(x);
    const double root = std::sqrt(1.0 + 8.0 / ((1.0 + e) * (1.0 + e)));
    return 4.0 * (e - 1.0) / ((1.0 + e) * (2.0 + e) * (2.0 + e) * (1.0 + root));
  }
  const double y = std::exp(-x);
  return 4.0 * (1.0 - y) * y * y / ((1.0 + y) * (2.0 * y + 1.0) * (2.0 * y + 1.0) * (1.0 + sec_two_xi(x)));
}

double g_plus(double x) {
  if (x <= 0.0) {
    const double e = std::exp(x);
    return (1.0 - e * e) * (1.0 + sec_two_xi(x)) / (2.0 * (2.0 + e) * (2.0 + e));
  }
  const double y = std::exp(-x);
  return (y * y - 1.0) * (1.0 + sec_two_xi(x)) / (2.0 * (2.0 * y + 1.0) * (2.0 * y + 1.0));
}

double g_s(double x) {
  if (x <= 0.0) {
    const double e = std::exp(x);
    return 2.0 * (1.0 + 2.0 * e) / ((2.0 + e) * (2.0 + e));
  }
  const double y = std::exp(-x);
  return 2.0 * (y + 2.0) * y / ((2.0 * y + 1.0) * (2.0 * y + 1.0));
}

AdiabaticConstants adiabatic_constants(double tol) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  double error = 0.0;
  const double before = integrate_half_line([](double x) { return g_plus(x) - g_s(x); }, -inf, 0.0, tol, error);
  const double after_s = integrate_half_line([](double x) { return g_minus(x) - g_s(x); }, 0.0, inf, tol, error);
  const double after_u =
      integrate_half_line([](double x) { return g_plus(x) - g_s(x) + 1.0; }, 0.0, inf, tol, error);
  if (!(error < 1e-8))
    throw Error(ErrorCode::QuadratureFailed, fmt::format("adiabatic integrals error estimate {:.3g}", error));
  return {-(before + after_s), -(before + after_u), error};
}

AdiabaticIntegrals adiabatic_integrals(const PulseConfig& cfg) {
  require_overlap(cfg);
  require_delay(cfg.tau);
  static const AdiabaticConstants constants = adiabatic_constants();
  const double scale = cfg.gamma.common_rate() * cfg.width * cfg.width / (4.0 * cfg.tau);
  return {-constants.c_s * scale, -constants.c_u * scale, constants.c_s, constants.c_u};
}

DarkObservables analytic_dark_observables(const PulseConfig& cfg, double t) {
  const AdiabaticIntegrals exps = adiabatic_integrals(cfg);
  const DKAmplitudes u = dk_amplitudes(dk_params(cfg));
  const double gamma = cfg.gamma.common_rate();
  DarkObservables out;
  out.rho_a11 = 0.25 + 0.25 * kSqrt3 * u.u_mp * std::exp(exps.i_s);
  out.re_rho_a12 = std::sqrt(3.0 / 8.0) * u.u_pp * std::exp(exps.i_u_finite - gamma * t);
  return out;
}

double analytic_fidelity(const PulseConfig& cfg, double t) {
  const DarkObservables o = analytic_dark_observables(cfg, std::isinf(t) ? 0.0 : t);
  if (std::isinf(t)) return o.rho_a11;
  return o.rho_a11 + o.re_rho_a12;
}

double weak_dephasing_fidelity(const PulseConfig& cfg, double t) {
  const AdiabaticIntegrals exps = adiabatic_integrals(cfg);
  const double gamma = cfg.gamma.common_rate();
  return 0.25 * (1.0 + std::exp(exps.i_s)) + 0.5 * std::exp(exps.i_u_finite - gamma * t);
}

DensityMatrix analytic_bare_state(const PulseConfig& cfg, double t) {
  const DarkObservables o = analytic_dark_observables(cfg, t);
  DensityMatrix ra = DensityMatrix::Zero();
  const double bright = 0.5 * (1.0 - 2.0 * o.rho_a11);
  ra(0, 0) = o.rho_a11;
  ra(1, 1) = o.rho_a11;
  ra(2, 2) = bright;
  ra(3, 3) = bright;
  ra(0, 1) = o.re_rho_a12;
  ra(1, 0) = o.re_rho_a12;
  // Final mixing angles of the overlap ordering: pump last (theta = pi/2), Stokes = control.
  const Matrix4c r = rotation_matrix(0.5 * std::numbers::pi, 0.25 * std::numbers::pi);
  return r * ra * r.adjoint();
}

std::array<double, 4> analytic_bare_populations(const PulseConfig& cfg) {
  const DensityMatrix rho = analytic_bare_state(cfg, 0.0);
  return {rho(0, 0).real(), rho(1, 1).real(), rho(2, 2).real(), rho(3, 3).real()};
}

}  // namespace tripod::dk
