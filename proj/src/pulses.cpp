#include "tripod/pulses.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace tripod {

namespace {

// atan(exp(x)) without overflow, and its derivative factor sin*cos = 1/(2 cosh x).
double atan_exp(double x) {
  if (x <= 0.0) return std::atan(std::exp(x));
  return 0.5 * std::numbers::pi - std::atan(std::exp(-x));
}

double half_sech(double x) {
  const double ax = std::abs(x);
  if (ax > 700.0) return 0.0;
  return 1.0 / (2.0 * std::cosh(ax));
}

}  // namespace

double GaussianShape::exponent(double t, double width) const {
  const double d = t - center;
  return -d * d / (spread * width * width);
}

double GaussianShape::exponent_rate(double t, double width) const {
  return -2.0 * (t - center) / (spread * width * width);
}

// Overlap follows the counterintuitive sequence directly. The other three are written so that
// the Stokes (or control) field leads the pump, giving theta(-inf) = 0 and phi(-inf) = 0.
PulseShapes pulse_shapes(const PulseConfig& cfg) {
  const double h = 0.5 * cfg.tau;
  switch (cfg.ordering) {
    case Ordering::Overlap:
      return {{h, 1.0}, {-h, 1.0}, {-h, 1.0}};
    case Ordering::StokesControlPump:
      return {{h, 1.0}, {-h, 1.0}, {0.0, 1.0}};
    case Ordering::ControlStokesPump:
      return {{h, 1.0}, {0.0, 1.0}, {-h, 1.0}};
    case Ordering::Fractional:
      return {{-h, 1.0}, {-h, 2.0}, {h, 2.0}};
  }
  return {};
}

Envelopes pulse_envelopes(double t, const PulseConfig& cfg) {
  const PulseShapes s = pulse_shapes(cfg);
  return {cfg.omega0 * std::exp(s.pump.exponent(t, cfg.width)),
          cfg.omega0 * std::exp(s.stokes.exponent(t, cfg.width)),
          cfg.omega0 * std::exp(s.control.exponent(t, cfg.width))};
}

MixingAngles mixing_angles(double t, const PulseConfig& cfg) {
  const PulseShapes s = pulse_shapes(cfg);
  const double w = cfg.width;
  const double ep = s.pump.exponent(t, w), es = s.stokes.exponent(t, w), ec = s.control.exponent(t, w);
  const double rp = s.pump.exponent_rate(t, w), rs = s.stokes.exponent_rate(t, w),
               rc = s.control.exponent_rate(t, w);

  MixingAngles a;
  // log(control/stokes); identically zero when the two pulses coincide.
  const double d = ec - es;
  const double d_rate = rc - rs;
  a.phi = atan_exp(d);
  a.phi_dot = d_rate * half_sech(d);

  // log(pump / sqrt(stokes^2 + control^2)) via a shifted log-sum-exp.
  const double m = std::max(es, ec);
  const double lse = m + 0.5 * std::log(std::exp(2.0 * (es - m)) + std::exp(2.0 * (ec - m)));
  const double q = ep - lse;
  const double cphi = std::cos(a.phi), sphi = std::sin(a.phi);
  const double q_rate = rp - (cphi * cphi * rs + sphi * sphi * rc);
  a.theta = atan_exp(q);
  a.theta_dot = q_rate * half_sech(q);
  return a;
}

double rms_rabi(const Envelopes& env) {
  return std::sqrt(env.pump * env.pump + env.stokes * env.stokes + env.control * env.control);
}

double rms_rabi(double t, const PulseConfig& cfg) { return rms_rabi(pulse_envelopes(t, cfg)); }

}  // namespace tripod
