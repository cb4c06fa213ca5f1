#pragma once

#include "tripod/config.hpp"

namespace tripod {

/// Pump, Stokes and control Rabi frequencies at one instant.
struct Envelopes {
  double pump = 0.0;
  double stokes = 0.0;
  double control = 0.0;
};

/// A Gaussian pulse Omega0 * exp(-(t - center)^2 / (spread * T^2)).
struct GaussianShape {
  double center = 0.0;
  double spread = 1.0;

  double exponent(double t, double width) const;
  double exponent_rate(double t, double width) const;
};

struct PulseShapes {
  GaussianShape pump;
  GaussianShape stokes;
  GaussianShape control;
};

/// Mixing angles and their time derivatives (rad, rad/T).
struct MixingAngles {
  double theta = 0.0;
  double phi = 0.0;
  double theta_dot = 0.0;
  double phi_dot = 0.0;
};

PulseShapes pulse_shapes(const PulseConfig& cfg);

Envelopes pulse_envelopes(double t, const PulseConfig& cfg);

/// tan(phi) = control/stokes and tan(theta) = pump/sqrt(stokes^2 + control^2), evaluated
/// from Gaussian exponent differences so the ratios stay finite after the envelopes underflow.
MixingAngles mixing_angles(double t, const PulseConfig& cfg);

/// Root-sum-square Rabi frequency.
double rms_rabi(double t, const PulseConfig& cfg);
double rms_rabi(const Envelopes& env);

}  // namespace tripod
