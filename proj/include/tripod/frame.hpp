#pragma once

#include <Eigen/Dense>

#include "tripod/config.hpp"
#include "tripod/pulses.hpp"

namespace tripod {

using Matrix4c = Eigen::Matrix4cd;
using Vector4c = Eigen::Vector4cd;

/// Resonant RWA Hamiltonian in the bare basis psi1..psi4 (psi2 is the shared excited state).
Matrix4c hamiltonian(double t, const PulseConfig& cfg);
Matrix4c hamiltonian(const Envelopes& env);

/// Instantaneous eigenbasis. Columns of `rotation` are the two dark states followed by the two
/// bright states, built directly from the mixing angles so that the phase convention is fixed.
struct AdiabaticFrame {
  Matrix4c rotation;
  std::array<double, 4> energies{};  ///< (0, 0, Omega/2, -Omega/2)
  MixingAngles angles;
};

AdiabaticFrame adiabatic_frame(double t, const PulseConfig& cfg);

/// Rotation matrix for given angles.
Matrix4c rotation_matrix(double theta, double phi);
/// dR/dt = dR/dtheta * theta_dot + dR/dphi * phi_dot.
Matrix4c rotation_rate(const MixingAngles& a);
/// Non-adiabatic connection R^dagger dR/dt.
Matrix4c frame_connection(const MixingAngles& a);

/// Geometric phase: integral of phi_dot * sin(theta) over the configured window.
struct GeometricPhase {
  double value = 0.0;
  double error_estimate = 0.0;
};

GeometricPhase geometric_phase_detail(const PulseConfig& cfg);
double geometric_phase(const PulseConfig& cfg);

/// The superposition reached by ideal adiabatic following.
struct TargetState {
  Vector4c amplitudes;
  double thetag = 0.0;
};

TargetState target_state(const PulseConfig& cfg);
/// Same, with the geometric phase supplied by the caller.
TargetState target_state(Ordering ordering, double thetag);

}  // namespace tripod
