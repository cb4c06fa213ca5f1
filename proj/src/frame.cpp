#include "tripod/frame.hpp"

#include <cmath>
#include <complex>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <fmt/format.h>

namespace tripod {

namespace {

using cd = std::complex<double>;
constexpr cd I{0.0, 1.0};
const double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

}  // namespace

Matrix4c hamiltonian(const Envelopes& env) {
  Matrix4c h = Matrix4c::Zero();
  h(0, 1) = h(1, 0) = 0.5 * env.pump;
  h(1, 2) = h(2, 1) = 0.5 * env.stokes;
  h(1, 3) = h(3, 1) = 0.5 * env.control;
  return h;
}

Matrix4c hamiltonian(double t, const PulseConfig& cfg) { return hamiltonian(pulse_envelopes(t, cfg)); }

Matrix4c rotation_matrix(double theta, double phi) {
  const double ct = std::cos(theta), st = std::sin(theta);
  const double cp = std::cos(phi), sp = std::sin(phi);
  Matrix4c r;
  // dark states
  r.col(0) << ct, 0.0, -(st * cp + I * sp), -(st * sp - I * cp);
  r.col(1) << ct, 0.0, -(st * cp - I * sp), -(st * sp + I * cp);
  // bright states
  r.col(2) << st, 1.0, ct * cp, ct * sp;
  r.col(3) << st, -1.0, ct * cp, ct * sp;
  return kInvSqrt2 * r;
}

Matrix4c rotation_rate(const MixingAngles& a) {
  const double ct = std::cos(a.theta), st = std::sin(a.theta);
  const double cp = std::cos(a.phi), sp = std::sin(a.phi);
  Matrix4c d_theta;
  d_theta.col(0) << -st, 0.0, -ct * cp, -ct * sp;
  d_theta.col(1) << -st, 0.0, -ct * cp, -ct * sp;
  d_theta.col(2) << ct, 0.0, -st * cp, -st * sp;
  d_theta.col(3) << ct, 0.0, -st * cp, -st * sp;
  Matrix4c d_phi;
  d_phi.col(0) << 0.0, 0.0, -(-st * sp + I * cp), -(st * cp + I * sp);
  d_phi.col(1) << 0.0, 0.0, -(-st * sp - I * cp), -(st * cp - I * sp);
  d_phi.col(2) << 0.0, 0.0, -ct * sp, ct * cp;
  d_phi.col(3) << 0.0, 0.0, -ct * sp, ct * cp;
  return kInvSqrt2 * (a.theta_dot * d_theta + a.phi_dot * d_phi);
}

Matrix4c frame_connection(const MixingAngles& a) {
  return rotation_matrix(a.theta, a.phi).adjoint() * rotation_rate(a);
}

AdiabaticFrame adiabatic_frame(double t, const PulseConfig& cfg) {
  AdiabaticFrame f;
  f.angles = mixing_angles(t, cfg);
  f.rotation = rotation_matrix(f.angles.theta, f.angles.phi);
  const double omega = rms_rabi(t, cfg);
  f.energies = {0.0, 0.0, 0.5 * omega, -0.5 * omega};
  return f;
}

GeometricPhase geometric_phase_detail(const PulseConfig& cfg) {
  if (cfg.ordering == Ordering::Overlap) return {};
  auto integrand = [&cfg](double t) {
    const MixingAngles a = mixing_angles(t, cfg);
    return a.phi_dot * std::sin(a.theta);
  };
  GeometricPhase g;
  g.value = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      integrand, cfg.t_start, cfg.t_end, 20, 1e-13, &g.error_estimate);
  if (!(g.error_estimate < 1e-8))
    throw Error(ErrorCode::QuadratureFailed,
                fmt::format("geometric phase quadrature error {:.3g} exceeds 1e-8", g.error_estimate));
  return g;
}

double geometric_phase(const PulseConfig& cfg) { return geometric_phase_detail(cfg).value; }

TargetState target_state(Ordering ordering, double thetag) {
  TargetState s;
  s.thetag = thetag;
  s.amplitudes.setZero();
  const double c = std::cos(thetag), sn = std::sin(thetag);
  switch (ordering) {
    case Ordering::Fractional:
      s.amplitudes(0) = c;
      s.amplitudes(2) = -sn;
      break;
    case Ordering::StokesControlPump:
      s.amplitudes(2) = -sn;
      s.amplitudes(3) = -c;
      break;
    case Ordering::ControlStokesPump:
      s.amplitudes(2) = -c;
      s.amplitudes(3) = sn;
      break;
    case Ordering::Overlap:
      s.thetag = 0.0;
      s.amplitudes(2) = -kInvSqrt2;
      s.amplitudes(3) = -kInvSqrt2;
      break;
  }
  return s;
}

TargetState target_state(const PulseConfig& cfg) {
  return target_state(cfg.ordering, geometric_phase(cfg));
}

}  // namespace tripod
