#include "tripod/effective.hpp"

#include <cmath>
#include <numbers>

#include "tripod/frame.hpp"

namespace tripod {

namespace {

using cd = std::complex<double>;
using Block = std::array<std::array<cd, 2>, 2>;

// Dark block of R^dagger (-gamma o rho) R for rho = R rho^a R^dagger, with rho^a built from a
// dark block and the bright-population substitution. `trace_one` selects the inhomogeneous part.
Block rotated_decay(const Matrix4c& r, const DephasingMatrix& gamma, const Block& dark, bool trace_one) {
  Matrix4c ra = Matrix4c::Zero();
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) ra(i, j) = dark[i][j];
  const cd bright = (trace_one ? 0.5 : 0.0) - 0.5 * (dark[0][0] + dark[1][1]);
  ra(2, 2) = bright;
  ra(3, 3) = bright;
  const Matrix4c rho = r * ra * r.adjoint();
  Matrix4c decay;
  for (int m = 0; m < 4; ++m)
    for (int n = 0; n < 4; ++n) decay(m, n) = -gamma(m, n) * rho(m, n);
  const Matrix4c back = r.adjoint() * decay * r;
  Block out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out[i][j] = back(i, j);
  return out;
}

}  // namespace

EffectiveRates effective_rates(const MixingAngles& a, const DephasingMatrix& gamma) {
  const double g13 = gamma(0, 2);
  const double g14 = gamma(0, 3);
  const double g34 = gamma(2, 3);
  const double st = std::sin(a.theta);
  const double ct = std::cos(a.theta);
  const double sp = std::sin(a.phi);
  const double cp = std::cos(a.phi);
  const double s2t = std::sin(2.0 * a.theta);
  const double s2p = std::sin(2.0 * a.phi);
  const double c2p = std::cos(2.0 * a.phi);
  const double s4p = std::sin(4.0 * a.phi);
  const double ct2 = ct * ct;
  const double st2 = st * st;

  // Gamma_1(phi) and its complement with the two rates swapped.
  const double g1 = cp * cp * g13 + sp * sp * g14;
  const double g1_swapped = sp * sp * g13 + cp * cp * g14;

  EffectiveRates r;
  r.gamma_s = 0.5 * s2t * s2t * g1 + 0.5 * ct2 * ct2 * s2p * s2p * g34;
  r.gamma_u = 0.25 * s2t * s2t * g1 + 0.25 * (1.0 + st2) * (1.0 + st2) * s2p * s2p * g34;
  r.gamma_v = ct2 * g1_swapped + st2 * c2p * c2p * g34;
  r.omega_su = 0.25 * s2t * s2t * g1 - 0.25 * ct2 * (1.0 + st2) * s2p * s2p * g34;
  r.omega_sv = -0.25 * ct2 * st * s4p * g34 + 0.5 * ct2 * st * s2p * (g14 - g13);
  r.omega_uv = (g13 - g14) * ct2 * st * sp * cp - 0.25 * s4p * st * (1.0 + st2) * g34;
  return r;
}

SuvTrajectory integrate_suv(const PulseConfig& cfg, SuvMode mode, std::size_t samples, const Tolerances& tol) {
  cfg.validate();
  if (samples < 2) throw Error(ErrorCode::InvalidConfig, "at least two samples are required");

  using State = std::array<double, 3>;
  auto rhs = [&cfg, mode](const State& y, State& dydt, double t) {
    const MixingAngles a = mixing_angles(t, cfg);
    const EffectiveRates k = effective_rates(a, cfg.gamma);
    const double geometric = 2.0 * a.phi_dot * std::sin(a.theta);
    const double s = y[0];
    const double u = y[1];
    const double v = y[2];
    if (mode == SuvMode::Full) {
      dydt[0] = -k.gamma_s * s + std::numbers::sqrt2 * (k.omega_su * u + k.omega_sv * v);
      dydt[1] = -k.gamma_u * u + (geometric + k.omega_uv) * v + std::numbers::sqrt2 * k.omega_su * s;
      dydt[2] = -k.gamma_v * v + (-geometric + k.omega_uv) * u + std::numbers::sqrt2 * k.omega_sv * s;
    } else {
      dydt[0] = -k.gamma_s * s;
      dydt[1] = -k.gamma_u * u + geometric * v;
      dydt[2] = -k.gamma_v * v - geometric * u;
    }
  };

  SuvTrajectory traj;
  traj.times = linspace(cfg.t_start, cfg.t_end, samples);
  const DarkBlochVector x0;
  const auto raw = integrate_dense(rhs, State{x0.s, x0.u, x0.v}, traj.times, tol, &traj.stats);
  traj.states.reserve(raw.size());
  for (const State& y : raw) traj.states.push_back({y[0], y[1], y[2]});
  return traj;
}

DensityMatrix adiabatic_state(const DarkBlochVector& x) {
  DensityMatrix ra = DensityMatrix::Zero();
  const double dark = 0.25 - 0.5 * x.s;
  const double bright = 0.25 + 0.5 * x.s;
  const cd coherence = cd{x.u, x.v} / std::numbers::sqrt2;
  ra(0, 0) = dark;
  ra(1, 1) = dark;
  ra(2, 2) = bright;
  ra(3, 3) = bright;
  ra(0, 1) = coherence;
  ra(1, 0) = std::conj(coherence);
  return ra;
}

DensityMatrix bare_state(const DarkBlochVector& x, double t, const PulseConfig& cfg) {
  return to_bare(adiabatic_state(x), t, cfg);
}

DissipatorTensor dissipator_tensor(const MixingAngles& angles, const DephasingMatrix& gamma) {
  const Matrix4c r = rotation_matrix(angles.theta, angles.phi);
  DissipatorTensor out;
  const Block zero{};
  const Block inhomogeneous = rotated_decay(r, gamma, zero, true);
  for (int k = 0; k < 2; ++k)
    for (int l = 0; l < 2; ++l) out.d0[k][l] = -inhomogeneous[k][l];
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      Block unit{};
      unit[i][j] = 1.0;
      const Block action = rotated_decay(r, gamma, unit, false);
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) out.d[i][j][k][l] = -action[k][l];
    }
  return out;
}

DissipatorTensor dissipator_tensor(double t, const PulseConfig& cfg) {
  return dissipator_tensor(mixing_angles(t, cfg), cfg.gamma);
}

EffectiveRates rates_from_tensor(const DissipatorTensor& d) {
  EffectiveRates r;
  r.gamma_s = (d(0, 0, 0, 0) + d(1, 1, 0, 0)).real();
  r.gamma_u = (d(0, 1, 0, 1) + d(0, 1, 1, 0)).real();
  r.gamma_v = (d(0, 1, 0, 1) - d(0, 1, 1, 0)).real();
  r.omega_su = d(0, 0, 0, 1).real();
  r.omega_sv = d(0, 0, 0, 1).imag();
  r.omega_uv = d(0, 1, 1, 0).imag();
  return r;
}

double inversion_rate(const DissipatorTensor& d) { return (d(1, 1, 0, 0) - d(0, 0, 0, 0)).real(); }

}  // namespace tripod
