#include "tripod/liouville.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include <Eigen/Eigenvalues>

namespace tripod {

namespace {

using cd = std::complex<double>;
constexpr cd I{0.0, 1.0};
using FlatState = std::array<double, 32>;

Eigen::Map<const Matrix4c> as_matrix(const FlatState& y) {
  return Eigen::Map<const Matrix4c>(reinterpret_cast<const cd*>(y.data()));
}

Eigen::Map<Matrix4c> as_matrix(FlatState& y) { return Eigen::Map<Matrix4c>(reinterpret_cast<cd*>(y.data())); }

FlatState flatten(const Matrix4c& m) {
  FlatState y;
  as_matrix(y) = m;
  return y;
}

// Physical decay term -i D(rho) = -gamma o rho (off-diagonal).
Matrix4c dephasing_rate(const Matrix4c& rho, const DephasingMatrix& gamma) {
  Matrix4c out;
  for (int m = 0; m < 4; ++m)
    for (int n = 0; n < 4; ++n) out(m, n) = m == n ? cd{} : -gamma(m, n) * rho(m, n);
  return out;
}

}  // namespace

Matrix4c dissipator(const DensityMatrix& rho, const DephasingMatrix& gamma) {
  return I * dephasing_rate(rho, gamma);
}

Matrix4c rhs_bare(double t, const DensityMatrix& rho, const PulseConfig& cfg) {
  const Matrix4c h = hamiltonian(t, cfg);
  return -I * (h * rho - rho * h) + dephasing_rate(rho, cfg.gamma);
}

DensityMatrix to_adiabatic(const DensityMatrix& rho, double t, const PulseConfig& cfg) {
  const MixingAngles a = mixing_angles(t, cfg);
  const Matrix4c r = rotation_matrix(a.theta, a.phi);
  return r.adjoint() * rho * r;
}

DensityMatrix to_bare(const DensityMatrix& rho_a, double t, const PulseConfig& cfg) {
  const MixingAngles a = mixing_angles(t, cfg);
  const Matrix4c r = rotation_matrix(a.theta, a.phi);
  return r * rho_a * r.adjoint();
}

Matrix4c rhs_adiabatic(double t, const DensityMatrix& rho_a, const PulseConfig& cfg) {
  const MixingAngles a = mixing_angles(t, cfg);
  const Matrix4c r = rotation_matrix(a.theta, a.phi);
  const Matrix4c conn = r.adjoint() * rotation_rate(a);
  const double half_omega = 0.5 * rms_rabi(t, cfg);
  Matrix4c ha = Matrix4c::Zero();
  ha(2, 2) = half_omega;
  ha(3, 3) = -half_omega;
  const Matrix4c bare = r * rho_a * r.adjoint();
  return -I * (ha * rho_a - rho_a * ha) - (conn * rho_a - rho_a * conn) +
         r.adjoint() * dephasing_rate(bare, cfg.gamma) * r;
}

StateDefects state_defects(const DensityMatrix& rho) {
  StateDefects d;
  d.hermiticity = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  d.trace = std::abs(rho.trace() - cd{1.0, 0.0});
  const Matrix4c herm = 0.5 * (rho + rho.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix4c> es(herm, Eigen::EigenvaluesOnly);
  d.min_eigenvalue = es.eigenvalues().minCoeff();
  return d;
}

bool is_valid_state(const DensityMatrix& rho, double tol) {
  const StateDefects d = state_defects(rho);
  return d.hermiticity <= tol && d.trace <= tol;
}

Trajectory integrate(const PulseConfig& cfg, Basis basis, std::size_t samples, const Tolerances& tol) {
  cfg.validate();
  if (samples < 2) throw Error(ErrorCode::InvalidConfig, "at least two samples are required");

  Trajectory traj;
  traj.integrated_in = basis;
  traj.times = linspace(cfg.t_start, cfg.t_end, samples);

  Matrix4c rho0 = Matrix4c::Zero();
  rho0(0, 0) = 1.0;

  std::vector<FlatState> raw;
  if (basis == Basis::Bare) {
    auto sys = [&cfg](const FlatState& y, FlatState& dydt, double t) {
      as_matrix(dydt) = rhs_bare(t, as_matrix(y), cfg);
    };
    raw = integrate_dense(sys, flatten(rho0), traj.times, tol, &traj.stats);
  } else {
    auto sys = [&cfg](const FlatState& y, FlatState& dydt, double t) {
      as_matrix(dydt) = rhs_adiabatic(t, as_matrix(y), cfg);
    };
    raw = integrate_dense(sys, flatten(to_adiabatic(rho0, cfg.t_start, cfg)), traj.times, tol, &traj.stats);
  }

  traj.states.reserve(raw.size());
  traj.min_eigenvalue = 1.0;
  for (std::size_t k = 0; k < raw.size(); ++k) {
    Matrix4c rho = as_matrix(raw[k]);
    if (basis == Basis::Adiabatic) rho = to_bare(rho, traj.times[k], cfg);
    traj.min_eigenvalue = std::min(traj.min_eigenvalue, state_defects(rho).min_eigenvalue);
    traj.states.push_back(rho);
  }
  return traj;
}

Observables observables(const DensityMatrix& rho, double t, const PulseConfig& cfg, const TargetState& target) {
  Observables o;
  const DensityMatrix ra = to_adiabatic(rho, t, cfg);
  for (int j = 0; j < 4; ++j) {
    o.populations[j] = rho(j, j).real();
    o.adiabatic_populations[j] = ra(j, j).real();
  }
  o.rho_a12 = ra(0, 1);
  o.fidelity = (target.amplitudes.adjoint() * rho * target.amplitudes)(0, 0).real();
  return o;
}

}  // namespace tripod
