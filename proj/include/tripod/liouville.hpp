#pragma once

#include <cstddef>
#include <vector>

#include "tripod/config.hpp"
#include "tripod/frame.hpp"
#include "tripod/ode.hpp"

namespace tripod {

/// 4x4 density matrix; the basis (bare or adiabatic) is given by context.
using DensityMatrix = Matrix4c;

enum class Basis { Bare, Adiabatic };

/// Pure-dephasing term of the master equation in the i d(rho)/dt = [H, rho] + D convention:
/// D_mn = -i gamma_mn rho_mn off the diagonal, zero on it.
Matrix4c dissipator(const DensityMatrix& rho, const DephasingMatrix& gamma);

/// d(rho)/dt = -i [H(t), rho] - i D(rho), bare basis.
Matrix4c rhs_bare(double t, const DensityMatrix& rho, const PulseConfig& cfg);

/// rho^a = R^dagger rho R.
DensityMatrix to_adiabatic(const DensityMatrix& rho, double t, const PulseConfig& cfg);
DensityMatrix to_bare(const DensityMatrix& rho_a, double t, const PulseConfig& cfg);

/// d(rho^a)/dt = -i [H^a, rho^a] - [R^dagger dR/dt, rho^a] - i R^dagger D(R rho^a R^dagger) R.
Matrix4c rhs_adiabatic(double t, const DensityMatrix& rho_a, const PulseConfig& cfg);

/// Deviation of rho from the density-matrix invariants.
struct StateDefects {
  double hermiticity = 0.0;    ///< max |rho - rho^dagger|
  double trace = 0.0;          ///< |tr rho - 1|
  double min_eigenvalue = 0.0;
};

StateDefects state_defects(const DensityMatrix& rho);
/// Hermitian and unit trace within `tol`.
bool is_valid_state(const DensityMatrix& rho, double tol = 1e-9);

/// Integrated master-equation trajectory; `states` are always in the bare basis.
struct Trajectory {
  std::vector<double> times;
  std::vector<DensityMatrix> states;
  Basis integrated_in = Basis::Bare;
  IntegratorStats stats;
  double min_eigenvalue = 0.0;  ///< positivity monitor over all samples
};

/// Per-sample observables derived from a trajectory.
struct Observables {
  std::array<double, 4> populations{};
  std::array<double, 4> adiabatic_populations{};
  std::complex<double> rho_a12{};
  double fidelity = 0.0;
};

/// Integrates from |psi1><psi1| at cfg.t_start to cfg.t_end, sampling `samples` evenly spaced
/// instants (samples >= 2).
Trajectory integrate(const PulseConfig& cfg, Basis basis = Basis::Bare, std::size_t samples = 2000,
                     const Tolerances& tol = {});

Observables observables(const DensityMatrix& rho, double t, const PulseConfig& cfg,
                        const TargetState& target);

}  // namespace tripod
