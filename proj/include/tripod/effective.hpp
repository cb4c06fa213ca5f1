#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <vector>

#include "tripod/config.hpp"
#include "tripod/liouville.hpp"
#include "tripod/ode.hpp"
#include "tripod/pulses.hpp"

namespace tripod {

/// Dark-subspace state: s parametrizes the populations, (u, v) = sqrt(2) (Re, Im) rho^a_12.
struct DarkBlochVector {
  double s = -0.5;
  double u = 0.70710678118654752440;
  double v = 0.0;
};

/// Relaxation rates and couplings of the dark-state model (1/T).
struct EffectiveRates {
  double gamma_s = 0.0;
  double gamma_u = 0.0;
  double gamma_v = 0.0;
  double omega_su = 0.0;
  double omega_sv = 0.0;
  double omega_uv = 0.0;
};

/// Closed forms in (theta, phi); only gamma_13, gamma_14 and gamma_34 enter.
EffectiveRates effective_rates(const MixingAngles& angles, const DephasingMatrix& gamma);

enum class SuvMode {
  Full,           ///< all couplings
  WeakDephasing,  ///< decay-induced couplings dropped; s decays at gamma_s alone
};

struct SuvTrajectory {
  std::vector<double> times;
  std::vector<DarkBlochVector> states;
  IntegratorStats stats;
};

/// Integrates the (s, u, v) equations over cfg's window from (-1/2, 1/sqrt 2, 0).
SuvTrajectory integrate_suv(const PulseConfig& cfg, SuvMode mode = SuvMode::Full, std::size_t samples = 2000,
                            const Tolerances& tol = {});

/// rho^a with rho^a_11 = rho^a_22 = 1/4 - s/2, rho^a_33 = rho^a_44 = 1/4 + s/2,
/// rho^a_12 = (u + i v)/sqrt 2 and no bright coherences.
DensityMatrix adiabatic_state(const DarkBlochVector& x);
/// Same state rotated to the bare basis at time t.
DensityMatrix bare_state(const DarkBlochVector& x, double t, const PulseConfig& cfg);

/// Dark-block action of the rotated dissipator after eliminating the bright populations through
/// rho^a_33 = rho^a_44 = (1 - rho^a_11 - rho^a_22)/2:
///   d(rho^a_kl)/dt = -sum_ij D[i][j][k][l] rho^a_ij - D0[k][l] + (connection terms).
/// Indices are zero-based.
struct DissipatorTensor {
  std::array<std::array<std::array<std::array<std::complex<double>, 2>, 2>, 2>, 2> d{};
  std::array<std::array<std::complex<double>, 2>, 2> d0{};

  std::complex<double> operator()(int i, int j, int k, int l) const { return d[i][j][k][l]; }
};

DissipatorTensor dissipator_tensor(const MixingAngles& angles, const DephasingMatrix& gamma);
DissipatorTensor dissipator_tensor(double t, const PulseConfig& cfg);

/// Rates recovered from the tensor combinations (gamma_s = D^11_11 + D^22_11, and so on).
EffectiveRates rates_from_tensor(const DissipatorTensor& tensor);

/// Decay rate of the dark-state inversion w = rho^a_11 - rho^a_22: dw/dt = (D^22_11 - D^11_11) w.
double inversion_rate(const DissipatorTensor& tensor);

}  // namespace tripod
