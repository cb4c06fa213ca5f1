#include <cmath>
#include <numbers>

#include <doctest.h>

#include "oracles.hpp"
#include "tripod/dk.hpp"
#include "tripod/liouville.hpp"

using namespace tripod;

namespace {

PulseConfig overlap(double gamma, double tau = 1.5, double omega0 = 50.0) {
  return PulseConfig::make(Ordering::Overlap, omega0, tau, DephasingMatrix::uniform(gamma));
}

template <class F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::InvalidConfig;
}

}  // namespace

TEST_SUITE("dk") {
  TEST_CASE("two-level coefficients") {
    CHECK(dk::su_coefficients(0.0, 2.0).delta_su == doctest::Approx(0.5));
    CHECK(dk::su_coefficients(0.0, 2.0).omega_su == doctest::Approx(-0.5));
    CHECK(std::abs(dk::su_coefficients(std::numbers::pi / 2, 2.0).gamma_v) < 1e-15);
    CHECK(code_of([] { dk::su_two_level(0.0, PulseConfig::make(Ordering::StokesControlPump, 50.0, 1.5)); }) ==
          ErrorCode::WrongOrdering);
    DephasingMatrix g = DephasingMatrix::uniform(1.0);
    g.set(0, 2, 2.0);
    CHECK(code_of([&] { dk::su_two_level(0.0, PulseConfig::make(Ordering::Overlap, 50.0, 1.5, g)); }) ==
          ErrorCode::WrongOrdering);
  }

  TEST_CASE("profiles") {
    CHECK(dk::chirp_profile(0.0) == 0.0);
    CHECK(dk::coupling_profile(0.0) == doctest::Approx(std::sqrt(2.0) / 3.0).epsilon(1e-15));
    for (double x : {-800.0, -30.0, 30.0, 800.0}) {
      CHECK(std::isfinite(dk::chirp_profile(x)));
      CHECK(std::isfinite(dk::coupling_profile(x)));
    }
  }

  TEST_CASE("eigenvalues of the two-level generator") {
    const PulseConfig cfg = overlap(0.9);
    for (double t = -5.0; t <= 5.0; t += 0.13) {
      const dk::SuCoefficients su = dk::su_two_level(t, cfg);
      const dk::Energies e = dk::energies(t, cfg);
      CHECK(std::abs(e.plus + e.minus - su.delta_su) < 1e-12);
      CHECK(std::abs(e.plus * e.minus + 2.0 * su.omega_su * su.omega_su) < 1e-12);
      CHECK(std::abs((e.plus - e.minus) - 0.9 * dk::chirp_profile(dk::reduced_time(t, cfg))) < 1e-12);
    }
  }

  TEST_CASE("mixing angle rate matches the coupling profile") {
    const PulseConfig cfg = overlap(0.9);
    auto xi = [&](double t) {
      const dk::SuCoefficients su = dk::su_two_level(t, cfg);
      return 0.5 * std::atan(2.0 * std::sqrt(2.0) * su.omega_su / su.delta_su);
    };
    const double scale = cfg.tau / (cfg.width * cfg.width);
    for (double t = -3.0; t <= 3.0; t += 0.1) {
      if (std::abs(t) < 0.05) continue;  // both coefficients vanish at t = 0
      const double fd = oracle::derivative(xi, t, 1e-5);
      const double expected = scale * dk::coupling_profile(dk::reduced_time(t, cfg));
      CHECK(fd == doctest::Approx(expected).epsilon(1e-6).scale(1.0));
      CHECK(dk::xi_angle(t, cfg).xi_dot == doctest::Approx(expected).epsilon(1e-12));
      CHECK(dk::xi_angle(t, cfg).xi_dot > 0.0);
    }
    const double area = oracle::simpson([&](double t) { return dk::xi_angle(t, cfg).xi_dot; }, -20.0, 20.0, 20000);
    CHECK(2.0 * area == doctest::Approx(2.0 * std::numbers::pi * dk::alpha_constant()).epsilon(1e-9));
  }

  TEST_CASE("model parameters") {
    const dk::DKParams p = dk::dk_params(0.0, 1.5);
    CHECK(p.t_max == doctest::Approx(std::atanh(0.8) / (4.0 * 1.5)).epsilon(1e-14));
    CHECK(dk::dk_params(0.0, 1.0).amplitude == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
    const long double exact = std::atan(2.0L * std::sqrt(2.0L)) / (2.0L * std::numbers::pi_v<long double>);
    CHECK(dk::alpha_constant() == doctest::Approx(static_cast<double>(exact)).epsilon(1e-15));
    CHECK(std::abs(dk::alpha_constant() - 0.19592) < 1e-5);
    CHECK(dk::dk_params(3.0, 0.7).alpha == dk::alpha_constant());
    CHECK(p.beta == 0.0);
    CHECK(p.delta == 0.0);
    const dk::DKParams q = dk::dk_params(1.0, 1.5);
    const dk::DKParams r = dk::dk_params(2.0, 3.0);
    CHECK(q.beta < 0.0);
    CHECK(q.delta < 0.0);
    CHECK(q.beta == doctest::Approx(r.beta));
    CHECK(q.delta == doctest::Approx(r.delta));
    CHECK(code_of([] { dk::dk_params(1.0, 0.0); }) == ErrorCode::ZeroDelay);
  }

  TEST_CASE("amplitudes without dephasing") {
    const dk::DKAmplitudes a = dk::dk_amplitudes(dk::dk_params(0.0, 1.5));
    CHECK(a.u_pp == doctest::Approx(std::sqrt(2.0 / 3.0)).epsilon(1e-13));
    CHECK(a.u_mp == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-13));
  }

  TEST_CASE("amplitudes agree with direct integration") {
    for (double x = 0.0; x <= 2.0001; x += 0.2) {
      const dk::DKParams p = dk::dk_params(x * 1.5, 1.5);
      const dk::DKAmplitudes a = dk::dk_amplitudes(p);
      const auto [cp, cm] = oracle::sech_tanh_amplitudes(p);
      CHECK(std::abs(a.u_pp - cp) < 1e-6);
      CHECK(std::abs(a.u_mp - cm) < 1e-6);
    }
  }

  TEST_CASE("pole guard") {
    dk::DKParams p = dk::dk_params(0.0, 1.5);
    p.beta = 0.0;
    p.delta = -0.5;  // 1/2 + delta - beta = 0
    CHECK(code_of([&] { dk::dk_amplitudes(p); }) == ErrorCode::GammaPole);
  }

  TEST_CASE("adiabatic constants") {
    const dk::AdiabaticConstants c = dk::adiabatic_constants();
    CHECK(std::abs(c.c_s - 2.42) < 0.01);
    CHECK(std::abs(c.c_u - 0.68) < 0.01);
    const auto [cs, cu] = oracle::adiabatic_constants();
    CHECK(c.c_s == doctest::Approx(cs).epsilon(1e-7));
    CHECK(c.c_u == doctest::Approx(cu).epsilon(1e-7));
    const dk::AdiabaticConstants tight = dk::adiabatic_constants(1e-13);
    CHECK(std::abs(tight.c_s - c.c_s) < 1e-9);
    CHECK(dk::g_plus(40.0) - dk::g_s(40.0) == doctest::Approx(-1.0).epsilon(1e-9));
    for (double x : {-8.0, -1.0, 0.3, 2.5, 9.0}) {
      CHECK(dk::g_plus(x) == doctest::Approx(oracle::g_plus(x)).epsilon(1e-12));
      CHECK(dk::g_minus(x) == doctest::Approx(oracle::g_minus(x)).epsilon(1e-12));
      CHECK(dk::g_s(x) == doctest::Approx(oracle::g_s(x)).epsilon(1e-12));
    }
  }

  TEST_CASE("adiabatic integrands are the scaled eigenvalues") {
    const PulseConfig cfg = overlap(1.0);
    for (double t = -2.0; t <= 2.0; t += 0.35) {
      const double x = dk::reduced_time(t, cfg);
      const dk::Energies e = dk::energies(t, cfg);
      CHECK(e.plus == doctest::Approx(dk::g_plus(x)).epsilon(1e-12).scale(1.0));
      CHECK(e.minus == doctest::Approx(dk::g_minus(x)).epsilon(1e-12).scale(1.0));
    }
  }

  TEST_CASE("dark observables limits") {
    const dk::DarkObservables clean = dk::analytic_dark_observables(overlap(0.0), 3.0);
    CHECK(clean.rho_a11 == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(clean.re_rho_a12 == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(dk::analytic_fidelity(overlap(0.0), 2.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(dk::analytic_dark_observables(overlap(50.0), 5.0).rho_a11 - 0.25) < 1e-3);
  }

  TEST_CASE("fidelity forms") {
    const PulseConfig cfg = overlap(1.0);
    CHECK(std::abs(dk::analytic_fidelity(cfg, 5.0) - dk::weak_dephasing_fidelity(cfg, 5.0)) < 0.02);
    CHECK(dk::analytic_fidelity(cfg) == dk::analytic_dark_observables(cfg, 5.0).rho_a11);
  }

  TEST_CASE("monotonic in gamma and tau") {
    double previous = 1.0;
    for (double g = 0.25; g <= 4.0; g += 0.25) {
      const double r = dk::analytic_fidelity(overlap(g));
      CHECK(r < previous);
      previous = r;
    }
    previous = 0.0;
    for (double tau = 0.5; tau <= 3.0; tau += 0.25) {
      const double r = dk::analytic_fidelity(overlap(1.0, tau));
      CHECK(r > previous);
      previous = r;
    }
  }

  TEST_CASE("analytic observables track the master equation") {
    for (double g : {0.0, 0.25, 0.5, 1.0, 2.0}) {
      const PulseConfig cfg = overlap(g);
      const Trajectory traj = integrate(cfg, Basis::Bare, 2);
      const DensityMatrix a = to_adiabatic(traj.states.back(), cfg.t_end, cfg);
      const dk::DarkObservables obs = dk::analytic_dark_observables(cfg, cfg.t_end);
      CHECK(std::abs(a(0, 0).real() - obs.rho_a11) < 0.02);
      CHECK(std::abs(a(0, 1).real() - obs.re_rho_a12) < 0.02);
      const std::array<double, 4> pops = dk::analytic_bare_populations(cfg);
      for (int j = 0; j < 4; ++j) CHECK(std::abs(traj.states.back()(j, j).real() - pops[j]) < 0.02);
      CHECK(is_valid_state(dk::analytic_bare_state(cfg, cfg.t_end)));
    }
  }
}
