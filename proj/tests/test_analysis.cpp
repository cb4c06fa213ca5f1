#include <cmath>
#include <numbers>

#include <doctest.h>

#include "tripod/analysis.hpp"
#include "tripod/dk.hpp"

using namespace tripod;

namespace {

constexpr Ordering kAll[] = {Ordering::Overlap, Ordering::StokesControlPump, Ordering::ControlStokesPump,
                             Ordering::Fractional};

double final_fidelity(const PulseConfig& cfg) {
  const Trajectory traj = integrate(cfg, Basis::Bare, 2);
  return fidelity(traj.states.back(), target_state(cfg));
}

TransitionTime measured_transition(const PulseConfig& cfg) {
  const Trajectory traj = integrate(cfg, Basis::Bare, 4000);
  const std::vector<double> fid = fidelity_series(traj, target_state(cfg));
  return transition_time(traj.times, fid, cfg.epsilon, cfg.ordering);
}

}  // namespace

TEST_SUITE("analysis") {
  TEST_CASE("fidelity of simple states") {
    const TargetState target = target_state(Ordering::Overlap, 0.0);
    const DensityMatrix projector = target.amplitudes * target.amplitudes.adjoint();
    CHECK(fidelity(projector, target) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(fidelity(Matrix4c::Identity() / 4.0, target) == doctest::Approx(0.25).epsilon(1e-15));
    Matrix4c bad = Matrix4c::Identity() / 4.0;
    bad(0, 1) = 0.3;
    try {
      (void)fidelity(bad, target);
      FAIL("expected a state error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NonHermitianState);
    }
  }

  TEST_CASE("adiabatic-frame fidelity agrees with the bare overlap") {
    for (Ordering o : kAll) {
      for (double g : {0.0, 0.5}) {
        const PulseConfig cfg = PulseConfig::make(o, 200.0, 1.5, DephasingMatrix::uniform(g));
        const Trajectory traj = integrate(cfg, Basis::Bare, 2);
        const TargetState target = target_state(cfg);
        const double bare = fidelity(traj.states.back(), target);
        const double frame = adiabatic_fidelity(to_adiabatic(traj.states.back(), cfg.t_end, cfg), target.thetag);
        CHECK(std::abs(bare - frame) < 0.01);
        CHECK(bare >= -1e-9);
        CHECK(bare <= 1.0 + 1e-9);
      }
    }
  }

  TEST_CASE("transition time of a synthetic logistic rise") {
    // F^2 = E/(2 + E), E = exp(4 t tau): crossings of 0.1 and 0.9 are ln(3)/tau apart.
    const double tau = 1.3;
    const std::vector<double> t = linspace(-5.0, 5.0, 2001);
    std::vector<double> f(t.size());
    for (std::size_t k = 0; k < t.size(); ++k) {
      const double e = std::exp(4.0 * t[k] * tau);
      f[k] = e / (2.0 + e);
    }
    const TransitionTime tt = transition_time(t, f, 0.1, Ordering::Overlap);
    CHECK(tt.value == doctest::Approx(std::log(3.0) / tau).epsilon(1e-6));
    CHECK_FALSE(tt.ambiguous);

    std::vector<double> wobble = f;
    for (std::size_t k = 0; k < t.size(); ++k) wobble[k] += 0.05 * std::sin(40.0 * t[k]) * std::exp(-t[k] * t[k]);
    CHECK(transition_time(t, wobble, 0.1, Ordering::Overlap).ambiguous);

    const std::vector<double> flat(t.size(), 0.3);
    try {
      (void)transition_time(t, flat, 0.1, Ordering::Overlap);
      FAIL("expected no crossing");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NoCrossing);
    }
  }

  TEST_CASE("overlap transition time follows the inverse-delay law in the adiabatic limit") {
    const double t1 = measured_transition(PulseConfig::make(Ordering::Overlap, 200.0, 1.0)).value;
    const double t2 = measured_transition(PulseConfig::make(Ordering::Overlap, 200.0, 2.0)).value;
    CHECK(t1 == doctest::Approx(std::log(3.0)).epsilon(0.02));
    CHECK(t2 / t1 == doctest::Approx(0.5).epsilon(0.02));
  }

  TEST_CASE("fractional transition time grows with the delay") {
    double previous = 0.0;
    for (double tau : {0.75, 1.0, 1.5}) {
      const double t = measured_transition(PulseConfig::make(Ordering::Fractional, 50.0, tau)).value;
      CHECK(t > previous);
      previous = t;
    }
    try {
      (void)measured_transition(PulseConfig::make(Ordering::Fractional, 50.0, 0.5));
      FAIL("expected degenerate thresholds");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::DegenerateThresholds);
    }
  }

  TEST_CASE("fractional fidelity starts at cos^2 of the geometric phase") {
    const PulseConfig cfg = PulseConfig::make(Ordering::Fractional, 200.0, 1.5);
    const Trajectory traj = integrate(cfg, Basis::Bare, 10);
    const double g = geometric_phase(cfg);
    CHECK(std::abs(fidelity(traj.states.front(), target_state(cfg)) - std::cos(g) * std::cos(g)) < 0.01);
  }

  TEST_CASE("master and analytic engines agree across a gamma sweep") {
    const PulseConfig base = PulseConfig::make(Ordering::Overlap, 50.0, 1.5);
    const std::vector<double> gammas{0.0, 0.25, 0.5, 1.0, 2.0, 4.0};
    const SweepResult master = sweep(base, SweepAxis::Gamma, gammas, Engine::Master, {.samples = 500});
    const SweepResult analytic = sweep(base, SweepAxis::Gamma, gammas, Engine::Analytic);
    REQUIRE(master.succeeded() == gammas.size());
    REQUIRE(analytic.succeeded() == gammas.size());
    for (std::size_t k = 0; k < gammas.size(); ++k) {
      CHECK(std::abs(master.rows[k].f2_final - analytic.rows[k].f2_final) < 0.02);
      CHECK(std::abs(master.rows[k].f2_tmax - analytic.rows[k].f2_tmax) < 0.02);
    }
    CHECK(analytic.rows[0].t_tr == doctest::Approx(std::log(3.0) / 1.5));
  }

  TEST_CASE("fidelity is non-increasing in gamma for every ordering") {
    for (Ordering o : kAll) {
      const SweepResult r = sweep(PulseConfig::make(o, 200.0, 1.5), SweepAxis::Gamma,
                                  std::vector<double>{0.0, 0.5, 1.0, 2.0}, Engine::Master, {.samples = 200});
      for (std::size_t k = 1; k < r.rows.size(); ++k) CHECK(r.rows[k].f2_final <= r.rows[k - 1].f2_final + 1e-9);
    }
  }

  TEST_CASE("adiabatic plateau over the delay") {
    const SweepResult r = sweep(PulseConfig::make(Ordering::Overlap, 200.0, 1.5), SweepAxis::Tau,
                                std::vector<double>{0.5, 1.0, 1.5, 2.0}, Engine::Master, {.samples = 200});
    REQUIRE(r.succeeded() == 4);
    CHECK(r.rows[0].f2_final > 0.9);  // short delays lose adiabaticity in the Gaussian tails
    for (std::size_t k = 1; k < r.rows.size(); ++k) CHECK(r.rows[k].f2_final >= 0.999);
  }

  TEST_CASE("stokes-control-pump fidelity grows with the delay at fixed gamma") {
    for (double g : {0.5, 1.0, 2.0}) {
      double previous = 0.0;
      for (double tau : {1.0, 1.5, 2.0}) {
        const double f = final_fidelity(
            PulseConfig::make(Ordering::StokesControlPump, 200.0, tau, DephasingMatrix::uniform(g)));
        CHECK(f > previous);
        previous = f;
      }
    }
  }

  TEST_CASE("sweeps are independent of the thread count") {
    const PulseConfig base = PulseConfig::make(Ordering::ControlStokesPump, 50.0, 1.5);
    const std::vector<double> gammas{0.0, 0.3, 0.6, 0.9, 1.2};
    const SweepResult one = sweep(base, SweepAxis::Gamma, gammas, Engine::Effective, {.samples = 100, .threads = 1});
    const SweepResult four = sweep(base, SweepAxis::Gamma, gammas, Engine::Effective, {.samples = 100, .threads = 4});
    for (std::size_t k = 0; k < gammas.size(); ++k) {
      CHECK(one.rows[k].f2_final == four.rows[k].f2_final);
      CHECK(one.rows[k].cfg_hash == four.rows[k].cfg_hash);
      CHECK(one.rows[k].stats.steps == four.rows[k].stats.steps);
    }
  }

  TEST_CASE("sweep argument checks and per-row failures") {
    const PulseConfig base = PulseConfig::make(Ordering::Overlap, 50.0, 1.5, DephasingMatrix::uniform(0.5));
    CHECK_THROWS_AS(sweep(base, SweepAxis::Gamma, std::vector<double>{}, Engine::Master), Error);
    CHECK_THROWS_AS(sweep(base, SweepAxis::Gamma, std::vector<double>{1.0, 1.0}, Engine::Master), Error);
    try {
      (void)sweep(PulseConfig::make(Ordering::StokesControlPump, 50.0, 1.5), SweepAxis::Gamma,
                  std::vector<double>{0.0}, Engine::Analytic);
      FAIL("expected an ordering error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::WrongOrdering);
    }
    const SweepResult r = sweep(base, SweepAxis::Tau, std::vector<double>{0.0, 1.0}, Engine::Analytic);
    CHECK(r.rows[0].error.starts_with("ZeroDelay"));
    CHECK(r.rows[1].error.empty());
    CHECK(r.succeeded() == 1);
  }

  TEST_CASE("digest") {
    CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  }
}
