#include <cmath>
#include <numbers>

#include <doctest.h>

#include "oracles.hpp"
#include "tripod/pulses.hpp"

using namespace tripod;

namespace {

constexpr Ordering kAll[] = {Ordering::Overlap, Ordering::StokesControlPump, Ordering::ControlStokesPump,
                             Ordering::Fractional};

}  // namespace

TEST_SUITE("pulses") {
  TEST_CASE("overlap envelopes at the pulse centres") {
    const PulseConfig cfg = PulseConfig::make(Ordering::Overlap, 50.0, 1.5);
    const Envelopes early = pulse_envelopes(-0.75, cfg);
    CHECK(early.stokes == doctest::Approx(50.0));
    CHECK(early.control == doctest::Approx(50.0));
    CHECK(early.pump == doctest::Approx(50.0 * std::exp(-1.5 * 1.5)));
    CHECK(pulse_envelopes(0.75, cfg).pump == doctest::Approx(50.0));
  }

  TEST_CASE("stokes-control-pump envelopes at t = 0") {
    const PulseConfig cfg = PulseConfig::make(Ordering::StokesControlPump, 50.0, 1.5);
    const Envelopes e = pulse_envelopes(0.0, cfg);
    CHECK(e.control == doctest::Approx(50.0));
    CHECK(e.pump == doctest::Approx(50.0 * std::exp(-1.5 * 1.5 / 4.0)));
    CHECK(e.stokes == doctest::Approx(e.pump));
  }

  TEST_CASE("envelopes vanish at the window edges for every ordering") {
    for (Ordering o : kAll) {
      const PulseConfig cfg = PulseConfig::make(o, 50.0, 1.5);
      for (double t : {cfg.t_start, cfg.t_end}) {
        const Envelopes e = pulse_envelopes(t, cfg);
        CHECK(e.pump < 1e-6 * cfg.omega0);
        CHECK(e.stokes < 1e-6 * cfg.omega0);
        CHECK(e.control < 1e-6 * cfg.omega0);
        CHECK(e.pump >= 0.0);
      }
    }
  }

  TEST_CASE("overlap keeps phi at pi/4") {
    const PulseConfig cfg = PulseConfig::make(Ordering::Overlap, 50.0, 1.5);
    for (double t = cfg.t_start; t <= cfg.t_end; t += 0.37) {
      const MixingAngles a = mixing_angles(t, cfg);
      CHECK(a.phi == doctest::Approx(std::numbers::pi / 4).epsilon(1e-14));
      CHECK(a.phi_dot == 0.0);
    }
    CHECK(std::tan(mixing_angles(0.0, cfg).theta) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
  }

  TEST_CASE("angles match the envelope ratios") {
    for (Ordering o : kAll) {
      const PulseConfig cfg = PulseConfig::make(o, 50.0, 1.5);
      for (double t = -2.0; t <= 2.0; t += 0.25) {
        const Envelopes e = pulse_envelopes(t, cfg);
        const MixingAngles a = mixing_angles(t, cfg);
        CHECK(a.phi == doctest::Approx(std::atan2(e.control, e.stokes)).epsilon(1e-12));
        CHECK(a.theta == doctest::Approx(std::atan2(e.pump, std::hypot(e.stokes, e.control))).epsilon(1e-12));
      }
    }
  }

  TEST_CASE("angle rates agree with finite differences") {
    for (Ordering o : kAll) {
      const PulseConfig cfg = PulseConfig::make(o, 50.0, 1.5);
      for (double t = -5.0; t <= 5.0; t += 0.5) {
        const MixingAngles a = mixing_angles(t, cfg);
        const double th = oracle::derivative([&](double s) { return mixing_angles(s, cfg).theta; }, t);
        const double ph = oracle::derivative([&](double s) { return mixing_angles(s, cfg).phi; }, t);
        CHECK(a.theta_dot == doctest::Approx(th).epsilon(1e-6).scale(1.0));
        CHECK(a.phi_dot == doctest::Approx(ph).epsilon(1e-6).scale(1.0));
      }
    }
  }

  TEST_CASE("no pump means theta = 0") {
    const Envelopes e{0.0, 3.0, 4.0};
    CHECK(std::atan2(e.pump, std::hypot(e.stokes, e.control)) == 0.0);
    const PulseConfig cfg = PulseConfig::make(Ordering::StokesControlPump, 50.0, 1.5);
    CHECK(mixing_angles(cfg.t_start, cfg).theta < 1e-6);
    // The control tail still exceeds the pump tail by e^-10.7 at the window edge.
    CHECK(std::abs(mixing_angles(cfg.t_end, cfg).theta - std::numbers::pi / 2) < 1e-4);
  }

  TEST_CASE("rms Rabi frequency") {
    CHECK(rms_rabi(Envelopes{2.0, 2.0, 2.0}) == doctest::Approx(2.0 * std::sqrt(3.0)));
    CHECK(rms_rabi(Envelopes{}) == 0.0);
    const PulseConfig cfg = PulseConfig::make(Ordering::Overlap, 50.0, 1.5);
    CHECK(rms_rabi(-0.75, cfg) == doctest::Approx(50.0 * std::sqrt(2.0 + std::exp(-2.0 * 1.5 * 1.5))));
  }

  TEST_CASE("validation rejects bad configs") {
    PulseConfig cfg = PulseConfig::make(Ordering::Overlap, 50.0, 1.5);
    cfg.t_end = 2.0;
    CHECK_THROWS_AS(cfg.validate(), Error);
    PulseConfig neg = PulseConfig::make(Ordering::Overlap, -1.0, 1.5);
    CHECK_THROWS_AS(neg.validate(), Error);
    CHECK_THROWS_AS(DephasingMatrix::uniform(-1.0), Error);
  }
}
