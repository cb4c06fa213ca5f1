#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include <boost/numeric/odeint.hpp>
#include <fmt/format.h>

#include "tripod/config.hpp"

namespace tripod {

struct Tolerances {
  double relative = 1e-9;
  double absolute = 1e-12;
};

struct IntegratorStats {
  std::size_t steps = 0;
  double min_step = 0.0;
  double max_step = 0.0;
};

/// Dormand-Prince 5(4) with dense output, sampled at `times` (times.front() is the initial time).
/// `rhs(const State& y, State& dydt, double t)` follows the odeint system signature.
/// Throws Error(StepSizeUnderflow) when the controller stalls and Error(ToleranceNotMet) when
/// no admissible step can be found.
template <std::size_t N, class Rhs>
std::vector<std::array<double, N>> integrate_dense(Rhs&& rhs, const std::array<double, N>& y0,
                                                   std::span<const double> times,
                                                   const Tolerances& tol = {},
                                                   IntegratorStats* stats = nullptr) {
  using State = std::array<double, N>;
  namespace odeint = boost::numeric::odeint;

  std::vector<State> out;
  if (times.empty()) return out;
  out.reserve(times.size());
  out.push_back(y0);
  if (times.size() == 1) return out;

  const double t0 = times.front();
  const double t1 = times.back();
  const double span = t1 - t0;
  const double min_dt = 1e-13 * std::max(1.0, std::abs(span));
  constexpr std::size_t kMaxSteps = 5'000'000;

  auto stepper = odeint::make_dense_output(tol.absolute, tol.relative, odeint::runge_kutta_dopri5<State>());
  stepper.initialize(y0, t0, std::min(1e-3, span / 100.0));

  IntegratorStats local;
  local.min_step = span;
  std::size_t next = 1;
  State y;
  try {
    while (next < times.size()) {
      const auto [from, to] = stepper.do_step(rhs);
      const double dt = to - from;
      ++local.steps;
      local.max_step = std::max(local.max_step, dt);
      // The final step may land arbitrarily close to its target; only interior steps count.
      if (to < t1) local.min_step = std::min(local.min_step, dt);
      if (dt < min_dt && to < t1)
        throw Error(ErrorCode::StepSizeUnderflow,
                    fmt::format("step size {:.3g} underflow at t = {:.6g}", dt, to));
      if (local.steps > kMaxSteps)
        throw Error(ErrorCode::StepSizeUnderflow, fmt::format("step budget exhausted at t = {:.6g}", to));
      while (next < times.size() && times[next] <= to) {
        stepper.calc_state(times[next], y);
        out.push_back(y);
        ++next;
      }
    }
  } catch (const odeint::step_adjustment_error& e) {
    throw Error(ErrorCode::ToleranceNotMet, fmt::format("integrator could not meet tolerance: {}", e.what()));
  }
  for (const State& s : out)
    for (double v : s)
      if (!std::isfinite(v)) throw Error(ErrorCode::ToleranceNotMet, "integrator produced a non-finite state");
  if (stats) *stats = local;
  return out;
}

/// Evenly spaced sample times including both ends.
inline std::vector<double> linspace(double a, double b, std::size_t n) {
  std::vector<double> v(n);
  if (n == 1) {
    v[0] = a;
    return v;
  }
  for (std::size_t i = 0; i < n; ++i) v[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
  v.back() = b;
  return v;
}

}  // namespace tripod
