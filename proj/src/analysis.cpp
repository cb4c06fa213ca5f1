#include "tripod/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <thread>

#include <boost/math/interpolators/pchip.hpp>
#include <boost/math/tools/roots.hpp>
#include <fmt/format.h>
#include <openssl/evp.h>

#include "tripod/dk.hpp"
#include "tripod/effective.hpp"

namespace tripod {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

using Pchip = boost::math::interpolators::pchip<std::vector<double>>;

Pchip make_pchip(std::span<const double> times, std::span<const double> values) {
  return Pchip(std::vector<double>(times.begin(), times.end()), std::vector<double>(values.begin(), values.end()));
}

struct Crossing {
  double time = 0.0;
  bool ambiguous = false;
};

// First upward crossing of `level`, refined on the interpolant.
Crossing upward_crossing(const Pchip& spline, std::span<const double> times, std::span<const double> fid,
                         double level) {
  std::size_t count = 0;
  std::size_t first = 0;
  for (std::size_t k = 0; k + 1 < fid.size(); ++k) {
    if (fid[k] < level && fid[k + 1] >= level) {
      if (count == 0) first = k;
      ++count;
    }
  }
  if (count == 0)
    throw Error(ErrorCode::NoCrossing, fmt::format("fidelity never rises through {:.6g}", level));

  const double a = times[first];
  const double b = times[first + 1];
  auto f = [&](double t) { return spline(t) - level; };
  const double fa = fid[first] - level;
  const double fb = fid[first + 1] - level;
  double root = b;
  if (fb != 0.0) {
    std::uintmax_t iterations = 100;
    const auto [lo, hi] = boost::math::tools::toms748_solve(f, a, b, fa, fb,
                                                            boost::math::tools::eps_tolerance<double>(48), iterations);
    root = 0.5 * (lo + hi);
  }
  return {root, count > 1};
}

double interpolate_at(std::span<const double> times, std::span<const double> values, double t) {
  if (t < times.front() || t > times.back()) return kNaN;
  return make_pchip(times, values)(t);
}

void finish_from_series(SweepRow& row, const PulseConfig& cfg, std::span<const double> times,
                        std::span<const double> fid, const SweepOptions& options) {
  row.f2_final = fid.back();
  row.f2_tmax = interpolate_at(times, fid, options.t_max_eval);
  try {
    row.t_tr = transition_time(times, fid, cfg.epsilon, cfg.ordering).value;
  } catch (const Error& e) {
    row.t_tr = kNaN;
    row.t_tr_error = fmt::format("{}: {}", to_string(e.code()), e.what());
  }
}

SweepRow evaluate_point(const PulseConfig& cfg, double value, Engine engine, const SweepOptions& options) {
  SweepRow row;
  row.value = value;
  row.cfg_hash = sha256_hex(describe(cfg)).substr(0, 16);
  row.f2_final = row.f2_tmax = row.t_tr = row.thetag = kNaN;
  try {
    row.thetag = geometric_phase(cfg);
    const TargetState target = target_state(cfg.ordering, row.thetag);
    switch (engine) {
      case Engine::Master: {
        const Trajectory traj = integrate(cfg, Basis::Bare, options.samples, options.tolerances);
        row.stats = traj.stats;
        const std::vector<double> fid = fidelity_series(traj, target);
        finish_from_series(row, cfg, traj.times, fid, options);
        break;
      }
      case Engine::Effective: {
        const SuvTrajectory traj = integrate_suv(cfg, SuvMode::Full, options.samples, options.tolerances);
        row.stats = traj.stats;
        std::vector<double> fid(traj.times.size());
        for (std::size_t k = 0; k < fid.size(); ++k)
          fid[k] = fidelity(bare_state(traj.states[k], traj.times[k], cfg), target);
        finish_from_series(row, cfg, traj.times, fid, options);
        break;
      }
      case Engine::Analytic: {
        row.f2_final = dk::analytic_fidelity(cfg, cfg.t_end);
        row.f2_tmax = dk::analytic_fidelity(cfg, options.t_max_eval);
        row.t_tr = cfg.width * cfg.width * std::log(3.0) / cfg.tau;
        break;
      }
    }
  } catch (const Error& e) {
    row.error = fmt::format("{}: {}", to_string(e.code()), e.what());
  } catch (const std::exception& e) {
    row.error = e.what();
  }
  return row;
}

}  // namespace

double fidelity(const DensityMatrix& rho, const TargetState& target) {
  const StateDefects d = state_defects(rho);
  if (d.hermiticity > 1e-9 || d.trace > 1e-9)
    throw Error(ErrorCode::NonHermitianState,
                fmt::format("state is not a density matrix (hermiticity {:.3g}, trace {:.3g})", d.hermiticity,
                            d.trace));
  const std::complex<double> f = (target.amplitudes.adjoint() * rho * target.amplitudes)(0, 0);
  if (std::abs(f.imag()) > 1e-9)
    throw Error(ErrorCode::NonHermitianState, "fidelity has an imaginary part");
  return f.real();
}

double adiabatic_fidelity(const DensityMatrix& rho_a, double thetag) {
  return rho_a(0, 0).real() + std::cos(2.0 * thetag) * rho_a(0, 1).real() -
         std::sin(2.0 * thetag) * rho_a(0, 1).imag();
}

std::vector<double> fidelity_series(const Trajectory& traj, const TargetState& target) {
  std::vector<double> out;
  out.reserve(traj.states.size());
  for (const DensityMatrix& rho : traj.states) out.push_back(fidelity(rho, target));
  return out;
}

TransitionTime transition_time(std::span<const double> times, std::span<const double> fid, double eps,
                               Ordering ordering) {
  if (times.size() != fid.size() || times.size() < 2)
    throw Error(ErrorCode::InvalidConfig, "transition time needs matching series of at least two samples");
  if (!(eps > 0.0 && eps < 0.5)) throw Error(ErrorCode::InvalidConfig, "epsilon must lie in (0, 1/2)");

  TransitionTime out;
  out.low_threshold = ordering == Ordering::Fractional ? (1.0 + eps) * fid.front() : eps;
  out.high_threshold = 1.0 - eps;
  if (out.low_threshold >= out.high_threshold)
    throw Error(ErrorCode::DegenerateThresholds,
                fmt::format("lower threshold {:.6g} is not below upper threshold {:.6g}", out.low_threshold,
                            out.high_threshold));

  const Pchip spline = make_pchip(times, fid);
  const Crossing low = upward_crossing(spline, times, fid, out.low_threshold);
  const Crossing high = upward_crossing(spline, times, fid, out.high_threshold);
  out.t_low = low.time;
  out.t_high = high.time;
  out.ambiguous = low.ambiguous || high.ambiguous;
  out.value = high.time - low.time;
  return out;
}

std::string_view to_string(Engine engine) {
  switch (engine) {
    case Engine::Master: return "master";
    case Engine::Effective: return "effective";
    case Engine::Analytic: return "analytic";
  }
  return "unknown";
}

Engine parse_engine(std::string_view name) {
  if (name == "master") return Engine::Master;
  if (name == "effective") return Engine::Effective;
  if (name == "analytic") return Engine::Analytic;
  throw Error(ErrorCode::InvalidConfig, fmt::format("unknown engine '{}'", name));
}

std::string_view to_string(SweepAxis axis) { return axis == SweepAxis::Gamma ? "gamma" : "tau"; }

SweepAxis parse_axis(std::string_view name) {
  if (name == "gamma") return SweepAxis::Gamma;
  if (name == "tau") return SweepAxis::Tau;
  throw Error(ErrorCode::InvalidConfig, fmt::format("unknown sweep axis '{}'", name));
}

std::size_t SweepResult::succeeded() const {
  return static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [](const SweepRow& r) { return r.error.empty(); }));
}

PulseConfig sweep_point(const PulseConfig& base, SweepAxis axis, double value) {
  PulseConfig cfg = base;
  if (axis == SweepAxis::Gamma) {
    cfg.gamma = DephasingMatrix::uniform(value);
  } else {
    cfg.tau = value;
    cfg.reset_window();
  }
  return cfg;
}

SweepResult sweep(const PulseConfig& base, SweepAxis axis, std::span<const double> values, Engine engine,
                  const SweepOptions& options) {
  if (values.empty()) throw Error(ErrorCode::InvalidConfig, "sweep needs at least one value");
  for (std::size_t k = 1; k < values.size(); ++k)
    if (!(values[k] > values[k - 1])) throw Error(ErrorCode::InvalidConfig, "sweep values must be strictly increasing");
  if (engine == Engine::Analytic) {
    if (base.ordering != Ordering::Overlap)
      throw Error(ErrorCode::WrongOrdering, "analytic engine requires overlap ordering");
    if (axis == SweepAxis::Tau && !base.gamma.is_uniform())
      throw Error(ErrorCode::WrongOrdering, "analytic engine requires equal dephasing rates");
  }

  SweepResult result;
  result.axis = axis;
  result.engine = engine;
  result.rows.resize(values.size());

  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t k = next++; k < values.size(); k = next++)
      result.rows[k] = evaluate_point(sweep_point(base, axis, values[k]), values[k], engine, options);
  };
  const unsigned requested = options.threads == 0 ? default_thread_count() : options.threads;
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(std::max(1u, requested), values.size()));
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  return result;
}

unsigned default_thread_count() {
  if (const char* env = std::getenv("TRIPOD_THREADS")) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && n > 0) return static_cast<unsigned>(n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &length, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("SHA-256 digest failed");
  std::string out;
  out.reserve(2 * length);
  for (unsigned int i = 0; i < length; ++i) out += fmt::format("{:02x}", digest[i]);
  return out;
}

}  // namespace tripod
