#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tripod/config.hpp"
#include "tripod/liouville.hpp"

namespace tripod {

/// F^2 = <Psi|rho|Psi>, the linear form. Throws Error(NonHermitianState) unless rho is Hermitian
/// with unit trace to 1e-9.
double fidelity(const DensityMatrix& rho, const TargetState& target);

/// F^2 from the adiabatic-frame state: rho^a_11 + cos(2 thetag) Re rho^a_12 - sin(2 thetag) Im rho^a_12.
double adiabatic_fidelity(const DensityMatrix& rho_a, double thetag);

/// F^2(t) sampled along a trajectory.
std::vector<double> fidelity_series(const Trajectory& traj, const TargetState& target);

struct TransitionTime {
  double value = 0.0;
  double t_low = 0.0;   ///< crossing of the lower threshold
  double t_high = 0.0;  ///< crossing of 1 - eps
  double low_threshold = 0.0;
  double high_threshold = 0.0;
  bool ambiguous = false;  ///< a threshold is crossed upward more than once; the first crossing is used
};

/// Time for F^2 to rise from eps to 1 - eps. For the fractional ordering the lower threshold is
/// (1 + eps) F^2(t_0), with F^2(t_0) = fid.front(). Crossings are located by monotone cubic
/// interpolation between samples.
/// Throws Error(NoCrossing) when a threshold is never reached and Error(DegenerateThresholds) when
/// the lower threshold is not below the upper one.
TransitionTime transition_time(std::span<const double> times, std::span<const double> fid, double eps,
                               Ordering ordering);

enum class Engine { Master, Effective, Analytic };

std::string_view to_string(Engine engine);
Engine parse_engine(std::string_view name);

enum class SweepAxis { Gamma, Tau };

std::string_view to_string(SweepAxis axis);
SweepAxis parse_axis(std::string_view name);

struct SweepOptions {
  std::size_t samples = 2000;
  double t_max_eval = 5.0;   ///< evaluation time of the finite-time fidelity
  unsigned threads = 0;      ///< 0: TRIPOD_THREADS or the hardware concurrency
  Tolerances tolerances{};
};

struct SweepRow {
  double value = 0.0;
  double f2_final = 0.0;  ///< at cfg.t_end (master, effective); at t_end from the closed form (analytic)
  double f2_tmax = 0.0;   ///< at t_max_eval
  double t_tr = 0.0;      ///< NaN when no transition time could be extracted
  double thetag = 0.0;
  std::string error;      ///< engine failure; empty on success
  std::string t_tr_error; ///< why t_tr is NaN, if it is
  std::string cfg_hash;   ///< SHA-256 prefix of describe(cfg)
  IntegratorStats stats;
};

struct SweepResult {
  SweepAxis axis = SweepAxis::Gamma;
  Engine engine = Engine::Master;
  std::vector<SweepRow> rows;

  std::size_t succeeded() const;
};

/// Configuration of one sweep point: the axis value replaces the uniform rate or the delay, and
/// the window is reset to the default for the new delay.
PulseConfig sweep_point(const PulseConfig& base, SweepAxis axis, double value);

/// Evaluates every point, concurrently when allowed. Results are ordered by axis index and do not
/// depend on the thread count. Engine failures are recorded per row.
/// Throws Error(InvalidConfig) for empty or non-increasing values and Error(WrongOrdering) when
/// the analytic engine is used with another ordering.
SweepResult sweep(const PulseConfig& base, SweepAxis axis, std::span<const double> values, Engine engine,
                  const SweepOptions& options = {});

/// Worker count from TRIPOD_THREADS, falling back to the hardware concurrency.
unsigned default_thread_count();

/// Lower-case hexadecimal SHA-256 digest.
std::string sha256_hex(std::string_view data);

}  // namespace tripod
