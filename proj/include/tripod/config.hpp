#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <string_view>

namespace tripod {

/// Failure categories surfaced by the simulation and analysis layers.
enum class ErrorCode {
  InvalidConfig,
  StepSizeUnderflow,
  ToleranceNotMet,
  WrongOrdering,
  ZeroDelay,
  GammaPole,
  NonHermitianState,
  NoCrossing,
  DegenerateThresholds,
  QuadratureFailed,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Pulse sequences producing the four target superpositions.
enum class Ordering {
  Overlap,            ///< Stokes and control coincide, pump delayed
  StokesControlPump,  ///< S, then C, then P
  ControlStokesPump,  ///< C, then S, then P
  Fractional,         ///< S encloses P, C delayed; splits population between psi1 and psi3
};

std::string_view to_string(Ordering ordering);
/// Accepts the long names and the short forms overlap|scp|csp|fractional.
Ordering parse_ordering(std::string_view name);

/// Symmetric pure-dephasing rates gamma_ij (units 1/T), zero diagonal.
class DephasingMatrix {
 public:
  DephasingMatrix() = default;
  /// Equal rate on every pair.
  static DephasingMatrix uniform(double rate);
  /// Throws Error(InvalidConfig) unless symmetric, non-negative and zero on the diagonal.
  static DephasingMatrix from_rows(const std::array<std::array<double, 4>, 4>& rows);

  double operator()(int i, int j) const { return g_[i][j]; }
  void set(int i, int j, double rate);

  /// True when all off-diagonal rates agree to 1e-12 relative.
  bool is_uniform() const;
  /// The shared rate when is_uniform(); otherwise gamma_13.
  double common_rate() const { return g_[0][2]; }
  bool is_zero() const;

 private:
  std::array<std::array<double, 4>, 4> g_{};
};

/// One experiment: pulse sequence, Rabi scale, delay, dephasing, window.
/// Times are in units of T and rates in 1/T; hbar = 1.
struct PulseConfig {
  Ordering ordering = Ordering::Overlap;
  double omega0 = 50.0;
  double tau = 1.5;
  double width = 1.0;
  DephasingMatrix gamma;
  double t_start = -7.5;
  double t_end = 7.5;
  double epsilon = 0.1;

  /// Builds a config with the default window [-6T - tau, 6T + tau].
  static PulseConfig make(Ordering ordering, double omega0, double tau, DephasingMatrix gamma = {},
                          double width = 1.0);
  void reset_window();
  /// Throws Error(InvalidConfig) on any violated invariant.
  void validate() const;
};

/// Canonical one-line key=value rendering; identical configs give identical strings.
std::string describe(const PulseConfig& cfg);

}  // namespace tripod
