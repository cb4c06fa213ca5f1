#include "tripod/config.hpp"

#include <cmath>

#include <fmt/format.h>

#include "tripod/pulses.hpp"

namespace tripod {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::StepSizeUnderflow: return "StepSizeUnderflow";
    case ErrorCode::ToleranceNotMet: return "ToleranceNotMet";
    case ErrorCode::WrongOrdering: return "WrongOrdering";
    case ErrorCode::ZeroDelay: return "ZeroDelay";
    case ErrorCode::GammaPole: return "GammaPole";
    case ErrorCode::NonHermitianState: return "NonHermitianState";
    case ErrorCode::NoCrossing: return "NoCrossing";
    case ErrorCode::DegenerateThresholds: return "DegenerateThresholds";
    case ErrorCode::QuadratureFailed: return "QuadratureFailed";
  }
  return "Unknown";
}

std::string_view to_string(Ordering ordering) {
  switch (ordering) {
    case Ordering::Overlap: return "overlap";
    case Ordering::StokesControlPump: return "scp";
    case Ordering::ControlStokesPump: return "csp";
    case Ordering::Fractional: return "fractional";
  }
  return "unknown";
}

Ordering parse_ordering(std::string_view name) {
  if (name == "overlap") return Ordering::Overlap;
  if (name == "scp" || name == "stokes-control-pump") return Ordering::StokesControlPump;
  if (name == "csp" || name == "control-stokes-pump") return Ordering::ControlStokesPump;
  if (name == "fractional" || name == "frac") return Ordering::Fractional;
  throw Error(ErrorCode::InvalidConfig, fmt::format("unknown pulse ordering '{}'", name));
}

DephasingMatrix DephasingMatrix::uniform(double rate) {
  if (!(rate >= 0.0) || !std::isfinite(rate))
    throw Error(ErrorCode::InvalidConfig, "dephasing rates must be finite and non-negative");
  DephasingMatrix m;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (i != j) m.g_[i][j] = rate;
  return m;
}

DephasingMatrix DephasingMatrix::from_rows(const std::array<std::array<double, 4>, 4>& rows) {
  for (int i = 0; i < 4; ++i) {
    if (rows[i][i] != 0.0)
      throw Error(ErrorCode::InvalidConfig, "dephasing matrix must have a zero diagonal");
    for (int j = 0; j < 4; ++j) {
      if (!std::isfinite(rows[i][j]) || rows[i][j] < 0.0)
        throw Error(ErrorCode::InvalidConfig, "dephasing rates must be finite and non-negative");
      if (rows[i][j] != rows[j][i])
        throw Error(ErrorCode::InvalidConfig, "dephasing matrix must be symmetric");
    }
  }
  DephasingMatrix m;
  m.g_ = rows;
  return m;
}

void DephasingMatrix::set(int i, int j, double rate) {
  if (i == j) throw Error(ErrorCode::InvalidConfig, "dephasing matrix must have a zero diagonal");
  if (!std::isfinite(rate) || rate < 0.0)
    throw Error(ErrorCode::InvalidConfig, "dephasing rates must be finite and non-negative");
  g_[i][j] = rate;
  g_[j][i] = rate;
}

bool DephasingMatrix::is_uniform() const {
  const double ref = g_[0][1];
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (std::abs(g_[i][j] - ref) > 1e-12 * std::max(1.0, std::abs(ref))) return false;
  return true;
}

bool DephasingMatrix::is_zero() const {
  for (const auto& row : g_)
    for (double v : row)
      if (v != 0.0) return false;
  return true;
}

PulseConfig PulseConfig::make(Ordering ordering, double omega0, double tau, DephasingMatrix gamma,
                              double width) {
  PulseConfig cfg;
  cfg.ordering = ordering;
  cfg.omega0 = omega0;
  cfg.tau = tau;
  cfg.width = width;
  cfg.gamma = gamma;
  cfg.reset_window();
  return cfg;
}

void PulseConfig::reset_window() {
  t_start = -6.0 * width - tau;
  t_end = 6.0 * width + tau;
}

void PulseConfig::validate() const {
  auto fail = [](const std::string& msg) { throw Error(ErrorCode::InvalidConfig, msg); };
  if (!(omega0 > 0.0) || !std::isfinite(omega0)) fail("omega0 must be positive");
  if (!(tau >= 0.0) || !std::isfinite(tau)) fail("tau must be non-negative");
  if (!(width > 0.0) || !std::isfinite(width)) fail("width must be positive");
  if (!(epsilon > 0.0 && epsilon < 0.5)) fail("epsilon must lie in (0, 1/2)");
  if (!(t_start < t_end)) fail("t_start must precede t_end");
  const double floor = 1e-6 * omega0;
  for (double t : {t_start, t_end}) {
    const Envelopes e = pulse_envelopes(t, *this);
    if (e.pump >= floor || e.stokes >= floor || e.control >= floor)
      fail(fmt::format("pulse envelopes are not negligible at t = {}; widen the window", t));
  }
}

std::string describe(const PulseConfig& cfg) {
  std::string out = fmt::format("ordering={} omega0={:.12g} tau={:.12g} width={:.12g} t_start={:.12g} t_end={:.12g} epsilon={:.12g}",
                                to_string(cfg.ordering), cfg.omega0, cfg.tau, cfg.width, cfg.t_start, cfg.t_end, cfg.epsilon);
  if (cfg.gamma.is_uniform()) {
    out += fmt::format(" gamma={:.12g}", cfg.gamma.common_rate());
  } else {
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) out += fmt::format(" gamma{}{}={:.12g}", i + 1, j + 1, cfg.gamma(i, j));
  }
  return out;
}

}  // namespace tripod
