#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "tripod/config.hpp"

namespace tripod::cli {

/// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kCheckFailed = 1,   ///< constants outside their reference bands
  kUsage = 2,         ///< bad flags or violated preconditions
  kEngineFailure = 3, ///< integrator or engine error
};

/// Runs the command line; output goes to `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Decimal, 12 significant digits, locale independent.
std::string format_number(double value);

/// A scalar rate, or the path of a file holding four rows of four rates.
DephasingMatrix parse_gamma(const std::string& text);

/// "a:b:n" (n evenly spaced values including both ends).
std::vector<double> parse_range(std::string_view text);
/// Comma-separated list.
std::vector<double> parse_list(std::string_view text);

/// Output file plus its SHA-256, as recorded in a run manifest.
struct OutputRecord {
  std::filesystem::path path;
  std::string sha256;
  std::size_t bytes = 0;
};

/// Resolved configuration and provenance of one run, written next to its outputs as JSON.
struct RunManifest {
  std::string command;
  std::string config;
  std::string engine;
  double wall_clock_seconds = 0.0;
  std::vector<OutputRecord> outputs;
};

void write_manifest(const RunManifest& manifest, const std::filesystem::path& path);

}  // namespace tripod::cli
