#include "tripod/cli.hpp"

#include <chrono>
#include <cmath>
#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "tripod/analysis.hpp"
#include "tripod/dk.hpp"
#include "tripod/effective.hpp"
#include "tripod/frame.hpp"
#include "tripod/liouville.hpp"

#ifndef TRIPOD_VERSION
#define TRIPOD_VERSION "0.0.0"
#endif

namespace tripod::cli {

namespace {

namespace fs = std::filesystem;

/// Experiment options shared by every subcommand; also the keys accepted in a config file.
struct CommonOptions {
  std::string ordering = "overlap";
  double omega0 = 50.0;
  double tau = 1.5;
  double width = 1.0;
  std::string gamma = "0";
  double epsilon = 0.1;
  std::optional<double> t_start;
  std::optional<double> t_end;
  std::size_t samples = 2000;
  std::string engine = "master";
  std::string basis = "bare";
  std::string out;
  unsigned threads = 0;
  double rtol = 1e-9;
  double atol = 1e-12;
  double t_max_eval = 5.0;
};

PulseConfig resolve_config(const CommonOptions& o) {
  PulseConfig cfg = PulseConfig::make(parse_ordering(o.ordering), o.omega0, o.tau, parse_gamma(o.gamma), o.width);
  cfg.epsilon = o.epsilon;
  if (o.t_start) cfg.t_start = *o.t_start;
  if (o.t_end) cfg.t_end = *o.t_end;
  cfg.validate();
  return cfg;
}

Tolerances tolerances(const CommonOptions& o) { return {o.rtol, o.atol}; }

SweepOptions sweep_options(const CommonOptions& o) {
  SweepOptions s;
  s.samples = o.samples;
  s.t_max_eval = o.t_max_eval;
  s.threads = o.threads;
  s.tolerances = tolerances(o);
  return s;
}

/// CSV text with a leading comment line.
class Csv {
 public:
  Csv(std::string_view comment, const std::vector<std::string>& header) {
    text_ = fmt::format("# {}\n", comment);
    line(header);
  }

  void row(const std::vector<double>& numbers, const std::vector<std::string>& tail = {}) {
    std::vector<std::string> cells;
    cells.reserve(numbers.size() + tail.size());
    for (double v : numbers) cells.push_back(format_number(v));
    cells.insert(cells.end(), tail.begin(), tail.end());
    line(cells);
  }

  const std::string& text() const { return text_; }

 private:
  void line(const std::vector<std::string>& cells) {
    for (std::size_t k = 0; k < cells.size(); ++k) {
      if (k) text_ += ',';
      text_ += cells[k];
    }
    text_ += '\n';
  }

  std::string text_;
};

OutputRecord write_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::InvalidConfig, fmt::format("cannot open '{}' for writing", path.string()));
  f << text;
  if (!f) throw Error(ErrorCode::InvalidConfig, fmt::format("failed writing '{}'", path.string()));
  return {path, sha256_hex(text), text.size()};
}

fs::path manifest_path_for(const fs::path& output) {
  fs::path p = output;
  p.replace_extension(".manifest.json");
  return p;
}

/// Error code name only; commas in messages would break the CSV.
std::string marker(const std::string& message) {
  const auto colon = message.find(':');
  return colon == std::string::npos ? message : message.substr(0, colon);
}

std::string join(const std::vector<double>& values) {
  std::string s;
  for (std::size_t k = 0; k < values.size(); ++k) s += (k ? ";" : "") + format_number(values[k]);
  return s;
}

double elapsed_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// ---------------------------------------------------------------------------------------------
// simulate

int cmd_simulate(const CommonOptions& o, std::ostream& out, std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();
  const PulseConfig cfg = resolve_config(o);
  const Engine engine = parse_engine(o.engine);
  if (o.samples < 2) throw Error(ErrorCode::InvalidConfig, "--samples must be at least 2");

  const TargetState target = target_state(cfg);
  std::vector<double> times;
  std::vector<DensityMatrix> states;
  switch (engine) {
    case Engine::Master: {
      const Basis basis = o.basis == "adiabatic" ? Basis::Adiabatic : Basis::Bare;
      if (o.basis != "bare" && o.basis != "adiabatic")
        throw Error(ErrorCode::InvalidConfig, fmt::format("unknown basis '{}'", o.basis));
      Trajectory traj = integrate(cfg, basis, o.samples, tolerances(o));
      times = std::move(traj.times);
      states = std::move(traj.states);
      break;
    }
    case Engine::Effective: {
      const SuvTrajectory traj = integrate_suv(cfg, SuvMode::Full, o.samples, tolerances(o));
      times = traj.times;
      for (std::size_t k = 0; k < times.size(); ++k) states.push_back(bare_state(traj.states[k], times[k], cfg));
      break;
    }
    case Engine::Analytic:
      throw Error(ErrorCode::InvalidConfig, "simulate supports the master and effective engines");
  }

  Csv csv(fmt::format("{} thetag={} engine={} samples={}", describe(cfg), format_number(target.thetag),
                      to_string(engine), o.samples),
          {"t", "rho11", "rho22", "rho33", "rho44", "rho_a11", "rho_a22", "rho_a33", "rho_a44", "re_rho_a12",
           "im_rho_a12", "F2"});
  for (std::size_t k = 0; k < times.size(); ++k) {
    const Observables ob = observables(states[k], times[k], cfg, target);
    csv.row({times[k], ob.populations[0], ob.populations[1], ob.populations[2], ob.populations[3],
             ob.adiabatic_populations[0], ob.adiabatic_populations[1], ob.adiabatic_populations[2],
             ob.adiabatic_populations[3], ob.rho_a12.real(), ob.rho_a12.imag(), fidelity(states[k], target)});
  }

  if (o.out.empty()) {
    out << csv.text();
    return kOk;
  }
  RunManifest m{"simulate", describe(cfg), std::string(to_string(engine)), 0.0, {write_file(o.out, csv.text())}};
  m.wall_clock_seconds = elapsed_since(start);
  write_manifest(m, manifest_path_for(o.out));
  err << fmt::format("wrote {}\n", o.out);
  return kOk;
}

// ---------------------------------------------------------------------------------------------
// sweep

struct SweepArgs {
  std::string axis = "gamma";
  std::string values;
  std::string range;
};

int cmd_sweep(const CommonOptions& o, const SweepArgs& a, std::ostream& out, std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();
  const PulseConfig cfg = resolve_config(o);
  const Engine engine = parse_engine(o.engine);
  const SweepAxis axis = parse_axis(a.axis);
  if (a.values.empty() == a.range.empty())
    throw Error(ErrorCode::InvalidConfig, "give exactly one of --values and --range");
  const std::vector<double> values = a.values.empty() ? parse_range(a.range) : parse_list(a.values);

  const SweepResult result = sweep(cfg, axis, values, engine, sweep_options(o));

  Csv csv(fmt::format("{} axis={} engine={} samples={} t_max_eval={}", describe(cfg), to_string(axis),
                      to_string(engine), o.samples, format_number(o.t_max_eval)),
          {std::string(to_string(axis)), "F2_final", "F2_tmax", "T_tr", "theta_g", "error_marker", "cfg_hash",
           "steps"});
  for (const SweepRow& r : result.rows) {
    std::string flag = marker(r.error);
    if (flag.empty() && !r.t_tr_error.empty()) flag = "t_tr:" + marker(r.t_tr_error);
    csv.row({r.value, r.f2_final, r.f2_tmax, r.t_tr, r.thetag}, {flag, r.cfg_hash, std::to_string(r.stats.steps)});
    if (!r.error.empty()) err << fmt::format("{} = {}: {}\n", to_string(axis), format_number(r.value), r.error);
  }

  if (o.out.empty()) {
    out << csv.text();
  } else {
    RunManifest m{"sweep", describe(cfg), std::string(to_string(engine)), 0.0, {write_file(o.out, csv.text())}};
    m.wall_clock_seconds = elapsed_since(start);
    write_manifest(m, manifest_path_for(o.out));
    err << fmt::format("wrote {}\n", o.out);
  }
  return result.succeeded() > 0 ? kOk : kEngineFailure;
}

// ---------------------------------------------------------------------------------------------
// figures

struct FigureArgs {
  std::string name;
  std::string out_dir = ".";
  std::string omega0_list = "20,50,100,200";
  std::string gamma_list;
  std::string tau_list;
};

struct FigureFile {
  std::string name;
  std::string text;
};

struct FigureContext {
  const CommonOptions& common;
  const FigureArgs& args;

  std::vector<double> gammas(std::vector<double> fallback) const {
    return args.gamma_list.empty() ? fallback : parse_list(args.gamma_list);
  }
  std::vector<double> taus(std::vector<double> fallback) const {
    return args.tau_list.empty() ? fallback : parse_list(args.tau_list);
  }
  SweepOptions options() const { return sweep_options(common); }
};

const std::vector<double> kGammaGrid = {0.0, 0.05, 0.1, 0.25, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0};

void require_rows(const SweepResult& r) {
  for (const SweepRow& row : r.rows)
    if (!row.error.empty()) throw Error(ErrorCode::ToleranceNotMet, fmt::format("sweep point failed: {}", row.error));
}

double root(double f2) { return std::sqrt(std::max(0.0, f2)); }

std::vector<FigureFile> figure3(const FigureContext& ctx) {
  const PulseConfig base = PulseConfig::make(Ordering::Overlap, 50.0, 1.5);
  const std::vector<double> gammas = ctx.gammas(kGammaGrid);
  const std::string comment = fmt::format("figure=fig3 {} gammas={}", describe(base), join(gammas));
  const std::vector<std::string> header = {"gamma", "rho11", "rho22", "rho33", "rho44"};
  Csv numeric(comment + " source=master", header);
  Csv analytic(comment + " source=closed-form", header);
  for (double g : gammas) {
    const PulseConfig cfg = sweep_point(base, SweepAxis::Gamma, g);
    const Trajectory traj = integrate(cfg, Basis::Bare, 2, ctx.options().tolerances);
    const DensityMatrix& rho = traj.states.back();
    numeric.row({g, rho(0, 0).real(), rho(1, 1).real(), rho(2, 2).real(), rho(3, 3).real()});
    const auto p = dk::analytic_bare_populations(cfg);
    analytic.row({g, p[0], p[1], p[2], p[3]});
  }
  return {{"fig3_numeric.csv", numeric.text()}, {"fig3_analytic.csv", analytic.text()}};
}

std::vector<FigureFile> figure4(const FigureContext& ctx) {
  const PulseConfig base = PulseConfig::make(Ordering::Overlap, 50.0, 1.5);
  const std::vector<double> gammas = ctx.gammas(kGammaGrid);
  SweepOptions opts = ctx.options();
  const SweepResult master = sweep(base, SweepAxis::Gamma, gammas, Engine::Master, opts);
  require_rows(master);
  Csv csv(fmt::format("figure=fig4 {} gammas={} t_max_eval={}", describe(base), join(gammas),
                      format_number(opts.t_max_eval)),
          {"gamma", "F_numeric", "F_finite_time", "F_long_time", "F2_numeric", "F2_numeric_tmax", "F2_finite_time",
           "F2_weak_dephasing", "F2_long_time"});
  for (const SweepRow& r : master.rows) {
    const PulseConfig cfg = sweep_point(base, SweepAxis::Gamma, r.value);
    const double finite = dk::analytic_fidelity(cfg, opts.t_max_eval);
    const double weak = dk::weak_dephasing_fidelity(cfg, opts.t_max_eval);
    const double long_time = dk::analytic_fidelity(cfg);
    csv.row({r.value, root(r.f2_final), root(finite), root(long_time), r.f2_final, r.f2_tmax, finite, weak, long_time});
  }
  return {{"fig4.csv", csv.text()}};
}

std::vector<FigureFile> figure5(const FigureContext& ctx, double gamma, std::string_view name) {
  const std::vector<double> omegas = parse_list(ctx.args.omega0_list);
  const std::vector<double> taus = ctx.taus({0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 1.75, 2.0, 2.5, 3.0});
  Csv csv(fmt::format("figure={} ordering=overlap gamma={} omega0s={} taus={}", name, format_number(gamma), join(omegas),
                      join(taus)),
          {"omega0", "tau", "F_numeric", "F2_numeric", "F_long_time"});
  for (double om : omegas) {
    const PulseConfig base = PulseConfig::make(Ordering::Overlap, om, taus.front(), DephasingMatrix::uniform(gamma));
    const SweepResult r = sweep(base, SweepAxis::Tau, taus, Engine::Master, ctx.options());
    require_rows(r);
    for (const SweepRow& row : r.rows) {
      const double long_time = dk::analytic_fidelity(sweep_point(base, SweepAxis::Tau, row.value));
      csv.row({om, row.value, root(row.f2_final), row.f2_final, root(long_time)});
    }
  }
  return {{fmt::format("{}.csv", name), csv.text()}};
}

// F versus gamma for several delays of one ordering.
std::vector<FigureFile> fidelity_vs_gamma(const FigureContext& ctx, Ordering ordering, std::vector<double> default_taus,
                                          std::string_view name) {
  const std::vector<double> taus = ctx.taus(default_taus);
  const std::vector<double> gammas = ctx.gammas(kGammaGrid);
  Csv csv(fmt::format("figure={} ordering={} omega0=200 taus={} gammas={}", name, to_string(ordering), join(taus),
                      join(gammas)),
          {"tau", "gamma", "F", "F2", "theta_g"});
  for (double tau : taus) {
    const PulseConfig base = PulseConfig::make(ordering, 200.0, tau);
    const SweepResult r = sweep(base, SweepAxis::Gamma, gammas, Engine::Master, ctx.options());
    require_rows(r);
    for (const SweepRow& row : r.rows) csv.row({tau, row.value, root(row.f2_final), row.f2_final, row.thetag});
  }
  return {{fmt::format("{}.csv", name), csv.text()}};
}

// Transition time versus delay at gamma = 0.
std::vector<FigureFile> transition_vs_tau(const FigureContext& ctx, Ordering ordering, std::vector<double> default_taus,
                                          std::string_view name) {
  const std::vector<double> taus = ctx.taus(default_taus);
  const PulseConfig base = PulseConfig::make(ordering, 200.0, taus.front());
  const SweepResult r = sweep(base, SweepAxis::Tau, taus, Engine::Master, ctx.options());
  require_rows(r);
  Csv csv(fmt::format("figure={} {} taus={}", name, describe(base), join(taus)),
          {"tau", "T_tr", "theta_g", "F2_initial_threshold", "error_marker"});
  for (const SweepRow& row : r.rows) {
    const double c = std::cos(row.thetag);
    csv.row({row.value, row.t_tr, row.thetag, (1.0 + base.epsilon) * c * c},
            {row.t_tr_error.empty() ? "" : "t_tr:" + marker(row.t_tr_error)});
  }
  return {{fmt::format("{}.csv", name), csv.text()}};
}

std::vector<FigureFile> figure9a(const FigureContext& ctx) {
  const std::vector<double> taus = ctx.taus({0.5, 1.0, 1.5});
  Csv csv(fmt::format("figure=fig9a ordering=fractional omega0=200 gamma=0 taus={} samples={}", join(taus),
                      ctx.common.samples),
          {"tau", "t", "F2"});
  for (double tau : taus) {
    const PulseConfig cfg = PulseConfig::make(Ordering::Fractional, 200.0, tau);
    const Trajectory traj = integrate(cfg, Basis::Bare, ctx.common.samples, ctx.options().tolerances);
    const std::vector<double> fid = fidelity_series(traj, target_state(cfg));
    for (std::size_t k = 0; k < fid.size(); ++k) csv.row({tau, traj.times[k], fid[k]});
  }
  return {{"fig9a.csv", csv.text()}};
}

int cmd_figures(const CommonOptions& o, const FigureArgs& a, std::ostream& out, std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();
  const FigureContext ctx{o, a};
  const std::map<std::string, std::function<std::vector<FigureFile>()>> table = {
      {"fig3", [&] { return figure3(ctx); }},
      {"fig4", [&] { return figure4(ctx); }},
      {"fig5a", [&] { return figure5(ctx, 0.0, "fig5a"); }},
      {"fig5b", [&] { return figure5(ctx, 1.0, "fig5b"); }},
      {"fig6", [&] { return fidelity_vs_gamma(ctx, Ordering::StokesControlPump, {1.0, 1.5, 2.0}, "fig6"); }},
      {"fig7",
       [&] {
         return transition_vs_tau(ctx, Ordering::StokesControlPump, {0.75, 1.0, 1.25, 1.5, 1.75, 2.0, 2.5, 3.0},
                                  "fig7");
       }},
      {"fig8", [&] { return fidelity_vs_gamma(ctx, Ordering::Fractional, {0.5, 1.0, 1.5}, "fig8"); }},
      {"fig9a", [&] { return figure9a(ctx); }},
      {"fig9b",
       [&] {
         return transition_vs_tau(ctx, Ordering::Fractional, {0.5, 0.625, 0.75, 0.875, 1.0, 1.25, 1.5, 1.75, 2.0},
                                  "fig9b");
       }},
  };
  const auto it = table.find(a.name);
  if (it == table.end()) throw Error(ErrorCode::InvalidConfig, fmt::format("unknown figure '{}'", a.name));

  const std::vector<FigureFile> files = it->second();
  RunManifest m;
  m.command = "figures " + a.name;
  m.engine = "master";
  m.config = files.front().text.substr(2, files.front().text.find('\n') - 2);
  for (const FigureFile& f : files) {
    m.outputs.push_back(write_file(fs::path(a.out_dir) / f.name, f.text));
    out << (fs::path(a.out_dir) / f.name).string() << '\n';
  }
  m.wall_clock_seconds = elapsed_since(start);
  write_manifest(m, fs::path(a.out_dir) / (a.name + ".manifest.json"));
  (void)err;
  return kOk;
}

// ---------------------------------------------------------------------------------------------
// constants

int cmd_constants(double tolerance, std::ostream& out) {
  const dk::AdiabaticConstants c = dk::adiabatic_constants(tolerance);
  out << fmt::format("c_s = {} (reference 2.42 +- 0.01)\n", format_number(c.c_s));
  out << fmt::format("c_u = {} (reference 0.68 +- 0.01)\n", format_number(c.c_u));
  out << fmt::format("quadrature tolerance = {}, error estimate = {}\n", format_number(tolerance),
                     format_number(c.error_estimate));
  out << fmt::format("alpha = {}\n", format_number(dk::alpha_constant()));
  for (Ordering o : {Ordering::StokesControlPump, Ordering::ControlStokesPump, Ordering::Fractional})
    for (double tau : {0.5, 1.0, 1.5, 2.0}) {
      const PulseConfig cfg = PulseConfig::make(o, 200.0, tau);
      out << fmt::format("thetag ordering={} omega0=200 tau={} : {}\n", to_string(o), format_number(tau),
                         format_number(geometric_phase(cfg)));
    }
  const bool ok = std::abs(c.c_s - 2.42) <= 0.01 && std::abs(c.c_u - 0.68) <= 0.01;
  out << (ok ? "constants within reference bands\n" : "constants OUTSIDE reference bands\n");
  return ok ? kOk : kCheckFailed;
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidConfig:
    case ErrorCode::WrongOrdering:
    case ErrorCode::ZeroDelay:
      return kUsage;
    default:
      return kEngineFailure;
  }
}

}  // namespace

std::string format_number(double value) { return fmt::format("{:.12g}", value); }

DephasingMatrix parse_gamma(const std::string& text) {
  double scalar = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, scalar);
  if (ec == std::errc() && ptr == last) {
    if (!std::isfinite(scalar) || scalar < 0.0)
      throw Error(ErrorCode::InvalidConfig, "dephasing rates must be finite and non-negative");
    return DephasingMatrix::uniform(scalar);
  }

  std::ifstream f(text);
  if (!f) throw Error(ErrorCode::InvalidConfig, fmt::format("--gamma '{}' is neither a number nor a readable file", text));
  std::vector<double> numbers;
  std::string line;
  while (std::getline(f, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    for (char& ch : line)
      if (ch == ',' || ch == ';') ch = ' ';
    std::istringstream ls(line);
    ls.imbue(std::locale::classic());
    std::string token;
    while (ls >> token) {
      double v = 0.0;
      const auto [p, e] = std::from_chars(token.data(), token.data() + token.size(), v);
      if (e != std::errc() || p != token.data() + token.size())
        throw Error(ErrorCode::InvalidConfig, fmt::format("bad number '{}' in dephasing matrix file", token));
      numbers.push_back(v);
    }
  }
  if (numbers.size() != 16)
    throw Error(ErrorCode::InvalidConfig,
                fmt::format("dephasing matrix file must hold 16 numbers, found {}", numbers.size()));
  std::array<std::array<double, 4>, 4> rows{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) rows[i][j] = numbers[4 * i + j];
  return DephasingMatrix::from_rows(rows);
}

std::vector<double> parse_list(std::string_view text) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    std::string_view item = text.substr(pos, comma - pos);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    double v = 0.0;
    const auto [p, e] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (item.empty() || e != std::errc() || p != item.data() + item.size())
      throw Error(ErrorCode::InvalidConfig, fmt::format("bad number '{}' in list '{}'", item, text));
    out.push_back(v);
    pos = comma + 1;
  }
  return out;
}

std::vector<double> parse_range(std::string_view text) {
  const std::string s(text);
  double a = 0.0;
  double b = 0.0;
  long n = 0;
  char c1 = 0;
  char c2 = 0;
  std::istringstream in(s);
  in.imbue(std::locale::classic());
  if (!(in >> a >> c1 >> b >> c2 >> n) || c1 != ':' || c2 != ':' || !(in >> std::ws).eof())
    throw Error(ErrorCode::InvalidConfig, fmt::format("range '{}' must look like a:b:n", text));
  if (n < 1) throw Error(ErrorCode::InvalidConfig, "range needs at least one point");
  if (n == 1) return {a};
  return linspace(a, b, static_cast<std::size_t>(n));
}

void write_manifest(const RunManifest& m, const std::filesystem::path& path) {
  nlohmann::json j;
  j["tool"] = "tripod";
  j["version"] = TRIPOD_VERSION;
  j["command"] = m.command;
  j["config"] = m.config;
  j["engine"] = m.engine;
  j["wall_clock_seconds"] = m.wall_clock_seconds;
  j["outputs"] = nlohmann::json::array();
  for (const OutputRecord& o : m.outputs)
    j["outputs"].push_back({{"path", o.path.string()}, {"sha256", o.sha256}, {"bytes", o.bytes}});
  write_file(path, j.dump(2) + "\n");
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Four-level tripod population transfer with pure dephasing: simulation, sweeps and closed forms"};
  app.set_version_flag("--version", TRIPOD_VERSION);
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "Flat key=value file with experiment options; flags take precedence");
  app.allow_config_extras(CLI::config_extras_mode::error);

  CommonOptions o;
  app.add_option("--ordering", o.ordering, "overlap | scp | csp | fractional")->capture_default_str();
  app.add_option("--omega0", o.omega0, "Peak Rabi frequency (1/T)")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--tau", o.tau, "Pulse delay (T)")->check(CLI::NonNegativeNumber)->capture_default_str();
  app.add_option("--width", o.width, "Pulse width T")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--gamma", o.gamma, "Common dephasing rate (1/T) or a file with a 4x4 matrix")->capture_default_str();
  app.add_option("--epsilon", o.epsilon, "Transition-time threshold")->capture_default_str();
  app.add_option("--t-start", o.t_start, "Window start (default -6T - tau)");
  app.add_option("--t-end", o.t_end, "Window end (default 6T + tau)");
  app.add_option("--samples", o.samples, "Samples per trajectory")->check(CLI::Range(std::size_t{2}, std::size_t{10'000'000}))
      ->capture_default_str();
  app.add_option("--engine", o.engine, "master | effective | analytic")->capture_default_str();
  app.add_option("--basis", o.basis, "Integration basis of the master engine: bare | adiabatic")->capture_default_str();
  app.add_option("--out", o.out, "Output CSV path (stdout when empty); a manifest is written next to it");
  app.add_option("--threads", o.threads, "Sweep workers (0: TRIPOD_THREADS or all cores)")->capture_default_str();
  app.add_option("--rtol", o.rtol, "Integrator relative tolerance")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--atol", o.atol, "Integrator absolute tolerance")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--t-max-eval", o.t_max_eval, "Evaluation time of the finite-time fidelity")->capture_default_str();

  CLI::App* simulate = app.add_subcommand("simulate", "Integrate one trajectory and write it as CSV");

  SweepArgs sweep_args;
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "Sweep the dephasing rate or the delay");
  sweep_cmd->add_option("--axis", sweep_args.axis, "gamma | tau")->capture_default_str();
  sweep_cmd->add_option("--values", sweep_args.values, "Comma-separated axis values");
  sweep_cmd->add_option("--range", sweep_args.range, "a:b:n evenly spaced axis values");

  FigureArgs fig;
  CLI::App* figures = app.add_subcommand("figures", "Write the datasets behind one figure");
  figures->add_option("name", fig.name, "fig3 | fig4 | fig5a | fig5b | fig6 | fig7 | fig8 | fig9a | fig9b")->required();
  figures->add_option("--out-dir", fig.out_dir, "Output directory")->capture_default_str();
  figures->add_option("--omega0-list", fig.omega0_list, "Peak Rabi frequencies for fig5")->capture_default_str();
  figures->add_option("--gamma-list", fig.gamma_list, "Override the dephasing-rate grid");
  figures->add_option("--tau-list", fig.tau_list, "Override the delay grid");

  double quad_tol = 1e-12;
  CLI::App* constants = app.add_subcommand("constants", "Recompute the adiabatic constants and sample phases");
  constants->add_option("--tolerance", quad_tol, "Relative quadrature tolerance")->check(CLI::PositiveNumber)
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << TRIPOD_VERSION << '\n';
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (*simulate) return cmd_simulate(o, out, err);
    if (*sweep_cmd) return cmd_sweep(o, sweep_args, out, err);
    if (*figures) return cmd_figures(o, fig, out, err);
    if (*constants) return cmd_constants(quad_tol, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kEngineFailure;
  }
  return kUsage;
}

}  // namespace tripod::cli
