#include "fqb/cli.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <iostream>
#include <numbers>
#include <sstream>

#include "fqb/experiments.hpp"
#include "fqb/oracle.hpp"
#include "fqb/parallel.hpp"

namespace fqb {

namespace {

constexpr const char* kCommands[] = {"evolve",         "sweep-tau", "sweep-asym", "sweep-size",
                                     "sweep-coupling", "landscape", "entropy",    "validate"};

struct Flags {
  std::optional<std::string> config;
  std::optional<int> n_sites;
  std::optional<double> coupling, hx, hz, omega;
  std::optional<std::string> tau0, tau1, boundary, range;
  bool antipodal_halving = false;
  std::optional<long> kicks;
  std::optional<std::string> out, plot;
  std::optional<unsigned> workers;
  std::optional<std::string> log_base;
  std::optional<std::string> grid, sizes, couplings, fixed, fixed_value, sites;
  std::optional<int> max_sites;
  std::optional<double> tolerance;
};

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config, "INI config file; flags override its values");
  cmd->add_option("--n-sites", f.n_sites, "number of spins N");
  cmd->add_option("--coupling", f.coupling, "interaction strength J");
  cmd->add_option("--hx", f.hx, "x field (0 = integrable)");
  cmd->add_option("--hz", f.hz, "z field of the second step");
  cmd->add_option("--omega", f.omega, "battery level splitting");
  cmd->add_option("--tau0", f.tau0, "first interval, radians or pi fraction");
  cmd->add_option("--tau1", f.tau1, "second interval, radians or pi fraction");
  cmd->add_option("--boundary", f.boundary, "pbc or obc")->check(CLI::IsMember({"pbc", "obc"}));
  cmd->add_option("--range", f.range, "lr or nn")->check(CLI::IsMember({"lr", "nn"}));
  cmd->add_flag("--antipodal-halving", f.antipodal_halving, "halve the k=N/2 weight for even N under LR PBC");
  cmd->add_option("--kicks", f.kicks, "number of kicks n_max");
  cmd->add_option("--out", f.out, "output CSV path (default stdout)");
  cmd->add_option("--plot", f.plot, "write an SVG plot to this path");
  cmd->add_option("--workers", f.workers, "parallel workers (default FQB_WORKERS or cores)");
}

void add_log_base(CLI::App* cmd, Flags& f) {
  cmd->add_option("--log-base", f.log_base, "entropy log base, e or 2")->check(CLI::IsMember({"e", "2"}));
}

std::string usage(const CLI::App& app) {
  std::ostringstream s;
  s << app.help();
  return s.str();
}

// Applies flags on top of cfg; throws CLI::ValidationError naming the flag.
void apply_flags(const Flags& f, RunConfig& cfg) {
  const auto wrap = [](const char* flag, auto&& fn) {
    try {
      fn();
    } catch (const std::invalid_argument& e) {
      throw CLI::ValidationError(flag, e.what());
    }
  };
  ChargerParams& p = cfg.params;
  if (f.n_sites) p.n_sites = *f.n_sites;
  if (f.coupling) p.coupling = *f.coupling;
  if (f.hx) p.hx = *f.hx;
  if (f.hz) p.hz = *f.hz;
  if (f.omega) p.omega = *f.omega;
  if (f.tau0) wrap("--tau0", [&] { p.tau0 = parse_angle(*f.tau0); });
  if (f.tau1) wrap("--tau1", [&] { p.tau1 = parse_angle(*f.tau1); });
  if (f.boundary) p.boundary = parse_boundary(*f.boundary);
  if (f.range) p.range = parse_range(*f.range);
  if (f.antipodal_halving) p.antipodal_halving = true;
  if (f.kicks) cfg.kicks = *f.kicks;
  if (f.out) cfg.out = *f.out;
  if (f.plot) cfg.plot = *f.plot;
  if (f.workers) cfg.workers = *f.workers;
  if (f.log_base) cfg.log_base = *f.log_base == "2" ? LogBase::Two : LogBase::Natural;
  if (f.grid) wrap("--grid", [&] { cfg.grid = parse_grid(*f.grid); });
  if (f.sizes) wrap("--sizes", [&] { cfg.sizes = parse_int_list(*f.sizes); });
  if (f.couplings) wrap("--couplings", [&] { cfg.couplings = parse_grid(*f.couplings); });
  if (f.fixed) cfg.fixed = *f.fixed == "tau0" ? FixedInterval::Tau0 : FixedInterval::Tau1;
  if (f.fixed_value) wrap("--fixed-value", [&] { cfg.fixed_value = parse_angle(*f.fixed_value); });
  if (f.sites) {
    wrap("--sites", [&] {
      cfg.entropy_sites = parse_int_list(*f.sites);
      for (int& s : cfg.entropy_sites) --s;
    });
  }
  if (f.max_sites) cfg.max_sites = *f.max_sites;
  if (f.tolerance) cfg.tolerance = *f.tolerance;
}

void check_config(const RunConfig& cfg) {
  const ChargerParams& p = cfg.params;
  const auto fail = [](const char* flag, const std::string& what) { throw CLI::ValidationError(flag, what); };
  if (p.n_sites < 1 || p.n_sites > kMaxSites) fail("--n-sites", fmt::format("must be in [1, {}]", kMaxSites));
  if (p.range == Range::NearestNeighbor && p.n_sites < 2) fail("--n-sites", "nearest-neighbor needs at least 2");
  if (!(p.omega > 0.0)) fail("--omega", "must be > 0");
  if (!(p.tau0 >= 0.0)) fail("--tau0", "must be >= 0");
  if (!(p.tau1 >= 0.0)) fail("--tau1", "must be >= 0");
  if (cfg.kicks && *cfg.kicks < 0) fail("--kicks", "must be >= 0");
  for (double t : cfg.grid) {
    if (!(t >= 0.0)) fail("--grid", "values must be >= 0");
  }
  for (std::size_t i = 1; i < cfg.grid.size(); ++i) {
    if (!(cfg.grid[i] > cfg.grid[i - 1])) fail("--grid", "values must be strictly increasing");
  }
  for (std::size_t i = 0; i < cfg.sizes.size(); ++i) {
    if (cfg.sizes[i] < 2 || cfg.sizes[i] > kMaxSites) fail("--sizes", "sizes must be in [2, 26]");
    if (i > 0 && cfg.sizes[i] <= cfg.sizes[i - 1]) fail("--sizes", "sizes must be strictly increasing");
  }
  for (std::size_t i = 1; i < cfg.couplings.size(); ++i) {
    if (!(cfg.couplings[i] > cfg.couplings[i - 1])) fail("--couplings", "values must be strictly increasing");
  }
  if (cfg.command == "sweep-asym" && !cfg.fixed_value) fail("--fixed-value", "is required for sweep-asym");
  if (cfg.fixed_value && !(*cfg.fixed_value >= 0.0)) fail("--fixed-value", "must be >= 0");
  if (cfg.command == "entropy") {
    const int size = static_cast<int>(cfg.entropy_sites.size());
    if (size < 1 || size > p.n_sites - 1 || size > kMaxSubsystemSites) {
      fail("--sites", "subsystem must hold between 1 and N-1 sites");
    }
    std::vector<int> sorted = cfg.entropy_sites;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) fail("--sites", "sites must be distinct");
    if (sorted.front() < 0 || sorted.back() >= p.n_sites) fail("--sites", "site numbers run from 1 to N");
  }
  if (cfg.command == "landscape" && (p.n_sites < 2 || p.n_sites > 12)) fail("--n-sites", "landscape needs 2..12");
  if (cfg.command == "validate" && (cfg.max_sites < 2 || cfg.max_sites > 8)) fail("--max-sites", "must be in [2, 8]");
  if (!(cfg.tolerance > 0.0)) fail("--tol", "must be > 0");
}

std::string series_label(const ChargerParams& p) {
  return fmt::format("N={} {} {} hx={}", p.n_sites, to_string(p.range), to_string(p.boundary), format_real(p.hx));
}

// Writes via cfg.out when set, else to `fallback`.
template <typename Fn>
void emit(const RunConfig& cfg, std::ostream& fallback, Fn&& write) {
  if (cfg.out.empty()) {
    write(fallback);
    return;
  }
  std::ofstream file = open_output(cfg.out);
  write(file);
  if (!file) throw std::runtime_error("write failed for '" + cfg.out + "'");
}

int run_validate(const RunConfig& cfg, std::ostream& out) {
  std::vector<ValidationRow> rows;
  for (const ChargerParams& p : oracle::validation_grid(cfg.max_sites)) rows.push_back({p, {}});
  const unsigned workers = cfg.workers ? cfg.workers : default_workers();
  const long kicks = cfg.effective_kicks();
  parallel_for(rows.size(), workers, [&](std::size_t i) {
    rows[i].report = oracle::cross_validate(rows[i].params, kicks, cfg.tolerance);
  });
  std::size_t passed = 0;
  for (const ValidationRow& r : rows) {
    const ChargerParams& p = r.params;
    passed += r.report.pass ? 1 : 0;
    out << (r.report.pass ? "PASS" : "FAIL")
        << fmt::format(" N={} {} {} hx={} tau0={:.6f} tau1={:.6f} max_amp_dev={:.3e} max_energy_dev={:.3e}\n",
                       p.n_sites, to_string(p.range), to_string(p.boundary), format_real(p.hx), p.tau0, p.tau1,
                       r.report.max_amp_dev, r.report.max_energy_dev);
  }
  if (!cfg.out.empty()) {
    std::ofstream file = open_output(cfg.out);
    write_validation_csv(rows, file);
  }
  out << fmt::format("{} of {} points passed\n", passed, rows.size());
  return passed == rows.size() ? kExitOk : kExitFailure;
}

}  // namespace

CliOutcome parse_cli(int argc, const char* const* argv) {
  CLI::App app{"Stroboscopic simulator for Floquet-charged spin quantum batteries", "fqb"};
  app.require_subcommand(1);
  Flags f;

  auto* evolve_cmd = app.add_subcommand("evolve", "stored energy and power per kick");
  auto* tau_cmd = app.add_subcommand("sweep-tau", "symmetric tau0 = tau1 sweep");
  auto* asym_cmd = app.add_subcommand("sweep-asym", "fix one interval, sweep the other");
  auto* size_cmd = app.add_subcommand("sweep-size", "system-size scan");
  auto* coupling_cmd = app.add_subcommand("sweep-coupling", "interaction-strength scan");
  app.add_subcommand("landscape", "maximum stored energy over the eight structural cells");
  auto* entropy_cmd = app.add_subcommand("entropy", "evolve with bipartite entanglement entropy");
  auto* validate_cmd = app.add_subcommand("validate", "cross-check the fast path against dense matrices");

  for (CLI::App* cmd : app.get_subcommands({})) add_common(cmd, f);
  add_log_base(evolve_cmd, f);
  add_log_base(entropy_cmd, f);
  entropy_cmd->add_option("--sites", f.sites, "subsystem sites, 1-based comma list (default 1)");
  tau_cmd->add_option("--grid", f.grid, "tau grid: start:stop:step or comma list (default 0:pi/2:pi/32)");
  asym_cmd->add_option("--grid", f.grid, "grid for the varied interval");
  asym_cmd->add_option("--fixed", f.fixed, "which interval is held fixed")->check(CLI::IsMember({"tau0", "tau1"}));
  asym_cmd->add_option("--fixed-value", f.fixed_value, "value of the fixed interval");
  size_cmd->add_option("--sizes", f.sizes, "comma list of N (default 4..12)");
  coupling_cmd->add_option("--couplings", f.couplings, "J grid (default 0.5:2:0.5)");
  validate_cmd->add_option("--max-sites", f.max_sites, "largest N on the validation grid (<= 8)");
  validate_cmd->add_option("--tol", f.tolerance, "per-amplitude tolerance (default 1e-10)");

  if (argc <= 1) return {std::nullopt, kExitUsage, usage(app)};

  try {
    app.parse(argc, argv);
    RunConfig cfg;
    if (f.config) {
      try {
        cfg = load_config(*f.config);
      } catch (const std::exception& e) {
        throw CLI::ValidationError("--config", e.what());
      }
    }
    for (const char* name : kCommands) {
      if (app.got_subcommand(name)) cfg.command = name;
    }
    apply_flags(f, cfg);
    check_config(cfg);
    return {cfg, kExitOk, {}};
  } catch (const CLI::CallForHelp&) {
    std::ostringstream s;
    for (CLI::App* cmd : app.get_subcommands()) s << cmd->help();
    return {std::nullopt, kExitOk, s.str().empty() ? usage(app) : s.str()};
  } catch (const CLI::ParseError& e) {
    std::string what = e.what();
    std::replace(what.begin(), what.end(), '\n', ' ');
    return {std::nullopt, kExitUsage, "error: " + what};
  }
}

int run_command(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    const ChargerParams& p = cfg.params;
    const SweepOptions opts{cfg.effective_kicks(), cfg.workers ? cfg.workers : default_workers()};
    const std::string& cmd = cfg.command;

    if (cmd == "evolve" || cmd == "entropy") {
      ObservableSelection observe;
      if (cmd == "entropy") observe.entropy = BipartitionSpec{cfg.entropy_sites, cfg.log_base};
      const KickSeries series = evolve(p, opts.n_max, observe);
      emit(cfg, out, [&](std::ostream& o) { write_series_csv(series, o, cfg.log_base); });
      if (!cfg.plot.empty()) {
        write_svg_plot({energy_series(series, series_label(p))}, cfg.plot, {"stored energy", "n", "\xce\x94" "E", true});
      }
      return kExitOk;
    }

    if (cmd == "sweep-tau" || cmd == "sweep-asym" || cmd == "sweep-size" || cmd == "sweep-coupling") {
      SweepResult sweep;
      const std::vector<double> grid = cfg.grid.empty() ? default_tau_grid() : cfg.grid;
      if (cmd == "sweep-tau") {
        sweep = sweep_tau(p, grid, opts);
      } else if (cmd == "sweep-asym") {
        sweep = sweep_asymmetric(p, cfg.fixed, cfg.fixed_value.value_or(std::numbers::pi / 4), grid, opts);
      } else if (cmd == "sweep-size") {
        sweep = sweep_size(p, cfg.sizes.empty() ? std::vector<int>{4, 5, 6, 7, 8, 9, 10, 11, 12} : cfg.sizes, opts);
      } else {
        sweep = sweep_coupling(p, cfg.couplings.empty() ? std::vector<double>{0.5, 1.0, 1.5, 2.0} : cfg.couplings,
                               opts);
      }
      emit(cfg, out, [&](std::ostream& o) { write_sweep_csv(sweep, o); });
      if (!cfg.plot.empty()) {
        write_svg_plot({sweep_series(sweep, series_label(p))}, cfg.plot,
                       {"maximum stored energy", to_string(sweep.axis), "\xce\x94" "E_max", false});
      }
      return kExitOk;
    }

    if (cmd == "landscape") {
      const auto rows = landscape_table(p.n_sites, opts);
      emit(cfg, out, [&](std::ostream& o) { write_landscape_csv(rows, p.n_sites, opts.n_max, o); });
      if (!cfg.plot.empty()) {
        std::vector<PlotSeries> curves;
        for (std::size_t start = 0; start < rows.size(); start += 17) {
          const LandscapeRow& r = rows[start];
          PlotSeries s{fmt::format("{} {} {}", to_string(r.range), r.integrable ? "int" : "nonint",
                                   to_string(r.boundary)),
                       {},
                       {}};
          for (std::size_t k = start; k < start + 17; ++k) {
            s.x.push_back(rows[k].tau);
            s.y.push_back(rows[k].delta_e_max);
          }
          curves.push_back(std::move(s));
        }
        write_svg_plot(curves, cfg.plot, {"landscape", "tau", "\xce\x94" "E_max", false});
      }
      return kExitOk;
    }

    if (cmd == "validate") return run_validate(cfg, out);

    err << "error: unknown command '" << cmd << "'\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace fqb
