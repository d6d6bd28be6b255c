#pragma once

#include <filesystem>
#include <fstream>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fqb/experiments.hpp"
#include "fqb/floquet.hpp"
#include "fqb/oracle.hpp"

namespace fqb {

/// Radians, either plain ("1.5707963") or pi fractions ("pi", "pi/4", "3pi/8", "3*pi/8").
double parse_angle(std::string_view text);

/// "start:stop:step" (inclusive, angle syntax allowed) or a comma list.
std::vector<double> parse_grid(std::string_view text);
std::vector<int> parse_int_list(std::string_view text);

/// Shortest round-trip representation.
std::string format_real(double v);

/// One-line `key=value` rendering of every parameter, in fixed key order.
std::string canonical_params(const ChargerParams& p);
ChargerParams parse_canonical_params(std::string_view line);

/// Everything a CLI invocation needs. Sites are 0-based here; the text
/// forms (flags, config files, CSV) use 1-based site numbers.
struct RunConfig {
  std::string command = "evolve";
  ChargerParams params;
  std::optional<long> kicks;
  std::vector<double> grid;       // tau grid; empty = default pi/32 grid
  std::vector<int> sizes;         // sweep-size
  std::vector<double> couplings;  // sweep-coupling
  FixedInterval fixed = FixedInterval::Tau1;
  std::optional<double> fixed_value;
  std::vector<int> entropy_sites{0};
  LogBase log_base = LogBase::Natural;
  std::string out;
  std::string plot;
  unsigned workers = 0;  // 0 = default_workers()
  int max_sites = 6;
  double tolerance = 1e-10;

  long effective_kicks() const;
  bool operator==(const RunConfig&) const = default;
};

/// INI document with [charger], [run], [sweep], [entropy] and [validate] sections.
std::string config_to_string(const RunConfig& cfg);
RunConfig config_from_string(const std::string& text);
RunConfig load_config(const std::filesystem::path& path);

// CSV

/// `# params:` comment, header `n,delta_e,power[,entropy,entropy_<other>]`,
/// 12 significant digits, LF endings.
void write_series_csv(const KickSeries& series, std::ostream& out, LogBase base = LogBase::Natural);
void write_series_csv(const KickSeries& series, const std::filesystem::path& path, LogBase base = LogBase::Natural);
/// Parses what write_series_csv emits; entropy is read back in nats.
KickSeries read_series_csv(std::istream& in);

void write_sweep_csv(const SweepResult& sweep, std::ostream& out);
void write_landscape_csv(const std::vector<LandscapeRow>& rows, int n_sites, long n_max, std::ostream& out);

struct ValidationRow {
  ChargerParams params;
  oracle::ValidationReport report;
};
void write_validation_csv(const std::vector<ValidationRow>& rows, std::ostream& out);

// SVG

struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

struct PlotStyle {
  std::string title;
  std::string x_label = "n";
  std::string y_label = "\xce\x94" "E";  // Delta E
  bool steps = false;
};

/// Self-contained SVG line plot; identical input gives identical bytes.
std::string render_svg_plot(const std::vector<PlotSeries>& series, const PlotStyle& style);
void write_svg_plot(const std::vector<PlotSeries>& series, const std::filesystem::path& path, const PlotStyle& style);

PlotSeries energy_series(const KickSeries& series, std::string label);
PlotSeries sweep_series(const SweepResult& sweep, std::string label);

/// Opens `path` for writing or throws std::runtime_error naming the path.
std::ofstream open_output(const std::filesystem::path& path);

}  // namespace fqb
