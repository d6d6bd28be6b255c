#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fqb/floquet.hpp"
#include "fqb/lattice.hpp"

namespace fqb {

inline constexpr long kDefaultKicks = 500;

enum class SweepAxis { Tau, Tau0, Tau1, Size, Coupling };
std::string to_string(SweepAxis axis);

struct SweepPoint {
  double value = 0.0;
  double delta_e_max = 0.0;
  long n_star = 0;
  double p_max = 0.0;
  std::optional<long> period;
  int n_sites = 0;
};

struct SweepResult {
  SweepAxis axis = SweepAxis::Tau;
  std::vector<SweepPoint> points;
  ChargerParams base_params;
  long n_max = kDefaultKicks;
};

struct SweepOptions {
  long n_max = kDefaultKicks;
  unsigned workers = 1;
};

/// Summary of one evolution: peak energy, its first kick, best power over
/// n >= 1 and the detected energy period.
SweepPoint summarize(const KickSeries& series, double value);

/// 0, pi/32, ..., pi/2.
std::vector<double> default_tau_grid();

/// Symmetric protocol tau0 = tau1 = value for each grid entry.
SweepResult sweep_tau(const ChargerParams& base, const std::vector<double>& grid, const SweepOptions& opts = {});

enum class FixedInterval { Tau0, Tau1 };

/// Holds one interval at fixed_value and varies the other over grid.
SweepResult sweep_asymmetric(const ChargerParams& base, FixedInterval fixed, double fixed_value,
                             const std::vector<double>& grid, const SweepOptions& opts = {});

SweepResult sweep_size(const ChargerParams& base, const std::vector<int>& sizes, const SweepOptions& opts = {});

SweepResult sweep_coupling(const ChargerParams& base, const std::vector<double>& couplings,
                           const SweepOptions& opts = {});

/// Smallest candidate shift p such that the KickSeries at J = base.coupling + p
/// matches the one at base.coupling within tol at every kick.
std::optional<double> coupling_period(const ChargerParams& base, const std::vector<double>& candidates,
                                      long n_max, double tol = 1e-9);

// Landscape of the maximum stored energy over the eight structural cells.

enum class PredictionKind { Exact, Range, Below };

struct Prediction {
  PredictionKind kind = PredictionKind::Range;
  double value = 0.0;  // Exact target, or upper bound for Below
  double lo = 0.0;     // Range bounds
  double hi = 0.0;
  std::string text;

  bool matches(double measured, double tol) const;
};

struct LandscapeRow {
  Range range = Range::LongRange;
  bool integrable = true;
  Boundary boundary = Boundary::Periodic;
  int tau_index = 0;  // tau = tau_index * pi / 32
  double tau = 0.0;
  double delta_e_max = 0.0;
  long n_star = 0;
  Prediction prediction;
  bool match = false;
  std::optional<Prediction> alternative;  // competing claim where sources disagree
  bool alternative_match = false;
};

inline constexpr double kLandscapeTolerance = 1e-8;

/// Tabulated prediction for one cell at tau = tau_index * pi / 32. The
/// alternative is the competing even-N claim for the nearest-neighbor
/// integrable ring at pi/4, where the two published statements disagree.
Prediction landscape_prediction(Range range, bool integrable, Boundary boundary, int n_sites, int tau_index,
                                double omega);
std::optional<Prediction> landscape_alternative(Range range, bool integrable, Boundary boundary, int n_sites,
                                                int tau_index, double omega);

/// Evaluates every cell over the pi/32 grid on [0, pi/2] (which contains pi/4
/// and pi/2) and flags agreement with the tabulated predictions.
std::vector<LandscapeRow> landscape_table(int n_sites, const SweepOptions& opts = {});

}  // namespace fqb
