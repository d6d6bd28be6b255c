#include "fqb/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fqb/observables.hpp"
#include "fqb/parallel.hpp"

namespace fqb {

namespace {

constexpr double kPi = std::numbers::pi;

SweepResult run_points(SweepAxis axis, const ChargerParams& base, const std::vector<double>& values,
                       const std::vector<ChargerParams>& params, const SweepOptions& opts) {
  if (opts.n_max < 0) throw std::invalid_argument("n_max must be >= 0");
  if (values.empty()) throw std::invalid_argument("sweep grid must not be empty");
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (!(values[i] > values[i - 1])) throw std::invalid_argument("sweep grid must be strictly increasing");
  }
  SweepResult result{axis, std::vector<SweepPoint>(params.size()), base, opts.n_max};
  parallel_for(params.size(), opts.workers, [&](std::size_t i) {
    result.points[i] = summarize(evolve(params[i], opts.n_max), values[i]);
  });
  return result;
}

void check_taus(const std::vector<double>& grid) {
  for (double t : grid) {
    if (!(t >= 0.0)) throw std::invalid_argument("tau grid values must be >= 0");
  }
}

}  // namespace

std::string to_string(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::Tau: return "tau";
    case SweepAxis::Tau0: return "tau0";
    case SweepAxis::Tau1: return "tau1";
    case SweepAxis::Size: return "size";
    case SweepAxis::Coupling: return "coupling";
  }
  return "unknown";
}

SweepPoint summarize(const KickSeries& series, double value) {
  const EnergyPeak peak = max_stored_energy(series);
  SweepPoint pt;
  pt.value = value;
  pt.delta_e_max = peak.delta_e_max;
  pt.n_star = peak.n_star;
  for (const KickRecord& r : series.records) {
    if (r.n >= 1) pt.p_max = std::max(pt.p_max, r.power);
  }
  pt.period = detect_period(series);
  pt.n_sites = series.params.n_sites;
  return pt;
}

std::vector<double> default_tau_grid() {
  std::vector<double> grid;
  for (int k = 0; k <= 16; ++k) grid.push_back(k * kPi / 32);
  return grid;
}

SweepResult sweep_tau(const ChargerParams& base, const std::vector<double>& grid, const SweepOptions& opts) {
  check_taus(grid);
  std::vector<ChargerParams> params;
  for (double t : grid) {
    ChargerParams p = base;
    p.tau0 = p.tau1 = t;
    params.push_back(p);
  }
  return run_points(SweepAxis::Tau, base, grid, params, opts);
}

SweepResult sweep_asymmetric(const ChargerParams& base, FixedInterval fixed, double fixed_value,
                             const std::vector<double>& grid, const SweepOptions& opts) {
  check_taus(grid);
  if (!(fixed_value >= 0.0)) throw std::invalid_argument("fixed interval must be >= 0");
  std::vector<ChargerParams> params;
  for (double t : grid) {
    ChargerParams p = base;
    if (fixed == FixedInterval::Tau0) {
      p.tau0 = fixed_value;
      p.tau1 = t;
    } else {
      p.tau0 = t;
      p.tau1 = fixed_value;
    }
    params.push_back(p);
  }
  const SweepAxis axis = fixed == FixedInterval::Tau0 ? SweepAxis::Tau1 : SweepAxis::Tau0;
  return run_points(axis, base, grid, params, opts);
}

SweepResult sweep_size(const ChargerParams& base, const std::vector<int>& sizes, const SweepOptions& opts) {
  std::vector<ChargerParams> params;
  std::vector<double> values;
  for (int n : sizes) {
    if (n < 2) throw std::invalid_argument("sweep sizes must be >= 2");
    ChargerParams p = base;
    p.n_sites = n;
    params.push_back(p);
    values.push_back(n);
  }
  return run_points(SweepAxis::Size, base, values, params, opts);
}

SweepResult sweep_coupling(const ChargerParams& base, const std::vector<double>& couplings,
                           const SweepOptions& opts) {
  if (couplings.empty()) throw std::invalid_argument("coupling grid must not be empty");
  std::vector<ChargerParams> params;
  for (double j : couplings) {
    ChargerParams p = base;
    p.coupling = j;
    params.push_back(p);
  }
  return run_points(SweepAxis::Coupling, base, couplings, params, opts);
}

std::optional<double> coupling_period(const ChargerParams& base, const std::vector<double>& candidates,
                                      long n_max, double tol) {
  const KickSeries reference = evolve(base, n_max);
  std::vector<double> sorted = candidates;
  std::sort(sorted.begin(), sorted.end());
  for (double shift : sorted) {
    if (!(shift > 0.0)) continue;
    ChargerParams p = base;
    p.coupling += shift;
    const KickSeries other = evolve(p, n_max);
    bool same = true;
    for (std::size_t i = 0; i < reference.records.size() && same; ++i) {
      same = std::abs(reference.records[i].delta_e - other.records[i].delta_e) <= tol;
    }
    if (same) return shift;
  }
  return std::nullopt;
}

bool Prediction::matches(double measured, double tol) const {
  switch (kind) {
    case PredictionKind::Exact: return std::abs(measured - value) <= tol;
    case PredictionKind::Range: return measured >= lo - tol && measured <= hi + tol;
    case PredictionKind::Below: return measured < value - tol;
  }
  return false;
}

namespace {

Prediction exact(double v, std::string text) { return {PredictionKind::Exact, v, 0.0, 0.0, std::move(text)}; }
Prediction range(double lo, double hi, std::string text) {
  return {PredictionKind::Range, 0.0, lo, hi, std::move(text)};
}
Prediction below(double v, std::string text) { return {PredictionKind::Below, v, 0.0, 0.0, std::move(text)}; }

Prediction multiple_of_four_rule(int n, double omega) {
  return n % 4 == 0 ? exact(2 * omega * n, "2wN (N=4m)") : exact(omega * n, "wN (N!=4m)");
}

}  // namespace

Prediction landscape_prediction(Range rng, bool integrable, Boundary boundary, int n, int tau_index,
                                double omega) {
  const double full = 2 * omega * n;
  const Prediction anything = range(0.0, full, "0~2wN");
  constexpr int kQuarter = 8;  // pi/4
  constexpr int kHalf = 16;    // pi/2

  if (rng == Range::LongRange) {
    if (boundary == Boundary::Periodic && tau_index == kHalf) {
      return n % 2 == 0 ? exact(full, "2wN (even N)") : exact(omega * n, "wN (odd N)");
    }
    return anything;
  }

  if (tau_index == 0) return anything;
  if (integrable) {
    if (boundary == Boundary::Periodic) {
      if (tau_index == kHalf) return exact(0.0, "0");
      if (tau_index == kQuarter) return multiple_of_four_rule(n, omega);
      return anything;
    }
    if (tau_index == kHalf) return exact(omega * n / 2, "wN/2");
    if (tau_index == kQuarter) return exact(omega * n, "wN");
    return below(full, "<2wN");
  }
  if (tau_index == kQuarter) return multiple_of_four_rule(n, omega);
  if (tau_index == kHalf) {
    return boundary == Boundary::Periodic ? exact(full, "2wN (all N)") : exact(1.5 * omega * n, "3wN/2 (all N)");
  }
  return below(full, "<2wN");
}

std::optional<Prediction> landscape_alternative(Range rng, bool integrable, Boundary boundary, int n, int tau_index,
                                                double omega) {
  if (rng == Range::NearestNeighbor && integrable && boundary == Boundary::Periodic && tau_index == 8) {
    return n % 2 == 0 ? exact(2 * omega * n, "2wN (even N)") : exact(omega * n, "wN (odd N)");
  }
  return std::nullopt;
}

std::vector<LandscapeRow> landscape_table(int n_sites, const SweepOptions& opts) {
  if (n_sites < 2 || n_sites > 12) throw std::invalid_argument("landscape_table supports 2 <= N <= 12");

  std::vector<LandscapeRow> rows;
  std::vector<ChargerParams> params;
  for (Range rng : {Range::LongRange, Range::NearestNeighbor}) {
    for (bool integrable : {true, false}) {
      for (Boundary boundary : {Boundary::Periodic, Boundary::Open}) {
        for (int k = 0; k <= 16; ++k) {
          LandscapeRow row;
          row.range = rng;
          row.integrable = integrable;
          row.boundary = boundary;
          row.tau_index = k;
          row.tau = k * kPi / 32;
          rows.push_back(row);

          ChargerParams p;
          p.n_sites = n_sites;
          p.hx = integrable ? 0.0 : 1.0;
          p.tau0 = p.tau1 = row.tau;
          p.boundary = boundary;
          p.range = rng;
          params.push_back(p);
        }
      }
    }
  }

  parallel_for(rows.size(), opts.workers, [&](std::size_t i) {
    const EnergyPeak peak = max_stored_energy(evolve(params[i], opts.n_max));
    LandscapeRow& row = rows[i];
    const double omega = params[i].omega;
    row.delta_e_max = peak.delta_e_max;
    row.n_star = peak.n_star;
    row.prediction = landscape_prediction(row.range, row.integrable, row.boundary, n_sites, row.tau_index, omega);
    row.match = row.prediction.matches(row.delta_e_max, kLandscapeTolerance);
    row.alternative = landscape_alternative(row.range, row.integrable, row.boundary, n_sites, row.tau_index, omega);
    if (row.alternative) row.alternative_match = row.alternative->matches(row.delta_e_max, kLandscapeTolerance);
  });
  return rows;
}

}  // namespace fqb
