#include "fqb/floquet.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fqb {

namespace {

BondTable validated_bonds(const ChargerParams& params) {
  params.validate();
  return build_bond_table(params);
}

}  // namespace

FloquetOperator::FloquetOperator(const ChargerParams& params)
    : params_(params), bonds_(validated_bonds(params)) {
  if (params.n_sites > kMaxSites) throw std::invalid_argument("n_sites exceeds kMaxSites");
  const int n = params.n_sites;
  const std::size_t dim = std::size_t{1} << n;
  dx_.resize(dim);
  dz_.resize(dim);
  fx_.resize(dim);
  fz_.resize(dim);
  for (std::size_t b = 0; b < dim; ++b) {
    const double m = magnetization(b, n);
    dx_[b] = params.tau0 * (params.coupling * interaction_energy(b, bonds_) + params.hx * m);
    dz_[b] = params.tau1 * params.hz * m;
    fx_[b] = std::polar(1.0, -dx_[b]);
    fz_[b] = std::polar(1.0, -dz_[b]);
  }
  const auto all_zero = [](const std::vector<double>& d) {
    return std::all_of(d.begin(), d.end(), [](double v) { return v == 0.0; });
  };
  x_trivial_ = all_zero(dx_);
  z_trivial_ = all_zero(dz_);
}

void FloquetOperator::apply(StateVector& psi) const {
  if (psi.n_sites() != params_.n_sites) {
    throw std::invalid_argument("state has " + std::to_string(psi.n_sites()) + " sites, operator expects " +
                                std::to_string(params_.n_sites));
  }
  auto amps = psi.amplitudes();
  // H maps z-basis amplitudes to x-basis amplitudes (and back)
  if (!x_trivial_) {
    fwht_inplace(amps);
    for (std::size_t b = 0; b < amps.size(); ++b) amps[b] *= fx_[b];
    fwht_inplace(amps);
  }
  if (z_trivial_) return;
  for (std::size_t b = 0; b < amps.size(); ++b) amps[b] *= fz_[b];
}

FloquetOperator build_floquet(const ChargerParams& params) { return FloquetOperator(params); }

void apply_kick(StateVector& psi, const FloquetOperator& op) { op.apply(psi); }

KickSeries evolve(const ChargerParams& params, long n_max, const ObservableSelection& observe) {
  if (n_max < 0) throw std::invalid_argument("n_max must be >= 0");
  const FloquetOperator op(params);
  StateVector psi = ground_state(params.n_sites, params.omega);

  std::optional<BipartitionSpec> cut = observe.entropy;
  if (cut) cut->log_base = LogBase::Natural;

  KickSeries series{params, {}};
  series.records.reserve(static_cast<std::size_t>(n_max) + 1);
  const bool no_time = params.period() == 0.0;
  for (long n = 0;; ++n) {
    KickRecord rec;
    rec.n = n;
    rec.delta_e = stored_energy(psi, params.omega);
    rec.power = no_time ? 0.0 : charging_power(rec.delta_e, n, params.tau0, params.tau1);
    if (cut) rec.entropy = entanglement_entropy(psi, *cut);
    series.records.push_back(rec);
    if (n == n_max) break;
    op.apply(psi);
  }
  return series;
}

}  // namespace fqb
