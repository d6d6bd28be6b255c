#include "fqb/lattice.hpp"

#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace fqb {

void ChargerParams::validate() const {
  if (n_sites < 1) throw std::invalid_argument("n_sites must be >= 1");
  if (!(omega > 0.0)) throw std::invalid_argument("omega must be > 0");
  if (!(tau0 >= 0.0)) throw std::invalid_argument("tau0 must be >= 0");
  if (!(tau1 >= 0.0)) throw std::invalid_argument("tau1 must be >= 0");
  for (double v : {coupling, hx, hz, omega, tau0, tau1}) {
    if (!std::isfinite(v)) throw std::invalid_argument("charger parameters must be finite");
  }
}

BondTable::BondTable(int n_sites, Boundary boundary, Range range, std::vector<Bond> bonds)
    : n_sites_(n_sites), boundary_(boundary), range_(range), bonds_(std::move(bonds)) {}

double BondTable::total_weight() const noexcept {
  return std::accumulate(bonds_.begin(), bonds_.end(), 0.0,
                         [](double acc, const Bond& b) { return acc + b.weight; });
}

BondTable build_bond_table(const ChargerParams& params) {
  const int n = params.n_sites;
  if (n < 1) throw std::invalid_argument("n_sites must be >= 1");
  if (params.range == Range::NearestNeighbor && n < 2) {
    throw std::invalid_argument("nearest-neighbor coupling needs n_sites >= 2");
  }

  std::vector<Bond> bonds;
  const auto weight = [](int k) { return std::ldexp(1.0, 1 - k); };

  if (params.boundary == Boundary::Periodic) {
    const int max_k = params.range == Range::NearestNeighbor ? 1 : (n % 2 == 1 ? (n - 1) / 2 : n / 2);
    bonds.reserve(static_cast<std::size_t>(n) * max_k);
    for (int j = 0; j < n; ++j) {
      for (int k = 1; k <= max_k; ++k) {
        double w = weight(k);
        if (params.antipodal_halving && params.range == Range::LongRange && n % 2 == 0 && k == n / 2) {
          w *= 0.5;
        }
        bonds.push_back({j, (j + k) % n, w, k});
      }
    }
  } else {
    for (int j = 0; j < n - 1; ++j) {
      const int max_k = params.range == Range::NearestNeighbor ? 1 : n - 1 - j;
      for (int k = 1; k <= max_k; ++k) bonds.push_back({j, j + k, weight(k), k});
    }
  }
  return BondTable(n, params.boundary, params.range, std::move(bonds));
}

double interaction_energy(BasisIndex bits, const BondTable& table) noexcept {
  double e = 0.0;
  for (const Bond& b : table.bonds()) {
    // s_i * s_j = +1 when the two bits agree
    const bool anti = ((bits >> b.i) ^ (bits >> b.j)) & 1U;
    e += anti ? -b.weight : b.weight;
  }
  return e;
}

int magnetization(BasisIndex bits, int n_sites) noexcept {
  return n_sites - 2 * std::popcount(bits);
}

std::string to_string(Boundary b) { return b == Boundary::Periodic ? "pbc" : "obc"; }
std::string to_string(Range r) { return r == Range::LongRange ? "lr" : "nn"; }

Boundary parse_boundary(const std::string& text) {
  if (text == "pbc") return Boundary::Periodic;
  if (text == "obc") return Boundary::Open;
  throw std::invalid_argument("boundary must be 'pbc' or 'obc', got '" + text + "'");
}

Range parse_range(const std::string& text) {
  if (text == "lr") return Range::LongRange;
  if (text == "nn") return Range::NearestNeighbor;
  throw std::invalid_argument("range must be 'lr' or 'nn', got '" + text + "'");
}

}  // namespace fqb
