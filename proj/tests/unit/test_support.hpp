#pragma once

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "fqb/lattice.hpp"
#include "fqb/statevector.hpp"

namespace fqb::testing {

inline StateVector random_state(int n_sites, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::vector<Complex> amps(std::size_t{1} << n_sites);
  double norm = 0.0;
  for (auto& a : amps) {
    a = {g(rng), g(rng)};
    norm += std::norm(a);
  }
  for (auto& a : amps) a /= std::sqrt(norm);
  return StateVector(n_sites, std::move(amps));
}

inline ChargerParams make_params(int n, Range range, Boundary boundary, double hx, double tau0, double tau1,
                                 double coupling = 1.0) {
  ChargerParams p;
  p.n_sites = n;
  p.range = range;
  p.boundary = boundary;
  p.hx = hx;
  p.tau0 = tau0;
  p.tau1 = tau1;
  p.coupling = coupling;
  return p;
}

inline double max_deviation(const StateVector& a, const StateVector& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

}  // namespace fqb::testing
