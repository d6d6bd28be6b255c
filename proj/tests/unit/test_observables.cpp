#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "fqb/floquet.hpp"
#include "fqb/observables.hpp"
#include "test_support.hpp"

using namespace fqb;
using fqb::testing::make_params;
using std::numbers::pi;

namespace {

StateVector from_real(int n, std::vector<double> v) {
  std::vector<Complex> amps(v.begin(), v.end());
  return StateVector(n, std::move(amps));
}

// Random unitary via Gram-Schmidt, then U diag(lambda) U^dagger.
HermitianMatrix with_spectrum(const std::vector<double>& lambda, std::mt19937_64& rng) {
  const std::size_t d = lambda.size();
  std::normal_distribution<double> g;
  std::vector<std::vector<Complex>> cols;
  while (cols.size() < d) {
    std::vector<Complex> v(d);
    for (auto& x : v) x = {g(rng), g(rng)};
    for (const auto& c : cols) {
      Complex dot;
      for (std::size_t i = 0; i < d; ++i) dot += std::conj(c[i]) * v[i];
      for (std::size_t i = 0; i < d; ++i) v[i] -= dot * c[i];
    }
    double nrm = 0.0;
    for (const auto& x : v) nrm += std::norm(x);
    for (auto& x : v) x /= std::sqrt(nrm);
    cols.push_back(std::move(v));
  }
  HermitianMatrix m{d, std::vector<Complex>(d * d)};
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t c = 0; c < d; ++c) {
      for (std::size_t k = 0; k < d; ++k) m(r, c) += cols[k][r] * lambda[k] * std::conj(cols[k][c]);
    }
  }
  return m;
}

}  // namespace

TEST_CASE("stored energy") {
  CHECK(stored_energy(ground_state(5, 1.0), 1.0) == 0.0);
  CHECK(stored_energy(StateVector::basis_state(5, 0), 1.0) == 10.0);
  CHECK(stored_energy(StateVector::basis_state(5, 0), 0.5) == 5.0);
}

TEST_CASE("charging power") {
  CHECK(charging_power(0.0, 3, 1.0, 1.0) == 0.0);
  CHECK(charging_power(16.0, 4, pi / 2, pi / 2) == doctest::Approx(1.2732395447));
  CHECK(charging_power(5.0, 0, 1.0, 1.0) == 0.0);
  CHECK(charging_power(5.0, 0, 0.0, 0.0) == 0.0);
  CHECK_THROWS_AS(charging_power(1.0, 2, 0.0, 0.0), std::domain_error);
}

TEST_CASE("reduced density matrices") {
  const double r = 1 / std::sqrt(2.0);

  SUBCASE("Bell pair gives the maximally mixed qubit") {
    const StateVector bell = from_real(2, {r, 0, 0, r});
    const HermitianMatrix rho = reduced_density_matrix(bell, {{0}});
    CHECK(rho(0, 0).real() == doctest::Approx(0.5));
    CHECK(rho(1, 1).real() == doctest::Approx(0.5));
    CHECK(std::abs(rho(0, 1)) < 1e-15);
    CHECK(entanglement_entropy(bell, {{0}, LogBase::Natural}) == doctest::Approx(std::log(2.0)));
    CHECK(entanglement_entropy(bell, {{1}, LogBase::Two}) == doctest::Approx(1.0));
  }

  SUBCASE("site 0 varying, site 1 fixed") {
    // amplitudes at indices 0 and 1 differ in bit 0 only
    const StateVector psi = from_real(2, {r, r, 0, 0});
    const HermitianMatrix rho0 = reduced_density_matrix(psi, {{0}});
    for (std::size_t a = 0; a < 2; ++a) {
      for (std::size_t b = 0; b < 2; ++b) CHECK(rho0(a, b).real() == doctest::Approx(0.5));
    }
    const HermitianMatrix rho1 = reduced_density_matrix(psi, {{1}});
    CHECK(rho1(0, 0).real() == doctest::Approx(1.0));
    CHECK(std::abs(rho1(1, 1)) < 1e-15);
    CHECK(entanglement_entropy(psi, {{0}}) == doctest::Approx(0.0).epsilon(1e-12));
  }

  SUBCASE("site 1 varying, site 0 fixed") {
    const StateVector psi = from_real(2, {r, 0, r, 0});
    const HermitianMatrix rho1 = reduced_density_matrix(psi, {{1}});
    for (std::size_t a = 0; a < 2; ++a) {
      for (std::size_t b = 0; b < 2; ++b) CHECK(rho1(a, b).real() == doctest::Approx(0.5));
    }
  }

  SUBCASE("invalid subsystems") {
    const StateVector psi = ground_state(3, 1.0);
    CHECK_THROWS_AS(reduced_density_matrix(psi, {{}}), std::invalid_argument);
    CHECK_THROWS_AS(reduced_density_matrix(psi, {{3}}), std::invalid_argument);
    CHECK_THROWS_AS(reduced_density_matrix(psi, {{1, 1}}), std::invalid_argument);
  }
}

TEST_CASE("product states carry no entanglement") {
  std::mt19937_64 rng(17);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 10; ++trial) {
    // tensor product of random single-qubit states
    const int n = 5;
    std::vector<Complex> amps{1.0};
    for (int site = 0; site < n; ++site) {
      Complex a{g(rng), g(rng)}, b{g(rng), g(rng)};
      const double nrm = std::sqrt(std::norm(a) + std::norm(b));
      a /= nrm;
      b /= nrm;
      std::vector<Complex> next(amps.size() * 2);
      for (std::size_t i = 0; i < amps.size(); ++i) {
        next[i] = amps[i] * a;
        next[i + amps.size()] = amps[i] * b;
      }
      amps = std::move(next);
    }
    const StateVector psi(n, std::move(amps));
    CHECK(std::abs(entanglement_entropy(psi, {{0, 3}})) < 1e-10);
    CHECK(std::abs(entanglement_entropy(psi, {{2}})) < 1e-10);
  }
}

TEST_CASE("entropy is symmetric across the cut and bounded") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 10; ++trial) {
    const StateVector psi = testing::random_state(6, rng);
    const double a = entanglement_entropy(psi, {{0, 2}});
    const double b = entanglement_entropy(psi, {{1, 3, 4, 5}});
    CHECK(a == doctest::Approx(b).epsilon(1e-10));
    CHECK(a >= 0.0);
    CHECK(a <= 2 * std::log(2.0) + 1e-12);

    const HermitianMatrix rho = reduced_density_matrix(psi, {{0, 2, 5}});
    Complex trace;
    for (std::size_t i = 0; i < rho.dim; ++i) trace += rho(i, i);
    CHECK(std::abs(trace - 1.0) < 1e-12);
    for (double ev : hermitian_eigenvalues(rho)) CHECK(ev > -1e-12);
  }
}

TEST_CASE("Jacobi eigenvalues recover known spectra") {
  std::mt19937_64 rng(31);
  for (std::size_t d : {1u, 2u, 3u, 4u, 8u, 16u}) {
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    std::vector<double> lambda(d);
    for (double& l : lambda) l = u(rng);
    if (d > 2) lambda[1] = lambda[0];  // a degeneracy
    const std::vector<double> got = hermitian_eigenvalues(with_spectrum(lambda, rng));
    std::sort(lambda.begin(), lambda.end());
    REQUIRE(got.size() == d);
    for (std::size_t i = 0; i < d; ++i) CHECK(got[i] == doctest::Approx(lambda[i]).epsilon(1e-11));
  }

  // 2x2 closed form: (a+d)/2 +- sqrt(((a-d)/2)^2 + |b|^2)
  HermitianMatrix m{2, {Complex(0.7), Complex(0.1, 0.2), Complex(0.1, -0.2), Complex(0.3)}};
  const double disc = std::sqrt(0.04 + 0.05);
  const auto ev = hermitian_eigenvalues(m);
  CHECK(ev[0] == doctest::Approx(0.5 - disc));
  CHECK(ev[1] == doctest::Approx(0.5 + disc));
}

TEST_CASE("entropy from a spectrum") {
  CHECK(entropy_from_spectrum({1.0, 0.0}, LogBase::Natural) == 0.0);
  CHECK(entropy_from_spectrum({0.25, 0.25, 0.25, 0.25}, LogBase::Two) == doctest::Approx(2.0));
  // tiny negative noise is clamped instead of producing NaN
  CHECK(entropy_from_spectrum({-1e-17, 1.0 + 1e-17}, LogBase::Natural) == 0.0);
  // trace drift of a pure state does not register as entropy
  CHECK(entropy_from_spectrum({1e-20, 1.0 - 3e-13}, LogBase::Natural) == 0.0);
  CHECK(entropy_from_spectrum({0.5 * (1 + 1e-12), 0.5 * (1 + 1e-12)}, LogBase::Natural) ==
        doctest::Approx(std::log(2.0)).epsilon(1e-15));
}

TEST_CASE("maximum stored energy") {
  KickSeries zero;
  for (long n = 0; n <= 5; ++n) zero.records.push_back({n, 0.0, 0.0, {}});
  const EnergyPeak z = max_stored_energy(zero);
  CHECK(z.delta_e_max == 0.0);
  CHECK(z.n_star == 0);

  const EnergyPeak lr = max_stored_energy(evolve(make_params(8, Range::LongRange, Boundary::Periodic, 0, pi / 2, pi / 2), 500));
  CHECK(lr.delta_e_max == doctest::Approx(16.0).epsilon(1e-10));
  CHECK(lr.n_star == 4);

  const EnergyPeak nn = max_stored_energy(evolve(make_params(8, Range::NearestNeighbor, Boundary::Open, 0, pi / 2, pi / 2), 500));
  CHECK(nn.delta_e_max == doctest::Approx(4.0).epsilon(1e-10));

  CHECK_THROWS_AS(max_stored_energy(KickSeries{}), std::invalid_argument);
}

TEST_CASE("period detection") {
  KickSeries constant;
  for (long n = 0; n <= 10; ++n) constant.records.push_back({n, 3.0, 0.0, {}});
  CHECK(detect_period(constant) == 1);

  KickSeries ramp;
  for (long n = 0; n <= 10; ++n) ramp.records.push_back({n, double(n), 0.0, {}});
  CHECK_FALSE(detect_period(ramp).has_value());

  CHECK(detect_period(evolve(make_params(4, Range::LongRange, Boundary::Open, 0, pi / 2, pi / 2), 500)) == 8);
  CHECK(detect_period(evolve(make_params(8, Range::NearestNeighbor, Boundary::Periodic, 0, pi / 4, pi / 4), 500)) == 8);
}
