#include <doctest.h>

#include <bit>
#include <cmath>
#include <filesystem>
#include <random>

#include "fqb/statevector.hpp"
#include "test_support.hpp"

using namespace fqb;

namespace {

// Brute-force H^{(x)N}: entry (r, c) = (-1)^{popcount(r & c)} / 2^{N/2}.
StateVector hadamard_by_definition(const StateVector& psi) {
  const std::size_t dim = psi.dim();
  const double scale = std::pow(2.0, -0.5 * psi.n_sites());
  std::vector<Complex> out(dim);
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) {
      out[r] += (std::popcount(r & c) % 2 ? -scale : scale) * psi[c];
    }
  }
  return StateVector(psi.n_sites(), std::move(out));
}

}  // namespace

TEST_CASE("ground state sits at the all-down index") {
  const StateVector g2 = ground_state(2, 1.0);
  CHECK(g2[3] == Complex(1.0));
  CHECK(energy_expectation_z(g2, 1.0) == -2.0);

  const StateVector g1 = ground_state(1, 1.0);
  CHECK(g1[1] == Complex(1.0));
  CHECK(energy_expectation_z(g1, 1.0) == -1.0);

  const StateVector g8 = ground_state(8, 1.0);
  CHECK(energy_expectation_z(g8, 1.0) == -8.0);
  // E_max = 2 omega N above the ground state
  CHECK(energy_expectation_z(StateVector::basis_state(8, 0), 1.0) - energy_expectation_z(g8, 1.0) == 16.0);

  CHECK_THROWS_AS(ground_state(3, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(ground_state(3, -1.0), std::invalid_argument);
}

TEST_CASE("single Hadamard") {
  StateVector psi = StateVector::basis_state(1, 0);
  fwht_inplace(psi);
  CHECK(psi[0].real() == doctest::Approx(1 / std::sqrt(2.0)));
  CHECK(psi[1].real() == doctest::Approx(1 / std::sqrt(2.0)));
}

TEST_CASE("two-qubit Hadamard of the last basis state") {
  StateVector psi = StateVector::basis_state(2, 3);
  fwht_inplace(psi);
  const double expected[] = {0.5, -0.5, -0.5, 0.5};
  for (int i = 0; i < 4; ++i) CHECK(psi[i].real() == doctest::Approx(expected[i]).epsilon(1e-15));
}

TEST_CASE("butterfly transform agrees with the definition") {
  std::mt19937_64 rng(7);
  for (int n = 1; n <= 8; ++n) {
    const StateVector psi = testing::random_state(n, rng);
    StateVector fast = psi;
    fwht_inplace(fast);
    CHECK(testing::max_deviation(fast, hadamard_by_definition(psi)) < 1e-13);
  }
}

TEST_CASE("transform is a norm-preserving involution") {
  std::mt19937_64 rng(11);
  for (int n = 1; n <= 14; ++n) {
    const StateVector psi = testing::random_state(n, rng);
    StateVector twice = psi;
    fwht_inplace(twice);
    CHECK(std::abs(twice.norm() - 1.0) <= 1e-12);
    fwht_inplace(twice);
    CHECK(testing::max_deviation(twice, psi) <= 1e-12);
  }
}

TEST_CASE("diagonal phases") {
  std::mt19937_64 rng(3);
  const StateVector psi = testing::random_state(5, rng);

  StateVector same = psi;
  apply_diagonal_phase(same, std::vector<double>(32, 0.0));
  CHECK(testing::max_deviation(same, psi) == 0.0);

  StateVector global = psi;
  apply_diagonal_phase(global, std::vector<double>(32, 0.83));
  CHECK(energy_expectation_z(global, 1.3) == doctest::Approx(energy_expectation_z(psi, 1.3)).epsilon(1e-14));

  std::uniform_real_distribution<double> u(-10, 10);
  std::vector<double> phase(32);
  for (double& t : phase) t = u(rng);
  StateVector rotated = psi;
  apply_diagonal_phase(rotated, phase);
  for (std::size_t b = 0; b < 32; ++b) CHECK(std::abs(rotated[b]) == doctest::Approx(std::abs(psi[b])).epsilon(1e-15));

  CHECK_THROWS_AS(apply_diagonal_phase(rotated, std::vector<double>(31, 0.0)), std::invalid_argument);
}

TEST_CASE("field phase on z-basis states") {
  // exp(-i tau hz H_z) acting on |b> multiplies by exp(-i tau hz m(b)), m = sum of z eigenvalues
  const double tau = 0.37, hz = 1.4;
  for (BasisIndex b = 0; b < 16; ++b) {
    StateVector psi = StateVector::basis_state(4, b);
    std::vector<double> phase(16);
    for (BasisIndex c = 0; c < 16; ++c) phase[c] = tau * hz * magnetization(c, 4);
    apply_diagonal_phase(psi, phase);
    double m = 0.0;
    for (int j = 0; j < 4; ++j) m += ((b >> j) & 1U) ? -1.0 : 1.0;
    CHECK(std::abs(psi[b] - std::polar(1.0, -tau * hz * m)) < 1e-15);
  }
}

TEST_CASE("energy expectation") {
  const int n = 6;
  CHECK(energy_expectation_z(ground_state(n, 2.0), 2.0) == -12.0);
  CHECK(energy_expectation_z(StateVector::basis_state(n, 0), 2.0) == 12.0);

  // uniform superposition: direct sum of omega * m over all 2^N configurations is zero
  for (BasisIndex b : {BasisIndex{0}, BasisIndex{5}, BasisIndex{63}}) {
    StateVector psi = StateVector::basis_state(n, b);
    fwht_inplace(psi);
    CHECK(std::abs(energy_expectation_z(psi, 1.0)) < 1e-13);
  }

  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const double e = energy_expectation_z(testing::random_state(n, rng), 1.5);
    CHECK(e >= -1.5 * n);
    CHECK(e <= 1.5 * n);
  }
}

TEST_CASE("amplitude dump round trip") {
  std::mt19937_64 rng(9);
  const StateVector psi = testing::random_state(5, rng);
  const auto path = std::filesystem::temp_directory_path() / "fqb_dump_test.bin";
  dump_amplitudes(psi, path);
  CHECK(std::filesystem::file_size(path) == 4 + 32 * 16);
  const StateVector back = load_amplitudes(path);
  CHECK(back.n_sites() == 5);
  CHECK(testing::max_deviation(back, psi) == 0.0);
  std::filesystem::remove(path);
}

TEST_CASE("state construction checks sizes") {
  CHECK_THROWS_AS(StateVector(3, std::vector<Complex>(7)), std::invalid_argument);
  CHECK_THROWS_AS(StateVector::basis_state(2, 4), std::out_of_range);
}
