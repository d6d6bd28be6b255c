#include "fqb/statevector.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <stdexcept>
#include <string>

namespace fqb {

namespace {

void check_sites(int n_sites) {
  if (n_sites < 1 || n_sites > kMaxSites) {
    throw std::invalid_argument("n_sites must be in [1, " + std::to_string(kMaxSites) + "]");
  }
}

}  // namespace

StateVector::StateVector(int n_sites, std::vector<Complex> amplitudes)
    : n_sites_(n_sites), amps_(std::move(amplitudes)) {
  check_sites(n_sites);
  if (amps_.size() != (std::size_t{1} << n_sites)) {
    throw std::invalid_argument("amplitude count must be 2^n_sites");
  }
}

StateVector StateVector::basis_state(int n_sites, BasisIndex index) {
  check_sites(n_sites);
  std::vector<Complex> amps(std::size_t{1} << n_sites);
  if (index >= amps.size()) throw std::out_of_range("basis index out of range");
  amps[index] = 1.0;
  return StateVector(n_sites, std::move(amps));
}

double StateVector::norm() const noexcept {
  double s = 0.0;
  for (const Complex& a : amps_) s += std::norm(a);
  return std::sqrt(s);
}

StateVector ground_state(int n_sites, double omega) {
  if (!(omega > 0.0)) {
    throw std::invalid_argument("omega must be > 0 for a well-defined ground state");
  }
  check_sites(n_sites);
  return StateVector::basis_state(n_sites, (BasisIndex{1} << n_sites) - 1);
}

void fwht_inplace(std::span<Complex> amps) noexcept {
  const double r = 1.0 / std::sqrt(2.0);
  const std::size_t dim = amps.size();
  for (std::size_t half = 1; half < dim; half <<= 1) {
    for (std::size_t block = 0; block < dim; block += 2 * half) {
      Complex* lo = amps.data() + block;
      Complex* hi = lo + half;
      for (std::size_t k = 0; k < half; ++k) {
        const Complex a = lo[k];
        const Complex b = hi[k];
        lo[k] = (a + b) * r;
        hi[k] = (a - b) * r;
      }
    }
  }
}

void fwht_inplace(StateVector& psi) noexcept { fwht_inplace(psi.amplitudes()); }

void apply_diagonal_phase(StateVector& psi, std::span<const double> phase) {
  if (phase.size() != psi.dim()) {
    throw std::invalid_argument("phase table length " + std::to_string(phase.size()) +
                                " does not match state dimension " + std::to_string(psi.dim()));
  }
  auto amps = psi.amplitudes();
  for (std::size_t b = 0; b < amps.size(); ++b) {
    amps[b] *= Complex(std::cos(phase[b]), -std::sin(phase[b]));
  }
}

double energy_expectation_z(const StateVector& psi, double omega) noexcept {
  const auto amps = psi.amplitudes();
  const int n = psi.n_sites();
  double e = 0.0;
  for (std::size_t b = 0; b < amps.size(); ++b) {
    e += std::norm(amps[b]) * magnetization(b, n);
  }
  return omega * e;
}

void dump_amplitudes(const StateVector& psi, const std::filesystem::path& path) {
  static_assert(std::endian::native == std::endian::little, "dump format assumes little-endian host");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  const std::int32_t n = psi.n_sites();
  out.write(reinterpret_cast<const char*>(&n), sizeof n);
  out.write(reinterpret_cast<const char*>(psi.amplitudes().data()),
            static_cast<std::streamsize>(psi.dim() * sizeof(Complex)));
  if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

StateVector load_amplitudes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
  std::int32_t n = 0;
  in.read(reinterpret_cast<char*>(&n), sizeof n);
  check_sites(n);
  std::vector<Complex> amps(std::size_t{1} << n);
  in.read(reinterpret_cast<char*>(amps.data()), static_cast<std::streamsize>(amps.size() * sizeof(Complex)));
  if (!in) throw std::runtime_error("truncated amplitude dump '" + path.string() + "'");
  return StateVector(n, std::move(amps));
}

}  // namespace fqb
