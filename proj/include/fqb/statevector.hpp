#pragma once

#include <complex>
#include <filesystem>
#include <span>
#include <vector>

#include "fqb/lattice.hpp"

namespace fqb {

using Complex = std::complex<double>;

/// Pure state of N spins as 2^N amplitudes in the z-product basis.
///
/// The state is never renormalized behind the caller's back; norm drift is
/// something tests assert on.
class StateVector {
 public:
  StateVector(int n_sites, std::vector<Complex> amplitudes);

  /// |0...0> in index space, i.e. every site at z-eigenvalue +1.
  static StateVector basis_state(int n_sites, BasisIndex index);

  int n_sites() const noexcept { return n_sites_; }
  std::size_t dim() const noexcept { return amps_.size(); }

  std::span<Complex> amplitudes() noexcept { return amps_; }
  std::span<const Complex> amplitudes() const noexcept { return amps_; }
  Complex& operator[](std::size_t i) noexcept { return amps_[i]; }
  const Complex& operator[](std::size_t i) const noexcept { return amps_[i]; }

  double norm() const noexcept;

 private:
  int n_sites_;
  std::vector<Complex> amps_;
};

/// Largest supported chain; 2^26 amplitudes is already 1 GiB.
inline constexpr int kMaxSites = 26;

/// Ground state of omega * sum_j sigma^z_j: every site at -1 (index 2^N - 1).
StateVector ground_state(int n_sites, double omega);

/// Applies the normalized Hadamard transform H^{(x)N} in place. Self-inverse.
void fwht_inplace(StateVector& psi) noexcept;
void fwht_inplace(std::span<Complex> amps) noexcept;

/// amps[b] <- exp(-i * phase[b]) * amps[b].
void apply_diagonal_phase(StateVector& psi, std::span<const double> phase);

/// sum_b |amps[b]|^2 * omega * magnetization(b).
double energy_expectation_z(const StateVector& psi, double omega) noexcept;

/// Little-endian dump: int32 N, then interleaved re/im doubles. Debug aid only.
void dump_amplitudes(const StateVector& psi, const std::filesystem::path& path);
StateVector load_amplitudes(const std::filesystem::path& path);

}  // namespace fqb
