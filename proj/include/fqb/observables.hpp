#pragma once

#include <optional>
#include <vector>

#include "fqb/statevector.hpp"

namespace fqb {

struct KickSeries;

enum class LogBase { Natural, Two };

/// Subsystem X of a bipartition X | X^c, as 0-based site indices.
struct BipartitionSpec {
  std::vector<int> sites;
  LogBase log_base = LogBase::Natural;
};

/// Largest |X| for which the dense reduced matrix is formed.
inline constexpr int kMaxSubsystemSites = 12;

/// Row-major square Hermitian matrix.
struct HermitianMatrix {
  std::size_t dim = 0;
  std::vector<Complex> data;

  Complex& operator()(std::size_t r, std::size_t c) { return data[r * dim + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return data[r * dim + c]; }
};

/// Energy above the analytic ground value -omega * N.
double stored_energy(const StateVector& psi, double omega);

/// DeltaE / (n * (tau0 + tau1)); 0 at n = 0. Throws when n > 0 and no time has elapsed.
double charging_power(double delta_e, long n, double tau0, double tau1);

/// rho_X = Tr_{X^c} |psi><psi|, indexed by the bits of X in ascending site order.
HermitianMatrix reduced_density_matrix(const StateVector& psi, const BipartitionSpec& spec);

/// Eigenvalues of a Hermitian matrix by cyclic complex Jacobi rotations, ascending.
/// Stops once the off-diagonal Frobenius norm drops to 1e-13 or after 100 sweeps.
std::vector<double> hermitian_eigenvalues(HermitianMatrix m);

/// von Neumann entropy of rho_X in spec.log_base.
double entanglement_entropy(const StateVector& psi, const BipartitionSpec& spec);

/// -sum lambda log lambda over a spectrum, clamped to [0, 1], dropping lambda <= 1e-14
/// and rescaling what is left to unit trace.
double entropy_from_spectrum(const std::vector<double>& eigenvalues, LogBase base);

struct EnergyPeak {
  double delta_e_max = 0.0;
  long n_star = 0;
};

/// Ties (within 1e-9) resolve to the earliest kick.
EnergyPeak max_stored_energy(const KickSeries& series);

inline constexpr double kPeriodTolerance = 1e-9;

/// Smallest p with |dE(n+p) - dE(n)| <= tol over the whole record, p <= size/2.
std::optional<long> detect_period(const KickSeries& series, double tol = kPeriodTolerance);

}  // namespace fqb
