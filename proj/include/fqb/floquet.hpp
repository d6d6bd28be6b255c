#pragma once

#include <optional>
#include <vector>

#include "fqb/lattice.hpp"
#include "fqb/observables.hpp"
#include "fqb/statevector.hpp"

namespace fqb {

/// One period of the two-step drive, stored as diagonal phase tables:
///   U_F = exp(-i tau1 hz H_z) exp(-i tau0 (J H_xx + hx H_x)).
/// The first factor is diagonal in the z basis (dz), the second in the
/// x basis (dx), so a kick is two Hadamard transforms and two phase sweeps.
class FloquetOperator {
 public:
  explicit FloquetOperator(const ChargerParams& params);

  const ChargerParams& params() const noexcept { return params_; }
  const BondTable& bonds() const noexcept { return bonds_; }
  std::span<const double> dx() const noexcept { return dx_; }
  std::span<const double> dz() const noexcept { return dz_; }

  /// psi <- U_F psi.
  void apply(StateVector& psi) const;

 private:
  ChargerParams params_;
  BondTable bonds_;
  std::vector<double> dx_;
  std::vector<double> dz_;
  std::vector<Complex> fx_;  // exp(-i dx)
  std::vector<Complex> fz_;  // exp(-i dz)
  // a stage whose phase table vanishes is skipped so zero durations act exactly as the identity
  bool x_trivial_ = false;
  bool z_trivial_ = false;
};

FloquetOperator build_floquet(const ChargerParams& params);

void apply_kick(StateVector& psi, const FloquetOperator& op);

struct KickRecord {
  long n = 0;
  double delta_e = 0.0;
  double power = 0.0;
  std::optional<double> entropy;  // natural log
};

struct KickSeries {
  ChargerParams params;
  std::vector<KickRecord> records;
};

/// Energy and power are always recorded; entropy only when a bipartition is given.
struct ObservableSelection {
  std::optional<BipartitionSpec> entropy;
};

/// Evolves the ground state for n_max kicks, recording n = 0 .. n_max.
KickSeries evolve(const ChargerParams& params, long n_max, const ObservableSelection& observe = {});

}  // namespace fqb
