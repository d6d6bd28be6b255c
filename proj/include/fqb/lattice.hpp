#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace fqb {

/// Computational-basis index. Bit j (least significant = site 0) set means the
/// local eigenvalue of the relevant Pauli operator is -1; clear means +1.
using BasisIndex = std::uint64_t;

enum class Boundary { Periodic, Open };
enum class Range { LongRange, NearestNeighbor };

/// Physical and protocol configuration of the two-step charger.
///
/// The period T = tau0 + tau1 is always derived, see period().
struct ChargerParams {
  int n_sites = 8;
  double coupling = 1.0;  // J
  double hx = 0.0;        // 0 => integrable
  double hz = 1.0;
  double omega = 1.0;
  double tau0 = 0.0;
  double tau1 = 0.0;
  Boundary boundary = Boundary::Periodic;
  Range range = Range::LongRange;
  /// Halve the k = N/2 weight for even N under long-range PBC, where the
  /// literal double sum visits every antipodal pair twice.
  bool antipodal_halving = false;

  double period() const noexcept { return tau0 + tau1; }
  bool integrable() const noexcept { return hx == 0.0; }

  /// Throws std::invalid_argument when an invariant is violated.
  void validate() const;

  bool operator==(const ChargerParams&) const = default;
};

struct Bond {
  int i = 0;
  int j = 0;
  double weight = 1.0;
  int separation = 1;
};

/// Weighted pair list realizing the x-x interaction for one geometry.
/// Immutable after construction.
class BondTable {
 public:
  BondTable(int n_sites, Boundary boundary, Range range, std::vector<Bond> bonds);

  int n_sites() const noexcept { return n_sites_; }
  Boundary boundary() const noexcept { return boundary_; }
  Range range() const noexcept { return range_; }
  const std::vector<Bond>& bonds() const noexcept { return bonds_; }
  std::size_t size() const noexcept { return bonds_.size(); }
  double total_weight() const noexcept;

 private:
  int n_sites_;
  Boundary boundary_;
  Range range_;
  std::vector<Bond> bonds_;
};

/// Bonds of the literal double sum: sum_j sum_{k<=K} 2^(1-k) x_j x_{j+k}.
/// PBC uses K = floor(N/2) (every antipodal pair appears twice for even N
/// unless antipodal_halving is set); OBC couples every pair inside the chain
/// once; NearestNeighbor keeps only k = 1.
BondTable build_bond_table(const ChargerParams& params);

/// Sum over bonds of w * s_i * s_j with s = 1 - 2 * bit.
double interaction_energy(BasisIndex bits, const BondTable& table) noexcept;

/// N - 2 * popcount(bits).
int magnetization(BasisIndex bits, int n_sites) noexcept;

std::string to_string(Boundary b);
std::string to_string(Range r);
Boundary parse_boundary(const std::string& text);
Range parse_range(const std::string& text);

}  // namespace fqb
