#pragma once

#include <vector>

#include "fqb/lattice.hpp"
#include "fqb/statevector.hpp"

// Dense reference path. Everything here works on explicit 2^N x 2^N matrices in
// the z basis and never uses the Hadamard-basis trick, so it can check the
// fast path independently.
namespace fqb::oracle {

inline constexpr int kMaxDenseSites = 10;
inline constexpr double kDefaultTolerance = 1e-12;

class DenseMatrix {
 public:
  DenseMatrix() = default;
  explicit DenseMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {}
  static DenseMatrix identity(std::size_t dim);

  std::size_t dim() const noexcept { return dim_; }
  Complex& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * dim_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * dim_ + c]; }

  DenseMatrix adjoint() const;
  /// Max absolute row sum.
  double norm_inf() const noexcept;
  double max_abs() const noexcept;

  friend DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b);
  friend DenseMatrix operator+(const DenseMatrix& a, const DenseMatrix& b);
  friend DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b);
  friend DenseMatrix operator*(Complex s, const DenseMatrix& a);

  std::vector<Complex> apply(std::span<const Complex> v) const;

 private:
  std::size_t dim_ = 0;
  std::vector<Complex> data_;
};

struct DenseOperators {
  DenseMatrix hxx;
  DenseMatrix hx;
  DenseMatrix hz;
};

/// Explicit H_xx (from the shared bond table), H_x and H_z. N <= kMaxDenseSites.
DenseOperators build_dense_operators(const ChargerParams& params);

/// exp(-i H t) by scaling and squaring of the Taylor series.
DenseMatrix dense_expm(const DenseMatrix& h, double t, double tol = kDefaultTolerance);

/// exp(-i tau1 hz H_z) exp(-i tau0 (J H_xx + hx H_x)).
DenseMatrix dense_floquet(const ChargerParams& params, double tol = kDefaultTolerance);

struct ValidationReport {
  double max_amp_dev = 0.0;
  double max_energy_dev = 0.0;
  bool pass = false;
};

/// Evolves the ground state with both paths and compares after every kick.
ValidationReport cross_validate(const ChargerParams& params, long n_kicks, double tol);

/// Fixed parameter grid used by `validate` and the acceptance suite. Bump the
/// version whenever the grid changes.
inline constexpr int kValidationGridVersion = 1;
std::vector<ChargerParams> validation_grid(int max_sites);

}  // namespace fqb::oracle
