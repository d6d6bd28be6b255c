#include "fqb/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "fqb/floquet.hpp"
#include "fqb/observables.hpp"

namespace fqb::oracle {

DenseMatrix DenseMatrix::identity(std::size_t dim) {
  DenseMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

DenseMatrix DenseMatrix::adjoint() const {
  DenseMatrix out(dim_);
  for (std::size_t r = 0; r < dim_; ++r) {
    for (std::size_t c = 0; c < dim_; ++c) out(c, r) = std::conj((*this)(r, c));
  }
  return out;
}

double DenseMatrix::norm_inf() const noexcept {
  double best = 0.0;
  for (std::size_t r = 0; r < dim_; ++r) {
    double row = 0.0;
    for (std::size_t c = 0; c < dim_; ++c) row += std::abs((*this)(r, c));
    best = std::max(best, row);
  }
  return best;
}

double DenseMatrix::max_abs() const noexcept {
  double best = 0.0;
  for (const Complex& z : data_) best = std::max(best, std::abs(z));
  return best;
}

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.dim_ != b.dim_) throw std::invalid_argument("dimension mismatch in matrix product");
  const std::size_t n = a.dim_;
  DenseMatrix out(n);
  for (std::size_t r = 0; r < n; ++r) {
    Complex* dst = &out.data_[r * n];
    for (std::size_t k = 0; k < n; ++k) {
      const Complex s = a(r, k);
      if (s == Complex{}) continue;
      const Complex* src = &b.data_[k * n];
      for (std::size_t c = 0; c < n; ++c) dst[c] += s * src[c];
    }
  }
  return out;
}

DenseMatrix operator+(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.dim_ != b.dim_) throw std::invalid_argument("dimension mismatch in matrix sum");
  DenseMatrix out = a;
  for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] += b.data_[i];
  return out;
}

DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b) { return a + Complex(-1.0) * b; }

DenseMatrix operator*(Complex s, const DenseMatrix& a) {
  DenseMatrix out = a;
  for (Complex& z : out.data_) z *= s;
  return out;
}

std::vector<Complex> DenseMatrix::apply(std::span<const Complex> v) const {
  if (v.size() != dim_) throw std::invalid_argument("dimension mismatch in matrix-vector product");
  std::vector<Complex> out(dim_);
  for (std::size_t r = 0; r < dim_; ++r) {
    Complex s = 0.0;
    for (std::size_t c = 0; c < dim_; ++c) s += (*this)(r, c) * v[c];
    out[r] = s;
  }
  return out;
}

DenseOperators build_dense_operators(const ChargerParams& params) {
  params.validate();
  const int n = params.n_sites;
  if (n > kMaxDenseSites) {
    throw std::invalid_argument("dense operators capped at " + std::to_string(kMaxDenseSites) + " sites");
  }
  const BondTable table = build_bond_table(params);
  const std::size_t dim = std::size_t{1} << n;
  DenseOperators ops{DenseMatrix(dim), DenseMatrix(dim), DenseMatrix(dim)};

  for (std::size_t b = 0; b < dim; ++b) {
    // sigma^z is diagonal: +1 on a clear bit
    double z = 0.0;
    for (int j = 0; j < n; ++j) z += ((b >> j) & 1U) ? -1.0 : 1.0;
    ops.hz(b, b) = z;
    // sigma^x_j flips bit j
    for (int j = 0; j < n; ++j) ops.hx(b ^ (std::size_t{1} << j), b) += 1.0;
    // sigma^x_i sigma^x_j flips both bits; i == j would be the identity
    for (const Bond& bond : table.bonds()) {
      const std::size_t flip = (std::size_t{1} << bond.i) ^ (std::size_t{1} << bond.j);
      ops.hxx(b ^ flip, b) += bond.weight;
    }
  }
  return ops;
}

DenseMatrix dense_expm(const DenseMatrix& h, double t, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be > 0");
  const std::size_t dim = h.dim();
  const double norm = h.norm_inf() * std::abs(t);
  if (!std::isfinite(norm)) throw std::domain_error("non-finite entries in exponent");

  int squarings = 0;
  while (std::ldexp(norm, -squarings) > 0.5) ++squarings;
  const DenseMatrix a = Complex(0.0, -t * std::ldexp(1.0, -squarings)) * h;

  DenseMatrix sum = DenseMatrix::identity(dim);
  DenseMatrix term = DenseMatrix::identity(dim);
  const double term_tol = tol * std::ldexp(1.0, -squarings);
  for (int k = 1; k < 200; ++k) {
    term = Complex(1.0 / k) * (term * a);
    sum = sum + term;
    if (term.norm_inf() <= term_tol) break;
  }
  for (int s = 0; s < squarings; ++s) sum = sum * sum;
  return sum;
}

DenseMatrix dense_floquet(const ChargerParams& params, double tol) {
  const DenseOperators ops = build_dense_operators(params);
  const DenseMatrix interaction = Complex(params.coupling) * ops.hxx + Complex(params.hx) * ops.hx;
  const DenseMatrix field = Complex(params.hz) * ops.hz;
  return dense_expm(field, params.tau1, tol) * dense_expm(interaction, params.tau0, tol);
}

ValidationReport cross_validate(const ChargerParams& params, long n_kicks, double tol) {
  if (params.n_sites > 8) throw std::invalid_argument("cross validation capped at 8 sites");
  if (n_kicks < 0) throw std::invalid_argument("n_kicks must be >= 0");
  const DenseMatrix uf = dense_floquet(params);
  const FloquetOperator op(params);

  StateVector fast = ground_state(params.n_sites, params.omega);
  StateVector dense = fast;
  ValidationReport report;
  for (long n = 1; n <= n_kicks; ++n) {
    op.apply(fast);
    const std::vector<Complex> next = uf.apply(dense.amplitudes());
    std::copy(next.begin(), next.end(), dense.amplitudes().begin());
    for (std::size_t b = 0; b < fast.dim(); ++b) {
      report.max_amp_dev = std::max(report.max_amp_dev, std::abs(fast[b] - dense[b]));
    }
    report.max_energy_dev = std::max(report.max_energy_dev, std::abs(stored_energy(fast, params.omega) -
                                                                     stored_energy(dense, params.omega)));
  }
  report.pass = report.max_amp_dev <= tol;
  return report;
}

std::vector<ChargerParams> validation_grid(int max_sites) {
  constexpr double pi = std::numbers::pi;
  const double taus[] = {pi / 8, pi / 4, 3 * pi / 8, pi / 2};
  std::vector<ChargerParams> grid;
  for (int n = 2; n <= max_sites; ++n) {
    for (Boundary boundary : {Boundary::Periodic, Boundary::Open}) {
      for (Range range : {Range::LongRange, Range::NearestNeighbor}) {
        for (double hx : {0.0, 1.0}) {
          for (double tau0 : taus) {
            for (double tau1 : taus) {
              ChargerParams p;
              p.n_sites = n;
              p.coupling = 1.0;
              p.hx = hx;
              p.hz = 1.0;
              p.omega = 1.0;
              p.tau0 = tau0;
              p.tau1 = tau1;
              p.boundary = boundary;
              p.range = range;
              grid.push_back(p);
            }
          }
        }
      }
    }
  }
  return grid;
}

}  // namespace fqb::oracle
