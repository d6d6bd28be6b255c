#include "fqb/observables.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "fqb/floquet.hpp"

namespace fqb {

namespace {

void validate_cut(const BipartitionSpec& spec, int n_sites) {
  const int size = static_cast<int>(spec.sites.size());
  if (size < 1 || size > n_sites - 1) {
    throw std::invalid_argument("subsystem must hold between 1 and N-1 sites, got " + std::to_string(size));
  }
  if (size > kMaxSubsystemSites) {
    throw std::invalid_argument("subsystem larger than " + std::to_string(kMaxSubsystemSites) + " sites");
  }
  std::vector<int> sorted = spec.sites;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument("subsystem sites must be distinct");
  }
  if (sorted.front() < 0 || sorted.back() >= n_sites) {
    throw std::invalid_argument("subsystem site index out of range");
  }
}

std::vector<int> complement(const std::vector<int>& sites, int n_sites) {
  std::vector<int> out;
  for (int s = 0; s < n_sites; ++s) {
    if (std::find(sites.begin(), sites.end(), s) == sites.end()) out.push_back(s);
  }
  return out;
}

BasisIndex gather_bits(BasisIndex b, const std::vector<int>& sites) {
  BasisIndex out = 0;
  for (std::size_t k = 0; k < sites.size(); ++k) out |= ((b >> sites[k]) & 1U) << k;
  return out;
}

// rho over `kept` (sorted ascending), tracing out everything else.
HermitianMatrix partial_trace(const StateVector& psi, std::vector<int> kept) {
  std::sort(kept.begin(), kept.end());
  const std::vector<int> traced = complement(kept, psi.n_sites());
  const std::size_t rows = std::size_t{1} << kept.size();
  const std::size_t cols = std::size_t{1} << traced.size();

  std::vector<Complex> a(rows * cols);
  const auto amps = psi.amplitudes();
  for (std::size_t b = 0; b < amps.size(); ++b) {
    a[gather_bits(b, kept) * cols + gather_bits(b, traced)] = amps[b];
  }

  HermitianMatrix rho{rows, std::vector<Complex>(rows * rows)};
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = r; c < rows; ++c) {
      Complex s = 0.0;
      const Complex* x = &a[r * cols];
      const Complex* y = &a[c * cols];
      for (std::size_t k = 0; k < cols; ++k) s += x[k] * std::conj(y[k]);
      rho(r, c) = s;
      rho(c, r) = std::conj(s);
    }
  }
  return rho;
}

double off_diagonal_norm(const HermitianMatrix& m) {
  double s = 0.0;
  for (std::size_t r = 0; r < m.dim; ++r) {
    for (std::size_t c = 0; c < m.dim; ++c) {
      if (r != c) s += std::norm(m(r, c));
    }
  }
  return std::sqrt(s);
}

// Closed form for 2x2; the smaller root comes from det / larger to avoid cancellation.
std::vector<double> eigenvalues_2x2(const HermitianMatrix& m) {
  const double a = m(0, 0).real();
  const double d = m(1, 1).real();
  const double half_tr = 0.5 * (a + d);
  const double disc = std::hypot(0.5 * (a - d), std::abs(m(0, 1)));
  const double det = a * d - std::norm(m(0, 1));
  const double big = half_tr >= 0 ? half_tr + disc : half_tr - disc;
  const double small = big != 0.0 ? det / big : 0.0;
  return big >= small ? std::vector<double>{small, big} : std::vector<double>{big, small};
}

}  // namespace

double stored_energy(const StateVector& psi, double omega) {
  return energy_expectation_z(psi, omega) + omega * psi.n_sites();
}

double charging_power(double delta_e, long n, double tau0, double tau1) {
  if (n < 0) throw std::invalid_argument("kick count must be >= 0");
  if (n == 0) return 0.0;
  const double t = static_cast<double>(n) * (tau0 + tau1);
  if (t == 0.0) throw std::domain_error("charging power undefined: zero elapsed time");
  return delta_e / t;
}

HermitianMatrix reduced_density_matrix(const StateVector& psi, const BipartitionSpec& spec) {
  validate_cut(spec, psi.n_sites());
  return partial_trace(psi, spec.sites);
}

std::vector<double> hermitian_eigenvalues(HermitianMatrix m) {
  const std::size_t n = m.dim;
  if (n == 0) return {};
  if (n == 2) return eigenvalues_2x2(m);

  constexpr double kOffTolerance = 1e-13;
  constexpr int kMaxSweeps = 100;
  for (int sweep = 0; sweep < kMaxSweeps && off_diagonal_norm(m) > kOffTolerance; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double mag = std::abs(m(p, q));
        if (mag == 0.0) continue;

        // Rotate the phase of q so that m(p, q) becomes real and positive.
        const Complex phase = m(p, q) / mag;
        for (std::size_t k = 0; k < n; ++k) {
          m(k, q) *= std::conj(phase);
          m(q, k) *= phase;
        }
        m(q, q) = m(q, q).real();
        m(p, q) = mag;
        m(q, p) = mag;

        // Real symmetric rotation annihilating (p, q).
        const double app = m(p, p).real();
        const double aqq = m(q, q).real();
        const double theta = (aqq - app) / (2.0 * mag);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          const Complex akp = m(k, p);
          const Complex akq = m(k, q);
          m(k, p) = c * akp - s * akq;
          m(k, q) = s * akp + c * akq;
          m(p, k) = std::conj(m(k, p));
          m(q, k) = std::conj(m(k, q));
        }
        m(p, p) = app - t * mag;
        m(q, q) = aqq + t * mag;
        m(p, q) = 0.0;
        m(q, p) = 0.0;
      }
    }
  }

  std::vector<double> eig(n);
  for (std::size_t i = 0; i < n; ++i) eig[i] = m(i, i).real();
  std::sort(eig.begin(), eig.end());
  return eig;
}

double entropy_from_spectrum(const std::vector<double>& eigenvalues, LogBase base) {
  // The state is never renormalized, so Tr rho carries the accumulated norm
  // drift. Rescaling the kept weights to unit trace stops that drift from
  // showing up as spurious entropy of a pure state.
  std::vector<double> kept;
  double trace = 0.0;
  for (double lambda : eigenvalues) {
    lambda = std::clamp(lambda, 0.0, 1.0);
    if (lambda <= 1e-14) continue;
    kept.push_back(lambda);
    trace += lambda;
  }
  double s = 0.0;
  for (double lambda : kept) {
    lambda /= trace;
    s -= lambda * std::log(lambda);
  }
  return base == LogBase::Two ? s / std::numbers::ln2 : s;
}

double entanglement_entropy(const StateVector& psi, const BipartitionSpec& spec) {
  validate_cut(spec, psi.n_sites());
  // Both sides share the nonzero spectrum of a pure state; diagonalize the smaller one.
  const int size = static_cast<int>(spec.sites.size());
  const std::vector<int> kept = 2 * size <= psi.n_sites() ? spec.sites : complement(spec.sites, psi.n_sites());
  return entropy_from_spectrum(hermitian_eigenvalues(partial_trace(psi, kept)), spec.log_base);
}

EnergyPeak max_stored_energy(const KickSeries& series) {
  if (series.records.empty()) throw std::invalid_argument("empty kick series");
  double best = series.records.front().delta_e;
  for (const KickRecord& r : series.records) best = std::max(best, r.delta_e);
  for (const KickRecord& r : series.records) {
    if (r.delta_e >= best - kPeriodTolerance) return {best, r.n};
  }
  return {best, series.records.front().n};
}

std::optional<long> detect_period(const KickSeries& series, double tol) {
  const auto& rec = series.records;
  const std::size_t len = rec.size();
  for (std::size_t p = 1; p <= len / 2; ++p) {
    bool periodic = true;
    for (std::size_t i = 0; i + p < len && periodic; ++i) {
      periodic = std::abs(rec[i + p].delta_e - rec[i].delta_e) <= tol;
    }
    if (periodic) return static_cast<long>(p);
  }
  return std::nullopt;
}

}  // namespace fqb
