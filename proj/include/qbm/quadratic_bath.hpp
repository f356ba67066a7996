// quadratic_bath.hpp — the quadratically coupled (Dirichlet boundary) bath:
// cubic dissipation kernel, the n-vertex diagram kernel and displacement
// cumulants built from it, the truncated power-law position distribution
// with its sampler, and the Pawula / Chapman–Kolmogorov diagnostics.

#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <vector>

#include "qbm/core.hpp"

namespace qbm::quadratic_bath {

// Im chi(w) = w^3 / 6 pi for w > 0, odd-extended.
double imchi(double omega);

// Force PSD C_F(w) = w^3 / 6 pi on w > 0; tied to imchi by the T = 0
// fluctuation–dissipation relation Im chi = sgn(w) C_F.
double force_psd(double omega);

// Diagram kernel of the connected n-point force correlator after the
// fast/slow frequency split: F_n(w1) = w1^(n+1) / 12 pi.
double diagram_kernel_closed(int n, double omega1);

// Same kernel from first principles: every assignment of momentum k or
// (w1 - k) to the n-2 internal vertices is enumerated explicitly (2^(n-2)
// terms) and the product of line factors is integrated over k in (0, w1).
// n is capped at 12 to keep the enumeration cheap.
double diagram_kernel_bruteforce(int n, double omega1,
                                 const QuadratureConfig& cfg);

// Closed-form connected cumulants of the displacement:
//   n = 2: (lambda^2 / 3 pi^2) ln(t / tau),
//   n >= 4 even: 2 lambda_tilde^2 (v t)^(n-2) / (n - 2).
double cumulant_closed(int n, double t, const DerivedScales& scales);

// Reassembles the cumulant integral numerically: the w1 integral of the
// brute-force kernel over response-function denominators, the slow-frequency
// multi-integral (evaluated by nested principal-value quadrature for n = 4,
// analytically for n > 4), and the combinatorial prefactor with the averaged
// fast-variable factor -1/2. Requires t * cutoff >= 10 for the fast/slow
// split to make sense.
double cumulant_seminumeric(int n, double t, const ModelParams& params,
                            const QuadratureConfig& cfg);

// The two slow-frequency reference integrals behind the cumulant pipeline:
//   \int dw/2pi sin(w t/2) cos(w t/2) / (w^2 + i eps sgn w) = -i t / 4,
//   \int dw/2pi sin^2(w t/2) / w^2                          =    t / 4.
// Both are evaluated numerically (principal value plus the analytic pole
// delta); the closed values serve as oracles in tests.
std::complex<double> slow_mode_sincos(double t, const QuadratureConfig& cfg);
double slow_mode_sinsq(double t, const QuadratureConfig& cfg);

// Truncated power-law position density P(X) = lambda_tilde^2 / |X|^3 on
// lambda_tilde < |X| < outer, zero elsewhere. The sharp cutoffs leave a
// documented mass deficit (lambda_tilde / outer)^2.
class PositionDistribution {
 public:
  PositionDistribution(double lambda_tilde, double outer);

  double inner() const noexcept { return inner_; }
  double outer() const noexcept { return outer_; }

  double pdf(double x) const;
  // Total probability mass, 1 - (inner/outer)^2.
  double total_mass() const;
  // CDF of |X| normalized to the contained mass.
  double abs_cdf(double x) const;
  // Signed CDF over the full line.
  double cdf(double x) const;
  // Raw (unnormalized) absolute moment \int |X|^n P over the support:
  //   n = 2: 2 lt^2 ln(outer/inner),
  //   n >= 4 even: 2 lt^2 (outer^(n-2) - inner^(n-2)) / (n-2),
  //   odd n: exactly 0 by symmetry.
  double moment(int n) const;

 private:
  double inner_, outer_;
};

// Deterministic inverse-transform sampler: |X| = inner / sqrt(1 - u * mass),
// sign ± with probability 1/2 each. Identical (seed, count) give identical
// samples independent of any internal partitioning.
std::vector<double> pdf_sample(const PositionDistribution& dist,
                               std::size_t count, std::uint64_t seed);

enum class Provenance { closed, numeric, empirical };

// Connected cumulants keyed by (even order, time) with per-entry provenance.
class CumulantSeries {
 public:
  struct Entry {
    double value;
    Provenance provenance;
  };

  void set(int order, double t, double value, Provenance provenance);
  const Entry* find(int order, double t) const;
  std::vector<int> orders_at(double t) const;

 private:
  std::map<std::pair<int, double>, Entry> entries_;
};

// Moments M_1..M_n from cumulants k_1..k_n (index i-1 holds order i) via
// M_n = sum_j C(n-1, j-1) k_j M_{n-j}.
std::vector<double> moments_from_cumulants(const std::vector<double>& cumulants);

struct PawulaReport {
  bool ok;                // every inequality satisfied
  double tightest_ratio;  // max over pairs of M_{n+m}^2 / (M_n M_{n+2m})
  int n_at, m_at;         // where the tightest ratio occurred
  std::vector<std::string> violations;
};

// Checks M_{n+m}^2 <= M_n * M_{n+2m} for every pair representable within
// `moments` (index i-1 holds order i; odd orders may be zero).
PawulaReport pawula_check_moments(const std::vector<double>& moments);

// Same check on moments reconstructed from the cumulants stored at time t.
// All even orders 2..max present at t are used; gaps raise invalid_argument.
PawulaReport pawula_check(const CumulantSeries& series, double t);

// Sup-norm Chapman–Kolmogorov residual
//   sup_X | (P_{t1} * P_{t2})(X) - P_{t1+t2}(X) |
// over an X grid covering the support. Strictly positive for this process;
// a Markov process would give zero.
double ck_residual(double t1, double t2, const DerivedScales& scales,
                   const QuadratureConfig& cfg);

}  // namespace qbm::quadratic_bath
