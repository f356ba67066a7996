#include "qbm/quadratic_bath.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "qbm/quadrature.hpp"
#include "qbm/simd/kernels.hpp"

namespace qbm::quadratic_bath {

namespace {

constexpr int kMaxBruteforceOrder = 12;  // 2^(n-2) = 1024 assignments

void require_even_order(int n, int min_order) {
  if (n < min_order || n % 2 != 0)
    throw std::invalid_argument(
        "order must be even and >= " + std::to_string(min_order) +
        " (odd orders vanish: left/right contributions cancel)");
}

}  // namespace

double imchi(double omega) {
  return omega * omega * omega / (6.0 * std::numbers::pi);
}

double force_psd(double omega) {
  if (!(omega > 0.0))
    throw std::invalid_argument("force_psd: omega must be > 0");
  return omega * omega * omega / (6.0 * std::numbers::pi);
}

double diagram_kernel_closed(int n, double omega1) {
  require_even_order(n, 2);
  if (!(omega1 > 0.0))
    throw std::invalid_argument("diagram_kernel_closed: omega1 must be > 0");
  return std::pow(omega1, n + 1) / (12.0 * std::numbers::pi);
}

double diagram_kernel_bruteforce(int n, double omega1,
                                 const QuadratureConfig& cfg) {
  require_even_order(n, 2);
  if (n > kMaxBruteforceOrder)
    throw std::invalid_argument("diagram_kernel_bruteforce: order capped at " +
                                std::to_string(kMaxBruteforceOrder));
  if (!(omega1 > 0.0))
    throw std::invalid_argument("diagram_kernel_bruteforce: omega1 must be > 0");

  const int internal = n - 2;
  const std::uint32_t assignments = 1u << internal;
  auto integrand = [=](double k) {
    const double kc = omega1 - k;
    // Sum over every way of routing momentum k or omega1 - k through the
    // internal vertices. (The closed form collapses this to omega1^(n-2);
    // here the sum stays explicit because it is the oracle.)
    double sum = 0.0;
    for (std::uint32_t mask = 0; mask < assignments; ++mask) {
      double prod = 1.0;
      for (int i = 0; i < internal; ++i)
        prod *= (mask >> i) & 1u ? kc : k;
      sum += prod;
    }
    return k * kc * sum / (2.0 * std::numbers::pi);
  };
  quad::Result r = quad::integrate_adaptive(integrand, 0.0, omega1, cfg);
  if (!r.converged)
    throw ConvergenceError("diagram_kernel_bruteforce: quadrature not converged",
                           r.abs_err);
  return r.value;
}

double cumulant_closed(int n, double t, const DerivedScales& scales) {
  require_even_order(n, 2);
  if (n == 2) {
    if (!(t > scales.tau))
      throw std::invalid_argument("cumulant_closed: n = 2 requires t > tau");
    const double l2 = scales.lambda * scales.lambda;
    return l2 / (3.0 * std::numbers::pi * std::numbers::pi) *
           std::log(t / scales.tau);
  }
  if (!(t > scales.tau))
    throw std::invalid_argument("cumulant_closed: requires t > tau");
  const double lt2 = scales.lambda_tilde * scales.lambda_tilde;
  return 2.0 * lt2 * std::pow(scales.v * t, n - 2) / (n - 2);
}

namespace {

// Default excision half-width for a slow-frequency pole, following the
// i-eps prescription scale: min(1/t, cutoff) * 1e-3.
double pole_eps(double t, double cutoff, const QuadratureConfig& cfg) {
  if (cfg.pole_halfwidth > 0.0) return cfg.pole_halfwidth;
  return std::min(1.0 / t, cutoff) * 1e-3;
}

// Tolerances for the oscillatory slow integrals: purely relative, so that
// the evaluation is exactly scale-covariant in t.
QuadratureConfig slow_cfg(const QuadratureConfig& cfg, double t) {
  QuadratureConfig c = cfg;
  c.abs_tol = 1e-9 * std::max(t, 1.0 / t);
  c.rel_tol = std::max(cfg.rel_tol, 1e-8);
  c.max_subdiv = std::max(cfg.max_subdiv, 4000);
  return c;
}

constexpr double kSlowWindow = 400.0;  // integration window Omega = 400 / t

}  // namespace

std::complex<double> slow_mode_sincos(double t, const QuadratureConfig& cfg) {
  if (!(t > 0.0)) throw std::invalid_argument("slow_mode_sincos: t must be > 0");
  const double omega_max = kSlowWindow / t;
  const double eps0 = pole_eps(t, omega_max, cfg);
  QuadratureConfig c = slow_cfg(cfg, t);
  auto h = [t](double w) {
    return std::sin(0.5 * w * t) * std::cos(0.5 * w * t) / (w * w);
  };
  quad::Result pv = quad::principal_value(h, -omega_max, omega_max, 0.0, eps0, c);
  const double principal = pv.value / (2.0 * std::numbers::pi);
  // Pole delta: 1/(w + i eps) = P(1/w) - i pi delta(w) against sin*cos/w,
  // whose w -> 0 limit is t/2.
  return {principal, -0.25 * t};
}

double slow_mode_sinsq(double t, const QuadratureConfig& cfg) {
  if (!(t > 0.0)) throw std::invalid_argument("slow_mode_sinsq: t must be > 0");
  const double omega_max = kSlowWindow / t;
  QuadratureConfig c = slow_cfg(cfg, t);
  // sin^2(wt/2)/w^2 = (1 - cos wt) / 2w^2: no pole survives, and the tail
  // beyond omega_max is appended analytically via integration by parts.
  quad::Result body = quad::one_minus_cos_integral(
      [](double w) { return 0.5 / (w * w); }, omega_max, t, c);
  const double th = omega_max * t;
  const double tail = 0.5 * (1.0 / omega_max + std::sin(th) / (t * omega_max * omega_max) -
                             2.0 * std::cos(th) / (t * t * omega_max * omega_max * omega_max));
  return (body.value + tail) / std::numbers::pi;
}

namespace {

// Slow-frequency double integral for the fourth cumulant,
//   S4 = \int dw2/2pi dw3/2pi [sin(w2 t/2)/(w2^2+ieps)] [sin(w3 t/2)/(w3^2+ieps)]
//        cos((w2+w3) t/2),
// with each 1/(w^2 + i eps sgn w) split into P[1/w^2] - i pi delta(w)/w.
// The double-principal-value block is nested excision quadrature; the
// delta cross terms reuse the 1-D principal value; delta-delta is analytic.
// Exact value for reference: -t^2/8.
std::complex<double> slow_mode_quartic(double t, const QuadratureConfig& cfg) {
  const double omega_max = kSlowWindow / t;
  const double eps0 = pole_eps(t, omega_max, cfg);
  QuadratureConfig outer_cfg = slow_cfg(cfg, t);
  QuadratureConfig inner_cfg = outer_cfg;
  inner_cfg.rel_tol = 1e-7;
  inner_cfg.abs_tol = 1e-7 * std::max(t, 1.0 / t);

  auto inner = [&](double w2) {
    auto h = [t, w2](double w3) {
      return std::sin(0.5 * w3 * t) * std::cos(0.5 * (w2 + w3) * t) / (w3 * w3);
    };
    return quad::principal_value(h, -omega_max, omega_max, 0.0, eps0, inner_cfg)
        .value;
  };
  auto outer_f = [&](double w2) {
    return std::sin(0.5 * w2 * t) / (w2 * w2) * inner(w2);
  };
  // The inner PV is odd in w2, so the outer integrand is regular at w2 = 0;
  // the excision + extrapolation is still used to avoid the 0/0 node.
  const double pp =
      quad::principal_value(outer_f, -omega_max, omega_max, 0.0, eps0, outer_cfg)
          .value /
      (4.0 * std::numbers::pi * std::numbers::pi);

  // Cross terms: delta in one variable pins it to zero with weight -i t/4,
  // leaving the 1-D principal value of sin cos / w^2 (zero by parity, kept
  // numeric).
  const std::complex<double> delta_w(0.0, -0.25 * t);
  const double pv_sc = slow_mode_sincos(t, cfg).real();
  return pp + 2.0 * delta_w * pv_sc + delta_w * delta_w;
}

}  // namespace

double cumulant_seminumeric(int n, double t, const ModelParams& params,
                            const QuadratureConfig& cfg) {
  require_even_order(n, 4);
  if (n > kMaxBruteforceOrder)
    throw std::invalid_argument("cumulant_seminumeric: order capped at " +
                                std::to_string(kMaxBruteforceOrder));
  params.validate();
  if (!(t * params.cutoff >= 10.0))
    throw std::invalid_argument(
        "cumulant_seminumeric: fast/slow separation invalid, t * cutoff < 10");

  // (i) frequency integral of the brute-force kernel over the two response
  // denominators of the fast pair: \int_0^cutoff dw1/2pi F_n(w1) / w1^4.
  QuadratureConfig wcfg = cfg;
  wcfg.rel_tol = std::max(cfg.rel_tol, 1e-9);
  quad::Result freq = quad::integrate_adaptive(
      [&](double w1) {
        return diagram_kernel_bruteforce(n, w1, wcfg) / std::pow(w1, 4);
      },
      0.0, params.cutoff, wcfg);
  if (!freq.converged)
    throw ConvergenceError("cumulant_seminumeric: frequency integral not converged",
                           freq.abs_err);
  const double freq_integral = freq.value / (2.0 * std::numbers::pi);

  // (ii) slow-frequency factor: numeric double integral at n = 4, analytic
  // -i^n t^(n-2) / 2^(n-1) beyond.
  std::complex<double> slow;
  if (n == 4) {
    slow = slow_mode_quartic(t, cfg);
  } else {
    const double sign = (n % 4 == 0) ? 1.0 : -1.0;  // i^n for even n
    slow = -sign * std::pow(t, n - 2) / std::pow(2.0, n - 1);
  }

  // (iii) combinatorial prefactor 2 * 2^n (2i)^n / m^n and the averaged
  // fast-variable factor -1/2.
  const std::complex<double> two_i(0.0, 2.0);
  const std::complex<double> prefactor =
      2.0 * std::pow(2.0, n) * std::pow(two_i, n) / std::pow(params.mass, n) *
      (-0.5);

  const std::complex<double> value = prefactor * freq_integral * slow;
  if (std::abs(value.imag()) > 1e-6 * std::abs(value.real()))
    throw ConvergenceError(
        "cumulant_seminumeric: nonvanishing imaginary part " +
            std::to_string(value.imag()),
        std::abs(value.imag()));
  return value.real();
}

// ---------------------------- Position distribution ------------------------

PositionDistribution::PositionDistribution(double lambda_tilde, double outer)
    : inner_(lambda_tilde), outer_(outer) {
  if (!(inner_ > 0.0) || !(outer_ > inner_))
    throw std::invalid_argument(
        "PositionDistribution: requires 0 < lambda_tilde < outer");
}

double PositionDistribution::pdf(double x) const {
  const double ax = std::abs(x);
  if (ax <= inner_ || ax >= outer_) return 0.0;
  return inner_ * inner_ / (ax * ax * ax);
}

double PositionDistribution::total_mass() const {
  const double r = inner_ / outer_;
  return 1.0 - r * r;
}

double PositionDistribution::abs_cdf(double x) const {
  if (x <= inner_) return 0.0;
  if (x >= outer_) return 1.0;
  const double r = inner_ / x;
  return (1.0 - r * r) / total_mass();
}

double PositionDistribution::cdf(double x) const {
  if (x >= 0.0) return 0.5 + 0.5 * abs_cdf(x);
  return 0.5 - 0.5 * abs_cdf(-x);
}

double PositionDistribution::moment(int n) const {
  if (n < 0) throw std::invalid_argument("moment: order must be >= 0");
  if (n % 2 != 0) return 0.0;  // even density
  const double lt2 = inner_ * inner_;
  if (n == 0) return total_mass();
  if (n == 2) return 2.0 * lt2 * std::log(outer_ / inner_);
  return 2.0 * lt2 * (std::pow(outer_, n - 2) - std::pow(inner_, n - 2)) /
         (n - 2);
}

std::vector<double> pdf_sample(const PositionDistribution& dist,
                               std::size_t count, std::uint64_t seed) {
  if (count == 0) throw std::invalid_argument("pdf_sample: count must be > 0");
  std::vector<double> out(count);
  // Sampler stream namespace: top bit set to stay clear of path streams.
  const std::uint64_t stream = 0x8000000000000000ull;
  simd::kernels().fill_powerlaw(seed, stream, 0, dist.inner(),
                                dist.total_mass(), out.data(), out.size());
  return out;
}

// ------------------------------ Cumulant series -----------------------------

void CumulantSeries::set(int order, double t, double value,
                         Provenance provenance) {
  require_even_order(order, 2);
  if (!(t > 0.0)) throw std::invalid_argument("CumulantSeries: t must be > 0");
  entries_[{order, t}] = Entry{value, provenance};
}

const CumulantSeries::Entry* CumulantSeries::find(int order, double t) const {
  auto it = entries_.find({order, t});
  return it == entries_.end() ? nullptr : &it->second;
}

std::vector<int> CumulantSeries::orders_at(double t) const {
  std::vector<int> orders;
  for (const auto& [key, entry] : entries_)
    if (key.second == t) orders.push_back(key.first);
  return orders;
}

std::vector<double> moments_from_cumulants(const std::vector<double>& cumulants) {
  const int nmax = static_cast<int>(cumulants.size());
  std::vector<double> moments(nmax, 0.0);
  std::vector<double> m_with_0(nmax + 1, 0.0);
  m_with_0[0] = 1.0;
  for (int n = 1; n <= nmax; ++n) {
    double binom = 1.0;  // C(n-1, j-1), updated multiplicatively
    double sum = 0.0;
    for (int j = 1; j <= n; ++j) {
      sum += binom * cumulants[j - 1] * m_with_0[n - j];
      binom *= static_cast<double>(n - j) / j;
    }
    m_with_0[n] = sum;
    moments[n - 1] = sum;
  }
  return moments;
}

PawulaReport pawula_check_moments(const std::vector<double>& moments) {
  PawulaReport report{true, 0.0, 0, 0, {}};
  const int nmax = static_cast<int>(moments.size());
  // M_0 = 1; the Schwarz derivation needs X^(n/2) real, so n is even.
  auto m = [&](int order) { return order == 0 ? 1.0 : moments[order - 1]; };
  for (int n = 0; n <= nmax; n += 2) {
    for (int mm = 1; n + 2 * mm <= nmax; ++mm) {
      const double lhs = m(n + mm) * m(n + mm);
      const double rhs = m(n) * m(n + 2 * mm);
      if (!(lhs <= rhs * (1.0 + 1e-12))) {
        report.ok = false;
        report.violations.push_back("M_" + std::to_string(n + mm) +
                                    "^2 > M_" + std::to_string(n) + " M_" +
                                    std::to_string(n + 2 * mm));
      }
      if (rhs > 0.0 && lhs / rhs > report.tightest_ratio) {
        report.tightest_ratio = lhs / rhs;
        report.n_at = n;
        report.m_at = mm;
      }
    }
  }
  return report;
}

PawulaReport pawula_check(const CumulantSeries& series, double t) {
  std::vector<int> orders = series.orders_at(t);
  if (orders.empty())
    throw std::invalid_argument("pawula_check: no cumulants stored at t");
  const int nmax = *std::max_element(orders.begin(), orders.end());
  std::vector<double> cumulants(nmax, 0.0);
  std::string missing;
  for (int n = 2; n <= nmax; n += 2) {
    const auto* e = series.find(n, t);
    if (!e) {
      missing += (missing.empty() ? "" : ", ") + std::to_string(n);
      continue;
    }
    cumulants[n - 1] = e->value;
  }
  if (!missing.empty())
    throw std::invalid_argument("pawula_check: missing even orders " + missing);
  return pawula_check_moments(moments_from_cumulants(cumulants));
}

// --------------------------- Chapman–Kolmogorov ----------------------------

namespace {

// \int P1(x - y) P2(y) dy restricted to the overlap of the two supports.
double convolve_at(const PositionDistribution& p1, const PositionDistribution& p2,
                   double x, const QuadratureConfig& cfg) {
  double total = 0.0;
  // Support of P2 in y, and of P1 in x - y, each a symmetric pair of bands.
  const double in2 = p2.inner(), out2 = p2.outer();
  const double in1 = p1.inner(), out1 = p1.outer();
  const double y_bands[2][2] = {{-out2, -in2}, {in2, out2}};
  const double d_bands[2][2] = {{x - out1, x - in1}, {x + in1, x + out1}};
  for (const auto& yb : y_bands) {
    for (const auto& db : d_bands) {
      const double lo = std::max(yb[0], db[0]);
      const double hi = std::min(yb[1], db[1]);
      if (hi <= lo) continue;
      quad::Result r = quad::integrate_adaptive(
          [&](double y) { return p1.pdf(x - y) * p2.pdf(y); }, lo, hi, cfg);
      total += r.value;
    }
  }
  return total;
}

}  // namespace

double ck_residual(double t1, double t2, const DerivedScales& scales,
                   const QuadratureConfig& cfg) {
  const double lt = scales.lambda_tilde;
  if (!(t1 > lt / scales.v) || !(t2 > lt / scales.v))
    throw std::invalid_argument(
        "ck_residual: both times must exceed lambda_tilde / v");
  PositionDistribution p1(lt, scales.v * t1);
  PositionDistribution p2(lt, scales.v * t2);
  PositionDistribution p12(lt, scales.v * (t1 + t2));

  // The convolution and the direct density are both even; scan x >= 0 with
  // extra resolution around the density peak at |x| = lambda_tilde.
  const double x_max = p12.outer() * 1.05;
  std::vector<double> xs;
  for (int i = 0; i <= 40; ++i)
    xs.push_back(lt * (1.0 + 0.1 * i));  // dense across the peak region
  for (int i = 1; i <= 160; ++i)
    xs.push_back(5.0 * lt + (x_max - 5.0 * lt) * i / 160.0);
  double residual = 0.0;
  for (double x : xs) {
    const double conv = convolve_at(p1, p2, x, cfg);
    residual = std::max(residual, std::abs(conv - p12.pdf(x)));
  }
  return residual;
}

}  // namespace qbm::quadratic_bath
