#include "qbm/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qbm/simd/kernels.hpp"

namespace qbm::stats {

PowerSums power_sums(std::span<const double> x) {
  double out[4];
  simd::kernels().power_sums(x.data(), x.size(), out);
  return PowerSums{out[0], out[1], out[2], out[3], x.size()};
}

double k_statistic(const PowerSums& s, int order) {
  const double n = static_cast<double>(s.n);
  switch (order) {
    case 1:
      if (s.n < 1) throw std::invalid_argument("k_statistic: empty sample");
      return s.s1 / n;
    case 2: {
      if (s.n < 2) throw std::invalid_argument("k_statistic: need n >= 2");
      return (n * s.s2 - s.s1 * s.s1) / (n * (n - 1));
    }
    case 3: {
      if (s.n < 3) throw std::invalid_argument("k_statistic: need n >= 3");
      return (2.0 * s.s1 * s.s1 * s.s1 - 3.0 * n * s.s1 * s.s2 +
              n * n * s.s3) /
             (n * (n - 1) * (n - 2));
    }
    case 4: {
      if (s.n < 4) throw std::invalid_argument("k_statistic: need n >= 4");
      const double s1 = s.s1, s2 = s.s2, s3 = s.s3, s4 = s.s4;
      return (-6.0 * s1 * s1 * s1 * s1 + 12.0 * n * s1 * s1 * s2 -
              3.0 * n * (n - 1) * s2 * s2 - 4.0 * n * (n + 1) * s1 * s3 +
              n * n * (n + 1) * s4) /
             (n * (n - 1) * (n - 2) * (n - 3));
    }
    default:
      throw std::invalid_argument("k_statistic: order must be 1..4");
  }
}

Estimate k_statistic_jackknife(std::span<const double> x, int order) {
  if (order < 1 || order > 4)
    throw std::invalid_argument("k_statistic_jackknife: order must be 1..4");
  if (x.size() < static_cast<std::size_t>(order + 1))
    throw std::invalid_argument(
        "k_statistic_jackknife: sample too small for requested order");
  const PowerSums full = power_sums(x);
  const double theta = k_statistic(full, order);

  const std::size_t n = x.size();
  double mean_loo = 0.0;
  std::vector<double> loo(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double v = x[i];
    const double v2 = v * v;
    PowerSums s = full;
    s.s1 -= v;
    s.s2 -= v2;
    s.s3 -= v2 * v;
    s.s4 -= v2 * v2;
    s.n = n - 1;
    loo[i] = k_statistic(s, order);
    mean_loo += loo[i];
  }
  mean_loo /= static_cast<double>(n);
  double ss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = loo[i] - mean_loo;
    ss += d * d;
  }
  const double var = (static_cast<double>(n) - 1.0) / static_cast<double>(n) * ss;
  return Estimate{theta, std::sqrt(var)};
}

namespace {

double slope_of(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("fit: need matching spans of size >= 2");
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("fit: degenerate abscissae");
  return sxy / sxx;
}

}  // namespace

double fit_slope(std::span<const double> x, std::span<const double> y) {
  return slope_of(x, y);
}

double fit_log_slope(std::span<const double> x, std::span<const double> y) {
  std::vector<double> lx(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0)) throw std::invalid_argument("fit_log_slope: x must be > 0");
    lx[i] = std::log(x[i]);
  }
  return slope_of(lx, y);
}

double fit_loglog_slope(std::span<const double> x, std::span<const double> y) {
  std::vector<double> lx(x.size()), ly(y.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0))
      throw std::invalid_argument("fit_loglog_slope: data must be > 0");
    lx[i] = std::log(x[i]);
    ly[i] = std::log(y[i]);
  }
  return slope_of(lx, ly);
}

double ks_statistic(std::vector<double> sample,
                    const std::function<double(double)>& cdf) {
  if (sample.empty()) throw std::invalid_argument("ks_statistic: empty sample");
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double f = cdf(sample[i]);
    const double lo = static_cast<double>(i) / n;
    const double hi = static_cast<double>(i + 1) / n;
    d = std::max(d, std::max(std::abs(f - lo), std::abs(hi - f)));
  }
  return d;
}

}  // namespace qbm::stats
