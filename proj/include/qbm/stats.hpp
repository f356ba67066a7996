// stats.hpp — unbiased cumulant estimators (k-statistics) with jackknife
// errors, least-squares slope fits, and the Kolmogorov–Smirnov statistic.

#pragma once

#include <functional>
#include <span>
#include <vector>

namespace qbm::stats {

struct Estimate {
  double value;
  double error;  // jackknife standard error
};

// Power sums S_1..S_4 of the sample (delegates to the SIMD kernels).
struct PowerSums {
  double s1, s2, s3, s4;
  std::size_t n;
};
PowerSums power_sums(std::span<const double> x);

// Unbiased k-statistic of the given order (1..4) from power sums.
double k_statistic(const PowerSums& s, int order);

// k-statistic with a leave-one-out jackknife error bar. Throws if the sample
// is too small for the requested order.
Estimate k_statistic_jackknife(std::span<const double> x, int order);

// Least-squares slope of y against x.
double fit_slope(std::span<const double> x, std::span<const double> y);

// Slope of y against ln x (log growth rate) and of ln y against ln x
// (power-law exponent; requires positive y).
double fit_log_slope(std::span<const double> x, std::span<const double> y);
double fit_loglog_slope(std::span<const double> x, std::span<const double> y);

// Two-sided KS statistic between a sample and a continuous CDF.
double ks_statistic(std::vector<double> sample,
                    const std::function<double(double)>& cdf);

}  // namespace qbm::stats
