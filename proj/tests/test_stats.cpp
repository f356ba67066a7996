#include "doctest.h"

#include <cmath>
#include <vector>

#include "qbm/simd/kernels.hpp"
#include "qbm/simd/philox.hpp"
#include "qbm/stats.hpp"

using namespace qbm;

TEST_CASE("k-statistics: tiny hand-computed sample") {
  // x = {1, 2, 4}: mean 7/3, unbiased variance 7/3, k3 from the closed form.
  const std::vector<double> x = {1.0, 2.0, 4.0};
  const auto s = stats::power_sums(x);
  CHECK(s.s1 == doctest::Approx(7.0));
  CHECK(s.s2 == doctest::Approx(21.0));
  CHECK(stats::k_statistic(s, 1) == doctest::Approx(7.0 / 3.0).epsilon(1e-14));
  CHECK(stats::k_statistic(s, 2) == doctest::Approx(7.0 / 3.0).epsilon(1e-14));
  // k3 = (2 S1^3 - 3 n S1 S2 + n^2 S3) / (n(n-1)(n-2)) with S3 = 73.
  CHECK(stats::k_statistic(s, 3) ==
        doctest::Approx((2.0 * 343.0 - 9.0 * 7.0 * 21.0 + 9.0 * 73.0) / 6.0)
            .epsilon(1e-14));
}

TEST_CASE("k-statistics: unbiased on Gaussian data, k3 and k4 consistent with 0") {
  constexpr std::size_t n = 200000;
  std::vector<double> x(n);
  simd::kernels().fill_normals(77, 1, 0, x.data(), n);
  for (auto& v : x) v = 2.0 * v + 5.0;  // variance 4, mean 5

  const auto k2 = stats::k_statistic_jackknife(x, 2);
  const auto k3 = stats::k_statistic_jackknife(x, 3);
  const auto k4 = stats::k_statistic_jackknife(x, 4);
  CHECK(std::abs(k2.value - 4.0) < 3.0 * k2.error);
  CHECK(std::abs(k3.value) < 3.0 * k3.error);
  CHECK(std::abs(k4.value) < 3.0 * k4.error);
  // Jackknife error magnitudes match the classic large-n formulas.
  CHECK(k2.error == doctest::Approx(std::sqrt(2.0 / n) * 4.0).epsilon(0.1));
  CHECK(k4.error == doctest::Approx(std::sqrt(24.0 / n) * 16.0).epsilon(0.1));
}

TEST_CASE("k-statistics: k4 detects non-Gaussian data") {
  // Uniform on [-1,1]: k2 = 1/3, k4 = -2/15 (excess kurtosis -6/5 * k2^2).
  constexpr std::size_t n = 100000;
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i)
    x[i] = 2.0 * simd::uniform_from_bits(simd::philox_u64(3, 0, i)) - 1.0;
  const auto k4 = stats::k_statistic_jackknife(x, 4);
  CHECK(std::abs(k4.value - (-2.0 / 15.0)) < 3.0 * k4.error);
}

TEST_CASE("fit helpers recover exact slopes") {
  std::vector<double> t = {1.0, 2.0, 4.0, 8.0, 16.0};
  std::vector<double> y(t.size()), p(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    y[i] = 3.0 * std::log(t[i]) + 0.5;  // log growth, slope 3
    p[i] = 2.5 * std::pow(t[i], 1.7);   // power law, exponent 1.7
  }
  CHECK(stats::fit_log_slope(t, y) == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(stats::fit_loglog_slope(t, p) == doctest::Approx(1.7).epsilon(1e-12));
}

TEST_CASE("ks_statistic: uniform sample against uniform CDF") {
  constexpr std::size_t n = 100000;
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i)
    x[i] = simd::uniform_from_bits(simd::philox_u64(8, 4, i));
  const double d =
      stats::ks_statistic(x, [](double v) { return std::clamp(v, 0.0, 1.0); });
  CHECK(d < 1.95 / std::sqrt(static_cast<double>(n)));
  // Shifted CDF must be flagged.
  const double d2 = stats::ks_statistic(
      x, [](double v) { return std::clamp(v * v, 0.0, 1.0); });
  CHECK(d2 > 0.1);
}
