#include "doctest.h"

#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

#include "qbm/simd/kernels.hpp"
#include "qbm/simd/philox.hpp"

using namespace qbm;

TEST_CASE("philox4x32-10 known-answer vectors") {
  // Reference vectors from the published Philox test suite.
  auto zero = simd::philox4x32({0, 0, 0, 0}, {0, 0});
  CHECK(zero[0] == 0x6627e8d5u);
  CHECK(zero[1] == 0xe169c58du);
  CHECK(zero[2] == 0xbc57ac4cu);
  CHECK(zero[3] == 0x9b00dbd8u);

  auto ones = simd::philox4x32({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
                               {0xffffffffu, 0xffffffffu});
  CHECK(ones[0] == 0x408f276du);
  CHECK(ones[1] == 0x41c83b0eu);
  CHECK(ones[2] == 0xa20bc7c6u);
  CHECK(ones[3] == 0x6d5451fdu);

  auto pi = simd::philox4x32({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
                             {0xa4093822u, 0x299f31d0u});
  CHECK(pi[0] == 0xd16cfe09u);
  CHECK(pi[1] == 0x94fdccebu);
  CHECK(pi[2] == 0x5001e420u);
  CHECK(pi[3] == 0x24126ea1u);
}

TEST_CASE("uniform_from_bits stays strictly inside (0,1)") {
  CHECK(simd::uniform_from_bits(0) > 0.0);
  CHECK(simd::uniform_from_bits(~0ull) < 1.0);
  CHECK(simd::uniform_from_bits(1ull << 63) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("inverse normal CDF: round-trip against erfc-based Phi") {
  // Independent oracle: Phi(z) = erfc(-z/sqrt(2))/2 from libm.
  auto phi = [](double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); };
  std::uint64_t r = 0x9e3779b97f4a7c15ull;
  double max_err = 0.0;
  for (int i = 0; i < 20000; ++i) {
    r = r * 6364136223846793005ull + 1442695040888963407ull;
    const double u = simd::uniform_from_bits(r);
    const double z = simd::normal_from_bits(r);
    max_err = std::max(max_err, std::abs(phi(z) - u));
  }
  // Acklam's approximation is good to ~8.4e-9 in the quantile; in CDF units
  // (error * density) that stays below ~4e-9.
  CHECK(max_err < 2e-8);

  // Extreme tails must stay finite and monotone.
  const double lo = simd::normal_from_bits(0);
  const double hi = simd::normal_from_bits(~0ull);
  CHECK(std::isfinite(lo));
  CHECK(std::isfinite(hi));
  CHECK(lo < -8.0);
  CHECK(hi > 8.0);
}

TEST_CASE("kernel variants are bit-identical" *
          doctest::skip(!simd::isa_supported(simd::Isa::avx2))) {
  const auto& scalar = simd::kernels_for(simd::Isa::scalar);
  const auto& avx2 = simd::kernels_for(simd::Isa::avx2);
  constexpr std::size_t n = 1003;  // deliberately not a multiple of 4

  SUBCASE("fill_normals") {
    std::vector<double> a(n), b(n);
    scalar.fill_normals(0x12345678u, 42, 17, a.data(), n);
    avx2.fill_normals(0x12345678u, 42, 17, b.data(), n);
    for (std::size_t i = 0; i < n; ++i) REQUIRE(a[i] == b[i]);
  }

  SUBCASE("fill_powerlaw") {
    std::vector<double> a(n), b(n);
    scalar.fill_powerlaw(99, 0x8000000000000000ull, 5, 1.0, 0.99, a.data(), n);
    avx2.fill_powerlaw(99, 0x8000000000000000ull, 5, 1.0, 0.99, b.data(), n);
    for (std::size_t i = 0; i < n; ++i) REQUIRE(a[i] == b[i]);
  }

  SUBCASE("run_paths") {
    const std::size_t paths = 11, recs = 6;
    std::vector<double> a(paths * recs), b(paths * recs);
    scalar.run_paths(7, 3, paths, 25, 5, 0.1, a.data(), recs);
    avx2.run_paths(7, 3, paths, 25, 5, 0.1, b.data(), recs);
    for (std::size_t i = 0; i < a.size(); ++i) REQUIRE(a[i] == b[i]);
  }

  SUBCASE("power_sums") {
    std::vector<double> x(n);
    scalar.fill_normals(1, 2, 0, x.data(), n);
    double sa[4], sb[4];
    scalar.power_sums(x.data(), n, sa);
    avx2.power_sums(x.data(), n, sb);
    for (int r = 0; r < 4; ++r) REQUIRE(sa[r] == sb[r]);
  }
}

TEST_CASE("counter-based streams: partition invariance of fill_normals") {
  const auto& k = simd::kernels();
  constexpr std::size_t n = 257;
  std::vector<double> whole(n), parts(n);
  k.fill_normals(5, 9, 0, whole.data(), n);
  k.fill_normals(5, 9, 0, parts.data(), 100);
  k.fill_normals(5, 9, 100, parts.data() + 100, 57);
  k.fill_normals(5, 9, 157, parts.data() + 157, 100);
  for (std::size_t i = 0; i < n; ++i) REQUIRE(whole[i] == parts[i]);
}

TEST_CASE("run_paths: recorded grid matches per-step reconstruction") {
  const auto& k = simd::kernels();
  const std::size_t recs = 5;
  std::vector<double> rec(2 * recs);
  k.run_paths(11, 0, 2, 8, 2, 0.5, rec.data(), recs);
  for (std::uint64_t path = 0; path < 2; ++path) {
    double x = 0.0;
    CHECK(rec[path * recs] == 0.0);
    for (int s = 0; s < 8; ++s) {
      x += 0.5 * simd::normal_from_bits(simd::philox_u64(11, path, s));
      if ((s + 1) % 2 == 0) CHECK(rec[path * recs + (s + 1) / 2] == x);
    }
  }
}

TEST_CASE("normal moments over a large batch") {
  const auto& k = simd::kernels();
  constexpr std::size_t n = 1 << 20;
  std::vector<double> x(n);
  k.fill_normals(2024, 0, 0, x.data(), n);
  double s[4];
  k.power_sums(x.data(), n, s);
  const double mean = s[0] / n;
  const double var = s[1] / n - mean * mean;
  const double kurt = s[3] / n;
  CHECK(std::abs(mean) < 4.0 / std::sqrt(static_cast<double>(n)));
  CHECK(var == doctest::Approx(1.0).epsilon(0.01));
  CHECK(kurt == doctest::Approx(3.0).epsilon(0.03));
}
