// pack_avx2.hpp — 4-lane AVX2/FMA pack. Operation-for-operation mirror of
// PackScalar; only translation unit(s) compiled with -mavx2 -mfma may
// include this header.

#pragma once

#include <immintrin.h>

#include <cstdint>

namespace qbm::simd::detail {

struct PackAvx2 {
  static constexpr int width = 4;
  using F = __m256d;
  using U = __m256i;
  using M = __m256d;  // comparison result, all-ones lanes where true

  static F set1(double x) { return _mm256_set1_pd(x); }
  static U set1u(std::uint64_t x) {
    return _mm256_set1_epi64x(static_cast<long long>(x));
  }
  static U iota_u64(std::uint64_t base) {
    return _mm256_set_epi64x(static_cast<long long>(base + 3),
                             static_cast<long long>(base + 2),
                             static_cast<long long>(base + 1),
                             static_cast<long long>(base));
  }

  static F add(F a, F b) { return _mm256_add_pd(a, b); }
  static F sub(F a, F b) { return _mm256_sub_pd(a, b); }
  static F mul(F a, F b) { return _mm256_mul_pd(a, b); }
  static F div(F a, F b) { return _mm256_div_pd(a, b); }
  static F sqrt_(F a) { return _mm256_sqrt_pd(a); }
  static F fma_(F a, F b, F c) { return _mm256_fmadd_pd(a, b, c); }
  static F neg(F a) { return _mm256_xor_pd(a, _mm256_set1_pd(-0.0)); }

  static M gt(F a, F b) { return _mm256_cmp_pd(a, b, _CMP_GT_OQ); }
  static M le(F a, F b) { return _mm256_cmp_pd(a, b, _CMP_LE_OQ); }
  static F sel(M m, F a, F b) { return _mm256_blendv_pd(b, a, m); }

  static U and_(U a, U b) { return _mm256_and_si256(a, b); }
  static U or_(U a, U b) { return _mm256_or_si256(a, b); }
  static U xor_(U a, U b) { return _mm256_xor_si256(a, b); }
  static U add64(U a, U b) { return _mm256_add_epi64(a, b); }
  static U shr(U a, int s) { return _mm256_srli_epi64(a, s); }
  static U shl(U a, int s) { return _mm256_slli_epi64(a, s); }
  static U mul_lo32(U a, U b) { return _mm256_mul_epu32(a, b); }

  // Exact for values below 2^52: splice the integer into the mantissa of
  // 2^52 and subtract the bias.
  static F u52_to_f64(U a) {
    const U bias = set1u(0x4330000000000000ull);  // 2^52
    const F biased = _mm256_castsi256_pd(_mm256_or_si256(a, bias));
    return _mm256_sub_pd(biased, _mm256_set1_pd(4503599627370496.0));
  }
  static U f64_bits(F a) { return _mm256_castpd_si256(a); }
  static F bits_f64(U a) { return _mm256_castsi256_pd(a); }

  static void store(double* p, F v) { _mm256_storeu_pd(p, v); }
  static F load(const double* p) { return _mm256_loadu_pd(p); }
};

}  // namespace qbm::simd::detail
