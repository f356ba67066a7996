// kernels_body.hpp — kernel bodies shared by every pack instantiation.
// All floating-point arithmetic is written as explicit single IEEE
// operations (fma spelled out, no compound expressions the compiler could
// re-associate), which is what makes scalar and AVX2 outputs bit-identical.
// Kernel translation units are compiled with -ffp-contract=off.

#pragma once

#include <cstddef>
#include <cstdint>

#include "pack_scalar.hpp"

namespace qbm::simd::detail {

inline constexpr std::uint64_t kPhiloxM0 = 0xD2511F53ull;
inline constexpr std::uint64_t kPhiloxM1 = 0xCD9E8D57ull;
inline constexpr std::uint64_t kPhiloxW0 = 0x9E3779B9ull;
inline constexpr std::uint64_t kPhiloxW1 = 0xBB67AE85ull;
inline constexpr std::uint64_t kLo32 = 0xffffffffull;

// Philox4x32-10 on `P::width` independent blocks. Counter/key words are u32
// values carried in 64-bit lanes (high halves stay zero throughout).
template <class P>
struct PhiloxBlock {
  typename P::U x0, x1, x2, x3;
};

template <class P>
PhiloxBlock<P> philox4x32(typename P::U c0, typename P::U c1, typename P::U c2,
                          typename P::U c3, std::uint64_t seed) {
  using U = typename P::U;
  const U m0 = P::set1u(kPhiloxM0);
  const U m1 = P::set1u(kPhiloxM1);
  const U w0 = P::set1u(kPhiloxW0);
  const U w1 = P::set1u(kPhiloxW1);
  const U lo32 = P::set1u(kLo32);
  U k0 = P::set1u(seed & kLo32);
  U k1 = P::set1u(seed >> 32);
  for (int round = 0; round < 10; ++round) {
    const U p0 = P::mul_lo32(m0, c0);
    const U p1 = P::mul_lo32(m1, c2);
    const U hi0 = P::shr(p0, 32);
    const U lo0 = P::and_(p0, lo32);
    const U hi1 = P::shr(p1, 32);
    const U lo1 = P::and_(p1, lo32);
    const U n0 = P::xor_(P::xor_(hi1, c1), k0);
    const U n2 = P::xor_(P::xor_(hi0, c3), k1);
    c0 = n0;
    c1 = lo1;
    c2 = n2;
    c3 = lo0;
    k0 = P::and_(P::add64(k0, w0), lo32);
    k1 = P::and_(P::add64(k1, w1), lo32);
  }
  return {c0, c1, c2, c3};
}

template <class P>
PhiloxBlock<P> philox_at(std::uint64_t seed, typename P::U index,
                         std::uint64_t stream) {
  using U = typename P::U;
  const U lo32 = P::set1u(kLo32);
  const U c0 = P::and_(index, lo32);
  const U c1 = P::shr(index, 32);
  const U c2 = P::set1u(stream & kLo32);
  const U c3 = P::set1u(stream >> 32);
  return philox4x32<P>(c0, c1, c2, c3, seed);
}

template <class P>
typename P::U u64_from_block(const PhiloxBlock<P>& b) {
  return P::or_(b.x0, P::shl(b.x1, 32));
}

// Uniform in (0, 1): top 52 bits, offset by half an ulp of 2^-52.
template <class P>
typename P::F uniform01(typename P::U r) {
  const typename P::F t = P::u52_to_f64(P::shr(r, 12));
  return P::mul(P::add(t, P::set1(0.5)), P::set1(0x1p-52));
}

// Natural log for positive normal doubles. Mantissa reduced to
// [sqrt(1/2), sqrt(2)), then atanh series in s = (m-1)/(m+1) through s^19.
// Good to a few 1e-16 relative on the mantissa part; plenty for the tail
// branch of the inverse normal CDF below (itself a 1e-9 approximation).
template <class P>
typename P::F log_(typename P::F x) {
  using F = typename P::F;
  using U = typename P::U;
  const U bits = P::f64_bits(x);
  const F e_raw = P::u52_to_f64(P::shr(bits, 52));
  const U mant_bits =
      P::or_(P::and_(bits, P::set1u(0x000fffffffffffffull)),
             P::set1u(0x3ff0000000000000ull));
  F m = P::bits_f64(mant_bits);  // in [1, 2)
  F e = P::sub(e_raw, P::set1(1023.0));
  const auto above = P::gt(m, P::set1(1.4142135623730951));
  m = P::sel(above, P::mul(m, P::set1(0.5)), m);
  e = P::sel(above, P::add(e, P::set1(1.0)), e);

  const F s = P::div(P::sub(m, P::set1(1.0)), P::add(m, P::set1(1.0)));
  const F z = P::mul(s, s);
  F q = P::set1(1.0 / 19.0);
  q = P::fma_(q, z, P::set1(1.0 / 17.0));
  q = P::fma_(q, z, P::set1(1.0 / 15.0));
  q = P::fma_(q, z, P::set1(1.0 / 13.0));
  q = P::fma_(q, z, P::set1(1.0 / 11.0));
  q = P::fma_(q, z, P::set1(1.0 / 9.0));
  q = P::fma_(q, z, P::set1(1.0 / 7.0));
  q = P::fma_(q, z, P::set1(1.0 / 5.0));
  q = P::fma_(q, z, P::set1(1.0 / 3.0));
  const F s2 = P::add(s, s);
  const F lnm = P::fma_(P::mul(s2, z), q, s2);
  return P::fma_(e, P::set1(0.6931471805599453), lnm);
}

// Inverse standard normal CDF, Acklam's rational approximation. Branchless:
// both the central and tail branches are evaluated and blended.
template <class P>
typename P::F inv_normal_cdf(typename P::F u) {
  using F = typename P::F;
  const F q = P::sub(u, P::set1(0.5));

  // Central region |u - 1/2| <= 0.47575.
  const F r = P::mul(q, q);
  F num = P::set1(-3.969683028665376e+01);
  num = P::fma_(num, r, P::set1(2.209460984245205e+02));
  num = P::fma_(num, r, P::set1(-2.759285104469687e+02));
  num = P::fma_(num, r, P::set1(1.383577518672690e+02));
  num = P::fma_(num, r, P::set1(-3.066479806614716e+01));
  num = P::fma_(num, r, P::set1(2.506628277459239e+00));
  F den = P::set1(-5.447609879822406e+01);
  den = P::fma_(den, r, P::set1(1.615858368580409e+02));
  den = P::fma_(den, r, P::set1(-1.556989798598866e+02));
  den = P::fma_(den, r, P::set1(6.680131188771972e+01));
  den = P::fma_(den, r, P::set1(-1.328068155288572e+01));
  den = P::fma_(den, r, P::set1(1.0));
  const F central = P::div(P::mul(num, q), den);

  // Tail region: p_min = min(u, 1-u) < 0.02425.
  const auto upper = P::gt(u, P::set1(0.5));
  const F pmin = P::sel(upper, P::sub(P::set1(1.0), u), u);
  const F t = P::sqrt_(P::mul(P::set1(-2.0), log_<P>(pmin)));
  F tn = P::set1(-7.784894002430293e-03);
  tn = P::fma_(tn, t, P::set1(-3.223964580411365e-01));
  tn = P::fma_(tn, t, P::set1(-2.400758277161838e+00));
  tn = P::fma_(tn, t, P::set1(-2.549732539343734e+00));
  tn = P::fma_(tn, t, P::set1(4.374664141464968e+00));
  tn = P::fma_(tn, t, P::set1(2.938163982698783e+00));
  F td = P::set1(7.784695709041462e-03);
  td = P::fma_(td, t, P::set1(3.224671290700398e-01));
  td = P::fma_(td, t, P::set1(2.445134137142996e+00));
  td = P::fma_(td, t, P::set1(3.754408661907416e+00));
  td = P::fma_(td, t, P::set1(1.0));
  const F tail_lo = P::div(tn, td);  // negative: value for p = pmin
  const F tail = P::sel(upper, P::neg(tail_lo), tail_lo);

  const F absq = P::sel(P::gt(q, P::set1(0.0)), q, P::neg(q));
  return P::sel(P::le(absq, P::set1(0.47575)), central, tail);
}

template <class P>
typename P::F normal_at(std::uint64_t seed, typename P::U index,
                        std::uint64_t stream) {
  const PhiloxBlock<P> b = philox_at<P>(seed, index, stream);
  return inv_normal_cdf<P>(uniform01<P>(u64_from_block<P>(b)));
}

// ------------------------------- kernels -----------------------------------

template <class P>
void fill_normals_body(std::uint64_t seed, std::uint64_t stream,
                       std::uint64_t idx0, double* out, std::size_t n) {
  constexpr std::size_t w = P::width;
  std::size_t i = 0;
  for (; i + w <= n; i += w) {
    const typename P::F z = normal_at<P>(seed, P::iota_u64(idx0 + i), stream);
    P::store(out + i, z);
  }
  for (; i < n; ++i) {
    const PackScalar::F z =
        normal_at<PackScalar>(seed, PackScalar::iota_u64(idx0 + i), stream);
    out[i] = z;
  }
}

template <class P>
void fill_powerlaw_body(std::uint64_t seed, std::uint64_t stream,
                        std::uint64_t idx0, double inner, double mass,
                        double* out, std::size_t n) {
  constexpr std::size_t w = P::width;
  auto draw = [&](auto pack_tag, std::uint64_t idx) {
    using Q = decltype(pack_tag);
    const PhiloxBlock<Q> b = philox_at<Q>(seed, Q::iota_u64(idx), stream);
    const typename Q::F u = uniform01<Q>(u64_from_block<Q>(b));
    const typename Q::F arg = Q::fma_(u, Q::set1(-mass), Q::set1(1.0));
    const typename Q::F mag = Q::div(Q::set1(inner), Q::sqrt_(arg));
    // Sign from bit 31 of the third output word, moved to the f64 sign bit.
    const typename Q::U sign =
        Q::shl(Q::and_(Q::shr(b.x2, 31), Q::set1u(1)), 63);
    return Q::bits_f64(Q::xor_(Q::f64_bits(mag), sign));
  };
  std::size_t i = 0;
  for (; i + w <= n; i += w) P::store(out + i, draw(P{}, idx0 + i));
  for (; i < n; ++i) out[i] = draw(PackScalar{}, idx0 + i);
}

template <class P>
void run_paths_body(std::uint64_t seed, std::uint64_t path0,
                    std::size_t n_paths, std::int64_t n_steps,
                    std::int64_t record_stride, double coeff, double* out,
                    std::size_t out_stride) {
  constexpr std::size_t w = P::width;
  auto run_group = [&](auto pack_tag, std::uint64_t first_path,
                       std::size_t lanes) {
    using Q = decltype(pack_tag);
    double buf[Q::width];
    typename Q::F x = Q::set1(0.0);
    const typename Q::F c = Q::set1(coeff);
    // t = 0 record.
    Q::store(buf, x);
    for (std::size_t l = 0; l < lanes; ++l)
      out[(first_path - path0 + l) * out_stride] = buf[l];
    // Lanes advance distinct paths (streams); steps share the counter index.
    std::int64_t rec = 1;
    for (std::int64_t s = 0; s < n_steps; ++s) {
      // Every lane draws from its own stream = absolute path id.
      typename Q::F z;
      if constexpr (Q::width == 1) {
        z = normal_at<Q>(seed, Q::iota_u64(static_cast<std::uint64_t>(s)),
                         first_path);
      } else {
        // Streams differ per lane; counters are equal. Build the block with
        // per-lane stream words instead of broadcast ones.
        const typename Q::U idx =
            Q::set1u(static_cast<std::uint64_t>(s) & kLo32);
        const typename Q::U idx_hi =
            Q::set1u(static_cast<std::uint64_t>(s) >> 32);
        const typename Q::U paths = Q::iota_u64(first_path);
        const typename Q::U c2 = Q::and_(paths, Q::set1u(kLo32));
        const typename Q::U c3 = Q::shr(paths, 32);
        const PhiloxBlock<Q> b = philox4x32<Q>(idx, idx_hi, c2, c3, seed);
        z = inv_normal_cdf<Q>(uniform01<Q>(u64_from_block<Q>(b)));
      }
      x = Q::fma_(c, z, x);
      if ((s + 1) % record_stride == 0) {
        Q::store(buf, x);
        for (std::size_t l = 0; l < lanes; ++l)
          out[(first_path - path0 + l) * out_stride + rec] = buf[l];
        ++rec;
      }
    }
  };
  std::uint64_t p = path0;
  for (; p + w <= path0 + n_paths; p += w) run_group(P{}, p, w);
  for (; p < path0 + n_paths; ++p) run_group(PackScalar{}, p, 1);
}

template <class P>
void power_sums_body(const double* x, std::size_t n, double out[4]) {
  // Four interleaved partial accumulators per power; lane j collects the
  // elements with index % 4 == j regardless of pack width.
  double a1[4] = {0, 0, 0, 0}, a2[4] = {0, 0, 0, 0}, a3[4] = {0, 0, 0, 0},
         a4[4] = {0, 0, 0, 0};
  std::size_t i = 0;
  if constexpr (P::width == 4) {
    typename P::F s1 = P::set1(0.0), s2 = P::set1(0.0), s3 = P::set1(0.0),
                  s4 = P::set1(0.0);
    for (; i + 4 <= n; i += 4) {
      const typename P::F v = P::load(x + i);
      const typename P::F v2 = P::mul(v, v);
      s1 = P::add(s1, v);
      s2 = P::add(s2, v2);
      s3 = P::add(s3, P::mul(v2, v));
      s4 = P::add(s4, P::mul(v2, v2));
    }
    P::store(a1, s1);
    P::store(a2, s2);
    P::store(a3, s3);
    P::store(a4, s4);
  } else {
    for (; i + 4 <= n; i += 4) {
      for (int l = 0; l < 4; ++l) {
        const double v = x[i + l];
        const double v2 = v * v;
        a1[l] += v;
        a2[l] += v2;
        a3[l] += v2 * v;
        a4[l] += v2 * v2;
      }
    }
  }
  for (int l = 0; i < n; ++i, ++l) {
    const double v = x[i];
    const double v2 = v * v;
    a1[l] += v;
    a2[l] += v2;
    a3[l] += v2 * v;
    a4[l] += v2 * v2;
  }
  out[0] = (a1[0] + a1[1]) + (a1[2] + a1[3]);
  out[1] = (a2[0] + a2[1]) + (a2[2] + a2[3]);
  out[2] = (a3[0] + a3[1]) + (a3[2] + a3[3]);
  out[3] = (a4[0] + a4[1]) + (a4[2] + a4[3]);
}

}  // namespace qbm::simd::detail
