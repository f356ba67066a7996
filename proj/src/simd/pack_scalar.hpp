// pack_scalar.hpp — width-1 pack. The reference semantics: every operation
// is a single IEEE-754 double or uint64 operation, mirrored one-for-one by
// the vector packs so that all variants are bit-identical.

#pragma once

#include <bit>
#include <cmath>
#include <cstdint>

namespace qbm::simd::detail {

struct PackScalar {
  static constexpr int width = 1;
  using F = double;
  using U = std::uint64_t;
  using M = bool;

  static F set1(double x) { return x; }
  static U set1u(std::uint64_t x) { return x; }
  // Lane l holds base + l.
  static U iota_u64(std::uint64_t base) { return base; }

  static F add(F a, F b) { return a + b; }
  static F sub(F a, F b) { return a - b; }
  static F mul(F a, F b) { return a * b; }
  static F div(F a, F b) { return a / b; }
  static F sqrt_(F a) { return std::sqrt(a); }
  static F fma_(F a, F b, F c) { return std::fma(a, b, c); }
  static F neg(F a) { return -a; }

  static M gt(F a, F b) { return a > b; }
  static M le(F a, F b) { return a <= b; }
  static F sel(M m, F a, F b) { return m ? a : b; }

  static U and_(U a, U b) { return a & b; }
  static U or_(U a, U b) { return a | b; }
  static U xor_(U a, U b) { return a ^ b; }
  static U add64(U a, U b) { return a + b; }
  static U shr(U a, int s) { return a >> s; }
  static U shl(U a, int s) { return a << s; }
  // Full 64-bit product of the low 32 bits of each operand.
  static U mul_lo32(U a, U b) {
    return (a & 0xffffffffull) * (b & 0xffffffffull);
  }

  // Exact for values below 2^52.
  static F u52_to_f64(U a) { return static_cast<double>(a); }
  static U f64_bits(F a) { return std::bit_cast<std::uint64_t>(a); }
  static F bits_f64(U a) { return std::bit_cast<double>(a); }

  static void store(double* p, F v) { *p = v; }
  static F load(const double* p) { return *p; }
};

}  // namespace qbm::simd::detail
