// philox.hpp — scalar entry points for the counter-based RNG primitives the
// kernels are built on. One Philox4x32-10 block per counter; a block yields
// one double-precision deviate (plus a sign bit where needed).

#pragma once

#include <array>
#include <cstdint>

namespace qbm::simd {

// One keyed block of the Philox4x32-10 bijection.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

// 64 bits assembled from the first two output words of the block keyed by
// (seed) at counter (index, stream).
std::uint64_t philox_u64(std::uint64_t seed, std::uint64_t stream,
                         std::uint64_t index);

// Uniform double in (0, 1) from the top 52 bits: ((r >> 12) + 0.5) * 2^-52.
double uniform_from_bits(std::uint64_t r);

// Standard normal deviate via the inverse CDF (Acklam's rational
// approximation, |error| < 9e-9 over the full open interval).
double normal_from_bits(std::uint64_t r);

}  // namespace qbm::simd
