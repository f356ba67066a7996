// kernels_scalar.cpp — scalar reference instantiation of the kernel bodies,
// plus the public scalar RNG entry points.

#include <array>

#include "qbm/simd/kernels.hpp"
#include "qbm/simd/philox.hpp"
#include "kernels_body.hpp"
#include "pack_scalar.hpp"

namespace qbm::simd {

namespace detail {

const KernelTable& scalar_kernel_table() {
  static const KernelTable table = {
      &fill_normals_body<PackScalar>,
      &fill_powerlaw_body<PackScalar>,
      &run_paths_body<PackScalar>,
      &power_sums_body<PackScalar>,
  };
  return table;
}

}  // namespace detail

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key) {
  using P = detail::PackScalar;
  const std::uint64_t seed =
      static_cast<std::uint64_t>(key[0]) |
      (static_cast<std::uint64_t>(key[1]) << 32);
  const detail::PhiloxBlock<P> b =
      detail::philox4x32<P>(counter[0], counter[1], counter[2], counter[3], seed);
  return {static_cast<std::uint32_t>(b.x0), static_cast<std::uint32_t>(b.x1),
          static_cast<std::uint32_t>(b.x2), static_cast<std::uint32_t>(b.x3)};
}

std::uint64_t philox_u64(std::uint64_t seed, std::uint64_t stream,
                         std::uint64_t index) {
  using P = detail::PackScalar;
  const detail::PhiloxBlock<P> b = detail::philox_at<P>(seed, index, stream);
  return detail::u64_from_block<P>(b);
}

double uniform_from_bits(std::uint64_t r) {
  return detail::uniform01<detail::PackScalar>(r);
}

double normal_from_bits(std::uint64_t r) {
  return detail::inv_normal_cdf<detail::PackScalar>(
      detail::uniform01<detail::PackScalar>(r));
}

}  // namespace qbm::simd
