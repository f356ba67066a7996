// kernels_avx2.cpp — AVX2/FMA instantiation of the kernel bodies. This TU is
// compiled with -mavx2 -mfma; callers must check CPU support before using
// the table (the dispatcher does).

#include "qbm/simd/kernels.hpp"

#ifdef QBM_HAVE_AVX2

#include "kernels_body.hpp"
#include "pack_avx2.hpp"

namespace qbm::simd::detail {

const KernelTable& avx2_kernel_table() {
  static const KernelTable table = {
      &fill_normals_body<PackAvx2>,
      &fill_powerlaw_body<PackAvx2>,
      &run_paths_body<PackAvx2>,
      &power_sums_body<PackAvx2>,
  };
  return table;
}

}  // namespace qbm::simd::detail

#endif  // QBM_HAVE_AVX2
