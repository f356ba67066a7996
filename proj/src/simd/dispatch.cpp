// dispatch.cpp — runtime kernel selection: CPU feature detection with an
// environment override (QBM_SIMD=scalar|avx2|auto).

#include <cstdlib>
#include <stdexcept>
#include <string>

#include "qbm/simd/kernels.hpp"

namespace qbm::simd {

namespace detail {
const KernelTable& scalar_kernel_table();
#ifdef QBM_HAVE_AVX2
const KernelTable& avx2_kernel_table();
#endif
}  // namespace detail

bool isa_supported(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2:
#if defined(QBM_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
  }
  return false;
}

const char* isa_name(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return "scalar";
    case Isa::avx2:
      return "avx2";
  }
  return "?";
}

const KernelTable& kernels_for(Isa isa) {
  if (!isa_supported(isa))
    throw std::runtime_error(std::string("SIMD ISA not supported here: ") +
                             isa_name(isa));
  switch (isa) {
    case Isa::scalar:
      return detail::scalar_kernel_table();
    case Isa::avx2:
#ifdef QBM_HAVE_AVX2
      return detail::avx2_kernel_table();
#else
      break;
#endif
  }
  return detail::scalar_kernel_table();
}

namespace {

Isa select_isa() {
  const char* env = std::getenv("QBM_SIMD");
  const std::string mode = env ? env : "auto";
  if (mode == "scalar") return Isa::scalar;
  if (mode == "avx2") {
    if (!isa_supported(Isa::avx2))
      throw std::runtime_error("QBM_SIMD=avx2 requested but not supported");
    return Isa::avx2;
  }
  if (mode != "auto" && mode != "")
    throw std::runtime_error("QBM_SIMD must be scalar, avx2 or auto");
  return isa_supported(Isa::avx2) ? Isa::avx2 : Isa::scalar;
}

}  // namespace

Isa active_isa() {
  static const Isa isa = select_isa();
  return isa;
}

const KernelTable& kernels() { return kernels_for(active_isa()); }

}  // namespace qbm::simd
