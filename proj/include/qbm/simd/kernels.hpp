// kernels.hpp — data-parallel Monte Carlo kernels behind the sampler and
// the Langevin integrator. A scalar reference implementation and an AVX2
// implementation are built from the same arithmetic (identical operation
// sequences, explicit FMA, IEEE sqrt/div), so every variant produces
// bit-identical output; the active one is picked at runtime.

#pragma once

#include <cstddef>
#include <cstdint>

namespace qbm::simd {

enum class Isa { scalar, avx2 };

struct KernelTable {
  // out[i] = standard normal deviate for counter index idx0 + i on the given
  // (seed, stream). Counter-based: any split over i gives the same values.
  void (*fill_normals)(std::uint64_t seed, std::uint64_t stream,
                       std::uint64_t idx0, double* out, std::size_t n);

  // Inverse-transform draws from the truncated power law:
  // |x| = inner / sqrt(1 - u * mass), sign from a dedicated counter bit.
  void (*fill_powerlaw)(std::uint64_t seed, std::uint64_t stream,
                        std::uint64_t idx0, double inner, double mass,
                        double* out, std::size_t n);

  // Random walks x += coeff * xi over n_steps for paths
  // [path0, path0 + n_paths), recording x every record_stride steps
  // (n_rec = n_steps / record_stride + 1 values per path, starting at 0).
  // out is path-major with row stride out_stride >= n_rec. Path p uses
  // stream p, so results are independent of how paths are partitioned.
  void (*run_paths)(std::uint64_t seed, std::uint64_t path0,
                    std::size_t n_paths, std::int64_t n_steps,
                    std::int64_t record_stride, double coeff, double* out,
                    std::size_t out_stride);

  // Power sums S_r = sum x_i^r for r = 1..4 into out[0..3], accumulated in
  // four interleaved partials (lane j takes elements i with i % 4 == j) and
  // reduced in a fixed order, so the result is independent of the variant.
  void (*power_sums)(const double* x, std::size_t n, double out[4]);
};

// Kernel table for the requested instruction set; throws std::runtime_error
// if it is not supported on this machine.
const KernelTable& kernels_for(Isa isa);

// Runtime-selected table: AVX2 when the CPU supports it, else scalar.
// The environment variable QBM_SIMD=scalar|avx2|auto overrides the choice.
const KernelTable& kernels();

Isa active_isa();
bool isa_supported(Isa isa);
const char* isa_name(Isa isa);

}  // namespace qbm::simd
