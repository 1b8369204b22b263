#pragma once
// Data-parallel inner loops used by the grid operators and the time
// integrator. Every kernel has a scalar reference implementation; AVX2 (x86)
// and NEON (aarch64) variants are selected once at runtime.

#include <cstddef>
#include <string_view>

namespace pspin::simd {

enum class Isa { Scalar, Avx2, Neon };

std::string_view isa_name(Isa isa);

struct KernelTable {
  Isa isa;

  // out[i] = sum_r weights[r] * rows[r][i], i in [0, n)
  void (*weighted_sum)(const double* const* rows, const double* weights, int nrows,
                       double* out, std::size_t n);

  // y[i] += a * x[i]
  void (*axpy)(double a, const double* x, double* y, std::size_t n);

  // out[i] = x[i] + a * y[i]
  void (*add_scaled)(const double* x, double a, const double* y, double* out,
                     std::size_t n);

  double (*max_abs)(const double* x, std::size_t n);
  double (*sum_squares)(const double* x, std::size_t n);
};

const KernelTable& scalar_kernels();

// nullptr when the variant is not compiled in or the CPU lacks support.
const KernelTable* avx2_kernels();
const KernelTable* neon_kernels();

// Best table for this machine. PSPIN_SIMD=scalar in the environment forces the
// reference kernels.
const KernelTable& active_kernels();

}  // namespace pspin::simd
