#include "pspin/simd/kernels.hpp"

#include <cstdlib>
#include <string>

namespace pspin::simd {

#if PSPIN_WITH_AVX2
const KernelTable* avx2_kernels_impl();
#endif
#if PSPIN_WITH_NEON
const KernelTable* neon_kernels_impl();
#endif

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
    case Isa::Neon: return "neon";
  }
  return "unknown";
}

const KernelTable* avx2_kernels() {
#if PSPIN_WITH_AVX2
  static const bool supported = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return supported ? avx2_kernels_impl() : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable* neon_kernels() {
#if PSPIN_WITH_NEON
  return neon_kernels_impl();
#else
  return nullptr;
#endif
}

const KernelTable& active_kernels() {
  static const KernelTable& table = []() -> const KernelTable& {
    const char* env = std::getenv("PSPIN_SIMD");
    if (env != nullptr && std::string(env) == "scalar") return scalar_kernels();
    if (const auto* k = avx2_kernels()) return *k;
    if (const auto* k = neon_kernels()) return *k;
    return scalar_kernels();
  }();
  return table;
}

}  // namespace pspin::simd
