#include <cstdlib>
#include <string_view>

#include "olps/kernels.hpp"

namespace olps::kernels {

#if defined(OLPS_HAVE_AVX2)
const KernelSet& avx2_set_unchecked() noexcept;
#endif

const KernelSet* avx2_set() noexcept {
#if defined(OLPS_HAVE_AVX2)
  static const bool supported = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return supported ? &avx2_set_unchecked() : nullptr;
#else
  return nullptr;
#endif
}

const KernelSet& active() noexcept {
  static const KernelSet& chosen = [] () -> const KernelSet& {
    const char* env = std::getenv("OLPS_KERNELS");
    if (env != nullptr && std::string_view(env) == "scalar") return scalar_set();
    if (const KernelSet* simd = avx2_set()) return *simd;
    return scalar_set();
  }();
  return chosen;
}

}  // namespace olps::kernels
