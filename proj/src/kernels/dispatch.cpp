#include <cstdlib>
#include <cstring>

#include "wcq/kernels.hpp"

namespace wcq::kernels {

#ifdef WCQ_HAVE_AVX2_KERNEL
const ModKernel* avx2_kernel_impl();
#endif

const ModKernel* avx2_kernel() {
#ifdef WCQ_HAVE_AVX2_KERNEL
  static const bool ok = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return ok ? avx2_kernel_impl() : nullptr;
#else
  return nullptr;
#endif
}

const ModKernel& active_kernel() {
  static const ModKernel* chosen = [] {
    const char* env = std::getenv("WCQ_SIMD");
    if (env && std::strcmp(env, "scalar") == 0) return &scalar_kernel();
    const ModKernel* k = avx2_kernel();
    return k ? k : &scalar_kernel();
  }();
  return *chosen;
}

}  // namespace wcq::kernels
