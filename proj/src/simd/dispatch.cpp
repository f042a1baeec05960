#include <atomic>
#include <cstdlib>
#include <cstring>

#include "jetgeo/simd/kernels.hpp"

namespace jetgeo::simd {

#if defined(JETGEO_HAVE_AVX2)
const Kernels& avx2_kernels_impl();
#endif

namespace {

std::atomic<bool> g_force_scalar{false};

bool env_forces_scalar() {
  const char* v = std::getenv("JETGEO_FORCE_SCALAR");
  return v != nullptr && *v != '\0' && std::strcmp(v, "0") != 0;
}

}  // namespace

const Kernels* avx2_kernels() {
#if defined(JETGEO_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  static const bool ok = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return ok ? &avx2_kernels_impl() : nullptr;
#else
  return nullptr;
#endif
}

const Kernels& active() {
  static const bool env_scalar = env_forces_scalar();
  if (env_scalar || g_force_scalar.load(std::memory_order_relaxed)) return scalar_kernels();
  const Kernels* k = avx2_kernels();
  return k ? *k : scalar_kernels();
}

void force_scalar(bool on) { g_force_scalar.store(on, std::memory_order_relaxed); }

}  // namespace jetgeo::simd
