#include <atomic>
#include <cstdlib>
#include <string_view>

#include "zjkit/simd/kernels.hpp"

namespace zjkit::simd {

#if defined(ZJKIT_HAVE_AVX2)
const Kernels* avx2_kernels_impl();
#endif
#if defined(ZJKIT_HAVE_NEON)
const Kernels* neon_kernels_impl();
#endif

const Kernels* avx2_kernels() {
#if defined(ZJKIT_HAVE_AVX2)
  static const bool supported = [] {
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") != 0;
  }();
  return supported ? avx2_kernels_impl() : nullptr;
#else
  return nullptr;
#endif
}

const Kernels* neon_kernels() {
#if defined(ZJKIT_HAVE_NEON)
  return neon_kernels_impl();
#else
  return nullptr;
#endif
}

namespace {

const Kernels* pick_default() {
  if (const char* env = std::getenv("ZJKIT_SIMD")) {
    std::string_view want(env);
    if (want == "scalar") return &scalar_kernels();
    if (want == "avx2" && avx2_kernels()) return avx2_kernels();
    if (want == "neon" && neon_kernels()) return neon_kernels();
  }
  if (const Kernels* k = avx2_kernels()) return k;
  if (const Kernels* k = neon_kernels()) return k;
  return &scalar_kernels();
}

std::atomic<const Kernels*>& current() {
  static std::atomic<const Kernels*> k{pick_default()};
  return k;
}

}  // namespace

const Kernels& active() { return *current().load(std::memory_order_relaxed); }

bool select(std::string_view name) {
  const Kernels* k = nullptr;
  if (name == "scalar") k = &scalar_kernels();
  else if (name == "avx2") k = avx2_kernels();
  else if (name == "neon") k = neon_kernels();
  if (!k) return false;
  current().store(k, std::memory_order_relaxed);
  return true;
}

}  // namespace zjkit::simd
