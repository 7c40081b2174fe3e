#include <atomic>
#include <cstdlib>
#include <string>

#include "rgbwforge/error.hpp"
#include "rgbwforge/simd/kernels.hpp"
#include "simd/kernels_impl.hpp"

namespace rgbwforge::simd {

namespace {

const KernelTable* resolve(std::string_view variant) {
  if (variant == "scalar") return &scalar_table();
  if (variant == "avx2") {
    const KernelTable* t = avx2_kernels();
    if (!t) throw ConfigError("AVX2 kernels are not available on this build or CPU");
    return t;
  }
  if (variant.empty() || variant == "auto") {
    const KernelTable* t = avx2_kernels();
    return t ? t : &scalar_table();
  }
  throw ConfigError("unknown kernel variant '" + std::string(variant) + "'");
}

const KernelTable* initial() {
  const char* env = std::getenv("RGBWFORGE_SIMD");
  return resolve(env ? std::string_view(env) : std::string_view("auto"));
}

std::atomic<const KernelTable*>& active() {
  static std::atomic<const KernelTable*> table{initial()};
  return table;
}

}  // namespace

const KernelTable& scalar_kernels() { return scalar_table(); }

const KernelTable* avx2_kernels() {
#if defined(RGBWFORGE_HAS_AVX2)
  static const bool supported = __builtin_cpu_supports("avx2");
  return supported ? &avx2_table() : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& kernels() { return *active().load(std::memory_order_acquire); }

void select_kernels(std::string_view variant) {
  active().store(resolve(variant), std::memory_order_release);
}

}  // namespace rgbwforge::simd
