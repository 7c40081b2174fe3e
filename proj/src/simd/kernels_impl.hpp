#pragma once

#include "rgbwforge/simd/kernels.hpp"

namespace rgbwforge::simd {

const KernelTable& scalar_table();

#if defined(RGBWFORGE_HAS_AVX2)
const KernelTable& avx2_table();
#endif

}  // namespace rgbwforge::simd
