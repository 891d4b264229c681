#include <cstdlib>
#include <string_view>

#include "kernels_impl.hpp"

namespace jcsc::kernels {

std::string_view to_string(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

const KernelTable& scalar_table() {
  static const KernelTable table{Isa::scalar,          scalar::add_scaled_noise,
                                 scalar::cmul,         scalar::cmul_accumulate,
                                 scalar::cdiv_guarded, scalar::real_dot,
                                 scalar::real_scale,   scalar::energy,
                                 scalar::power};
  return table;
}

const KernelTable* avx2_table() {
#if defined(JCSC_HAVE_AVX2_TU)
  static const bool supported = [] {
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  }();
  if (!supported) return nullptr;
  static const KernelTable table{Isa::avx2,          avx2::add_scaled_noise,
                                 avx2::cmul,         avx2::cmul_accumulate,
                                 avx2::cdiv_guarded, avx2::real_dot,
                                 avx2::real_scale,   avx2::energy,
                                 avx2::power};
  return &table;
#else
  return nullptr;
#endif
}

const KernelTable& active() {
  static const KernelTable& chosen = []() -> const KernelTable& {
    const char* env = std::getenv("JCSC_SIMD");
    const std::string_view want = env ? env : "";
    if (want == "scalar") return scalar_table();
    if (const KernelTable* t = avx2_table()) return *t;
    return scalar_table();
  }();
  return chosen;
}

}  // namespace jcsc::kernels
