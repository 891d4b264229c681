#pragma once

#include "jcsc/kernels/kernels.hpp"

namespace jcsc::kernels {

#define JCSC_KERNEL_DECLS                                                                  \
  void add_scaled_noise(std::span<cplx> out, std::span<const double> g, double sigma);     \
  void cmul(std::span<const cplx> a, std::span<const cplx> b, std::span<cplx> out);        \
  void cmul_accumulate(cplx scale, std::span<const cplx> a, std::span<const cplx> b,       \
                       std::span<cplx> out);                                               \
  std::size_t cdiv_guarded(std::span<const cplx> num, std::span<const cplx> den,           \
                           std::span<cplx> out);                                           \
  cplx real_dot(std::span<const double> w, std::span<const cplx> x);                       \
  void real_scale(std::span<const double> w, cplx s, std::span<cplx> out);                 \
  double energy(std::span<const cplx> x);                                                  \
  void power(std::span<const cplx> x, std::span<double> out);

namespace scalar {
JCSC_KERNEL_DECLS
}
namespace avx2 {
JCSC_KERNEL_DECLS
}

#undef JCSC_KERNEL_DECLS

}  // namespace jcsc::kernels
