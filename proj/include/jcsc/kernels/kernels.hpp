#pragma once

// Data-parallel inner loops of the PHY simulator. Every kernel has a scalar
// reference implementation; an AVX2/FMA build is selected at runtime when the
// CPU supports it. The two agree to within a few ulp (FMA contraction), which
// the equivalence tests bound explicitly.
//
// Complex arrays are std::complex<double>, i.e. interleaved (re, im) doubles.
// Unless noted, spans passed to one call must have equal length.

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>

namespace jcsc::kernels {

using cplx = std::complex<double>;

enum class Isa { scalar, avx2 };

std::string_view to_string(Isa isa);

struct KernelTable {
  Isa isa;

  /// out[i] += sigma * (g[2i] + j g[2i+1]); g has twice the length of out.
  void (*add_scaled_noise)(std::span<cplx> out, std::span<const double> g, double sigma);

  /// out[i] = a[i] * b[i]
  void (*cmul)(std::span<const cplx> a, std::span<const cplx> b, std::span<cplx> out);

  /// out[i] += scale * a[i] * b[i]
  void (*cmul_accumulate)(cplx scale, std::span<const cplx> a, std::span<const cplx> b,
                          std::span<cplx> out);

  /// out[i] = num[i] / den[i], or 0 where den[i] == 0. Returns the number of
  /// guarded (zero-denominator) elements.
  std::size_t (*cdiv_guarded)(std::span<const cplx> num, std::span<const cplx> den,
                              std::span<cplx> out);

  /// sum_i w[i] * x[i] with real weights (chip despreading).
  cplx (*real_dot)(std::span<const double> w, std::span<const cplx> x);

  /// out[i] = w[i] * s (chip spreading).
  void (*real_scale)(std::span<const double> w, cplx s, std::span<cplx> out);

  /// sum_i |x[i]|^2
  double (*energy)(std::span<const cplx> x);

  /// out[i] = |x[i]|^2
  void (*power)(std::span<const cplx> x, std::span<double> out);
};

const KernelTable& scalar_table();

/// nullptr when the AVX2 variant was not compiled in or the CPU lacks
/// AVX2+FMA.
const KernelTable* avx2_table();

/// Best supported table. The JCSC_SIMD environment variable (scalar|avx2)
/// overrides the choice; an unsupported request falls back to scalar.
const KernelTable& active();

}  // namespace jcsc::kernels
