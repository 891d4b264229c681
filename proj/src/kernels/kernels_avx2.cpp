// Compiled with -mavx2 -mfma; only reached through the dispatch table after a
// CPU feature check.
#include <immintrin.h>

#include "kernels_impl.hpp"

namespace jcsc::kernels::avx2 {

namespace {

inline const double* dptr(const cplx* p) { return reinterpret_cast<const double*>(p); }
inline double* dptr(cplx* p) { return reinterpret_cast<double*>(p); }

// Two complex products a*b in one register pair layout [r0 i0 r1 i1].
inline __m256d mul2(__m256d a, __m256d b) {
  const __m256d b_re = _mm256_movedup_pd(b);
  const __m256d b_im = _mm256_permute_pd(b, 0xF);
  const __m256d a_sw = _mm256_permute_pd(a, 0x5);
  return _mm256_fmaddsub_pd(a, b_re, _mm256_mul_pd(a_sw, b_im));
}

}  // namespace

void add_scaled_noise(std::span<cplx> out, std::span<const double> g, double sigma) {
  const std::size_t n = 2 * out.size();
  double* o = dptr(out.data());
  const __m256d s = _mm256_set1_pd(sigma);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v = _mm256_loadu_pd(o + i);
    _mm256_storeu_pd(o + i, _mm256_fmadd_pd(s, _mm256_loadu_pd(g.data() + i), v));
  }
  for (; i < n; ++i) o[i] += sigma * g[i];
}

void cmul(std::span<const cplx> a, std::span<const cplx> b, std::span<cplx> out) {
  const std::size_t n = out.size();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d va = _mm256_loadu_pd(dptr(a.data() + i));
    const __m256d vb = _mm256_loadu_pd(dptr(b.data() + i));
    _mm256_storeu_pd(dptr(out.data() + i), mul2(va, vb));
  }
  if (i < n) scalar::cmul(a.subspan(i), b.subspan(i), out.subspan(i));
}

void cmul_accumulate(cplx scale, std::span<const cplx> a, std::span<const cplx> b,
                     std::span<cplx> out) {
  const std::size_t n = out.size();
  const __m256d s_re = _mm256_set1_pd(scale.real());
  const __m256d s_im = _mm256_set1_pd(scale.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d p = mul2(_mm256_loadu_pd(dptr(a.data() + i)), _mm256_loadu_pd(dptr(b.data() + i)));
    const __m256d p_sw = _mm256_permute_pd(p, 0x5);
    const __m256d ps = _mm256_fmaddsub_pd(p, s_re, _mm256_mul_pd(p_sw, s_im));
    double* o = dptr(out.data() + i);
    _mm256_storeu_pd(o, _mm256_add_pd(_mm256_loadu_pd(o), ps));
  }
  if (i < n) scalar::cmul_accumulate(scale, a.subspan(i), b.subspan(i), out.subspan(i));
}

std::size_t cdiv_guarded(std::span<const cplx> num, std::span<const cplx> den,
                         std::span<cplx> out) {
  const std::size_t n = out.size();
  const __m256d zero = _mm256_setzero_pd();
  std::size_t guarded = 0;
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d vn = _mm256_loadu_pd(dptr(num.data() + i));
    const __m256d vd = _mm256_loadu_pd(dptr(den.data() + i));
    const __m256d sq = _mm256_mul_pd(vd, vd);
    const __m256d d2 = _mm256_hadd_pd(sq, sq);  // [|d0|^2 |d0|^2 |d1|^2 |d1|^2]
    const __m256d d_re = _mm256_movedup_pd(vd);
    const __m256d d_im = _mm256_permute_pd(vd, 0xF);
    const __m256d n_sw = _mm256_permute_pd(vn, 0x5);
    // num * conj(den): even lanes add, odd lanes subtract.
    const __m256d prod = _mm256_fmsubadd_pd(vn, d_re, _mm256_mul_pd(n_sw, d_im));
    const __m256d is_zero = _mm256_cmp_pd(d2, zero, _CMP_EQ_OQ);
    const __m256d q = _mm256_div_pd(prod, _mm256_blendv_pd(d2, _mm256_set1_pd(1.0), is_zero));
    _mm256_storeu_pd(dptr(out.data() + i), _mm256_blendv_pd(q, zero, is_zero));
    const int mask = _mm256_movemask_pd(is_zero);
    guarded += static_cast<std::size_t>((mask & 1) + ((mask >> 2) & 1));
  }
  if (i < n) guarded += scalar::cdiv_guarded(num.subspan(i), den.subspan(i), out.subspan(i));
  return guarded;
}

cplx real_dot(std::span<const double> w, std::span<const cplx> x) {
  const std::size_t n = w.size();
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d w4 = _mm256_loadu_pd(w.data() + i);
    const __m256d w01 = _mm256_permute4x64_pd(w4, _MM_SHUFFLE(1, 1, 0, 0));
    const __m256d w23 = _mm256_permute4x64_pd(w4, _MM_SHUFFLE(3, 3, 2, 2));
    acc0 = _mm256_fmadd_pd(w01, _mm256_loadu_pd(dptr(x.data() + i)), acc0);
    acc1 = _mm256_fmadd_pd(w23, _mm256_loadu_pd(dptr(x.data() + i + 2)), acc1);
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, _mm256_add_pd(acc0, acc1));
  cplx sum(lanes[0] + lanes[2], lanes[1] + lanes[3]);
  if (i < n) sum += scalar::real_dot(w.subspan(i), x.subspan(i));
  return sum;
}

void real_scale(std::span<const double> w, cplx s, std::span<cplx> out) {
  const std::size_t n = out.size();
  const __m256d vs = _mm256_setr_pd(s.real(), s.imag(), s.real(), s.imag());
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d w4 = _mm256_loadu_pd(w.data() + i);
    _mm256_storeu_pd(dptr(out.data() + i),
                     _mm256_mul_pd(_mm256_permute4x64_pd(w4, _MM_SHUFFLE(1, 1, 0, 0)), vs));
    _mm256_storeu_pd(dptr(out.data() + i + 2),
                     _mm256_mul_pd(_mm256_permute4x64_pd(w4, _MM_SHUFFLE(3, 3, 2, 2)), vs));
  }
  if (i < n) scalar::real_scale(w.subspan(i), s, out.subspan(i));
}

double energy(std::span<const cplx> x) {
  const std::size_t n = 2 * x.size();
  const double* p = dptr(x.data());
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256d a = _mm256_loadu_pd(p + i);
    const __m256d b = _mm256_loadu_pd(p + i + 4);
    acc0 = _mm256_fmadd_pd(a, a, acc0);
    acc1 = _mm256_fmadd_pd(b, b, acc1);
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, _mm256_add_pd(acc0, acc1));
  double e = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
  for (; i < n; ++i) e += p[i] * p[i];
  return e;
}

void power(std::span<const cplx> x, std::span<double> out) {
  const std::size_t n = out.size();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d a = _mm256_loadu_pd(dptr(x.data() + i));
    const __m256d b = _mm256_loadu_pd(dptr(x.data() + i + 2));
    const __m256d h = _mm256_hadd_pd(_mm256_mul_pd(a, a), _mm256_mul_pd(b, b));
    _mm256_storeu_pd(out.data() + i, _mm256_permute4x64_pd(h, _MM_SHUFFLE(3, 1, 2, 0)));
  }
  if (i < n) scalar::power(x.subspan(i), out.subspan(i));
}

}  // namespace jcsc::kernels::avx2
