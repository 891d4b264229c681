#include "kernels_impl.hpp"

namespace jcsc::kernels::scalar {

void add_scaled_noise(std::span<cplx> out, std::span<const double> g, double sigma) {
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] += cplx(sigma * g[2 * i], sigma * g[2 * i + 1]);
}

// Explicit component formulas (not operator*) so the scalar and vector paths
// evaluate the same expressions.
void cmul(std::span<const cplx> a, std::span<const cplx> b, std::span<cplx> out) {
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double ar = a[i].real(), ai = a[i].imag();
    const double br = b[i].real(), bi = b[i].imag();
    out[i] = cplx(ar * br - ai * bi, ai * br + ar * bi);
  }
}

void cmul_accumulate(cplx scale, std::span<const cplx> a, std::span<const cplx> b,
                     std::span<cplx> out) {
  const double sr = scale.real(), si = scale.imag();
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double ar = a[i].real(), ai = a[i].imag();
    const double br = b[i].real(), bi = b[i].imag();
    const double pr = ar * br - ai * bi;
    const double pi = ai * br + ar * bi;
    out[i] += cplx(pr * sr - pi * si, pi * sr + pr * si);
  }
}

std::size_t cdiv_guarded(std::span<const cplx> num, std::span<const cplx> den,
                         std::span<cplx> out) {
  std::size_t guarded = 0;
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double dr = den[i].real(), di = den[i].imag();
    const double d2 = dr * dr + di * di;
    if (d2 == 0.0) {
      out[i] = cplx(0.0, 0.0);
      ++guarded;
      continue;
    }
    const double nr = num[i].real(), ni = num[i].imag();
    out[i] = cplx((nr * dr + ni * di) / d2, (ni * dr - nr * di) / d2);
  }
  return guarded;
}

cplx real_dot(std::span<const double> w, std::span<const cplx> x) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    re += w[i] * x[i].real();
    im += w[i] * x[i].imag();
  }
  return {re, im};
}

void real_scale(std::span<const double> w, cplx s, std::span<cplx> out) {
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = cplx(w[i] * s.real(), w[i] * s.imag());
}

double energy(std::span<const cplx> x) {
  double e = 0.0;
  for (const cplx& v : x) e += v.real() * v.real() + v.imag() * v.imag();
  return e;
}

void power(std::span<const cplx> x, std::span<double> out) {
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
}

}  // namespace jcsc::kernels::scalar
