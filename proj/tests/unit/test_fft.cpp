#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "jcsc/core/rng.hpp"
#include "jcsc/phy/fft.hpp"

using cplx = std::complex<double>;
using jcsc::phy::FftBatch;
using jcsc::phy::FftDirection;
using jcsc::phy::FftLayout;

namespace {

// O(n^2) oracle.
std::vector<cplx> naive_dft(const std::vector<cplx>& x, int sign) {
  const std::size_t n = x.size();
  std::vector<cplx> y(n);
  for (std::size_t k = 0; k < n; ++k) {
    cplx acc = 0.0;
    for (std::size_t t = 0; t < n; ++t)
      acc += x[t] * std::polar(1.0, sign * 2.0 * std::numbers::pi *
                                        static_cast<double>((k * t) % n) / static_cast<double>(n));
    y[k] = acc;
  }
  return y;
}

std::vector<cplx> random_cplx(std::size_t n, std::uint64_t tag) {
  jcsc::core::Rng r({7, tag});
  std::vector<cplx> v(n);
  for (auto& x : v) x = {r.normal(), r.normal()};
  return v;
}

double rel_err(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double num = 0, den = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += std::norm(a[i] - b[i]);
    den += std::norm(a[i]);
  }
  return std::sqrt(num / den);
}

}  // namespace

TEST_SUITE("fft") {
  TEST_CASE("matches the naive DFT in both directions") {
    for (int n : {1, 2, 3, 8, 12, 64, 100, 256}) {
      CAPTURE(n);
      const auto x = random_cplx(static_cast<std::size_t>(n), static_cast<std::uint64_t>(n));
      std::vector<cplx> y(x.size());
      FftBatch::contiguous(n, 1, FftDirection::forward).execute(x, y);
      CHECK(rel_err(naive_dft(x, -1), y) < 1e-12);
      FftBatch::contiguous(n, 1, FftDirection::inverse).execute(x, y);
      CHECK(rel_err(naive_dft(x, +1), y) < 1e-12);
    }
  }

  TEST_CASE("batched contiguous transforms") {
    const int n = 32, howmany = 5;
    const auto x = random_cplx(n * howmany, 1);
    std::vector<cplx> y(x.size());
    FftBatch::contiguous(n, howmany, FftDirection::forward).execute(x, y);
    for (int b = 0; b < howmany; ++b) {
      std::vector<cplx> xb(x.begin() + b * n, x.begin() + (b + 1) * n);
      std::vector<cplx> yb(y.begin() + b * n, y.begin() + (b + 1) * n);
      CHECK(rel_err(naive_dft(xb, -1), yb) < 1e-12);
    }
  }

  TEST_CASE("strided column transforms") {
    // Columns of a rows x cols row-major matrix.
    const int rows = 16, cols = 6;
    const auto x = random_cplx(rows * cols, 2);
    std::vector<cplx> y(x.size());
    FftBatch({rows, cols, cols, 1, cols, 1}, FftDirection::forward).execute(x, y);
    for (int c = 0; c < cols; ++c) {
      std::vector<cplx> xc(rows), yc(rows);
      for (int r = 0; r < rows; ++r) {
        xc[r] = x[r * cols + c];
        yc[r] = y[r * cols + c];
      }
      CHECK(rel_err(naive_dft(xc, -1), yc) < 1e-12);
    }
  }

  TEST_CASE("input is preserved and short buffers are rejected") {
    const auto x = random_cplx(64, 3);
    const auto copy = x;
    std::vector<cplx> y(64);
    FftBatch::contiguous(64, 1, FftDirection::forward).execute(x, y);
    CHECK(x == copy);
    std::vector<cplx> small(10);
    CHECK_THROWS(FftBatch::contiguous(64, 1, FftDirection::forward).execute(x, small));
  }
}
