#include "jcsc/phy/radar.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "jcsc/core/error.hpp"
#include "jcsc/kernels/kernels.hpp"
#include "jcsc/phy/fft.hpp"

namespace jcsc::phy {

double parabolic_offset(double left, double centre, double right) {
  const double denom = left - 2.0 * centre + right;
  if (!(denom < 0.0)) return 0.0;
  return std::clamp(0.5 * (left - right) / denom, -0.5, 0.5);
}

SensingEstimate estimate_range_velocity(const Grid& received, const Grid& transmitted,
                                        const WaveformConfig& config) {
  const std::size_t M = config.num_symbols;
  const std::size_t N = config.num_subcarriers;
  if (received.rows() != M || received.cols() != N || transmitted.rows() != M ||
      transmitted.cols() != N)
    throw InvariantError("estimate_range_velocity: grid shape does not match configuration");
  const auto& k = kernels::active();
  SensingEstimate est;

  std::vector<cplx> ratio(M * N);
  est.excluded_elements = k.cdiv_guarded(received.data(), transmitted.data(), ratio);

  // Delay profile per symbol, then Doppler across symbols for the searched
  // delay bins plus one neighbour on each side (bin -1 wraps to N-1).
  std::vector<cplx> delay(M * N);
  FftBatch::contiguous(static_cast<int>(N), static_cast<int>(M), FftDirection::inverse)
      .execute(ratio, delay);

  const std::size_t kmax = std::min(config.cp_samples, N - 1);
  const std::size_t cols = kmax + 3;  // column c holds delay bin (c - 1) mod N
  std::vector<cplx> gathered(M * cols);
  for (std::size_t m = 0; m < M; ++m) {
    const cplx* src = delay.data() + m * N;
    cplx* dst = gathered.data() + m * cols;
    dst[0] = src[N - 1];
    for (std::size_t c = 1; c < cols; ++c) dst[c] = src[(c - 1) % N];
  }
  std::vector<cplx> rd(M * cols);
  FftBatch(FftLayout{static_cast<int>(M), static_cast<int>(cols), static_cast<int>(cols), 1,
                     static_cast<int>(cols), 1},
           FftDirection::forward)
      .execute(gathered, rd);

  std::vector<double> pw(M * cols);
  k.power(rd, pw);
  auto at = [&](std::size_t l, std::size_t c) { return pw[l * cols + c]; };

  std::size_t best_l = 0;
  std::size_t best_c = 1;
  double best = -1.0;
  for (std::size_t l = 0; l < M; ++l)
    for (std::size_t c = 1; c <= kmax + 1; ++c)
      if (at(l, c) > best) {
        best = at(l, c);
        best_l = l;
        best_c = c;
      }

  double side = 0.0;
  for (std::size_t l = 0; l < M; ++l) {
    const std::size_t dl = std::min((l + M - best_l) % M, (best_l + M - l) % M);
    for (std::size_t c = 1; c <= kmax + 1; ++c) {
      const std::size_t dc = c > best_c ? c - best_c : best_c - c;
      if (dl <= 1 && dc <= 1) continue;
      side = std::max(side, at(l, c));
    }
  }
  est.peak_to_sidelobe_db = side > 0.0 ? 10.0 * std::log10(best / side)
                                       : std::numeric_limits<double>::infinity();

  const double mag = std::sqrt(best);
  const double dk = parabolic_offset(std::sqrt(at(best_l, best_c - 1)), mag,
                                     std::sqrt(at(best_l, best_c + 1)));
  const double dl = parabolic_offset(std::sqrt(at((best_l + M - 1) % M, best_c)), mag,
                                     std::sqrt(at((best_l + 1) % M, best_c)));

  est.range_bin = best_c - 1;
  est.doppler_bin = best_l;
  const double range_bin = static_cast<double>(est.range_bin) + dk;
  est.range_m = std::clamp(range_bin * config.range_bin_m(), 0.0, config.max_unambiguous_range_m());

  const double signed_l = best_l > M / 2 ? static_cast<double>(best_l) - static_cast<double>(M)
                                         : static_cast<double>(best_l);
  est.velocity_mps = (signed_l + dl) * config.velocity_bin_mps();
  return est;
}

}  // namespace jcsc::phy
