#include "jcsc/phy/channel.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "jcsc/core/error.hpp"
#include "jcsc/kernels/kernels.hpp"

namespace jcsc::phy {

namespace {

void check_snr(double snr_db) {
  if (std::isnan(snr_db) || snr_db == -std::numeric_limits<double>::infinity())
    throw InvariantError("snr_db must be finite or +inf");
}

// Noise is drawn row by row so memory stays bounded for large grids.
void add_noise_grid(Grid& grid, double variance, core::RngHandle handle) {
  if (variance == 0.0) return;
  core::Rng rng(handle);
  const double sigma = std::sqrt(variance / 2.0);
  const auto& k = kernels::active();
  std::vector<double> g(2 * grid.cols());
  for (std::size_t r = 0; r < grid.rows(); ++r) {
    rng.fill_normal(g);
    k.add_scaled_noise(grid.row(r), g, sigma);
  }
}

}  // namespace

double noise_variance(double snr_db) {
  check_snr(snr_db);
  if (std::isinf(snr_db)) return 0.0;
  return std::pow(10.0, -snr_db / 10.0);
}

void add_awgn(std::span<cplx> samples, double variance, core::Rng& rng) {
  if (variance == 0.0) return;
  const double sigma = std::sqrt(variance / 2.0);
  std::vector<double> g(2 * samples.size());
  rng.fill_normal(g);
  kernels::active().add_scaled_noise(samples, g, sigma);
}

Grid apply_comm_channel(const Grid& tx, double snr_db, core::RngHandle rng) {
  Grid out = tx;
  apply_comm_channel(out, snr_db, rng);
  return out;
}

void apply_comm_channel(Grid& grid, double snr_db, core::RngHandle rng) {
  add_noise_grid(grid, noise_variance(snr_db), rng);
}

void check_target(const PointTarget& target, const WaveformConfig& config) {
  const double limit = config.max_unambiguous_range_m();
  if (!(target.range_m >= 0.0))
    throw InvariantError("target range must be >= 0 m");
  if (target.range_m > limit * (1.0 + 1e-12))
    throw InvariantError("target at " + std::to_string(target.range_m) +
                         " m is beyond the unambiguous range " + std::to_string(limit) + " m");
  if (!std::isfinite(target.velocity_mps)) throw InvariantError("target velocity must be finite");
}

Grid apply_echo_channel(const Grid& tx, std::span<const PointTarget> targets, double snr_db,
                        const WaveformConfig& config, core::RngHandle rng) {
  if (tx.rows() != config.num_symbols || tx.cols() != config.num_subcarriers)
    throw InvariantError("apply_echo_channel: grid shape does not match configuration");
  for (const auto& t : targets) check_target(t, config);
  const double variance = noise_variance(snr_db);

  const std::size_t n_sc = config.num_subcarriers;
  const double df = config.subcarrier_spacing_hz();
  const double T = config.symbol_duration_s();
  const auto& k = kernels::active();

  Grid out(tx.rows(), tx.cols());
  std::vector<cplx> ramp(n_sc);
  for (const auto& t : targets) {
    const double tau = 2.0 * t.range_m / kSpeedOfLight;
    const double fd = 2.0 * t.velocity_mps * config.carrier_hz / kSpeedOfLight;
    for (std::size_t n = 0; n < n_sc; ++n)
      ramp[n] = std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(n) * df * tau);
    for (std::size_t m = 0; m < config.num_symbols; ++m) {
      const cplx dop = std::polar(1.0, 2.0 * std::numbers::pi * fd * static_cast<double>(m) * T);
      k.cmul_accumulate(t.reflect_amp * dop, ramp, tx.row(m), out.row(m));
    }
  }
  add_noise_grid(out, variance, rng);
  return out;
}

}  // namespace jcsc::phy
