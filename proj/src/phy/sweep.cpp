#include "jcsc/phy/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "jcsc/core/error.hpp"
#include "jcsc/core/stats.hpp"
#include "jcsc/phy/radar.hpp"

namespace jcsc::phy {

namespace {

enum Tag : std::uint64_t { kBits = 1, kNoise = 2 };

void random_bits(std::span<std::uint8_t> bits, core::RngHandle handle) {
  core::Rng rng(handle);
  for (auto& b : bits) b = rng.bit();
}

void check_inputs(const WaveformConfig& config, std::span<const double> snr_db, std::size_t trials) {
  config.validate();
  if (snr_db.empty()) throw InvariantError("snr list is empty");
  if (trials < 1) throw InvariantError("trials must be >= 1");
}

// RMSE and its interval from the running stats of squared errors.
core::SeriesRow rmse_row(double snr, const WaveformConfig& config, const char* metric,
                         const core::RunningStats& sq) {
  const core::MeanCi mse = sq.summary();
  core::SeriesRow row;
  row.axis = snr;
  row.variant = std::string(to_string(config.mode));
  row.metric = metric;
  row.mean = std::sqrt(mse.mean);
  row.trials = mse.n;
  if (std::isnan(mse.half_width))
    row.ci_half_width = mse.half_width;
  else
    row.ci_half_width = row.mean > 0.0 ? mse.half_width / (2.0 * row.mean) : 0.0;
  return row;
}

}  // namespace

std::size_t frames_for_bits(const WaveformConfig& config, std::size_t trials, std::size_t min_bits) {
  const std::size_t per = config.bits_per_frame();
  const std::size_t needed = per == 0 ? 0 : (min_bits + per - 1) / per;
  return std::max(trials, needed);
}

core::TrialSeries run_ber_sweep(const WaveformConfig& config, std::span<const double> snr_db,
                                std::size_t trials, core::RngHandle rng) {
  check_inputs(config, snr_db, trials);
  core::TrialSeries series;
  series.axis_name = "snr_db";
  for (std::size_t i = 0; i < snr_db.size(); ++i) {
    const core::RngHandle point = rng.substream(i);
    core::RunningStats stats;
    std::vector<std::uint8_t> bits(config.bits_per_frame());
    Grid grid;
    for (std::size_t t = 0; t < trials; ++t) {
      const core::RngHandle trial = point.substream(t);
      random_bits(bits, trial.substream(kBits));
      map_symbols(bits, config, grid);
      apply_comm_channel(grid, snr_db[i], trial.substream(kNoise));
      stats.add(bit_error_rate(bits, demodulate(grid, config)));
    }
    const core::MeanCi ci = stats.summary();
    series.rows.push_back({snr_db[i], std::string(to_string(config.mode)), "ber", ci.mean,
                           ci.half_width, ci.n, core::Flag::ok, 0.0});
  }
  series.sort();
  return series;
}

core::TrialSeries run_rmse_sweep(const WaveformConfig& config, std::span<const double> snr_db,
                                 const PointTarget& target, std::size_t trials,
                                 core::RngHandle rng) {
  check_inputs(config, snr_db, trials);
  check_target(target, config);
  core::TrialSeries series;
  series.axis_name = "snr_db";
  const PointTarget targets[] = {target};
  for (std::size_t i = 0; i < snr_db.size(); ++i) {
    const core::RngHandle point = rng.substream(i);
    core::RunningStats range_sq;
    core::RunningStats velocity_sq;
    std::vector<std::uint8_t> bits(config.bits_per_frame());
    Grid tx;
    for (std::size_t t = 0; t < trials; ++t) {
      const core::RngHandle trial = point.substream(t);
      random_bits(bits, trial.substream(kBits));
      map_symbols(bits, config, tx);
      const Grid rx = apply_echo_channel(tx, targets, snr_db[i], config, trial.substream(kNoise));
      const SensingEstimate est = estimate_range_velocity(rx, tx, config);
      const double er = est.range_m - target.range_m;
      const double ev = est.velocity_mps - target.velocity_mps;
      range_sq.add(er * er);
      velocity_sq.add(ev * ev);
    }
    series.rows.push_back(rmse_row(snr_db[i], config, "range_rmse", range_sq));
    series.rows.push_back(rmse_row(snr_db[i], config, "velocity_rmse", velocity_sq));
  }
  series.sort();
  return series;
}

}  // namespace jcsc::phy
