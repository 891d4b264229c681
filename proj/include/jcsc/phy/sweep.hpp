#pragma once

#include <cstddef>
#include <span>

#include "jcsc/core/rng.hpp"
#include "jcsc/core/series.hpp"
#include "jcsc/phy/channel.hpp"
#include "jcsc/phy/waveform.hpp"

namespace jcsc::phy {

/// Frames needed so a point carries at least min_bits bits (and >= trials frames).
std::size_t frames_for_bits(const WaveformConfig& config, std::size_t trials, std::size_t min_bits);

/// BER per SNR point, one frame per trial. Axis "snr_db", variant = mode,
/// metric "ber". Frame t of point i uses rng.substream(i).substream(t).
core::TrialSeries run_ber_sweep(const WaveformConfig& config, std::span<const double> snr_db,
                                std::size_t trials, core::RngHandle rng);

/// Range and velocity RMSE per echo-SNR point (metrics "range_rmse",
/// "velocity_rmse"). The interval is the delta-method transform of the
/// squared-error mean.
core::TrialSeries run_rmse_sweep(const WaveformConfig& config, std::span<const double> snr_db,
                                 const PointTarget& target, std::size_t trials,
                                 core::RngHandle rng);

}  // namespace jcsc::phy
