#pragma once

#include <limits>
#include <span>

#include "jcsc/core/rng.hpp"
#include "jcsc/phy/waveform.hpp"

namespace jcsc::phy {

/// Pass as snr_db to disable noise.
inline constexpr double kNoNoise = std::numeric_limits<double>::infinity();

struct PointTarget {
  double range_m = 0.0;
  double velocity_mps = 0.0;
  cplx reflect_amp{1.0, 0.0};
  friend bool operator==(const PointTarget&, const PointTarget&) = default;
};

/// Per-element complex noise variance for a unit-power signal at snr_db;
/// 0 for kNoNoise.
double noise_variance(double snr_db);

/// Adds circular complex Gaussian noise of the given total variance.
void add_awgn(std::span<cplx> samples, double variance, core::Rng& rng);

/// Flat unit-gain channel plus AWGN at a per-resource-element SNR.
/// Throws InvariantError for NaN or -inf snr_db.
Grid apply_comm_channel(const Grid& tx, double snr_db, core::RngHandle rng);
/// In-place form: adds the noise to `grid`.
void apply_comm_channel(Grid& grid, double snr_db, core::RngHandle rng);

/// Throws InvariantError when the target's round-trip delay exceeds the
/// cyclic prefix or its range is negative.
void check_target(const PointTarget& target, const WaveformConfig& config);

/// Monostatic echo: sum over targets of a * e^{-j2pi n df tau} * e^{+j2pi fD m T} * X(m, n),
/// tau = 2r/c, fD = 2 v fc / c, plus AWGN whose variance is set by snr_db
/// relative to a unit-amplitude reflector.
Grid apply_echo_channel(const Grid& tx, std::span<const PointTarget> targets, double snr_db,
                        const WaveformConfig& config, core::RngHandle rng);

}  // namespace jcsc::phy
