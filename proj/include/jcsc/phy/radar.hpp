#pragma once

#include <cstddef>

#include "jcsc/phy/waveform.hpp"

namespace jcsc::phy {

struct SensingEstimate {
  double range_m = 0.0;
  double velocity_mps = 0.0;
  /// Peak power over the strongest cell outside the peak's 3x3 neighbourhood.
  double peak_to_sidelobe_db = 0.0;
  /// Resource elements dropped because the transmitted symbol was zero.
  std::size_t excluded_elements = 0;
  std::size_t range_bin = 0;
  std::size_t doppler_bin = 0;
};

/// Periodogram radar: divide received by transmitted symbols, IDFT across
/// subcarriers (delay), DFT across symbols (Doppler), take the 2D peak over
/// delay bins [0, cp_samples] and refine each axis by 3-point parabolic
/// interpolation of the magnitude.
SensingEstimate estimate_range_velocity(const Grid& received, const Grid& transmitted,
                                        const WaveformConfig& config);

/// Sub-bin offset of a 3-point peak; 0 if the points do not form a maximum.
double parabolic_offset(double left, double centre, double right);

}  // namespace jcsc::phy
