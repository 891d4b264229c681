#pragma once

#include <cstddef>
#include <limits>
#include <span>

namespace jcsc::core {

/// Two-sided 95% normal quantile.
inline constexpr double kZ95 = 1.959963984540054;

struct MeanCi {
  double mean = 0.0;
  /// 95% normal-approximation half-width; NaN when fewer than two samples.
  double half_width = std::numeric_limits<double>::quiet_NaN();
  std::size_t n = 0;
};

/// Welford accumulator.
class RunningStats {
 public:
  void add(double x);
  [[nodiscard]] std::size_t count() const { return n_; }
  [[nodiscard]] double mean() const { return mean_; }
  /// Unbiased sample variance; 0 for n < 2.
  [[nodiscard]] double variance() const;
  [[nodiscard]] MeanCi summary() const;

 private:
  std::size_t n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

MeanCi mean_ci(std::span<const double> samples);

/// Ratio of paired means mean(b)/mean(a) with a delta-method 95% interval.
struct RatioCi {
  double ratio = 0.0;
  double lower = 0.0;
  double upper = 0.0;
};
RatioCi paired_ratio_ci(std::span<const double> a, std::span<const double> b);

/// Upper-tail standard normal probability Q(x).
double q_function(double x);

}  // namespace jcsc::core
