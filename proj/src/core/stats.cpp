#include "jcsc/core/stats.hpp"

#include <cmath>
#include <stdexcept>

namespace jcsc::core {

void RunningStats::add(double x) {
  ++n_;
  const double delta = x - mean_;
  mean_ += delta / static_cast<double>(n_);
  m2_ += delta * (x - mean_);
}

double RunningStats::variance() const {
  return n_ < 2 ? 0.0 : m2_ / static_cast<double>(n_ - 1);
}

MeanCi RunningStats::summary() const {
  MeanCi out;
  out.mean = mean_;
  out.n = n_;
  if (n_ >= 2) out.half_width = kZ95 * std::sqrt(variance() / static_cast<double>(n_));
  return out;
}

MeanCi mean_ci(std::span<const double> samples) {
  RunningStats s;
  for (double x : samples) s.add(x);
  return s.summary();
}

RatioCi paired_ratio_ci(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size() || a.empty())
    throw std::invalid_argument("paired_ratio_ci: need equal, non-empty samples");
  RunningStats sa, sb;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sa.add(a[i]);
    sb.add(b[i]);
  }
  RatioCi out;
  out.ratio = sb.mean() / sa.mean();
  // Linearised residuals d_i = b_i - R a_i; Var(R) ~ Var(d) / (n mean(a)^2).
  RunningStats d;
  for (std::size_t i = 0; i < a.size(); ++i) d.add(b[i] - out.ratio * a[i]);
  const double se = std::sqrt(d.variance() / static_cast<double>(a.size())) / sa.mean();
  out.lower = out.ratio - kZ95 * se;
  out.upper = out.ratio + kZ95 * se;
  return out;
}

double q_function(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

}  // namespace jcsc::core
