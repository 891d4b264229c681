#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "jcsc/core/geometry.hpp"

namespace jcsc::nd {

enum class Algorithm { cra, rl_cra };

std::string_view to_string(Algorithm a);
Algorithm algorithm_from_string(std::string_view name);  // throws ParseError

/// Per-sector selection distribution. Probabilities are the normalised
/// weights mixed with a floor: p_s = eps + (1 - S eps) w_s / W, so every
/// sector keeps at least eps and the total is 1.
class SectorPolicy {
 public:
  enum class Mode { uniform, rl };

  static SectorPolicy uniform(int sector_count);
  /// w_s = 1 + beta * hits_s.
  static SectorPolicy from_hits(std::span<const int> hits, double prior_boost, double floor);

  [[nodiscard]] Mode mode() const { return mode_; }
  [[nodiscard]] int sector_count() const { return static_cast<int>(weights_.size()); }
  [[nodiscard]] std::span<const double> weights() const { return weights_; }
  [[nodiscard]] double floor() const { return floor_; }

  /// w_s / W, before flooring.
  [[nodiscard]] double raw_probability(int sector) const;
  [[nodiscard]] double probability(int sector) const;
  [[nodiscard]] std::vector<double> probabilities() const;

  /// Sector for a uniform draw u in [0, 1). Uniform policies use floor(u S).
  [[nodiscard]] int sample(double u) const;

  /// Scale the chosen sector by (1 + rate) after a discovery or (1 - rate)
  /// after an idle listen. No-op for uniform policies.
  void reinforce(int sector, bool discovered, double rate);

 private:
  SectorPolicy(Mode mode, std::vector<double> weights, double floor);
  void renormalise_if_needed();

  Mode mode_;
  std::vector<double> weights_;
  double total_ = 0.0;
  double floor_ = 0.0;
};

/// Per-sector count of other nodes within sense range of `node`.
std::vector<int> sensing_scan(const core::NodeWorld& world, std::size_t node);

}  // namespace jcsc::nd
