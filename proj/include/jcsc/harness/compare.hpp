#pragma once

#include <optional>
#include <string>
#include <vector>

#include "jcsc/core/series.hpp"

namespace jcsc::harness {

struct ComparePoint {
  double axis = 0.0;
  double a = 0.0;
  double b = 0.0;
  double ratio = 0.0;            // b / a
  double improvement_pct = 0.0;  // (a - b) / a * 100
};

struct CompareReport {
  std::string axis_name;
  std::string variant_a;
  std::string variant_b;
  std::string metric;
  /// Empty when the two curves use different axes (gain-only comparison).
  std::vector<ComparePoint> points;
  std::optional<double> target;
  /// Axis offset a - b at which both curves reach the target.
  std::optional<double> gain_db;
};

struct CompareOptions {
  std::string variant_a;
  std::string variant_b;
  std::string metric;
  std::optional<double> target;
};

/// Axis position where a curve crosses `target`, interpolating log10(value)
/// linearly between the bracketing points. nullopt when it never crosses.
std::optional<double> crossing(const std::vector<core::SeriesRow>& rows, double target);

/// Pointwise ratio and improvement of series b's variant over series a's.
/// Throws InvariantError when the axes differ, unless options.target is set
/// (then only the horizontal gain is reported).
CompareReport compare(const core::TrialSeries& a, const core::TrialSeries& b,
                      const CompareOptions& options);

std::string render_report(const CompareReport& report);

}  // namespace jcsc::harness
