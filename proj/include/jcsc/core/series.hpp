#pragma once

#include <cstddef>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

namespace jcsc::core {

enum class Flag { ok, truncated, saturated, warn_no_hidden };

std::string_view to_string(Flag flag);

/// One sweep point for one variant and metric.
struct SeriesRow {
  double axis = 0.0;
  std::string variant;
  std::string metric;
  double mean = 0.0;
  double ci_half_width = std::numeric_limits<double>::quiet_NaN();
  std::size_t trials = 0;
  Flag flag = Flag::ok;
  double truncated_fraction = 0.0;
};

/// Seeded sweep result. Rows are kept sorted by (axis, variant, metric).
struct TrialSeries {
  std::string axis_name;
  std::vector<SeriesRow> rows;

  void sort();
  [[nodiscard]] bool all_ok() const;
  [[nodiscard]] std::vector<std::string> variants() const;
  [[nodiscard]] std::vector<std::string> metrics() const;
  [[nodiscard]] std::vector<SeriesRow> select(std::string_view variant,
                                              std::string_view metric) const;
};

}  // namespace jcsc::core
