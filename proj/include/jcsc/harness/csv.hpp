#pragma once

#include <filesystem>
#include <string>

#include "jcsc/core/series.hpp"
#include "jcsc/harness/scenario.hpp"

namespace jcsc::harness {

inline constexpr std::string_view kScenarioBegin = "# --- scenario ---";
inline constexpr std::string_view kScenarioEnd = "# --- end scenario ---";

/// Shortest round-trip decimal; "na" for NaN.
std::string format_number(double v);

/// Results table with a comment header embedding the resolved scenario.
std::string render_csv(const Scenario& scenario, const core::TrialSeries& series);

/// Write via a temporary file in the same directory and rename, so readers
/// never see a partial file. Throws std::runtime_error when the path is not
/// writable.
void write_atomically(const std::filesystem::path& path, const std::string& content);

/// Parse a results CSV back into a series (comment lines skipped).
core::TrialSeries read_series_csv(const std::filesystem::path& path);
core::TrialSeries parse_series_csv(std::string_view text);

/// The scenario block of a results CSV header, with the comment prefixes
/// removed. Throws ParseError when there is none.
std::string extract_embedded_scenario(std::string_view csv_text);

}  // namespace jcsc::harness
