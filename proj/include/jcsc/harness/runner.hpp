#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "jcsc/core/series.hpp"
#include "jcsc/harness/scenario.hpp"

namespace jcsc::harness {

/// Run the simulator the scenario selects. Deterministic in the scenario.
core::TrialSeries run_experiment(const Scenario& scenario);

struct RunOutcome {
  core::TrialSeries series;
  std::string csv;
  std::filesystem::path path;
};

/// Run and write the CSV atomically to `out` (or the scenario's output,
/// resolved against the working directory).
RunOutcome run_scenario(const Scenario& scenario,
                        const std::optional<std::filesystem::path>& out = std::nullopt);

}  // namespace jcsc::harness
