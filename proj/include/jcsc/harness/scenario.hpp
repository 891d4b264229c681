#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "jcsc/mac/mac.hpp"
#include "jcsc/nd/discovery.hpp"
#include "jcsc/phy/channel.hpp"
#include "jcsc/phy/waveform.hpp"

namespace jcsc::harness {

enum class Experiment { ber, rmse, nd, mac };

std::string_view to_string(Experiment e);

struct ModeSweep {
  phy::Mode mode = phy::Mode::plain_ofdm;
  std::vector<double> snr_db;
  friend bool operator==(const ModeSweep&, const ModeSweep&) = default;
};

struct PhyScenario {
  /// Waveform in cd_ofdm form; plain_ofdm runs use with_mode().
  phy::WaveformConfig waveform;
  std::vector<ModeSweep> modes;
  /// BER sweeps run at least this many bits per point.
  std::size_t min_bits_per_point = 0;
  phy::PointTarget target{50.0, 10.0, {1.0, 0.0}};
  friend bool operator==(const PhyScenario&, const PhyScenario&) = default;
};

struct NdScenario {
  nd::NdConfig config;
  std::vector<std::size_t> neighbor_counts{30};
  friend bool operator==(const NdScenario&, const NdScenario&) = default;
};

struct Scenario {
  Experiment experiment = Experiment::ber;
  std::uint64_t seed = 1;
  std::size_t trials = 1;
  std::string output;
  PhyScenario phy;
  NdScenario nd;
  mac::MacConfig mac;

  /// Throws InvariantError.
  void validate() const;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// Parse scenario text. Unknown keys, bad types and missing required keys
/// raise ParseError with the line number; model invariants raise
/// InvariantError.
Scenario parse_scenario(std::string_view text);

/// Load a scenario file, or recover the scenario embedded in the header of
/// a results CSV.
Scenario load_scenario(const std::filesystem::path& path);

/// Fully resolved scenario text; parse_scenario(to_yaml(s)) == s.
std::string to_yaml(const Scenario& s);

/// Directory holding the bundled scenarios.
std::filesystem::path scenario_dir();

/// Names (file stems) of the bundled scenarios, sorted.
std::vector<std::string> bundled_scenarios();

/// A path if it names an existing file, else the bundled scenario of that name.
std::filesystem::path resolve_scenario(std::string_view name_or_path);

}  // namespace jcsc::harness
