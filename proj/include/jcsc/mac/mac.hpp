#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "jcsc/core/geometry.hpp"
#include "jcsc/core/rng.hpp"
#include "jcsc/core/series.hpp"

namespace jcsc::mac {

enum class Variant { conventional, jcsc };

std::string_view to_string(Variant v);
Variant variant_from_string(std::string_view name);  // throws ParseError

struct BackoffWindow {
  std::uint32_t min = 15;
  std::uint32_t max = 1023;
  friend bool operator==(const BackoffWindow&, const BackoffWindow&) = default;
};

struct MacConfig {
  std::size_t node_count = 10;
  std::vector<std::uint32_t> frame_slots{5, 10, 20, 40};
  /// Per-node per-slot arrival probability. When unset it is derived per
  /// frame length as offered_load / (node_count * frame_slots).
  std::optional<double> arrival_prob;
  double offered_load = 0.4;
  BackoffWindow backoff_window;
  double side_m = 100.0;
  double comm_range_m = 50.0;
  double carrier_sense_range_m = 50.0;
  Variant variant = Variant::jcsc;
  double hidden_detection_fraction = 1.0;
  std::size_t trials = 50;
  /// Fixed horizon; 0 runs until min_completed_frames complete (bounded by
  /// max_horizon_slots).
  std::uint64_t horizon_slots = 0;
  std::size_t min_completed_frames = 1000;
  std::uint64_t max_horizon_slots = 50'000'000;

  [[nodiscard]] double arrival_probability(std::uint32_t frame_slots) const;
  void validate() const;

  friend bool operator==(const MacConfig&, const MacConfig&) = default;
};

/// Transmitters i and j both reach receiver r but cannot sense each other.
struct HiddenPair {
  std::size_t receiver = 0;
  std::size_t a = 0;
  std::size_t b = 0;
  friend bool operator==(const HiddenPair&, const HiddenPair&) = default;
};

struct MacWorld {
  core::NodeWorld geometry;
  double carrier_sense_range_m = 0.0;
  std::vector<std::size_t> receiver;  // nearest neighbour of each node
  std::vector<HiddenPair> hidden_pairs;
  /// known_hidden[i] lists the nodes whose activity i learns from sensing.
  std::vector<std::vector<std::size_t>> known_hidden;

  [[nodiscard]] std::size_t size() const { return geometry.size(); }
  [[nodiscard]] bool can_sense(std::size_t i, std::size_t j) const;
  [[nodiscard]] bool hears(std::size_t receiver, std::size_t transmitter) const;
  [[nodiscard]] bool knows(std::size_t i, std::size_t j) const;
};

/// Uniform placement in the square (redrawn until every node's nearest
/// neighbour is within comm range), nearest-neighbour receivers, hidden-pair
/// map, and for the jcsc variant the sensed subset of hidden pairs (each pair
/// known to both parties with probability hidden_detection_fraction, drawn
/// from rng.substream(1) so the placement stream is unaffected).
MacWorld build_mac_world(const MacConfig& config, core::RngHandle rng);

/// Same from explicit coordinates (no redraw).
MacWorld build_mac_world(const MacConfig& config, std::vector<core::Vec2> positions,
                         core::RngHandle rng);

struct CollisionRecord {
  std::uint64_t slot = 0;
  std::size_t receiver = 0;
  std::size_t transmitter = 0;
  std::size_t interferer = 0;
};

struct MacOptions {
  bool record_collisions = false;
  /// Check frame conservation every slot.
  bool check_invariants = false;
};

struct MacResult {
  std::vector<std::uint64_t> delays;
  std::uint64_t slots = 0;
  std::uint64_t arrived = 0;
  std::uint64_t delivered = 0;
  std::uint64_t queued = 0;
  std::uint64_t in_flight = 0;
  std::uint64_t attempts = 0;
  std::uint64_t collisions = 0;
  /// Failed receptions because the receiver was itself transmitting.
  std::uint64_t receiver_busy = 0;
  bool saturated = false;
  std::vector<CollisionRecord> collision_records;

  [[nodiscard]] double mean_delay() const;
  friend bool operator==(const MacResult&, const MacResult&) = default;
};

/// Slotted CSMA with binary exponential backoff. A node with a pending frame
/// and an expired backoff counter transmits for frame_slots slots when no
/// node within carrier-sense range is active (jcsc: and no known hidden node
/// is active); otherwise it draws a fresh backoff. A reception fails if any
/// other active node is heard by the receiver, or the receiver transmits.
MacResult run_mac(const MacConfig& config, const MacWorld& world, std::uint32_t frame_slots,
                  core::RngHandle rng, const MacOptions& options = {});

/// Axis "frame_slots", variants conventional / jcsc, metric "delay". Trial t
/// shares its geometry and traffic stream across variants (paired).
core::TrialSeries run_mac_sweep(const MacConfig& config, core::RngHandle rng);

/// Per-trial mean delays for one variant at one frame length.
struct MacSamples {
  std::vector<double> mean_delays;
  std::size_t saturated = 0;
  std::size_t worlds_without_hidden = 0;
};
MacSamples run_mac_trials(const MacConfig& config, Variant variant, std::uint32_t frame_slots,
                          core::RngHandle rng);

}  // namespace jcsc::mac
