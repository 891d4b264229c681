#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "jcsc/core/geometry.hpp"
#include "jcsc/core/rng.hpp"
#include "jcsc/core/series.hpp"
#include "jcsc/nd/policy.hpp"

namespace jcsc::nd {

struct RlParams {
  double prior_boost = 9.0;        // beta
  double learning_rate = 0.1;      // alpha
  double exploration_floor = 0.005;  // eps
  friend bool operator==(const RlParams&, const RlParams&) = default;
};

struct NdConfig {
  std::size_t neighbor_count = 30;
  double comm_range_m = 50.0;
  double beamwidth_deg = 10.0;
  double sense_to_comm_ratio = 0.5;
  double tx_probability = 0.5;
  RlParams rl;
  std::uint64_t slot_cap = 1'000'000;
  std::size_t trials = 1000;

  [[nodiscard]] int sector_count() const { return core::sector_count_for(beamwidth_deg); }
  [[nodiscard]] core::RadioSpec radio() const {
    return {comm_range_m, sense_to_comm_ratio, beamwidth_deg};
  }
  void validate() const;

  friend bool operator==(const NdConfig&, const NdConfig&) = default;
};

/// One successful directed handshake: `listener` heard `transmitter`.
struct DiscoveryEvent {
  std::uint64_t slot = 0;
  std::size_t listener = 0;
  std::size_t transmitter = 0;
  friend bool operator==(const DiscoveryEvent&, const DiscoveryEvent&) = default;
};

struct DiscoveryTrace {
  /// Indexed by node id; entry 0 (the reference) is unused.
  std::vector<bool> discovered;
  /// Slot (1-based) at which the reference discovered each node, 0 if never.
  std::vector<std::uint64_t> discovery_slot;
  std::uint64_t slots_elapsed = 0;
  bool truncated = false;
  /// Reference node's sensing hits per sector.
  std::vector<int> sensing_hits;
  /// Every handshake by any listener, when recording is enabled.
  std::vector<DiscoveryEvent> events;

  friend bool operator==(const DiscoveryTrace&, const DiscoveryTrace&) = default;
};

struct DiscoveryOptions {
  bool record_events = false;
  /// Assert policy normalisation and the floor after every slot.
  bool check_invariants = false;
  /// Replace every node's sensing scan with zeros.
  bool zero_sensing = false;
};

/// Slotted discovery by reference node 0 of every other node in `world`.
/// Each slot every node transmits with tx_probability, otherwise listens,
/// and points its beam at a sector drawn from its policy. The reference
/// discovers B when B transmits toward the reference's sector while the
/// reference listens toward B's sector. Stops at full discovery or slot_cap.
DiscoveryTrace run_discovery(const NdConfig& config, const core::NodeWorld& world,
                             Algorithm algorithm, core::RngHandle rng,
                             const DiscoveryOptions& options = {});

/// Slots used in each of `trials` paired trials at one neighbour count.
/// Trial t places its world from rng.substream(t) and shares the slot stream
/// between algorithms, so the CRA and RL-CRA samples are paired.
struct NdSamples {
  std::vector<double> slots;
  std::size_t truncated = 0;
};
NdSamples run_nd_trials(const NdConfig& config, std::size_t neighbor_count, Algorithm algorithm,
                        core::RngHandle rng);

/// Axis "neighbor_count", variants cra / rl_cra, metric "slots". Point i
/// uses rng.substream(i).
core::TrialSeries run_nd_sweep(const NdConfig& config, std::span<const std::size_t> neighbor_counts,
                               core::RngHandle rng);

/// Closed-form one-slot directed discovery probability for a single
/// neighbour under CRA: tx_p (1 - tx_p) / S^2.
double cra_single_neighbor_probability(double tx_probability, int sector_count);

}  // namespace jcsc::nd
