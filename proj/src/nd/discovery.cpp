#include "jcsc/nd/discovery.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "jcsc/core/error.hpp"
#include "jcsc/core/stats.hpp"

namespace jcsc::nd {

namespace {

enum Tag : std::uint64_t { kWorld = 1, kSlots = 2 };

void check_policy(const SectorPolicy& p, double eps) {
  double sum = 0.0;
  for (int s = 0; s < p.sector_count(); ++s) {
    const double ps = p.probability(s);
    if (ps < eps * (1.0 - 1e-12)) throw InvariantError("sector probability fell below the floor");
    sum += ps;
  }
  if (std::abs(sum - 1.0) > 1e-12) throw InvariantError("sector probabilities do not sum to 1");
}

}  // namespace

void NdConfig::validate() const {
  const int s = sector_count();
  if (!(comm_range_m > 0.0)) throw InvariantError("comm_range_m must be positive");
  if (!(sense_to_comm_ratio >= 0.0)) throw InvariantError("sense_to_comm_ratio must be >= 0");
  if (!(tx_probability > 0.0 && tx_probability < 1.0))
    throw InvariantError("tx_probability must lie in (0, 1)");
  if (!(rl.exploration_floor >= 0.0) || rl.exploration_floor * s > 1.0 + 1e-12)
    throw InvariantError("exploration_floor * sector_count must not exceed 1");
  if (!(rl.learning_rate >= 0.0 && rl.learning_rate < 1.0))
    throw InvariantError("learning_rate must lie in [0, 1)");
  if (!(rl.prior_boost >= 0.0)) throw InvariantError("prior_boost must be >= 0");
  if (slot_cap < 1) throw InvariantError("slot_cap must be >= 1");
  if (trials < 1) throw InvariantError("trials must be >= 1");
}

double cra_single_neighbor_probability(double tx_probability, int sector_count) {
  const double s = static_cast<double>(sector_count);
  return tx_probability * (1.0 - tx_probability) / (s * s);
}

DiscoveryTrace run_discovery(const NdConfig& config, const core::NodeWorld& world,
                             Algorithm algorithm, core::RngHandle rng,
                             const DiscoveryOptions& options) {
  config.validate();
  const std::size_t n = world.size();
  if (n == 0) throw InvariantError("discovery needs a reference node");
  const int S = world.sector_count;

  DiscoveryTrace trace;
  trace.discovered.assign(n, false);
  trace.discovery_slot.assign(n, 0);

  // Static geometry: sector of j seen from i, and for each listener i the
  // in-range nodes grouped by the sector they lie in.
  std::vector<int> sector(n * n, 0);
  std::vector<std::vector<std::vector<std::size_t>>> by_sector(
      n, std::vector<std::vector<std::size_t>>(static_cast<std::size_t>(S)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      sector[i * n + j] = core::sector_of(world.positions[i], world.positions[j], S);
      if (world.in_comm_range(i, j))
        by_sector[i][static_cast<std::size_t>(sector[i * n + j])].push_back(j);
    }

  std::vector<SectorPolicy> policy;
  policy.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<int> hits = options.zero_sensing ? std::vector<int>(static_cast<std::size_t>(S), 0)
                                                 : sensing_scan(world, i);
    if (i == 0) trace.sensing_hits = hits;
    if (algorithm == Algorithm::cra)
      policy.push_back(SectorPolicy::uniform(S));
    else
      policy.push_back(SectorPolicy::from_hits(hits, config.rl.prior_boost, config.rl.exploration_floor));
  }

  std::size_t remaining = 0;
  for (std::size_t j = 1; j < n; ++j) remaining += world.in_comm_range(0, j);
  if (remaining == 0) return trace;

  // Knowledge of every listener, used for its own reinforcement signal.
  std::vector<std::uint8_t> known(n * n, 0);
  std::vector<std::uint8_t> transmits(n);
  std::vector<int> beam(n);
  core::Rng draws(rng);

  for (std::uint64_t slot = 1; slot <= config.slot_cap; ++slot) {
    for (std::size_t i = 0; i < n; ++i) {
      const double u_role = draws.uniform();
      const double u_sector = draws.uniform();
      transmits[i] = u_role < config.tx_probability;
      beam[i] = policy[i].sample(u_sector);
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (transmits[r]) continue;
      bool learned = false;
      for (std::size_t b : by_sector[r][static_cast<std::size_t>(beam[r])]) {
        if (!transmits[b] || beam[b] != sector[b * n + r]) continue;
        if (options.record_events) trace.events.push_back({slot, r, b});
        if (known[r * n + b]) continue;
        known[r * n + b] = 1;
        learned = true;
        if (r == 0) {
          trace.discovered[b] = true;
          trace.discovery_slot[b] = slot;
          --remaining;
        }
      }
      policy[r].reinforce(beam[r], learned, config.rl.learning_rate);
    }
    if (options.check_invariants && algorithm == Algorithm::rl_cra)
      for (const auto& p : policy) check_policy(p, config.rl.exploration_floor);
    if (remaining == 0) {
      trace.slots_elapsed = slot;
      return trace;
    }
  }
  trace.slots_elapsed = config.slot_cap;
  trace.truncated = true;
  return trace;
}

NdSamples run_nd_trials(const NdConfig& config, std::size_t neighbor_count, Algorithm algorithm,
                        core::RngHandle rng) {
  config.validate();
  NdSamples out;
  out.slots.reserve(config.trials);
  for (std::size_t t = 0; t < config.trials; ++t) {
    const core::RngHandle trial = rng.substream(t);
    const core::NodeWorld world =
        core::place_in_comm_disk(trial.substream(kWorld), neighbor_count, config.radio());
    const DiscoveryTrace trace = run_discovery(config, world, algorithm, trial.substream(kSlots));
    out.slots.push_back(static_cast<double>(trace.slots_elapsed));
    out.truncated += trace.truncated;
  }
  return out;
}

core::TrialSeries run_nd_sweep(const NdConfig& config, std::span<const std::size_t> neighbor_counts,
                               core::RngHandle rng) {
  if (neighbor_counts.empty()) throw InvariantError("neighbor_counts is empty");
  core::TrialSeries series;
  series.axis_name = "neighbor_count";
  for (std::size_t i = 0; i < neighbor_counts.size(); ++i) {
    for (Algorithm a : {Algorithm::cra, Algorithm::rl_cra}) {
      const NdSamples s = run_nd_trials(config, neighbor_counts[i], a, rng.substream(i));
      const core::MeanCi ci = core::mean_ci(s.slots);
      core::SeriesRow row;
      row.axis = static_cast<double>(neighbor_counts[i]);
      row.variant = std::string(to_string(a));
      row.metric = "slots";
      row.mean = ci.mean;
      row.ci_half_width = ci.half_width;
      row.trials = ci.n;
      row.truncated_fraction = static_cast<double>(s.truncated) / static_cast<double>(s.slots.size());
      row.flag = s.truncated > 0 ? core::Flag::truncated : core::Flag::ok;
      series.rows.push_back(row);
    }
  }
  series.sort();
  return series;
}

}  // namespace jcsc::nd
