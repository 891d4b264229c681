#include "jcsc/mac/mac.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <numeric>
#include <string>

#include "jcsc/core/error.hpp"
#include "jcsc/core/stats.hpp"

namespace jcsc::mac {

namespace {

enum Tag : std::uint64_t { kWorld = 1, kTraffic = 2 };
constexpr std::uint64_t kKnowledge = 1;
constexpr int kMaxPlacementAttempts = 10'000;

std::size_t nearest(const core::NodeWorld& g, std::size_t i) {
  std::size_t best = i;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < g.size(); ++j) {
    if (j == i) continue;
    const double d = core::distance(g.positions[i], g.positions[j]);
    if (d < best_d) {
      best_d = d;
      best = j;
    }
  }
  return best;
}

MacWorld finish_world(const MacConfig& config, core::NodeWorld geometry, core::RngHandle rng) {
  MacWorld w;
  w.geometry = std::move(geometry);
  w.carrier_sense_range_m = config.carrier_sense_range_m;
  const std::size_t n = w.size();
  for (std::size_t i = 0; i < n; ++i) {
    w.receiver.push_back(nearest(w.geometry, i));
    if (!w.hears(w.receiver[i], i))
      throw InvariantError("node " + std::to_string(i) + " has no receiver within comm range");
  }

  w.known_hidden.assign(n, {});
  core::Rng knowledge(rng.substream(kKnowledge));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b) {
        if (a == r || b == r) continue;
        if (!w.hears(r, a) || !w.hears(r, b) || w.can_sense(a, b)) continue;
        w.hidden_pairs.push_back({r, a, b});
        if (config.variant != Variant::jcsc) continue;
        if (!knowledge.bernoulli(config.hidden_detection_fraction)) continue;
        auto learn = [&](std::size_t x, std::size_t y) {
          auto& k = w.known_hidden[x];
          if (std::find(k.begin(), k.end(), y) == k.end()) k.push_back(y);
        };
        learn(a, b);
        learn(b, a);
      }
  for (std::size_t i = 0; i < n; ++i) {
    std::sort(w.known_hidden[i].begin(), w.known_hidden[i].end());
    for (std::size_t j : w.known_hidden[i])
      if (w.can_sense(i, j)) throw InvariantError("known hidden node lies inside carrier-sense range");
  }
  return w;
}

core::RadioSpec radio_of(const MacConfig& c) { return {c.comm_range_m, 1.0, 10.0}; }

}  // namespace

std::string_view to_string(Variant v) { return v == Variant::conventional ? "conventional" : "jcsc"; }

Variant variant_from_string(std::string_view name) {
  if (name == "conventional") return Variant::conventional;
  if (name == "jcsc") return Variant::jcsc;
  throw ParseError("unknown MAC variant '" + std::string(name) + "' (expected conventional or jcsc)");
}

double MacConfig::arrival_probability(std::uint32_t frame_slots) const {
  if (arrival_prob) return *arrival_prob;
  return offered_load / (static_cast<double>(node_count) * static_cast<double>(frame_slots));
}

void MacConfig::validate() const {
  if (node_count < 2) throw InvariantError("node_count must be >= 2");
  if (frame_slots.empty()) throw InvariantError("frame_slots list is empty");
  for (auto f : frame_slots)
    if (f < 1) throw InvariantError("frame_slots entries must be >= 1");
  if (arrival_prob && !(*arrival_prob > 0.0 && *arrival_prob < 1.0))
    throw InvariantError("arrival_prob must lie in (0, 1)");
  if (!arrival_prob) {
    if (!(offered_load > 0.0)) throw InvariantError("offered_load must be positive");
    for (auto f : frame_slots) {
      const double p = arrival_probability(f);
      if (!(p > 0.0 && p < 1.0)) throw InvariantError("derived arrival probability outside (0, 1)");
    }
  }
  if (backoff_window.min > backoff_window.max) throw InvariantError("backoff min must not exceed max");
  if (!(side_m > 0.0)) throw InvariantError("side_m must be positive");
  if (!(comm_range_m > 0.0)) throw InvariantError("comm_range_m must be positive");
  if (!(carrier_sense_range_m >= 0.0)) throw InvariantError("carrier_sense_range_m must be >= 0");
  if (!(hidden_detection_fraction >= 0.0 && hidden_detection_fraction <= 1.0))
    throw InvariantError("hidden_detection_fraction must lie in [0, 1]");
  if (trials < 1) throw InvariantError("trials must be >= 1");
  if (horizon_slots == 0 && min_completed_frames < 1)
    throw InvariantError("min_completed_frames must be >= 1");
}

bool MacWorld::can_sense(std::size_t i, std::size_t j) const {
  return core::distance(geometry.positions[i], geometry.positions[j]) <= carrier_sense_range_m;
}

bool MacWorld::hears(std::size_t r, std::size_t t) const {
  return core::distance(geometry.positions[r], geometry.positions[t]) <= geometry.comm_range_m;
}

bool MacWorld::knows(std::size_t i, std::size_t j) const {
  const auto& k = known_hidden[i];
  return std::binary_search(k.begin(), k.end(), j);
}

MacWorld build_mac_world(const MacConfig& config, core::RngHandle rng) {
  config.validate();
  const core::RadioSpec radio = radio_of(config);
  for (int attempt = 0; attempt < kMaxPlacementAttempts; ++attempt) {
    core::NodeWorld g =
        core::place_nodes(rng.substream(static_cast<std::uint64_t>(attempt)), config.node_count,
                          config.side_m, radio);
    bool linked = true;
    for (std::size_t i = 0; i < g.size() && linked; ++i)
      linked = g.in_comm_range(i, nearest(g, i));
    if (linked) return finish_world(config, std::move(g), rng);
  }
  throw InvariantError("could not place nodes with every nearest neighbour in comm range");
}

MacWorld build_mac_world(const MacConfig& config, std::vector<core::Vec2> positions,
                         core::RngHandle rng) {
  config.validate();
  if (positions.size() < 2) throw InvariantError("node_count must be >= 2");
  return finish_world(config, core::world_from_positions(std::move(positions), radio_of(config)), rng);
}

double MacResult::mean_delay() const {
  if (delays.empty()) return std::numeric_limits<double>::quiet_NaN();
  const double sum = std::accumulate(delays.begin(), delays.end(), 0.0);
  return sum / static_cast<double>(delays.size());
}

MacResult run_mac(const MacConfig& config, const MacWorld& world, std::uint32_t frame_slots,
                  core::RngHandle rng, const MacOptions& options) {
  config.validate();
  if (frame_slots < 1) throw InvariantError("frame_slots must be >= 1");
  const std::size_t n = world.size();
  const double p = config.arrival_probability(frame_slots);
  const std::uint32_t cw_min = config.backoff_window.min;
  const std::uint32_t cw_max = config.backoff_window.max;

  std::vector<std::vector<std::uint8_t>> blocks(n, std::vector<std::uint8_t>(n, 0));
  std::vector<std::vector<std::uint8_t>> audible(n, std::vector<std::uint8_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      if (i == k) continue;
      blocks[i][k] = world.can_sense(i, k) || world.knows(i, k);
      audible[i][k] = world.hears(i, k);
    }

  core::Rng rand(rng);
  std::vector<std::deque<std::uint64_t>> queue(n);
  std::vector<std::uint32_t> backoff(n, 0);
  std::vector<std::uint32_t> cw(n, cw_min);
  std::vector<std::uint32_t> remaining(n, 0);
  std::vector<std::uint8_t> failed(n, 0);
  std::vector<std::uint8_t> active(n, 0);
  std::vector<std::uint8_t> starts(n, 0);

  MacResult res;
  const std::uint64_t horizon =
      config.horizon_slots > 0 ? config.horizon_slots : config.max_horizon_slots;
  std::uint64_t t = 0;
  for (; t < horizon; ++t) {
    if (config.horizon_slots == 0 && res.delays.size() >= config.min_completed_frames) break;
    for (std::size_t i = 0; i < n; ++i)
      if (rand.bernoulli(p)) {
        queue[i].push_back(t);
        ++res.arrived;
      }

    for (std::size_t i = 0; i < n; ++i) active[i] = remaining[i] > 0;
    std::fill(starts.begin(), starts.end(), 0);
    for (std::size_t i = 0; i < n; ++i) {
      if (active[i]) continue;
      if (backoff[i] > 0) {
        --backoff[i];
        continue;
      }
      if (queue[i].empty()) continue;
      bool busy = false;
      for (std::size_t k = 0; k < n && !busy; ++k) busy = active[k] && blocks[i][k];
      if (busy)
        backoff[i] = static_cast<std::uint32_t>(rand.below(cw[i] + std::uint64_t{1}));
      else
        starts[i] = 1;
    }
    for (std::size_t i = 0; i < n; ++i)
      if (starts[i]) {
        remaining[i] = frame_slots;
        failed[i] = 0;
        ++res.attempts;
      }

    for (std::size_t i = 0; i < n; ++i) {
      if (remaining[i] == 0 || failed[i]) continue;
      const std::size_t r = world.receiver[i];
      if (remaining[r] > 0) {
        failed[i] = 2;
        continue;
      }
      for (std::size_t k = 0; k < n; ++k) {
        if (k == i || k == r || remaining[k] == 0 || !audible[r][k]) continue;
        if (!world.hears(r, i) || !world.hears(r, k))
          throw InvariantError("collision recorded at a receiver out of range");
        failed[i] = 1;
        if (options.record_collisions) res.collision_records.push_back({t, r, i, k});
        break;
      }
    }

    for (std::size_t i = 0; i < n; ++i) {
      if (remaining[i] == 0) continue;
      if (--remaining[i] > 0) continue;
      if (failed[i] == 0) {
        res.delays.push_back(t + 1 - queue[i].front());
        queue[i].pop_front();
        ++res.delivered;
        cw[i] = cw_min;
      } else {
        if (failed[i] == 1)
          ++res.collisions;
        else
          ++res.receiver_busy;
        cw[i] = std::min(2 * cw[i] + 1, cw_max);
      }
      backoff[i] = static_cast<std::uint32_t>(rand.below(cw[i] + std::uint64_t{1}));
    }

    if (options.check_invariants) {
      std::uint64_t queued = 0;
      std::uint64_t flight = 0;
      for (std::size_t i = 0; i < n; ++i) {
        const bool tx = remaining[i] > 0;
        flight += tx;
        queued += queue[i].size() - (tx ? 1 : 0);
      }
      if (res.arrived != res.delivered + queued + flight)
        throw InvariantError("frame conservation violated");
    }
  }
  res.slots = t;
  for (std::size_t i = 0; i < n; ++i) {
    const bool tx = remaining[i] > 0;
    res.in_flight += tx;
    res.queued += queue[i].size() - (tx ? 1 : 0);
  }
  const std::uint64_t backlog = res.queued + res.in_flight;
  res.saturated = backlog > std::max<std::uint64_t>(50, res.arrived / 20) ||
                  (config.horizon_slots == 0 && res.delays.size() < config.min_completed_frames);
  return res;
}

MacSamples run_mac_trials(const MacConfig& config, Variant variant, std::uint32_t frame_slots,
                          core::RngHandle rng) {
  MacConfig c = config;
  c.variant = variant;
  c.validate();
  MacSamples out;
  for (std::size_t t = 0; t < c.trials; ++t) {
    const core::RngHandle trial = rng.substream(t);
    const MacWorld world = build_mac_world(c, trial.substream(kWorld));
    const MacResult r = run_mac(c, world, frame_slots, trial.substream(kTraffic).substream(frame_slots));
    out.mean_delays.push_back(r.mean_delay());
    out.saturated += r.saturated;
    out.worlds_without_hidden += world.hidden_pairs.empty();
  }
  return out;
}

core::TrialSeries run_mac_sweep(const MacConfig& config, core::RngHandle rng) {
  config.validate();
  core::TrialSeries series;
  series.axis_name = "frame_slots";
  for (std::uint32_t f : config.frame_slots) {
    for (Variant v : {Variant::conventional, Variant::jcsc}) {
      const MacSamples s = run_mac_trials(config, v, f, rng);
      const core::MeanCi ci = core::mean_ci(s.mean_delays);
      core::SeriesRow row;
      row.axis = f;
      row.variant = std::string(to_string(v));
      row.metric = "delay";
      row.mean = ci.mean;
      row.ci_half_width = ci.half_width;
      row.trials = ci.n;
      if (s.saturated > 0)
        row.flag = core::Flag::saturated;
      else if (s.worlds_without_hidden == s.mean_delays.size())
        row.flag = core::Flag::warn_no_hidden;
      series.rows.push_back(row);
    }
  }
  series.sort();
  return series;
}

}  // namespace jcsc::mac
