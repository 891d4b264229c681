#include "jcsc/harness/scenario.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "jcsc/core/error.hpp"
#include "jcsc/harness/csv.hpp"

#ifndef JCSC_SCENARIO_DIR
#define JCSC_SCENARIO_DIR "scenarios"
#endif

namespace jcsc::harness {

namespace {

[[noreturn]] void fail(const YAML::Node& at, const std::string& msg) {
  const auto mark = at.Mark();
  if (mark.is_null()) throw ParseError(msg);
  throw ParseError("line " + std::to_string(mark.line + 1) + ": " + msg);
}

void require_map(const YAML::Node& n, std::string_view where) {
  if (!n.IsMap()) fail(n, std::string(where) + " must be a mapping");
}

void check_keys(const YAML::Node& map, std::initializer_list<std::string_view> allowed,
                std::string_view where) {
  require_map(map, where);
  for (auto it = map.begin(); it != map.end(); ++it) {
    const auto key = it->first.as<std::string>();
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      fail(it->first, "unknown key '" + key + "' in " + std::string(where));
  }
}

std::string text(const YAML::Node& n, std::string_view key) {
  if (!n.IsScalar()) fail(n, "'" + std::string(key) + "' must be a scalar");
  return n.Scalar();
}

double to_double(const YAML::Node& n, std::string_view key) {
  const std::string s = text(n, key);
  double v = 0.0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size())
    fail(n, "'" + std::string(key) + "' expects a number, got '" + s + "'");
  return v;
}

std::uint64_t to_uint(const YAML::Node& n, std::string_view key) {
  const std::string s = text(n, key);
  std::uint64_t v = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec == std::errc{} && p == s.data() + s.size()) return v;
  // Accept integral values written in floating-point form, e.g. 1.0e6.
  const double d = to_double(n, key);
  if (d >= 0.0 && d < 1.8e19 && d == static_cast<double>(static_cast<std::uint64_t>(d)))
    return static_cast<std::uint64_t>(d);
  fail(n, "'" + std::string(key) + "' expects a non-negative integer, got '" + s + "'");
}

template <class F>
void opt(const YAML::Node& map, const char* key, F&& apply) {
  if (const YAML::Node n = map[key]) apply(n);
}

std::vector<double> double_list(const YAML::Node& n, std::string_view key) {
  if (!n.IsSequence()) fail(n, "'" + std::string(key) + "' must be a list");
  std::vector<double> out;
  for (const auto& e : n) out.push_back(to_double(e, key));
  return out;
}

std::vector<std::uint64_t> uint_list(const YAML::Node& n, std::string_view key) {
  if (!n.IsSequence()) fail(n, "'" + std::string(key) + "' must be a list");
  std::vector<std::uint64_t> out;
  for (const auto& e : n) out.push_back(to_uint(e, key));
  return out;
}

Experiment experiment_from(const YAML::Node& n) {
  const std::string s = text(n, "experiment");
  if (s == "ber") return Experiment::ber;
  if (s == "rmse") return Experiment::rmse;
  if (s == "nd") return Experiment::nd;
  if (s == "mac") return Experiment::mac;
  fail(n, "unknown experiment '" + s + "' (expected ber, rmse, nd or mac)");
}

std::vector<ModeSweep> default_modes(Experiment e) {
  if (e == Experiment::rmse)
    return {{phy::Mode::cd_ofdm, {-10, -5, 0, 5, 10}}, {phy::Mode::plain_ofdm, {-10, -5, 0, 5, 10}}};
  return {{phy::Mode::cd_ofdm, {-26, -24, -22, -20, -18}},
          {phy::Mode::plain_ofdm, {4, 6, 8, 10, 12}}};
}

void parse_phy(const YAML::Node& n, Scenario& s) {
  check_keys(n,
             {"carrier_hz", "bandwidth_hz", "num_subcarriers", "cp_samples", "num_symbols",
              "modulation", "spread_freq", "spread_time", "min_bits_per_point", "modes", "target"},
             "phy");
  auto& w = s.phy.waveform;
  opt(n, "carrier_hz", [&](auto v) { w.carrier_hz = to_double(v, "carrier_hz"); });
  opt(n, "bandwidth_hz", [&](auto v) { w.bandwidth_hz = to_double(v, "bandwidth_hz"); });
  opt(n, "num_subcarriers", [&](auto v) { w.num_subcarriers = to_uint(v, "num_subcarriers"); });
  opt(n, "cp_samples", [&](auto v) { w.cp_samples = to_uint(v, "cp_samples"); });
  opt(n, "num_symbols", [&](auto v) { w.num_symbols = to_uint(v, "num_symbols"); });
  opt(n, "modulation", [&](auto v) {
    if (text(v, "modulation") != "qpsk") fail(v, "only modulation 'qpsk' is supported");
  });
  opt(n, "spread_freq", [&](auto v) { w.spread_freq = to_uint(v, "spread_freq"); });
  opt(n, "spread_time", [&](auto v) { w.spread_time = to_uint(v, "spread_time"); });
  opt(n, "min_bits_per_point",
      [&](auto v) { s.phy.min_bits_per_point = to_uint(v, "min_bits_per_point"); });
  opt(n, "modes", [&](const YAML::Node& m) {
    require_map(m, "phy.modes");
    s.phy.modes.clear();
    std::set<std::string> seen;
    for (auto it = m.begin(); it != m.end(); ++it) {
      const auto name = it->first.as<std::string>();
      phy::Mode mode;
      try {
        mode = phy::mode_from_string(name);
      } catch (const ParseError& e) {
        fail(it->first, e.what());
      }
      if (!seen.insert(name).second) fail(it->first, "duplicate mode '" + name + "'");
      s.phy.modes.push_back({mode, double_list(it->second, name)});
    }
  });
  opt(n, "target", [&](const YAML::Node& t) {
    check_keys(t, {"range_m", "velocity_mps", "reflect_amp"}, "phy.target");
    auto& tg = s.phy.target;
    opt(t, "range_m", [&](auto v) { tg.range_m = to_double(v, "range_m"); });
    opt(t, "velocity_mps", [&](auto v) { tg.velocity_mps = to_double(v, "velocity_mps"); });
    opt(t, "reflect_amp", [&](auto v) {
      const auto a = double_list(v, "reflect_amp");
      if (a.size() != 2) fail(v, "'reflect_amp' expects [real, imag]");
      tg.reflect_amp = {a[0], a[1]};
    });
  });
}

void parse_nd(const YAML::Node& n, Scenario& s) {
  check_keys(n,
             {"neighbor_counts", "comm_range_m", "beamwidth_deg", "sense_to_comm_ratio",
              "tx_probability", "prior_boost", "learning_rate", "exploration_floor", "slot_cap"},
             "nd");
  auto& c = s.nd.config;
  opt(n, "neighbor_counts", [&](auto v) {
    s.nd.neighbor_counts.clear();
    for (auto x : uint_list(v, "neighbor_counts")) s.nd.neighbor_counts.push_back(x);
  });
  opt(n, "comm_range_m", [&](auto v) { c.comm_range_m = to_double(v, "comm_range_m"); });
  opt(n, "beamwidth_deg", [&](auto v) { c.beamwidth_deg = to_double(v, "beamwidth_deg"); });
  opt(n, "sense_to_comm_ratio",
      [&](auto v) { c.sense_to_comm_ratio = to_double(v, "sense_to_comm_ratio"); });
  opt(n, "tx_probability", [&](auto v) { c.tx_probability = to_double(v, "tx_probability"); });
  opt(n, "prior_boost", [&](auto v) { c.rl.prior_boost = to_double(v, "prior_boost"); });
  opt(n, "learning_rate", [&](auto v) { c.rl.learning_rate = to_double(v, "learning_rate"); });
  opt(n, "exploration_floor",
      [&](auto v) { c.rl.exploration_floor = to_double(v, "exploration_floor"); });
  opt(n, "slot_cap", [&](auto v) { c.slot_cap = to_uint(v, "slot_cap"); });
}

void parse_mac(const YAML::Node& n, Scenario& s) {
  check_keys(n,
             {"node_count", "frame_slots", "arrival_prob", "offered_load", "backoff_min",
              "backoff_max", "side_m", "comm_range_m", "carrier_sense_range_m",
              "hidden_detection_fraction", "horizon_slots", "min_completed_frames",
              "max_horizon_slots"},
             "mac");
  auto& c = s.mac;
  opt(n, "node_count", [&](auto v) { c.node_count = to_uint(v, "node_count"); });
  opt(n, "frame_slots", [&](auto v) {
    c.frame_slots.clear();
    for (auto x : uint_list(v, "frame_slots")) {
      if (x > 0xFFFFFFFFu) fail(v, "'frame_slots' entry too large");
      c.frame_slots.push_back(static_cast<std::uint32_t>(x));
    }
  });
  opt(n, "arrival_prob", [&](auto v) { c.arrival_prob = to_double(v, "arrival_prob"); });
  opt(n, "offered_load", [&](auto v) { c.offered_load = to_double(v, "offered_load"); });
  auto u32 = [&](const YAML::Node& v, const char* key) {
    const auto x = to_uint(v, key);
    if (x > 0xFFFFFFFFu) fail(v, "'" + std::string(key) + "' too large");
    return static_cast<std::uint32_t>(x);
  };
  opt(n, "backoff_min", [&](auto v) { c.backoff_window.min = u32(v, "backoff_min"); });
  opt(n, "backoff_max", [&](auto v) { c.backoff_window.max = u32(v, "backoff_max"); });
  opt(n, "side_m", [&](auto v) { c.side_m = to_double(v, "side_m"); });
  opt(n, "comm_range_m", [&](auto v) { c.comm_range_m = to_double(v, "comm_range_m"); });
  opt(n, "carrier_sense_range_m",
      [&](auto v) { c.carrier_sense_range_m = to_double(v, "carrier_sense_range_m"); });
  opt(n, "hidden_detection_fraction",
      [&](auto v) { c.hidden_detection_fraction = to_double(v, "hidden_detection_fraction"); });
  opt(n, "horizon_slots", [&](auto v) { c.horizon_slots = to_uint(v, "horizon_slots"); });
  opt(n, "min_completed_frames",
      [&](auto v) { c.min_completed_frames = to_uint(v, "min_completed_frames"); });
  opt(n, "max_horizon_slots", [&](auto v) { c.max_horizon_slots = to_uint(v, "max_horizon_slots"); });
}

std::string num(double v) { return format_number(v); }

template <class T>
std::string list(const std::vector<T>& xs) {
  std::string out = "[";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ", ";
    out += num(static_cast<double>(xs[i]));
  }
  return out + "]";
}

}  // namespace

std::string_view to_string(Experiment e) {
  switch (e) {
    case Experiment::ber: return "ber";
    case Experiment::rmse: return "rmse";
    case Experiment::nd: return "nd";
    case Experiment::mac: return "mac";
  }
  return "?";
}

void Scenario::validate() const {
  if (trials < 1) throw InvariantError("trials must be >= 1");
  switch (experiment) {
    case Experiment::ber:
    case Experiment::rmse: {
      phy.waveform.with_mode(phy::Mode::cd_ofdm).validate();
      if (phy.modes.empty()) throw InvariantError("phy.modes is empty");
      for (const auto& m : phy.modes)
        if (m.snr_db.empty())
          throw InvariantError("snr list for " + std::string(phy::to_string(m.mode)) + " is empty");
      if (experiment == Experiment::rmse) phy::check_target(phy.target, phy.waveform);
      break;
    }
    case Experiment::nd: {
      nd::NdConfig c = nd.config;
      c.trials = trials;
      c.validate();
      if (nd.neighbor_counts.empty()) throw InvariantError("nd.neighbor_counts is empty");
      break;
    }
    case Experiment::mac: {
      mac::MacConfig c = mac;
      c.trials = trials;
      c.validate();
      break;
    }
  }
}

Scenario parse_scenario(std::string_view source) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(source));
  } catch (const YAML::ParserException& e) {
    throw ParseError("line " + std::to_string(e.mark.line + 1) + ": " + e.msg);
  }
  if (!root.IsMap()) throw ParseError("scenario must be a mapping");
  check_keys(root, {"experiment", "seed", "trials", "output", "phy", "nd", "mac"}, "scenario");

  Scenario s;
  const YAML::Node exp = root["experiment"];
  if (!exp) throw ParseError("missing required key 'experiment'");
  s.experiment = experiment_from(exp);
  s.phy.modes = default_modes(s.experiment);
  s.trials = s.experiment == Experiment::ber ? 100 : 1000;
  s.output = std::string(to_string(s.experiment)) + ".csv";
  if (s.experiment == Experiment::mac) s.trials = s.mac.trials;

  opt(root, "seed", [&](auto v) { s.seed = to_uint(v, "seed"); });
  opt(root, "trials", [&](auto v) { s.trials = to_uint(v, "trials"); });
  opt(root, "output", [&](auto v) { s.output = text(v, "output"); });

  const char* block = s.experiment == Experiment::nd    ? "nd"
                      : s.experiment == Experiment::mac ? "mac"
                                                        : "phy";
  for (const char* other : {"phy", "nd", "mac"})
    if (std::string_view(other) != block && root[other])
      fail(root[other], "block '" + std::string(other) + "' does not apply to experiment '" +
                            std::string(to_string(s.experiment)) + "'");
  if (const YAML::Node b = root[block]) {
    if (s.experiment == Experiment::nd)
      parse_nd(b, s);
    else if (s.experiment == Experiment::mac)
      parse_mac(b, s);
    else
      parse_phy(b, s);
  }
  s.nd.config.trials = s.trials;
  s.mac.trials = s.trials;
  s.validate();
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open scenario file '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string content = buf.str();
  if (path.extension() == ".csv") return parse_scenario(extract_embedded_scenario(content));
  try {
    return parse_scenario(content);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  } catch (const InvariantError& e) {
    throw InvariantError(path.string() + ": " + e.what());
  }
}

std::string to_yaml(const Scenario& s) {
  std::ostringstream o;
  o << "experiment: " << to_string(s.experiment) << "\n";
  o << "seed: " << s.seed << "\n";
  o << "trials: " << s.trials << "\n";
  o << "output: \"" << s.output << "\"\n";
  switch (s.experiment) {
    case Experiment::ber:
    case Experiment::rmse: {
      const auto& w = s.phy.waveform;
      o << "phy:\n";
      o << "  carrier_hz: " << num(w.carrier_hz) << "\n";
      o << "  bandwidth_hz: " << num(w.bandwidth_hz) << "\n";
      o << "  num_subcarriers: " << w.num_subcarriers << "\n";
      o << "  cp_samples: " << w.cp_samples << "\n";
      o << "  num_symbols: " << w.num_symbols << "\n";
      o << "  modulation: qpsk\n";
      o << "  spread_freq: " << w.spread_freq << "\n";
      o << "  spread_time: " << w.spread_time << "\n";
      o << "  min_bits_per_point: " << s.phy.min_bits_per_point << "\n";
      o << "  modes:\n";
      for (const auto& m : s.phy.modes)
        o << "    " << phy::to_string(m.mode) << ": " << list(m.snr_db) << "\n";
      o << "  target:\n";
      o << "    range_m: " << num(s.phy.target.range_m) << "\n";
      o << "    velocity_mps: " << num(s.phy.target.velocity_mps) << "\n";
      o << "    reflect_amp: [" << num(s.phy.target.reflect_amp.real()) << ", "
        << num(s.phy.target.reflect_amp.imag()) << "]\n";
      break;
    }
    case Experiment::nd: {
      const auto& c = s.nd.config;
      o << "nd:\n";
      o << "  neighbor_counts: " << list(s.nd.neighbor_counts) << "\n";
      o << "  comm_range_m: " << num(c.comm_range_m) << "\n";
      o << "  beamwidth_deg: " << num(c.beamwidth_deg) << "\n";
      o << "  sense_to_comm_ratio: " << num(c.sense_to_comm_ratio) << "\n";
      o << "  tx_probability: " << num(c.tx_probability) << "\n";
      o << "  prior_boost: " << num(c.rl.prior_boost) << "\n";
      o << "  learning_rate: " << num(c.rl.learning_rate) << "\n";
      o << "  exploration_floor: " << num(c.rl.exploration_floor) << "\n";
      o << "  slot_cap: " << c.slot_cap << "\n";
      break;
    }
    case Experiment::mac: {
      const auto& c = s.mac;
      o << "mac:\n";
      o << "  node_count: " << c.node_count << "\n";
      o << "  frame_slots: " << list(c.frame_slots) << "\n";
      if (c.arrival_prob) o << "  arrival_prob: " << num(*c.arrival_prob) << "\n";
      o << "  offered_load: " << num(c.offered_load) << "\n";
      o << "  backoff_min: " << c.backoff_window.min << "\n";
      o << "  backoff_max: " << c.backoff_window.max << "\n";
      o << "  side_m: " << num(c.side_m) << "\n";
      o << "  comm_range_m: " << num(c.comm_range_m) << "\n";
      o << "  carrier_sense_range_m: " << num(c.carrier_sense_range_m) << "\n";
      o << "  hidden_detection_fraction: " << num(c.hidden_detection_fraction) << "\n";
      o << "  horizon_slots: " << c.horizon_slots << "\n";
      o << "  min_completed_frames: " << c.min_completed_frames << "\n";
      o << "  max_horizon_slots: " << c.max_horizon_slots << "\n";
      break;
    }
  }
  return o.str();
}

std::filesystem::path scenario_dir() {
  if (const char* env = std::getenv("JCSC_SCENARIO_DIR"); env && *env) return env;
  return JCSC_SCENARIO_DIR;
}

std::vector<std::string> bundled_scenarios() {
  std::vector<std::string> names;
  std::error_code ec;
  for (const auto& entry : std::filesystem::directory_iterator(scenario_dir(), ec))
    if (entry.path().extension() == ".yaml") names.push_back(entry.path().stem().string());
  std::sort(names.begin(), names.end());
  return names;
}

std::filesystem::path resolve_scenario(std::string_view name_or_path) {
  const std::filesystem::path p(name_or_path);
  if (std::filesystem::is_regular_file(p)) return p;
  const auto bundled = scenario_dir() / (std::string(name_or_path) + ".yaml");
  if (std::filesystem::is_regular_file(bundled)) return bundled;
  throw ParseError("no scenario file or bundled scenario named '" + std::string(name_or_path) + "'");
}

}  // namespace jcsc::harness
