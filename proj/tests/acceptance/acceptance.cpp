// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "jcsc/core/stats.hpp"
#include "jcsc/harness/compare.hpp"
#include "jcsc/harness/csv.hpp"
#include "jcsc/harness/runner.hpp"
#include "jcsc/harness/scenario.hpp"
#include "jcsc/mac/mac.hpp"
#include "jcsc/nd/discovery.hpp"
#include "jcsc/phy/channel.hpp"
#include "jcsc/phy/radar.hpp"
#include "jcsc/phy/sweep.hpp"

using namespace jcsc;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void report(int id, const char* name, const Verdict& v, double seconds) {
  std::printf("[%s] C%d %s: %s (%.0f s)\n", v.pass ? "PASS" : "FAIL", id, name, v.detail.c_str(),
              seconds);
  std::fflush(stdout);
  failures += !v.pass;
}

void criterion(int id, const char* name, const std::function<Verdict()>& body) {
  const auto t0 = Clock::now();
  Verdict v;
  try {
    v = body();
  } catch (const std::exception& e) {
    v = {false, std::string("exception: ") + e.what()};
  }
  report(id, name, v, std::chrono::duration<double>(Clock::now() - t0).count());
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

harness::Scenario bundled(const char* name) {
  return harness::load_scenario(harness::resolve_scenario(name));
}

// First-run CSVs of the bundled scenarios, reused by the determinism check.
std::vector<std::pair<std::string, fs::path>> first_runs;

harness::RunOutcome run_bundled(const char* name) {
  const harness::Scenario s = bundled(name);
  const fs::path out = fs::path(name).concat(".csv");
  auto r = harness::run_scenario(s, out);
  first_runs.emplace_back(name, out);
  return r;
}

// SNR offset (dB) such that the cd curve at x matches the plain curve at
// x + offset, averaged over the cd points whose value the plain curve brackets.
std::optional<double> equivalent_snr_gain(const std::vector<core::SeriesRow>& plain,
                                          const std::vector<core::SeriesRow>& cd) {
  double sum = 0.0;
  int n = 0;
  for (const auto& row : cd) {
    const auto x = harness::crossing(plain, row.mean);
    if (!x) continue;
    sum += *x - row.axis;
    ++n;
  }
  if (n == 0) return std::nullopt;
  return sum / n;
}

Verdict c1_comm_gain() {
  const auto t0 = Clock::now();
  const auto r = run_bundled("fig4_ber");
  const double seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  const harness::Scenario s = bundled("fig4_ber");
  std::size_t min_bits = SIZE_MAX;
  for (const auto& row : r.series.rows) {
    const auto mode = phy::mode_from_string(row.variant);
    min_bits = std::min(min_bits, row.trials * s.phy.waveform.with_mode(mode).bits_per_frame());
  }
  const auto cmp = harness::compare(r.series, r.series, {"plain_ofdm", "cd_ofdm", "ber", 1e-3});
  if (!cmp.gain_db) return {false, "BER = 1e-3 not bracketed by both curves"};
  const bool pass = std::abs(*cmp.gain_db - 30.1) <= 1.5 && min_bits >= 2'000'000 && seconds <= 600.0;
  return {pass, "gain at BER 1e-3 = " + fmt("%.2f dB", *cmp.gain_db) + " (target 30.1 +- 1.5), " +
                    std::to_string(min_bits) + " bits/point min, " + fmt("%.0f s", seconds)};
}

Verdict c2_sensing_gain() {
  const auto r = run_bundled("fig4_rmse");
  const auto plain = r.series.select("plain_ofdm", "range_rmse");
  const auto cd = r.series.select("cd_ofdm", "range_rmse");
  bool below = plain.size() == cd.size() && !plain.empty();
  std::string pts;
  for (std::size_t i = 0; i < plain.size() && i < cd.size(); ++i) {
    if (plain[i].axis < -10 || plain[i].axis > 10) continue;
    below = below && cd[i].mean < plain[i].mean;
    pts += fmt(" %g:", plain[i].axis) + fmt("%.3g/", cd[i].mean) + fmt("%.3g", plain[i].mean);
  }
  const auto gain = equivalent_snr_gain(plain, cd);

  // High-SNR ordering over 1000 trials at 30 dB.
  const harness::Scenario s = bundled("fig4_rmse");
  const double snr30[] = {30.0};
  const auto hp = phy::run_rmse_sweep(s.phy.waveform.with_mode(phy::Mode::plain_ofdm), snr30,
                                      s.phy.target, 1000, {s.seed, 30});
  const auto hc = phy::run_rmse_sweep(s.phy.waveform, snr30, s.phy.target, 1000, {s.seed, 30});
  const double rp = hp.select("plain_ofdm", "range_rmse")[0].mean;
  const double rc = hc.select("cd_ofdm", "range_rmse")[0].mean;

  const bool pass = below && gain && *gain >= 0.5 && *gain <= 8.0 && rc <= rp;
  std::string d = "cd below plain on [-10,10]: " + std::string(below ? "yes" : "no") +
                  "; equivalent-SNR gain " + (gain ? fmt("%.2f dB", *gain) : std::string("n/a")) +
                  " (band 0.5..8); 30 dB RMSE cd/plain " + fmt("%.4g", rc) + fmt("/%.4g m", rp) +
                  "; points snr:cd/plain" + pts;
  return {pass, d};
}

Verdict c3_phy_oracles() {
  std::vector<std::string> bad;
  // Noiseless BER.
  const phy::WaveformConfig cfg;
  const double inf[] = {phy::kNoNoise};
  for (auto m : {phy::Mode::plain_ofdm, phy::Mode::cd_ofdm}) {
    const auto s = phy::run_ber_sweep(cfg.with_mode(m), inf, 4, {31, 0});
    if (s.rows[0].mean != 0.0) bad.push_back("noiseless BER != 0");
  }
  // QPSK over AWGN against Q(sqrt(2 Eb/N0)).
  std::string ber_detail;
  for (double ebn0 : {4.0, 8.0, 10.0}) {
    const double snr = ebn0 + 10.0 * std::log10(2.0);
    const double oracle = core::q_function(std::sqrt(2.0 * std::pow(10.0, ebn0 / 10.0)));
    const auto plain = cfg.with_mode(phy::Mode::plain_ofdm);
    const double snrs[] = {snr};
    const auto s = phy::run_ber_sweep(plain, snrs, phy::frames_for_bits(plain, 2, 10'000'000),
                                      {32, static_cast<std::uint64_t>(ebn0)});
    const auto& row = s.rows[0];
    const bool in_ci = std::abs(row.mean - oracle) <= row.ci_half_width;
    ber_detail += fmt(" %g dB:", ebn0) + fmt("%.3g", row.mean) + fmt(" vs %.3g", oracle) +
                  fmt(" +-%.2g", row.ci_half_width);
    if (!in_ci) bad.push_back("BER outside CI at Eb/N0 " + fmt("%g dB", ebn0));
  }
  // Bin-centre range.
  {
    core::Rng r({33, 0});
    std::vector<std::uint8_t> bits(cfg.bits_per_frame());
    for (auto& b : bits) b = r.bit();
    const phy::Grid tx = phy::map_symbols(bits, cfg);
    const phy::PointTarget t{cfg.range_bin_m(), 0.0, {1.0, 0.0}};
    const auto rx = phy::apply_echo_channel(tx, std::span(&t, 1), phy::kNoNoise, cfg, {33, 1});
    const auto e = phy::estimate_range_velocity(rx, tx, cfg);
    if (std::abs(e.range_m - 1.220703125) >= 1e-6) bad.push_back("bin-centre range error");

    // Round trip and Parseval.
    const phy::FrameGrid f = phy::modulate(bits, cfg);
    const phy::Grid back = phy::analyze(f.time_samples, cfg);
    double num = 0, den = 0, et = 0;
    for (std::size_t i = 0; i < back.size(); ++i) {
      num += std::norm(back.data()[i] - f.freq_symbols.data()[i]);
      den += std::norm(f.freq_symbols.data()[i]);
    }
    const std::size_t n = cfg.num_subcarriers, cp = cfg.cp_samples;
    for (std::size_t s = 0; s < cfg.num_symbols; ++s)
      for (std::size_t i = 0; i < n; ++i) et += std::norm(f.time_samples[s * (n + cp) + cp + i]);
    if (std::sqrt(num / den) >= 1e-9) bad.push_back("round-trip error");
    if (std::abs(et - den) / den >= 1e-9) bad.push_back("Parseval error");
  }
  std::string d = bad.empty() ? "all oracles hold;" : "failed:";
  for (const auto& b : bad) d += " " + b + ";";
  return {bad.empty(), d + " BER" + ber_detail};
}

Verdict c4_nd_claim() {
  const auto t0 = Clock::now();
  const harness::Scenario s = bundled("fig5_baseline");
  nd::NdConfig c = s.nd.config;
  c.trials = s.trials;
  // Point 0 of the sweep stream: the same samples the bundled CSV aggregates.
  const core::RngHandle h = core::RngHandle{s.seed, 0}.substream(0);
  const auto cra = nd::run_nd_trials(c, 30, nd::Algorithm::cra, h);
  const auto rl = nd::run_nd_trials(c, 30, nd::Algorithm::rl_cra, h);
  const auto ci = core::paired_ratio_ci(cra.slots, rl.slots);
  const double seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  const bool pass = ci.ratio <= 0.8 && ci.upper < 1.0 && seconds <= 300.0;
  return {pass, "RL-CRA/CRA = " + fmt("%.3f", ci.ratio) + fmt(" [%.3f, ", ci.lower) +
                    fmt("%.3f]", ci.upper) + " (gate <= 0.8, CI below 1; target 0.683), " +
                    std::to_string(c.trials) + " paired trials, " + fmt("%.0f s", seconds)};
}

Verdict c5_nd_oracle() {
  // Brute-force enumeration of one slot: B transmits toward R, R listens toward B.
  const int S = 36;
  const double tx = 0.5;
  double p = 0.0;
  for (int role_b = 0; role_b < 2; ++role_b)
    for (int role_r = 0; role_r < 2; ++role_r)
      for (int sb = 0; sb < S; ++sb)
        for (int sr = 0; sr < S; ++sr)
          if (role_b == 1 && role_r == 0 && sb == 18 && sr == 0)
            p += tx * (1 - tx) / (double(S) * S);
  nd::NdConfig c;
  c.trials = 10000;
  const auto s = nd::run_nd_trials(c, 1, nd::Algorithm::cra, {5005, 0});
  const double mean = std::accumulate(s.slots.begin(), s.slots.end(), 0.0) / s.slots.size();
  const double dev = std::abs(mean * p - 1.0);
  return {dev <= 0.05 && s.truncated == 0,
          "mean " + fmt("%.1f", mean) + " vs 1/p = " + fmt("%.1f", 1.0 / p) + fmt(" (%.2f%% off, limit 5%%)", dev * 100)};
}

Verdict c6_mac_claim() {
  const auto r = run_bundled("fig6_mac");
  const auto conv = r.series.select("conventional", "delay");
  const auto jc = r.series.select("jcsc", "delay");
  bool pass = !conv.empty() && conv.size() == jc.size();
  std::string d;
  for (std::size_t i = 0; i < conv.size(); ++i) {
    const double ratio = jc[i].mean / conv[i].mean;
    pass = pass && ratio <= 0.7 && jc[i].mean <= conv[i].mean && conv[i].flag == core::Flag::ok &&
           jc[i].flag == core::Flag::ok;
    d += fmt(" F=%g:", conv[i].axis) + fmt("%.3f", ratio);
  }
  const harness::Scenario s = bundled("fig6_mac");
  return {pass, "jcsc/conventional delay ratio (gate <= 0.7, target 0.5):" + d + ", " +
                    std::to_string(s.trials) + " paired trials, >= " +
                    std::to_string(s.mac.min_completed_frames) + " frames each"};
}

Verdict c7_mac_degeneracy() {
  harness::Scenario s = bundled("fig6_mac");
  s.mac.hidden_detection_fraction = 0.0;
  s.trials = 20;
  s.mac.trials = 20;
  const auto series = harness::run_experiment(s);
  auto only = [&](const char* v) {
    core::TrialSeries t;
    t.axis_name = series.axis_name;
    for (auto row : series.rows)
      if (row.variant == v) {
        row.variant = "variant";
        t.rows.push_back(row);
      }
    return harness::render_csv(s, t);
  };
  const bool equal = only("conventional") == only("jcsc");
  // Trace-level equality on a few raw runs.
  bool traces = true;
  for (std::uint64_t k = 0; k < 5; ++k) {
    mac::MacConfig conv = s.mac, jc = s.mac;
    conv.variant = mac::Variant::conventional;
    jc.variant = mac::Variant::jcsc;
    mac::MacOptions o;
    o.record_collisions = true;
    const auto a = mac::run_mac(conv, mac::build_mac_world(conv, {s.seed, k}), 10, {s.seed, 100 + k}, o);
    const auto b = mac::run_mac(jc, mac::build_mac_world(jc, {s.seed, k}), 10, {s.seed, 100 + k}, o);
    traces = traces && a.delays == b.delays && a.collisions == b.collisions && a.slots == b.slots;
  }
  return {equal && traces, std::string("per-variant CSV bytes ") + (equal ? "equal" : "differ") +
                               ", raw traces " + (traces ? "identical" : "differ")};
}

Verdict c8_determinism() {
  run_bundled("fig5_nd");
  run_bundled("fig5_baseline");
  std::string d;
  bool pass = true;
  for (const auto& name : harness::bundled_scenarios())
    if (std::none_of(first_runs.begin(), first_runs.end(), [&](auto& p) { return p.first == name; })) {
      pass = false;
      d += " " + name + ":not-run";
    }
  for (const auto& [name, path] : first_runs) {
    // Re-run from the scenario embedded in the CSV header.
    const harness::Scenario s = harness::load_scenario(path);
    const fs::path again = fs::path(name).concat(".rerun.csv");
    harness::run_scenario(s, again);
    const bool same = slurp(path) == slurp(again);
    pass = pass && same;
    d += " " + name + (same ? ":identical" : ":DIFFERS");
  }
  return {pass, "bundled scenarios re-run from embedded seed:" + d};
}

}  // namespace

int main() {
  std::printf("acceptance suite (working directory %s)\n", fs::current_path().c_str());
  criterion(1, "PHY comm gain", c1_comm_gain);
  criterion(2, "PHY sensing gain", c2_sensing_gain);
  criterion(3, "PHY oracle suite", c3_phy_oracles);
  criterion(4, "ND relative claim", c4_nd_claim);
  criterion(5, "ND oracle", c5_nd_oracle);
  criterion(6, "MAC relative claim", c6_mac_claim);
  criterion(7, "MAC degeneracy", c7_mac_degeneracy);
  criterion(8, "Determinism", c8_determinism);
  std::printf("%d of 8 criteria failed\n", failures);
  return failures;
}
