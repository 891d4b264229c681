#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "jcsc/core/error.hpp"
#include "jcsc/harness/compare.hpp"
#include "jcsc/harness/csv.hpp"
#include "jcsc/harness/runner.hpp"
#include "jcsc/harness/scenario.hpp"

using namespace jcsc::harness;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir() {
  const fs::path d = fs::temp_directory_path() / ("jcsc_unit_" + std::to_string(::getpid()));
  fs::create_directories(d);
  return d;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

const char* kSmallNd = R"(experiment: nd
seed: 17
trials: 4
nd:
  neighbor_counts: [2, 4]
)";

jcsc::core::TrialSeries curve(const std::string& variant, double shift) {
  // BER = 10^(-(snr + shift)/10): log-linear in snr, so interpolation is exact.
  jcsc::core::TrialSeries s;
  s.axis_name = "snr_db";
  for (int snr = -40; snr <= 40; snr += 2)
    s.rows.push_back({static_cast<double>(snr), variant, "ber", std::pow(10.0, -(snr + shift) / 10.0), 0.0, 1});
  return s;
}

}  // namespace

TEST_SUITE("harness") {
  TEST_CASE("minimal ber scenario gets defaults") {
    const Scenario s = parse_scenario("experiment: ber\n");
    CHECK(s.experiment == Experiment::ber);
    CHECK(s.phy.waveform == jcsc::phy::WaveformConfig{});
    CHECK(s.phy.modes.size() == 2);
    CHECK(s.output == "ber.csv");
    CHECK(s.trials >= 1);
  }

  TEST_CASE("power-of-two rule is cited") {
    CHECK_THROWS_WITH_AS(parse_scenario("experiment: ber\nphy:\n  spread_freq: 3\n"),
                         doctest::Contains("power of two"), jcsc::InvariantError);
  }

  TEST_CASE("unknown keys are rejected with their line") {
    CHECK_THROWS_WITH_AS(parse_scenario("experiment: nd\nnd:\n  neighbour_counts: [3]\n"),
                         doctest::Contains("line 3"), jcsc::ParseError);
    CHECK_THROWS_WITH_AS(parse_scenario("experiment: nd\nsed: 4\n"),
                         doctest::Contains("unknown key 'sed'"), jcsc::ParseError);
    CHECK_THROWS_AS(parse_scenario("experiment: nd\nmac:\n  node_count: 3\n"), jcsc::ParseError);
    CHECK_THROWS_AS(parse_scenario("seed: 3\n"), jcsc::ParseError);
    CHECK_THROWS_AS(parse_scenario("experiment: ber\ntrials: many\n"), jcsc::ParseError);
    CHECK_THROWS_AS(parse_scenario("experiment: [\n"), jcsc::ParseError);
    CHECK_THROWS_AS(load_scenario("/nonexistent/x.yaml"), jcsc::ParseError);
  }

  TEST_CASE("invariant violations surface at load") {
    CHECK_THROWS_AS(parse_scenario("experiment: rmse\nphy:\n  target:\n    range_m: 500\n"),
                    jcsc::InvariantError);
    CHECK_THROWS_AS(parse_scenario("experiment: mac\nmac:\n  frame_slots: []\n"), jcsc::InvariantError);
    CHECK_THROWS_AS(parse_scenario("experiment: nd\nnd:\n  tx_probability: 0\n"), jcsc::InvariantError);
  }

  TEST_CASE("load, serialise, load round trip") {
    for (const auto& name : bundled_scenarios()) {
      CAPTURE(name);
      const Scenario a = load_scenario(resolve_scenario(name));
      const Scenario b = parse_scenario(to_yaml(a));
      CHECK(a == b);
      CHECK(to_yaml(b) == to_yaml(a));
    }
    Scenario m = parse_scenario("experiment: mac\nmac:\n  arrival_prob: 0.003\n");
    CHECK(parse_scenario(to_yaml(m)) == m);
  }

  TEST_CASE("bundled scenarios are present") {
    const auto names = bundled_scenarios();
    for (const char* n : {"fig4_ber", "fig4_rmse", "fig5_nd", "fig5_baseline", "fig6_mac"})
      CHECK(std::find(names.begin(), names.end(), n) != names.end());
    CHECK_THROWS_AS(resolve_scenario("no_such_scenario"), jcsc::ParseError);
  }

  TEST_CASE("number formatting") {
    CHECK(format_number(30.0) == "30");
    CHECK(format_number(0.1) == "0.1");
    CHECK(format_number(-0.0) == "0");
    CHECK(format_number(std::nan("")) == "na");
    CHECK(std::stod(format_number(1.0 / 3.0)) == 1.0 / 3.0);
  }

  TEST_CASE("CSV header embeds the scenario and re-runs byte-identically") {
    const fs::path d = temp_dir();
    const Scenario s = parse_scenario(kSmallNd);
    const RunOutcome first = run_scenario(s, d / "a.csv");
    const std::string text = slurp(d / "a.csv");
    CHECK(text == first.csv);
    CHECK(text.rfind("# ", 0) == 0);
    CHECK(text.find("neighbor_count,algorithm,mean_slots,ci_half_width,truncated_fraction,trials") !=
          std::string::npos);

    const Scenario again = load_scenario(d / "a.csv");
    CHECK(again == s);
    run_scenario(again, d / "b.csv");
    CHECK(slurp(d / "b.csv") == text);

    Scenario other = s;
    other.seed = 18;
    CHECK(run_scenario(other, d / "c.csv").csv != text);
    fs::remove_all(d);
  }

  TEST_CASE("rows are sorted by axis then variant") {
    const Scenario s = parse_scenario(kSmallNd);
    const auto csv = render_csv(s, run_experiment(s));
    const auto series = parse_series_csv(csv);
    REQUIRE(series.rows.size() == 4);
    CHECK(series.rows[0].axis == 2);
    CHECK(series.rows[0].variant == "cra");
    CHECK(series.rows[1].variant == "rl_cra");
    CHECK(series.rows[2].axis == 4);
  }

  TEST_CASE("single trial reports na for the interval") {
    Scenario s = parse_scenario(kSmallNd);
    s.trials = 1;
    s.nd.config.trials = 1;
    const auto csv = render_csv(s, run_experiment(s));
    const auto series = parse_series_csv(csv);
    for (const auto& r : series.rows) CHECK(std::isnan(r.ci_half_width));
    CHECK(csv.find(",na,") != std::string::npos);
  }

  TEST_CASE("unwritable output path fails without leaving a file") {
    CHECK_THROWS(write_atomically("/nonexistent_dir/x.csv", "a"));
    const fs::path d = temp_dir();
    write_atomically(d / "ok.csv", "hello");
    CHECK(slurp(d / "ok.csv") == "hello");
    std::size_t files = 0;
    for ([[maybe_unused]] const auto& e : fs::directory_iterator(d)) ++files;
    CHECK(files == 1);
    fs::remove_all(d);
  }

  TEST_CASE("identical series show no improvement") {
    const auto a = curve("plain_ofdm", 0.0);
    const auto r = compare(a, a, {"plain_ofdm", "plain_ofdm", "", std::nullopt});
    for (const auto& p : r.points) CHECK(p.improvement_pct == 0.0);
    REQUIRE(r.gain_db);
    CHECK(*r.gain_db == doctest::Approx(0.0));
  }

  TEST_CASE("68.3 vs 100 slots is a 31.7 percent reduction") {
    jcsc::core::TrialSeries s;
    s.axis_name = "neighbor_count";
    s.rows.push_back({30, "cra", "mean_slots", 100.0, 1.0, 10});
    s.rows.push_back({30, "rl_cra", "mean_slots", 68.3, 1.0, 10});
    const auto r = compare(s, s, {});
    CHECK(r.variant_a == "cra");
    CHECK(r.variant_b == "rl_cra");
    REQUIRE(r.points.size() == 1);
    CHECK(r.points[0].improvement_pct == doctest::Approx(31.7));
    CHECK(r.points[0].ratio == doctest::Approx(0.683));
    CHECK(render_report(r).find("31.7") != std::string::npos);
  }

  TEST_CASE("BER curves shifted by 30.1 dB report a 30.1 dB gain") {
    auto s = curve("plain_ofdm", 0.0);
    const auto cd = curve("cd_ofdm", 30.1);
    s.rows.insert(s.rows.end(), cd.rows.begin(), cd.rows.end());
    s.sort();
    const auto r = compare(s, s, {});
    CHECK(r.variant_a == "plain_ofdm");
    REQUIRE(r.target);
    CHECK(*r.target == 1e-3);
    REQUIRE(r.gain_db);
    CHECK(std::abs(*r.gain_db - 30.1) < 0.2);
  }

  TEST_CASE("axis mismatch is an error") {
    auto a = curve("x", 0.0);
    auto b = curve("y", 0.0);
    b.rows.pop_back();
    CHECK_THROWS_AS(compare(a, b, {"x", "y", "ber", std::nullopt}), jcsc::InvariantError);
    // An explicit target still yields the horizontal gain.
    const auto r = compare(a, b, {"x", "y", "ber", 1e-3});
    CHECK(r.points.empty());
    REQUIRE(r.gain_db);
    CHECK(*r.gain_db == doctest::Approx(0.0));
    b.axis_name = "frame_slots";
    CHECK_THROWS_AS(compare(a, b, {"x", "y", "ber", 1e-3}), jcsc::InvariantError);
  }

  TEST_CASE("crossing interpolates in log domain") {
    std::vector<jcsc::core::SeriesRow> rows{{0, "v", "ber", 1e-2}, {10, "v", "ber", 1e-4}};
    const auto x = crossing(rows, 1e-3);
    REQUIRE(x);
    CHECK(*x == doctest::Approx(5.0));
    CHECK_FALSE(crossing(rows, 1e-6));
  }
}
