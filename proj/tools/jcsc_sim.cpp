// jcsc-sim: run bundled or custom scenarios, compare result CSVs.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "jcsc/core/error.hpp"
#include "jcsc/harness/compare.hpp"
#include "jcsc/harness/csv.hpp"
#include "jcsc/harness/runner.hpp"
#include "jcsc/harness/scenario.hpp"

namespace {

enum Exit { kOk = 0, kParse = 1, kInvariant = 2, kFlag = 3 };

int cmd_run(const std::string& source, std::optional<std::uint64_t> seed,
            std::optional<std::size_t> trials, const std::string& out, bool allow_flags) {
  using namespace jcsc::harness;
  Scenario s = load_scenario(resolve_scenario(source));
  if (seed) s.seed = *seed;
  if (trials) {
    s.trials = *trials;
    s.nd.config.trials = *trials;
    s.mac.trials = *trials;
  }
  s.validate();
  std::optional<std::filesystem::path> dest;
  if (!out.empty()) dest = out;
  const RunOutcome r = run_scenario(s, dest);
  std::cout << "wrote " << r.path.string() << " (" << r.series.rows.size() << " rows)\n";

  bool flagged = false;
  for (const auto& row : r.series.rows) {
    if (row.flag == jcsc::core::Flag::ok) continue;
    flagged = true;
    std::cerr << "flag " << jcsc::core::to_string(row.flag) << " at " << r.series.axis_name << "="
              << format_number(row.axis) << " (" << row.variant << ")";
    if (row.flag == jcsc::core::Flag::saturated && s.experiment == Experiment::mac)
      std::cerr << ": offered load " << format_number(s.mac.offered_load)
                << " exceeds what the channel drains";
    if (row.flag == jcsc::core::Flag::truncated)
      std::cerr << ": truncated fraction " << format_number(row.truncated_fraction);
    std::cerr << "\n";
  }
  return flagged && !allow_flags ? kFlag : kOk;
}

int cmd_compare(const std::string& a, const std::string& b, const std::string& variant_a,
                const std::string& variant_b, const std::string& metric,
                std::optional<double> target) {
  using namespace jcsc::harness;
  const auto sa = read_series_csv(a);
  const auto sb = b.empty() ? sa : read_series_csv(b);
  const CompareReport rep = compare(sa, sb, {variant_a, variant_b, metric, target});
  std::cout << render_report(rep);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Joint communication-and-sensing network simulator"};
  app.require_subcommand(1);

  std::string source, out;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> trials;
  bool allow_flags = false;
  auto* run = app.add_subcommand("run", "Run a scenario file or bundled scenario and write its CSV");
  run->add_option("scenario", source, "Scenario file, results CSV, or bundled scenario name")->required();
  run->add_option("--seed", seed, "Override the scenario seed");
  run->add_option("--trials", trials, "Override the trial count")->check(CLI::PositiveNumber);
  run->add_option("--out", out, "Output CSV path (default: the scenario's output)");
  run->add_flag("--allow-flags", allow_flags, "Exit 0 even when a row carries a flag");

  std::string csv_a, csv_b, variant_a, variant_b, metric;
  std::optional<double> target;
  auto* cmp = app.add_subcommand("compare", "Relative improvement of one series over another");
  cmp->add_option("csv_a", csv_a, "Baseline results CSV")->required();
  cmp->add_option("csv_b", csv_b, "Compared results CSV (default: same file)");
  cmp->add_option("--variant-a", variant_a, "Baseline variant");
  cmp->add_option("--variant-b", variant_b, "Compared variant");
  cmp->add_option("--metric", metric, "Metric to compare");
  cmp->add_option("--target", target, "Metric level for the horizontal gain (default 1e-3 for ber)");

  auto* list = app.add_subcommand("list-scenarios", "List bundled scenarios");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kParse;
  }

  try {
    if (*run) return cmd_run(source, seed, trials, out, allow_flags);
    if (*cmp) return cmd_compare(csv_a, csv_b, variant_a, variant_b, metric, target);
    if (*list) {
      for (const auto& name : jcsc::harness::bundled_scenarios()) std::cout << name << "\n";
      return kOk;
    }
  } catch (const jcsc::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kParse;
  } catch (const jcsc::InvariantError& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return kInvariant;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kParse;
  }
  return kOk;
}
