#include "jcsc/harness/runner.hpp"

#include "jcsc/core/error.hpp"
#include "jcsc/harness/csv.hpp"
#include "jcsc/mac/mac.hpp"
#include "jcsc/nd/discovery.hpp"
#include "jcsc/phy/sweep.hpp"

namespace jcsc::harness {

namespace {

void append(core::TrialSeries& into, const core::TrialSeries& from) {
  into.axis_name = from.axis_name;
  into.rows.insert(into.rows.end(), from.rows.begin(), from.rows.end());
}

}  // namespace

core::TrialSeries run_experiment(const Scenario& s) {
  s.validate();
  const core::RngHandle root{s.seed, 0};
  core::TrialSeries series;
  switch (s.experiment) {
    case Experiment::ber:
    case Experiment::rmse:
      for (const auto& m : s.phy.modes) {
        const phy::WaveformConfig w = s.phy.waveform.with_mode(m.mode);
        // Both modes draw from the same streams (common random numbers).
        const core::RngHandle stream = root;
        if (s.experiment == Experiment::ber) {
          const std::size_t frames = phy::frames_for_bits(w, s.trials, s.phy.min_bits_per_point);
          append(series, phy::run_ber_sweep(w, m.snr_db, frames, stream));
        } else {
          append(series, phy::run_rmse_sweep(w, m.snr_db, s.phy.target, s.trials, stream));
        }
      }
      break;
    case Experiment::nd: {
      nd::NdConfig c = s.nd.config;
      c.trials = s.trials;
      series = nd::run_nd_sweep(c, s.nd.neighbor_counts, root);
      break;
    }
    case Experiment::mac: {
      mac::MacConfig c = s.mac;
      c.trials = s.trials;
      series = mac::run_mac_sweep(c, root);
      break;
    }
  }
  series.sort();
  return series;
}

RunOutcome run_scenario(const Scenario& scenario, const std::optional<std::filesystem::path>& out) {
  RunOutcome r;
  r.path = out ? *out : std::filesystem::path(scenario.output);
  r.series = run_experiment(scenario);
  r.csv = render_csv(scenario, r.series);
  write_atomically(r.path, r.csv);
  return r;
}

}  // namespace jcsc::harness
