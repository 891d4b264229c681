#include "jcsc/harness/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>
#include <unistd.h>

#include "jcsc/core/error.hpp"

namespace jcsc::harness {

namespace {

struct Columns {
  std::string_view axis, variant, mean, extra;
  bool metric_column;
};

Columns columns_for(Experiment e) {
  switch (e) {
    case Experiment::nd:
      return {"neighbor_count", "algorithm", "mean_slots", "truncated_fraction", false};
    case Experiment::mac:
      return {"frame_slots", "variant", "mean_delay_slots", "saturation_flag", false};
    default:
      return {"snr_db", "mode", "mean", "", true};
  }
}

std::vector<std::string> split(std::string_view line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(',', start);
    out.emplace_back(line.substr(start, pos == std::string_view::npos ? line.npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double parse_number(const std::string& s) {
  if (s == "na") return std::nan("");
  double v = 0.0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size())
    throw ParseError("bad number '" + s + "' in results CSV");
  return v;
}

core::Flag parse_flag(const std::string& s) {
  for (auto f : {core::Flag::ok, core::Flag::truncated, core::Flag::saturated,
                 core::Flag::warn_no_hidden})
    if (s == core::to_string(f)) return f;
  throw ParseError("unknown flag '" + s + "' in results CSV");
}

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "na";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) v = 0.0;  // drop the sign of -0
  char buf[64];
  const auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, p);
}

std::string render_csv(const Scenario& scenario, const core::TrialSeries& series) {
  const Columns c = columns_for(scenario.experiment);
  std::ostringstream o;
  o << "# jcsc-sim " << to_string(scenario.experiment) << " results\n";
  o << "# seed: " << scenario.seed << "\n";
  o << kScenarioBegin << "\n";
  std::istringstream yaml(to_yaml(scenario));
  for (std::string line; std::getline(yaml, line);) o << "# " << line << "\n";
  o << kScenarioEnd << "\n";

  if (c.metric_column)
    o << c.axis << ',' << c.variant << ",metric,mean,ci_half_width,trials\n";
  else
    o << c.axis << ',' << c.variant << ',' << c.mean << ",ci_half_width," << c.extra << ",trials\n";

  core::TrialSeries sorted = series;
  sorted.sort();
  for (const auto& r : sorted.rows) {
    o << format_number(r.axis) << ',' << r.variant << ',';
    if (c.metric_column) o << r.metric << ',';
    o << format_number(r.mean) << ',' << format_number(r.ci_half_width) << ',';
    if (scenario.experiment == Experiment::nd) o << format_number(r.truncated_fraction) << ',';
    if (scenario.experiment == Experiment::mac) o << core::to_string(r.flag) << ',';
    o << r.trials << "\n";
  }
  return o.str();
}

void write_atomically(const std::filesystem::path& path, const std::string& content) {
  const auto dir = path.has_parent_path() ? path.parent_path() : std::filesystem::path(".");
  if (!std::filesystem::is_directory(dir))
    throw std::runtime_error("output directory '" + dir.string() + "' does not exist");
  const auto tmp = dir / ("." + path.filename().string() + ".tmp" + std::to_string(::getpid()));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + tmp.string() + "'");
    out << content;
    out.flush();
    if (!out) {
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      throw std::runtime_error("write to '" + tmp.string() + "' failed");
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw std::runtime_error("cannot move results into '" + path.string() + "'");
  }
}

core::TrialSeries parse_series_csv(std::string_view text) {
  core::TrialSeries series;
  std::vector<std::string> header;
  std::istringstream in{std::string(text)};
  std::size_t line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto cells = split(line);
    if (header.empty()) {
      header = std::move(cells);
      if (header.size() != 6) throw ParseError("results CSV header must have 6 columns");
      series.axis_name = header[0];
      continue;
    }
    if (cells.size() != header.size())
      throw ParseError("line " + std::to_string(line_no) + ": expected " +
                       std::to_string(header.size()) + " columns");
    core::SeriesRow row;
    row.axis = parse_number(cells[0]);
    row.variant = cells[1];
    if (header[2] == "metric") {
      row.metric = cells[2];
      row.mean = parse_number(cells[3]);
      row.ci_half_width = parse_number(cells[4]);
    } else {
      row.metric = header[2];
      row.mean = parse_number(cells[2]);
      row.ci_half_width = parse_number(cells[3]);
      if (header[4] == "truncated_fraction") {
        row.truncated_fraction = parse_number(cells[4]);
        if (row.truncated_fraction > 0.0) row.flag = core::Flag::truncated;
      } else if (header[4] == "saturation_flag") {
        row.flag = parse_flag(cells[4]);
      }
    }
    row.trials = static_cast<std::size_t>(parse_number(cells[5]));
    series.rows.push_back(std::move(row));
  }
  if (header.empty()) throw ParseError("results CSV has no header row");
  series.sort();
  return series;
}

core::TrialSeries read_series_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open results file '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse_series_csv(buf.str());
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

std::string extract_embedded_scenario(std::string_view csv_text) {
  std::istringstream in{std::string(csv_text)};
  std::string out;
  bool inside = false;
  for (std::string line; std::getline(in, line);) {
    if (line == kScenarioBegin) {
      inside = true;
      continue;
    }
    if (line == kScenarioEnd) return out;
    if (!inside) continue;
    if (line.rfind("# ", 0) == 0)
      out += line.substr(2);
    else if (line != "#")
      throw ParseError("malformed embedded scenario line '" + line + "'");
    out += '\n';
  }
  throw ParseError("no embedded scenario found in results CSV");
}

}  // namespace jcsc::harness
