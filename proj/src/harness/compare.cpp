#include "jcsc/harness/compare.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "jcsc/core/error.hpp"
#include "jcsc/harness/csv.hpp"

namespace jcsc::harness {

namespace {

constexpr std::string_view kBaselines[] = {"plain_ofdm", "cra", "conventional"};

bool is_baseline(std::string_view v) {
  return std::find(std::begin(kBaselines), std::end(kBaselines), v) != std::end(kBaselines);
}

std::string pick_a(const core::TrialSeries& s) {
  const auto vs = s.variants();
  if (vs.size() == 1) return vs.front();
  for (const auto& v : vs)
    if (is_baseline(v)) return v;
  throw InvariantError("cannot choose the baseline variant; pass --variant-a");
}

std::string pick_b(const core::TrialSeries& s, const std::string& a) {
  auto vs = s.variants();
  if (vs.size() > 1) std::erase(vs, a);
  if (vs.size() == 1) return vs.front();
  throw InvariantError("cannot choose the compared variant; pass --variant-b");
}

}  // namespace

std::optional<double> crossing(const std::vector<core::SeriesRow>& rows, double target) {
  std::vector<std::pair<double, double>> pts;
  for (const auto& r : rows)
    if (r.mean > 0.0 && std::isfinite(r.mean)) pts.emplace_back(r.axis, r.mean);
  std::sort(pts.begin(), pts.end());
  const double lt = std::log10(target);
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const auto [x0, y0] = pts[i];
    const auto [x1, y1] = pts[i + 1];
    if ((y0 - target) * (y1 - target) > 0.0) continue;
    if (y0 == y1) return x0;
    const double l0 = std::log10(y0);
    const double l1 = std::log10(y1);
    return x0 + (lt - l0) * (x1 - x0) / (l1 - l0);
  }
  return std::nullopt;
}

CompareReport compare(const core::TrialSeries& a, const core::TrialSeries& b,
                      const CompareOptions& options) {
  CompareReport rep;
  rep.axis_name = a.axis_name;
  if (a.axis_name != b.axis_name)
    throw InvariantError("sweep axes differ: '" + a.axis_name + "' vs '" + b.axis_name + "'");
  rep.variant_a = options.variant_a.empty() ? pick_a(a) : options.variant_a;
  rep.variant_b = options.variant_b.empty() ? pick_b(b, rep.variant_a) : options.variant_b;
  if (options.metric.empty()) {
    const auto ms = a.metrics();
    if (ms.empty()) throw InvariantError("series has no rows");
    rep.metric = ms.front();
  } else {
    rep.metric = options.metric;
  }

  const auto ra = a.select(rep.variant_a, rep.metric);
  const auto rb = b.select(rep.variant_b, rep.metric);
  if (ra.empty()) throw InvariantError("no rows for variant '" + rep.variant_a + "' metric '" + rep.metric + "'");
  if (rb.empty()) throw InvariantError("no rows for variant '" + rep.variant_b + "' metric '" + rep.metric + "'");

  const bool same_axis =
      ra.size() == rb.size() &&
      std::equal(ra.begin(), ra.end(), rb.begin(), [](const auto& x, const auto& y) { return x.axis == y.axis; });
  // Differing sweep points are only acceptable for an explicit gain query.
  if (!same_axis && !options.target)
    throw InvariantError("sweep points differ between the two series");
  rep.target = options.target;
  if (!rep.target && rep.metric == "ber") rep.target = 1e-3;

  if (same_axis)
    for (std::size_t i = 0; i < ra.size(); ++i) {
      ComparePoint p;
      p.axis = ra[i].axis;
      p.a = ra[i].mean;
      p.b = rb[i].mean;
      p.ratio = p.b / p.a;
      p.improvement_pct = (p.a - p.b) / p.a * 100.0;
      rep.points.push_back(p);
    }

  if (rep.target) {
    const auto xa = crossing(ra, *rep.target);
    const auto xb = crossing(rb, *rep.target);
    if (xa && xb) rep.gain_db = *xa - *xb;
  }
  return rep;
}

std::string render_report(const CompareReport& r) {
  std::ostringstream o;
  o << "metric " << r.metric << ": " << r.variant_b << " vs " << r.variant_a << "\n";
  if (!r.points.empty()) {
    o << r.axis_name << "," << r.variant_a << "," << r.variant_b << ",ratio,improvement_pct\n";
    for (const auto& p : r.points)
      o << format_number(p.axis) << "," << format_number(p.a) << "," << format_number(p.b) << ","
        << format_number(p.ratio) << "," << format_number(p.improvement_pct) << "\n";
  } else {
    o << "sweep points differ; pointwise comparison skipped\n";
  }
  if (r.target) {
    o << "gain at " << r.metric << " = " << format_number(*r.target) << ": ";
    if (r.gain_db) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.2f", *r.gain_db);
      o << buf << " dB\n";
    } else {
      o << "not bracketed by both curves\n";
    }
  }
  return o.str();
}

}  // namespace jcsc::harness
