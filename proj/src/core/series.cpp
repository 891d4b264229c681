#include "jcsc/core/series.hpp"

#include <algorithm>
#include <tuple>

namespace jcsc::core {

std::string_view to_string(Flag flag) {
  switch (flag) {
    case Flag::ok: return "ok";
    case Flag::truncated: return "truncated";
    case Flag::saturated: return "saturated";
    case Flag::warn_no_hidden: return "warn_no_hidden";
  }
  return "ok";
}

void TrialSeries::sort() {
  std::stable_sort(rows.begin(), rows.end(), [](const SeriesRow& a, const SeriesRow& b) {
    return std::tie(a.axis, a.variant, a.metric) < std::tie(b.axis, b.variant, b.metric);
  });
}

bool TrialSeries::all_ok() const {
  return std::all_of(rows.begin(), rows.end(), [](const SeriesRow& r) { return r.flag == Flag::ok; });
}

namespace {
template <typename Proj>
std::vector<std::string> distinct(const std::vector<SeriesRow>& rows, Proj proj) {
  std::vector<std::string> out;
  for (const auto& r : rows)
    if (std::find(out.begin(), out.end(), proj(r)) == out.end()) out.push_back(proj(r));
  std::sort(out.begin(), out.end());
  return out;
}
}  // namespace

std::vector<std::string> TrialSeries::variants() const {
  return distinct(rows, [](const SeriesRow& r) { return r.variant; });
}

std::vector<std::string> TrialSeries::metrics() const {
  return distinct(rows, [](const SeriesRow& r) { return r.metric; });
}

std::vector<SeriesRow> TrialSeries::select(std::string_view variant, std::string_view metric) const {
  std::vector<SeriesRow> out;
  for (const auto& r : rows)
    if (r.variant == variant && r.metric == metric) out.push_back(r);
  return out;
}

}  // namespace jcsc::core
