#include "trendcast/series.hpp"

#include <algorithm>
#include <cmath>

#include "trendcast/errors.hpp"

namespace trendcast {

const char* transform_state_name(TransformState state) noexcept {
  switch (state) {
    case TransformState::level: return "level";
    case TransformState::log: return "log";
    case TransformState::diff: return "diff";
    case TransformState::log_diff: return "log_diff";
  }
  return "?";
}

MonthlySeries::MonthlySeries(std::string id, YearMonth start, std::vector<double> values,
                             Units units, TransformState state)
    : id_(std::move(id)), start_(start), values_(std::move(values)), units_(units), state_(state) {
  if (values_.empty()) fail(ErrorCode::series_too_short, "series '" + id_ + "' is empty");
  if (start_.month < 1 || start_.month > 12)
    fail(ErrorCode::invalid_argument, "series '" + id_ + "': start month out of range");
  for (std::size_t k = 0; k < values_.size(); ++k) {
    if (!std::isfinite(values_[k]))
      fail(ErrorCode::range_error, "series '" + id_ + "': non-finite value at " +
                                       to_string(month_at(k)));
    if (state_ == TransformState::level && units_ != Units::none &&
        (values_[k] < 0.0 || values_[k] > 100.0))
      fail(ErrorCode::range_error, "series '" + id_ + "': level value " +
                                       std::to_string(values_[k]) + " at " +
                                       to_string(month_at(k)) + " outside [0, 100]");
  }
}

MonthlySeries MonthlySeries::with_id(std::string id) const {
  return MonthlySeries(std::move(id), start_, values_, units_, state_);
}

MonthlySeries MonthlySeries::slice(YearMonth from, YearMonth to) const {
  if (from > to)
    fail(ErrorCode::window_out_of_range, "series '" + id_ + "': slice window is empty");
  if (from < start_ || to > end())
    fail(ErrorCode::window_out_of_range,
         "series '" + id_ + "': window " + to_string(from) + ".." + to_string(to) +
             " not covered by " + to_string(start_) + ".." + to_string(end()));
  auto offset = static_cast<std::size_t>(months_between(start_, from));
  auto count = static_cast<std::size_t>(months_between(from, to)) + 1;
  std::vector<double> out(values_.begin() + offset, values_.begin() + offset + count);
  return MonthlySeries(id_, from, std::move(out), units_, state_);
}

MonthlySeries first_difference(const MonthlySeries& s) {
  if (s.size() < 2)
    fail(ErrorCode::series_too_short,
         "series '" + s.id() + "': need at least 2 observations to difference");
  std::vector<double> out(s.size() - 1);
  for (std::size_t k = 0; k + 1 < s.size(); ++k) out[k] = s[k + 1] - s[k];
  TransformState state = s.transform_state();
  if (state == TransformState::level) state = TransformState::diff;
  else if (state == TransformState::log) state = TransformState::log_diff;
  return MonthlySeries(s.id(), add_months(s.start(), 1), std::move(out), Units::none, state);
}

MonthlySeries log_transform(const MonthlySeries& s) {
  std::vector<double> out(s.size());
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (!(s[k] > 0.0))
      fail(ErrorCode::non_positive_value,
           "series '" + s.id() + "': non-positive value at index " + std::to_string(k) +
               " (" + to_string(s.month_at(k)) + ")");
    out[k] = std::log(s[k]);
  }
  TransformState state = s.transform_state() == TransformState::level ? TransformState::log
                                                                      : TransformState::log_diff;
  return MonthlySeries(s.id(), s.start(), std::move(out), Units::none, state);
}

std::pair<MonthlySeries, MonthlySeries> align(const MonthlySeries& a, const MonthlySeries& b) {
  YearMonth from = std::max(a.start(), b.start());
  YearMonth to = std::min(a.end(), b.end());
  if (from > to)
    fail(ErrorCode::no_overlap, "series '" + a.id() + "' and '" + b.id() +
                                    "' have no overlapping months");
  return {a.slice(from, to), b.slice(from, to)};
}

WeeklySeries::WeeklySeries(std::chrono::sys_days first_week_start, std::vector<double> values)
    : first_(first_week_start), values_(std::move(values)) {
  if (values_.empty()) fail(ErrorCode::series_too_short, "weekly series is empty");
  for (std::size_t k = 0; k < values_.size(); ++k)
    if (!std::isfinite(values_[k]))
      fail(ErrorCode::range_error, "weekly series: non-finite value at week " +
                                       to_string(week_start(k)));
}

WeeklySeries::WeeklySeries(const std::vector<std::chrono::sys_days>& week_starts,
                           std::vector<double> values)
    : WeeklySeries(week_starts.empty() ? std::chrono::sys_days{} : week_starts.front(),
                   std::move(values)) {
  if (week_starts.size() != values_.size())
    fail(ErrorCode::length_mismatch, "weekly series: date and value counts differ");
  for (std::size_t k = 1; k < week_starts.size(); ++k) {
    if ((week_starts[k] - week_starts[k - 1]).count() != 7)
      fail(ErrorCode::non_weekly_spacing,
           "weekly series: week starting " + to_string(week_starts[k]) +
               " is not 7 days after the previous week");
  }
}

MonthlySeries aggregate_weekly_to_monthly(const WeeklySeries& w, std::string id) {
  using std::chrono::sys_days;
  const sys_days cover_lo = w.first_covered_day();
  const sys_days cover_hi = w.last_covered_day();

  // Fully covered months: [first month starting at or after cover_lo,
  // last month ending at or before cover_hi]. Edge months with partial
  // coverage are dropped.
  YearMonth first = month_of(cover_lo);
  if (first_day(first) < cover_lo) first = add_months(first, 1);
  YearMonth last = month_of(cover_hi);
  if (last_day(last) > cover_hi) last = add_months(last, -1);
  if (first > last)
    fail(ErrorCode::series_too_short,
         "weekly series '" + id + "' does not fully cover any month");

  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(months_between(first, last)) + 1);
  std::size_t week = 0;
  for (YearMonth m = first; m <= last; m = add_months(m, 1)) {
    // advance to the first week overlapping this month
    while (week < w.size() && w.week_start(week) + std::chrono::days{6} < first_day(m)) ++week;
    double weighted = 0.0;
    int covered = 0;
    for (std::size_t i = week; i < w.size() && w.week_start(i) <= last_day(m); ++i) {
      int days = month_overlap_days(w.week_start(i), m);
      weighted += w[i] * days;
      covered += days;
    }
    if (covered != days_in_month(m))
      fail(ErrorCode::coverage_gap, "weekly series '" + id + "': " +
                                        std::to_string(days_in_month(m) - covered) +
                                        " uncovered day(s) in " + to_string(m));
    out.push_back(weighted / days_in_month(m));
  }
  return MonthlySeries(std::move(id), first, std::move(out), Units::index_0_100,
                       TransformState::level);
}

}  // namespace trendcast
