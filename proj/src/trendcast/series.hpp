#ifndef TRENDCAST_SERIES_HPP
#define TRENDCAST_SERIES_HPP

#include <chrono>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "trendcast/calendar.hpp"

namespace trendcast {

enum class TransformState { level, log, diff, log_diff };
enum class Units { percent, index_0_100, none };

const char* transform_state_name(TransformState state) noexcept;

/// Gap-free monthly observations. Immutable after construction; all
/// transformations return new series.
class MonthlySeries {
 public:
  /// Validates: at least one value, all finite, and for level series with
  /// bounded units every value in [0, 100].
  MonthlySeries(std::string id, YearMonth start, std::vector<double> values,
                Units units = Units::none,
                TransformState state = TransformState::level);

  const std::string& id() const { return id_; }
  YearMonth start() const { return start_; }
  YearMonth end() const { return add_months(start_, static_cast<int>(values_.size()) - 1); }
  YearMonth month_at(std::size_t k) const { return add_months(start_, static_cast<int>(k)); }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t k) const { return values_[k]; }
  const std::vector<double>& values() const { return values_; }
  Units units() const { return units_; }
  TransformState transform_state() const { return state_; }

  MonthlySeries with_id(std::string id) const;

  /// Copy of the observations between `from` and `to` inclusive.
  /// Throws WindowOutOfRange if the window is not fully covered.
  MonthlySeries slice(YearMonth from, YearMonth to) const;

 private:
  std::string id_;
  YearMonth start_;
  std::vector<double> values_;
  Units units_;
  TransformState state_;
};

MonthlySeries first_difference(const MonthlySeries& s);
MonthlySeries log_transform(const MonthlySeries& s);

/// Restricts both series to their common month range.
std::pair<MonthlySeries, MonthlySeries> align(const MonthlySeries& a, const MonthlySeries& b);

/// Consecutive 7-day observation windows (search-intensity exports).
class WeeklySeries {
 public:
  WeeklySeries(std::chrono::sys_days first_week_start, std::vector<double> values);

  /// Validates that the given week starts are exactly 7 days apart.
  WeeklySeries(const std::vector<std::chrono::sys_days>& week_starts,
               std::vector<double> values);

  std::size_t size() const { return values_.size(); }
  std::chrono::sys_days week_start(std::size_t k) const {
    return first_ + std::chrono::days{7 * static_cast<int>(k)};
  }
  double operator[](std::size_t k) const { return values_[k]; }
  const std::vector<double>& values() const { return values_; }

  std::chrono::sys_days first_covered_day() const { return first_; }
  std::chrono::sys_days last_covered_day() const {
    return week_start(values_.size() - 1) + std::chrono::days{6};
  }

 private:
  std::chrono::sys_days first_;
  std::vector<double> values_;
};

/// Days-weighted monthly aggregation: a month's value is the sum over
/// overlapping weeks of (week value x days of that week in the month)
/// divided by the month's day count. Months not covered on every day
/// (the range edges) are dropped.
MonthlySeries aggregate_weekly_to_monthly(const WeeklySeries& w, std::string id);

}  // namespace trendcast

#endif
