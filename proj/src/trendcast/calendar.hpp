#ifndef TRENDCAST_CALENDAR_HPP
#define TRENDCAST_CALENDAR_HPP

#include <chrono>
#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace trendcast {

/// Calendar month in the proleptic Gregorian calendar.
struct YearMonth {
  int year = 0;
  int month = 1;  // 1..12

  auto operator<=>(const YearMonth&) const = default;
};

YearMonth add_months(YearMonth ym, int n);

/// Signed month count from `a` to `b` (b - a).
int months_between(YearMonth a, YearMonth b);

int days_in_month(YearMonth ym);

std::string to_string(YearMonth ym);

/// Parses "YYYY-MM". Returns nullopt on malformed input.
std::optional<YearMonth> parse_year_month(std::string_view text);

/// Parses "YYYY-MM-DD" into a civil day. Returns nullopt on malformed input.
std::optional<std::chrono::sys_days> parse_date(std::string_view text);

std::string to_string(std::chrono::sys_days day);

std::chrono::sys_days first_day(YearMonth ym);
std::chrono::sys_days last_day(YearMonth ym);
YearMonth month_of(std::chrono::sys_days day);

/// Number of days of the 7-day week starting at `week_start` that fall in `ym`.
int month_overlap_days(std::chrono::sys_days week_start, YearMonth ym);

}  // namespace trendcast

#endif
