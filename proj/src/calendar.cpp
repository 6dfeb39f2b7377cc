#include "trendcast/calendar.hpp"

#include <cstdio>

#include "trendcast/errors.hpp"

namespace trendcast {

namespace {

std::chrono::year_month to_chrono(YearMonth ym) {
  return std::chrono::year{ym.year} / std::chrono::month{static_cast<unsigned>(ym.month)};
}

}  // namespace

YearMonth add_months(YearMonth ym, int n) {
  int index = ym.year * 12 + (ym.month - 1) + n;
  int year = index / 12;
  int month = index % 12;
  if (month < 0) {
    month += 12;
    --year;
  }
  return {year, month + 1};
}

int months_between(YearMonth a, YearMonth b) {
  return (b.year - a.year) * 12 + (b.month - a.month);
}

int days_in_month(YearMonth ym) {
  using namespace std::chrono;
  year_month_day_last last{year{ym.year}, month_day_last{month{static_cast<unsigned>(ym.month)}}};
  return static_cast<int>(static_cast<unsigned>(last.day()));
}

std::string to_string(YearMonth ym) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02d", ym.year, ym.month);
  return buf;
}

std::optional<YearMonth> parse_year_month(std::string_view text) {
  if (text.size() != 7 || text[4] != '-') return std::nullopt;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (i == 4) continue;
    if (text[i] < '0' || text[i] > '9') return std::nullopt;
  }
  int year = (text[0] - '0') * 1000 + (text[1] - '0') * 100 + (text[2] - '0') * 10 + (text[3] - '0');
  int month = (text[5] - '0') * 10 + (text[6] - '0');
  if (month < 1 || month > 12) return std::nullopt;
  return YearMonth{year, month};
}

std::optional<std::chrono::sys_days> parse_date(std::string_view text) {
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (i == 4 || i == 7) continue;
    if (text[i] < '0' || text[i] > '9') return std::nullopt;
  }
  auto ym = parse_year_month(text.substr(0, 7));
  if (!ym) return std::nullopt;
  int day = (text[8] - '0') * 10 + (text[9] - '0');
  if (day < 1 || day > days_in_month(*ym)) return std::nullopt;
  using namespace std::chrono;
  return sys_days{to_chrono(*ym) / std::chrono::day{static_cast<unsigned>(day)}};
}

std::string to_string(std::chrono::sys_days day) {
  std::chrono::year_month_day ymd{day};
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
  return buf;
}

std::chrono::sys_days first_day(YearMonth ym) {
  using namespace std::chrono;
  return sys_days{to_chrono(ym) / day{1}};
}

std::chrono::sys_days last_day(YearMonth ym) {
  using namespace std::chrono;
  return sys_days{to_chrono(ym) / day{static_cast<unsigned>(days_in_month(ym))}};
}

YearMonth month_of(std::chrono::sys_days day) {
  std::chrono::year_month_day ymd{day};
  return {static_cast<int>(ymd.year()), static_cast<int>(static_cast<unsigned>(ymd.month()))};
}

int month_overlap_days(std::chrono::sys_days week_start, YearMonth ym) {
  using namespace std::chrono;
  sys_days week_end = week_start + days{6};
  sys_days lo = std::max(week_start, first_day(ym));
  sys_days hi = std::min(week_end, last_day(ym));
  if (hi < lo) return 0;
  return static_cast<int>((hi - lo).count()) + 1;
}

}  // namespace trendcast
