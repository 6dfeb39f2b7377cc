#include <doctest.h>

#include "trendcast/calendar.hpp"

using namespace trendcast;

TEST_CASE("month arithmetic wraps across years") {
  CHECK(add_months({2004, 1}, 11) == YearMonth{2004, 12});
  CHECK(add_months({2004, 1}, 12) == YearMonth{2005, 1});
  CHECK(add_months({2004, 3}, -3) == YearMonth{2003, 12});
  CHECK(add_months({2004, 6}, -18) == YearMonth{2002, 12});
  CHECK(months_between({2004, 1}, {2013, 12}) == 119);
  CHECK(months_between({2013, 12}, {2004, 1}) == -119);
}

TEST_CASE("month lengths honor leap years") {
  CHECK(days_in_month({2004, 2}) == 29);
  CHECK(days_in_month({2003, 2}) == 28);
  CHECK(days_in_month({2100, 2}) == 28);  // century rule
  CHECK(days_in_month({2000, 2}) == 29);  // 400-year rule
  CHECK(days_in_month({2004, 4}) == 30);
  CHECK(days_in_month({2004, 12}) == 31);
}

TEST_CASE("year-month parsing and formatting") {
  CHECK(parse_year_month("2004-01") == YearMonth{2004, 1});
  CHECK(parse_year_month("1999-12") == YearMonth{1999, 12});
  CHECK_FALSE(parse_year_month("2004-13"));
  CHECK_FALSE(parse_year_month("2004-00"));
  CHECK_FALSE(parse_year_month("2004/01"));
  CHECK_FALSE(parse_year_month("04-01"));
  CHECK_FALSE(parse_year_month("2004-1"));
  CHECK(to_string(YearMonth{2004, 3}) == "2004-03");
}

TEST_CASE("date parsing validates day of month") {
  CHECK(parse_date("2004-02-29"));
  CHECK_FALSE(parse_date("2003-02-29"));
  CHECK_FALSE(parse_date("2004-04-31"));
  CHECK_FALSE(parse_date("2004-04-00"));
  CHECK_FALSE(parse_date("2004-4-01"));
  CHECK(to_string(*parse_date("2004-01-04")) == "2004-01-04");
}

TEST_CASE("week/month overlap day counts") {
  const auto wk = *parse_date("2004-04-26");  // covers Apr 26 - May 2
  CHECK(month_overlap_days(wk, {2004, 4}) == 5);
  CHECK(month_overlap_days(wk, {2004, 5}) == 2);
  CHECK(month_overlap_days(wk, {2004, 6}) == 0);

  const auto inside = *parse_date("2004-04-05");
  CHECK(month_overlap_days(inside, {2004, 4}) == 7);
}

TEST_CASE("overlap weights over a fully covered month sum to its day count") {
  // weeks starting 2004-01-25 + 7k cover all of February 2004 (29 days)
  for (YearMonth m : {YearMonth{2004, 2}, YearMonth{2004, 3}, YearMonth{2005, 2}}) {
    auto wk = *parse_date("2004-01-04");
    int total = 0;
    for (int i = 0; i < 120; ++i) {
      total += month_overlap_days(wk, m);
      wk += std::chrono::days{7};
    }
    CHECK(total == days_in_month(m));
  }
}
