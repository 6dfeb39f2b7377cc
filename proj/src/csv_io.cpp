#include "trendcast/csv_io.hpp"

#include <cerrno>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <vector>

#include "trendcast/errors.hpp"

namespace trendcast {

namespace {

std::string trim(std::string_view text) {
  const auto begin = text.find_first_not_of(" \t\r");
  if (begin == std::string_view::npos) return {};
  const auto end = text.find_last_not_of(" \t\r");
  return std::string(text.substr(begin, end - begin + 1));
}

struct CsvRow {
  int line = 0;
  std::string first;
  std::string second;
};

std::vector<CsvRow> read_two_column_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::io_error, "cannot open '" + path + "'");
  std::vector<CsvRow> rows;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string stripped = trim(line);
    if (stripped.empty()) continue;
    const auto comma = stripped.find(',');
    if (comma == std::string::npos)
      fail(ErrorCode::parse_error,
           path + ":" + std::to_string(line_no) + ": expected '<key>,<value>'");
    rows.push_back({line_no, trim(stripped.substr(0, comma)), trim(stripped.substr(comma + 1))});
  }
  if (rows.empty()) fail(ErrorCode::parse_error, path + ": file has no data rows");
  return rows;
}

std::optional<double> parse_number(const std::string& text) {
  if (text.empty()) return std::nullopt;
  errno = 0;
  char* end = nullptr;
  const double value = std::strtod(text.c_str(), &end);
  if (errno != 0 || end != text.c_str() + text.size()) return std::nullopt;
  return value;
}

std::string stem_of(const std::string& path) {
  return std::filesystem::path(path).stem().string();
}

}  // namespace

MonthlySeries ingest_unemployment_csv(const std::string& path) {
  auto rows = read_two_column_csv(path);
  std::size_t begin = 0;
  if (!parse_year_month(rows[0].first)) begin = 1;  // header row
  if (begin >= rows.size()) fail(ErrorCode::parse_error, path + ": file has no data rows");

  YearMonth start{};
  YearMonth expected{};
  std::vector<double> values;
  for (std::size_t i = begin; i < rows.size(); ++i) {
    const auto& row = rows[i];
    const std::string where = path + ":" + std::to_string(row.line);
    const auto month = parse_year_month(row.first);
    if (!month) fail(ErrorCode::parse_error, where + ": bad month '" + row.first + "'");
    const auto value = parse_number(row.second);
    if (!value) fail(ErrorCode::parse_error, where + ": bad rate '" + row.second + "'");
    if (*value < 0.0 || *value > 100.0)
      fail(ErrorCode::range_error, where + ": rate " + row.second + " outside [0, 100]");
    if (values.empty()) {
      start = *month;
    } else if (*month != expected) {
      if (*month > expected)
        fail(ErrorCode::gap_error, where + ": missing month " + to_string(expected));
      fail(ErrorCode::parse_error, where + ": months not strictly increasing");
    }
    expected = add_months(*month, 1);
    values.push_back(*value);
  }
  return MonthlySeries(stem_of(path), start, std::move(values), Units::percent,
                       TransformState::level);
}

WeeklySeries ingest_trends_csv(const std::string& path) {
  auto rows = read_two_column_csv(path);
  std::size_t begin = 0;
  if (!parse_date(rows[0].first)) begin = 1;  // header row
  if (begin >= rows.size()) fail(ErrorCode::parse_error, path + ": file has no data rows");

  std::vector<std::chrono::sys_days> starts;
  std::vector<double> values;
  for (std::size_t i = begin; i < rows.size(); ++i) {
    const auto& row = rows[i];
    const std::string where = path + ":" + std::to_string(row.line);
    const auto day = parse_date(row.first);
    if (!day) fail(ErrorCode::parse_error, where + ": bad date '" + row.first + "'");
    const auto value = parse_number(row.second);
    if (!value) fail(ErrorCode::parse_error, where + ": bad value '" + row.second + "'");
    if (*value < 0.0 || *value > 100.0)
      fail(ErrorCode::range_error, where + ": value " + row.second + " outside [0, 100]");
    if (!starts.empty() && (*day - starts.back()).count() != 7)
      fail(ErrorCode::non_weekly_spacing,
           where + ": week starting " + row.first + " is not 7 days after the previous row");
    starts.push_back(*day);
    values.push_back(*value);
  }
  return WeeklySeries(starts, std::move(values));
}

}  // namespace trendcast
