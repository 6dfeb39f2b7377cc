#include "trendcast/config.hpp"

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "trendcast/errors.hpp"

namespace trendcast {

namespace {

std::string trim(std::string_view text) {
  const auto begin = text.find_first_not_of(" \t\r");
  if (begin == std::string_view::npos) return {};
  const auto end = text.find_last_not_of(" \t\r");
  return std::string(text.substr(begin, end - begin + 1));
}

[[noreturn]] void bad(const std::string& where, const std::string& what) {
  fail(ErrorCode::config_error, where + ": " + what);
}

YearMonth parse_month_or_die(const std::string& where, const std::string& value) {
  const auto ym = parse_year_month(value);
  if (!ym) bad(where, "expected YYYY-MM, got '" + value + "'");
  return *ym;
}

int parse_count(const std::string& where, const std::string& value, int minimum) {
  try {
    std::size_t pos = 0;
    const int n = std::stoi(value, &pos);
    if (pos != value.size() || n < minimum) throw std::invalid_argument("");
    return n;
  } catch (...) {
    bad(where, "expected an integer >= " + std::to_string(minimum) + ", got '" + value + "'");
  }
}

int parse_bandwidth(const std::string& where, const std::string& value) {
  if (value == "auto") return -1;
  return parse_count(where, value, 0);
}

bool parse_flag(const std::string& where, const std::string& value) {
  if (value == "on" || value == "true" || value == "yes") return true;
  if (value == "off" || value == "false" || value == "no") return false;
  bad(where, "expected on/off, got '" + value + "'");
}

void apply_option(const std::string& where, AnalysisOptions& opts, const std::string& key,
                  const std::string& value) {
  if (key == "sample_start") opts.sample_start = parse_month_or_die(where, value);
  else if (key == "sample_end") opts.sample_end = parse_month_or_die(where, value);
  else if (key == "train_end") opts.train_end = parse_month_or_die(where, value);
  else if (key == "forecast_start") opts.forecast_start = parse_month_or_die(where, value);
  else if (key == "forecast_end") opts.forecast_end = parse_month_or_die(where, value);
  else if (key == "adf_lags") opts.adf_lags = parse_count(where, value, 0);
  else if (key == "adf_trend") opts.adf_trend = parse_flag(where, value);
  else if (key == "kpss_trend") opts.kpss_trend = parse_flag(where, value);
  else if (key == "var_p") opts.var_p = parse_count(where, value, 1);
  else if (key == "var_lag_selection") {
    if (value == "fixed") opts.var_lag_aic = false;
    else if (value == "aic") opts.var_lag_aic = true;
    else bad(where, "expected fixed/aic, got '" + value + "'");
  } else if (key == "publication_lag") opts.publication_lag = parse_count(where, value, 0);
  else if (key == "nowcast_max_lag") opts.nowcast_max_lag = parse_count(where, value, 1);
  else if (key == "hac_bandwidth") opts.hac_bandwidth = parse_bandwidth(where, value);
  else if (key == "kpss_bandwidth") opts.kpss_bandwidth = parse_bandwidth(where, value);
  else if (key == "dm_bandwidth") opts.dm_bandwidth = parse_bandwidth(where, value);
  else if (key == "dm_loss") {
    if (value == "squared") opts.dm_loss = LossKind::squared;
    else if (value == "absolute") opts.dm_loss = LossKind::absolute;
    else bad(where, "expected squared/absolute, got '" + value + "'");
  } else if (key == "dm_small_sample") opts.dm_small_sample = parse_flag(where, value);
  else if (key == "forecast_scheme") {
    if (value == "expanding") opts.forecast_scheme = WindowScheme::expanding;
    else if (value == "fixed") opts.forecast_scheme = WindowScheme::fixed;
    else bad(where, "expected expanding/fixed, got '" + value + "'");
  } else bad(where, "unknown key '" + key + "'");
}

}  // namespace

void AnalysisOptions::validate() const {
  const auto check = [](bool ok, const std::string& what) {
    if (!ok) fail(ErrorCode::config_error, "config: " + what);
  };
  check(sample_start <= sample_end, "sample_start must not exceed sample_end");
  check(train_end < forecast_end, "train_end must precede forecast_end");
  check(forecast_end <= sample_end, "forecast_end must not exceed sample_end");
  check(sample_start <= train_end, "train_end must lie inside the sample");
  check(forecast_start <= forecast_end, "forecast_start must not exceed forecast_end");
  check(train_end < forecast_start, "forecast_start must follow train_end");
  check(publication_lag <= nowcast_max_lag, "publication_lag must not exceed nowcast_max_lag");
}

PipelineConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::io_error, "cannot open config '" + path + "'");
  const auto base_dir = std::filesystem::path(path).parent_path();
  const auto resolve = [&](const std::string& p) {
    std::filesystem::path fp(p);
    return fp.is_absolute() ? fp.string() : (base_dir / fp).string();
  };

  PipelineConfig config;
  AnalysisOptions defaults;
  CountryConfig* current = nullptr;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    const std::string where = path + ":" + std::to_string(line_no);

    if (stripped.front() == '[') {
      if (stripped.back() != ']') bad(where, "unterminated section header");
      const std::string code = trim(stripped.substr(1, stripped.size() - 2));
      if (code.empty()) bad(where, "empty country code");
      for (const auto& c : config.countries)
        if (c.code == code) bad(where, "duplicate country section [" + code + "]");
      CountryConfig country;
      country.code = code;
      country.options = defaults;
      config.countries.push_back(std::move(country));
      current = &config.countries.back();
      continue;
    }

    const auto eq = stripped.find('=');
    if (eq == std::string::npos) bad(where, "expected 'key = value'");
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (key.empty() || value.empty()) bad(where, "expected 'key = value'");

    if (current == nullptr) {
      if (key == "parallel") config.parallel = parse_flag(where, value);
      else apply_option(where, defaults, key, value);
      continue;
    }
    if (key == "unemployment_csv") current->unemployment_csv = resolve(value);
    else if (key == "trends_csv") current->trends_csv = resolve(value);
    else if (key == "search_terms") current->search_terms = value;
    else if (key == "parallel") bad(where, "'parallel' is a global key");
    else apply_option(where, current->options, key, value);
  }

  if (config.countries.empty()) fail(ErrorCode::config_error, path + ": no country sections");
  for (const auto& country : config.countries) {
    const std::string where = path + ": [" + country.code + "]";
    if (country.unemployment_csv.empty()) bad(where, "missing unemployment_csv");
    if (country.trends_csv.empty()) bad(where, "missing trends_csv");
    country.options.validate();
  }
  return config;
}

namespace {

std::string describe(const AnalysisOptions& o) {
  std::ostringstream out;
  out << "adf_lags=" << o.adf_lags
      << " adf_trend=" << (o.adf_trend ? "on" : "off")
      << " dm_bandwidth=" << (o.dm_bandwidth < 0 ? std::string("auto") : std::to_string(o.dm_bandwidth))
      << " dm_loss=" << (o.dm_loss == LossKind::squared ? "squared" : "absolute")
      << " dm_small_sample=" << (o.dm_small_sample ? "on" : "off")
      << " forecast_end=" << to_string(o.forecast_end)
      << " forecast_scheme=" << (o.forecast_scheme == WindowScheme::expanding ? "expanding" : "fixed")
      << " forecast_start=" << to_string(o.forecast_start)
      << " hac_bandwidth=" << (o.hac_bandwidth < 0 ? std::string("auto") : std::to_string(o.hac_bandwidth))
      << " kpss_bandwidth=" << (o.kpss_bandwidth < 0 ? std::string("auto") : std::to_string(o.kpss_bandwidth))
      << " kpss_trend=" << (o.kpss_trend ? "on" : "off")
      << " nowcast_max_lag=" << o.nowcast_max_lag
      << " publication_lag=" << o.publication_lag
      << " sample_end=" << to_string(o.sample_end)
      << " sample_start=" << to_string(o.sample_start)
      << " train_end=" << to_string(o.train_end)
      << " var_lag_selection=" << (o.var_lag_aic ? "aic" : "fixed")
      << " var_p=" << o.var_p;
  return out.str();
}

}  // namespace

std::string resolved_config_text(const PipelineConfig& config) {
  // the parallel flag is an execution knob, not part of the statistical
  // configuration; keeping it out makes serial and concurrent runs emit
  // byte-identical reports
  std::ostringstream out;
  for (const auto& country : config.countries) {
    out << "[" << country.code << "] "
        << "unemployment_csv=" << std::filesystem::path(country.unemployment_csv).filename().string()
        << " trends_csv=" << std::filesystem::path(country.trends_csv).filename().string();
    if (!country.search_terms.empty()) out << " search_terms=" << country.search_terms;
    out << " " << describe(country.options) << "\n";
  }
  return out.str();
}

std::uint64_t fnv1a64(std::string_view text) {
  std::uint64_t hash = 1469598103934665603ULL;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 1099511628211ULL;
  }
  return hash;
}

}  // namespace trendcast
