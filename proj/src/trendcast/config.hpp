#ifndef TRENDCAST_CONFIG_HPP
#define TRENDCAST_CONFIG_HPP

#include <string>
#include <vector>

#include "trendcast/calendar.hpp"
#include "trendcast/forecast_eval.hpp"

namespace trendcast {

/// Per-country analysis options with the workflow defaults.
struct AnalysisOptions {
  YearMonth sample_start{2004, 1};
  YearMonth sample_end{2013, 12};
  YearMonth train_end{2012, 12};
  YearMonth forecast_start{2013, 1};
  YearMonth forecast_end{2013, 12};
  int adf_lags = 3;
  bool adf_trend = true;
  bool kpss_trend = true;
  int var_p = 12;
  bool var_lag_aic = false;  // optional information-criterion lag selection
  int publication_lag = 3;
  int nowcast_max_lag = 12;
  int hac_bandwidth = -1;   // -1 = automatic floor(4 (n/100)^(2/9))
  int kpss_bandwidth = -1;  // -1 = automatic
  int dm_bandwidth = -1;    // -1 = h-1 rule (0 for one-step forecasts)
  LossKind dm_loss = LossKind::squared;
  bool dm_small_sample = false;
  WindowScheme forecast_scheme = WindowScheme::expanding;

  void validate() const;  // throws ConfigError on inconsistent dates
};

struct CountryConfig {
  std::string code;
  std::string unemployment_csv;
  std::string trends_csv;
  std::string search_terms;  // documentation only
  AnalysisOptions options;
};

struct PipelineConfig {
  std::vector<CountryConfig> countries;
  bool parallel = true;
};

/// Parses the flat key/value config format: global keys first, then one
/// [CODE] section per country. Relative CSV paths are resolved against the
/// config file's directory.
PipelineConfig parse_config_file(const std::string& path);

/// Canonical text of the resolved configuration (sorted keys); hashed into
/// the report fingerprint.
std::string resolved_config_text(const PipelineConfig& config);

std::uint64_t fnv1a64(std::string_view text);

}  // namespace trendcast

#endif
