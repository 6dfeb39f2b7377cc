#ifndef TRENDCAST_PIPELINE_HPP
#define TRENDCAST_PIPELINE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "trendcast/config.hpp"
#include "trendcast/forecast_eval.hpp"
#include "trendcast/stationarity.hpp"
#include "trendcast/var.hpp"

namespace trendcast {

inline constexpr const char* version_string = "0.1.0";

enum Stage : unsigned {
  stage_stationarity = 1u << 0,
  stage_elasticity = 1u << 1,
  stage_nowcast = 1u << 2,
  stage_forecast = 1u << 3,
  stage_causality = 1u << 4,
  stage_all = 31u,
};

struct StationarityRow {
  std::string label;  // e.g. "unemployment.level"
  TestReport adf;
  TestReport kpss;
};

struct ElasticityResult {
  Eigen::Index n = 0;
  int hac_bandwidth = 0;
  double intercept = 0.0;
  double slope = 0.0;
  double se_hac = 0.0;
  double t_stat = 0.0;
  double p_value = 1.0;
};

struct NowcastResult {
  Eigen::Index n_eff = 0;
  int proxy_terms = 0;
  double adj_r2_without = 0.0;
  double adj_r2_with = 0.0;
  double f_stat = 0.0;
  double p_value = 1.0;
};

struct ForecastResult {
  YearMonth window_start, window_end;
  WindowScheme scheme = WindowScheme::expanding;
  int n_forecasts = 0;
  double rmse_ar = 0.0, rmse_var = 0.0, rmse_change_pct = 0.0;
  double mae_ar = 0.0, mae_var = 0.0, mae_change_pct = 0.0;
  LossKind dm_loss = LossKind::squared;
  bool dm_degenerate = false;
  DmResult dm;
  std::vector<ForecastRecord> ar_records, var_records;
};

struct CausalityResult {
  int var_p = 0;
  Eigen::Index n_eff = 0;
  TestReport google_to_unemployment;
  TestReport unemployment_to_google;
};

struct CountryResult {
  std::string code;
  YearMonth sample_start, sample_end;
  Eigen::Index months = 0;
  std::optional<std::vector<StationarityRow>> stationarity;
  std::optional<ElasticityResult> elasticity;
  std::optional<NowcastResult> nowcast;
  std::optional<ForecastResult> forecast;
  std::optional<CausalityResult> causality;
  // plot data (levels and differences)
  std::optional<MonthlySeries> ur_level, gi_level, ur_diff, gi_logdiff;
};

struct PipelineReport {
  std::vector<CountryResult> countries;
  unsigned stages = stage_all;
  std::string resolved_config;
  std::uint64_t fingerprint = 0;
};

/// Runs the requested stages for every configured country. Per-country
/// work is independent and executes concurrently when config.parallel is
/// set; results are merged in configuration order either way.
PipelineReport run_pipeline(const PipelineConfig& config, unsigned stages = stage_all);

/// Single-country pipeline (also used by the concurrent driver).
CountryResult run_country(const CountryConfig& country, unsigned stages);

/// Deterministic structured-text rendering of the report (no timestamps).
std::string render_report(const PipelineReport& report);

/// Writes report.txt and the per-figure plot-data files into out_dir.
/// Returns the report path.
std::string write_outputs(const PipelineReport& report, const std::string& out_dir);

}  // namespace trendcast

#endif
