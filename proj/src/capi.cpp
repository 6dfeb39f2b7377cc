#include "trendcast.h"

#include <cstdio>
#include <cstring>
#include <string>

#include "trendcast/csv_io.hpp"
#include "trendcast/errors.hpp"
#include "trendcast/forecast_eval.hpp"
#include "trendcast/pipeline.hpp"
#include "trendcast/series.hpp"
#include "trendcast/stationarity.hpp"
#include "trendcast/var.hpp"

using namespace trendcast;

struct tc_series {
  MonthlySeries impl;
};

struct tc_weekly {
  WeeklySeries impl;
};

struct tc_var {
  VarFit impl;
};

namespace {

thread_local std::string g_last_error;

tc_status map_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::ok: return TC_OK;
    case ErrorCode::series_too_short: return TC_ERR_SERIES_TOO_SHORT;
    case ErrorCode::non_positive_value: return TC_ERR_NON_POSITIVE_VALUE;
    case ErrorCode::coverage_gap: return TC_ERR_COVERAGE_GAP;
    case ErrorCode::non_weekly_spacing: return TC_ERR_NON_WEEKLY_SPACING;
    case ErrorCode::no_overlap: return TC_ERR_NO_OVERLAP;
    case ErrorCode::rank_deficient: return TC_ERR_RANK_DEFICIENT;
    case ErrorCode::insufficient_observations: return TC_ERR_INSUFFICIENT_OBSERVATIONS;
    case ErrorCode::bandwidth_too_large: return TC_ERR_BANDWIDTH_TOO_LARGE;
    case ErrorCode::sample_mismatch: return TC_ERR_SAMPLE_MISMATCH;
    case ErrorCode::nested_violation: return TC_ERR_NESTED_VIOLATION;
    case ErrorCode::constant_series: return TC_ERR_CONSTANT_SERIES;
    case ErrorCode::degenerate_variance: return TC_ERR_DEGENERATE_VARIANCE;
    case ErrorCode::unknown_variable: return TC_ERR_UNKNOWN_VARIABLE;
    case ErrorCode::alignment_error: return TC_ERR_ALIGNMENT;
    case ErrorCode::window_out_of_range: return TC_ERR_WINDOW_OUT_OF_RANGE;
    case ErrorCode::empty_forecast_set: return TC_ERR_EMPTY_FORECAST_SET;
    case ErrorCode::degenerate_loss_differential: return TC_ERR_DEGENERATE_LOSS_DIFFERENTIAL;
    case ErrorCode::non_positive_long_run_variance:
      return TC_ERR_NON_POSITIVE_LONG_RUN_VARIANCE;
    case ErrorCode::length_mismatch: return TC_ERR_LENGTH_MISMATCH;
    case ErrorCode::parse_error: return TC_ERR_PARSE;
    case ErrorCode::gap_error: return TC_ERR_GAP;
    case ErrorCode::range_error: return TC_ERR_RANGE;
    case ErrorCode::config_error: return TC_ERR_CONFIG;
    case ErrorCode::io_error: return TC_ERR_IO;
    case ErrorCode::invalid_argument: return TC_ERR_INVALID_ARGUMENT;
    case ErrorCode::internal: return TC_ERR_INTERNAL;
  }
  return TC_ERR_INTERNAL;
}

tc_status set_error(tc_status status, const char* message) {
  g_last_error = message;
  return status;
}

template <typename F>
tc_status guarded(F&& body) {
  try {
    body();
    return TC_OK;
  } catch (const Error& e) {
    return set_error(map_code(e.code()), e.what());
  } catch (const std::exception& e) {
    return set_error(TC_ERR_INTERNAL, e.what());
  } catch (...) {
    return set_error(TC_ERR_INTERNAL, "unknown error");
  }
}

tc_status require(bool ok, const char* message) {
  return ok ? TC_OK : set_error(TC_ERR_INVALID_ARGUMENT, message);
}

void fill_report(const TestReport& report, tc_test_report* out) {
  out->statistic = report.statistic;
  out->cv_1pct = report.critical_values.at(1);
  out->cv_5pct = report.critical_values.at(5);
  out->cv_10pct = report.critical_values.at(10);
  out->rejected_at_pct = report.rejects(1) ? 1 : (report.rejects(5) ? 5 : (report.rejects(10) ? 10 : 0));
  out->p_value = report.p_value.value_or(-1.0);
  out->lags = report.lags;
  out->n = static_cast<long long>(report.n);
  out->degenerate = report.degenerate ? 1 : 0;
}

void fill_dm(const DmResult& dm, tc_dm_result* out) {
  out->statistic = dm.statistic;
  out->p_one_sided = dm.p_one_sided;
  out->p_two_sided = dm.p_two_sided;
  out->lrv = dm.lrv;
  out->n = static_cast<long long>(dm.n);
}

}  // namespace

extern "C" {

const char* tc_version(void) { return version_string; }

const char* tc_last_error(void) { return g_last_error.c_str(); }

const char* tc_status_name(tc_status status) {
  switch (status) {
    case TC_OK: return "ok";
    case TC_ERR_SERIES_TOO_SHORT: return "series_too_short";
    case TC_ERR_NON_POSITIVE_VALUE: return "non_positive_value";
    case TC_ERR_COVERAGE_GAP: return "coverage_gap";
    case TC_ERR_NON_WEEKLY_SPACING: return "non_weekly_spacing";
    case TC_ERR_NO_OVERLAP: return "no_overlap";
    case TC_ERR_RANK_DEFICIENT: return "rank_deficient";
    case TC_ERR_INSUFFICIENT_OBSERVATIONS: return "insufficient_observations";
    case TC_ERR_BANDWIDTH_TOO_LARGE: return "bandwidth_too_large";
    case TC_ERR_SAMPLE_MISMATCH: return "sample_mismatch";
    case TC_ERR_NESTED_VIOLATION: return "nested_violation";
    case TC_ERR_CONSTANT_SERIES: return "constant_series";
    case TC_ERR_DEGENERATE_VARIANCE: return "degenerate_variance";
    case TC_ERR_UNKNOWN_VARIABLE: return "unknown_variable";
    case TC_ERR_ALIGNMENT: return "alignment_error";
    case TC_ERR_WINDOW_OUT_OF_RANGE: return "window_out_of_range";
    case TC_ERR_EMPTY_FORECAST_SET: return "empty_forecast_set";
    case TC_ERR_DEGENERATE_LOSS_DIFFERENTIAL: return "degenerate_loss_differential";
    case TC_ERR_NON_POSITIVE_LONG_RUN_VARIANCE: return "non_positive_long_run_variance";
    case TC_ERR_LENGTH_MISMATCH: return "length_mismatch";
    case TC_ERR_PARSE: return "parse_error";
    case TC_ERR_GAP: return "gap_error";
    case TC_ERR_RANGE: return "range_error";
    case TC_ERR_CONFIG: return "config_error";
    case TC_ERR_IO: return "io_error";
    case TC_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case TC_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

tc_status tc_series_create(const char* id, int start_year, int start_month,
                           const double* values, size_t count, tc_units units,
                           tc_series** out) {
  if (auto st = require(id && values && out && count > 0, "tc_series_create: bad arguments"))
    return st;
  return guarded([&] {
    Units u = units == TC_UNITS_PERCENT
                  ? Units::percent
                  : (units == TC_UNITS_INDEX_0_100 ? Units::index_0_100 : Units::none);
    *out = new tc_series{MonthlySeries(id, YearMonth{start_year, start_month},
                                       std::vector<double>(values, values + count), u)};
  });
}

void tc_series_free(tc_series* series) { delete series; }

size_t tc_series_length(const tc_series* series) { return series ? series->impl.size() : 0; }

tc_status tc_series_start(const tc_series* series, int* year, int* month) {
  if (auto st = require(series && year && month, "tc_series_start: bad arguments")) return st;
  *year = series->impl.start().year;
  *month = series->impl.start().month;
  return TC_OK;
}

tc_status tc_series_values(const tc_series* series, double* buffer, size_t buffer_len) {
  if (auto st = require(series && buffer, "tc_series_values: bad arguments")) return st;
  if (buffer_len < series->impl.size())
    return set_error(TC_ERR_LENGTH_MISMATCH, "tc_series_values: buffer too small");
  std::memcpy(buffer, series->impl.values().data(), series->impl.size() * sizeof(double));
  return TC_OK;
}

tc_status tc_series_diff(const tc_series* series, tc_series** out) {
  if (auto st = require(series && out, "tc_series_diff: bad arguments")) return st;
  return guarded([&] { *out = new tc_series{first_difference(series->impl)}; });
}

tc_status tc_series_log(const tc_series* series, tc_series** out) {
  if (auto st = require(series && out, "tc_series_log: bad arguments")) return st;
  return guarded([&] { *out = new tc_series{log_transform(series->impl)}; });
}

tc_status tc_series_align(const tc_series* a, const tc_series* b, tc_series** out_a,
                          tc_series** out_b) {
  if (auto st = require(a && b && out_a && out_b, "tc_series_align: bad arguments")) return st;
  return guarded([&] {
    auto [sa, sb] = align(a->impl, b->impl);
    *out_a = new tc_series{std::move(sa)};
    *out_b = new tc_series{std::move(sb)};
  });
}

tc_status tc_weekly_create(int start_year, int start_month, int start_day,
                           const double* values, size_t count, tc_weekly** out) {
  if (auto st = require(values && out && count > 0, "tc_weekly_create: bad arguments"))
    return st;
  return guarded([&] {
    char text[16];
    std::snprintf(text, sizeof(text), "%04d-%02d-%02d", start_year, start_month, start_day);
    const auto day = parse_date(text);
    if (!day) fail(ErrorCode::invalid_argument, "tc_weekly_create: invalid start date");
    *out = new tc_weekly{WeeklySeries(*day, std::vector<double>(values, values + count))};
  });
}

void tc_weekly_free(tc_weekly* weekly) { delete weekly; }

size_t tc_weekly_length(const tc_weekly* weekly) { return weekly ? weekly->impl.size() : 0; }

tc_status tc_weekly_aggregate(const tc_weekly* weekly, const char* id, tc_series** out) {
  if (auto st = require(weekly && id && out, "tc_weekly_aggregate: bad arguments")) return st;
  return guarded([&] { *out = new tc_series{aggregate_weekly_to_monthly(weekly->impl, id)}; });
}

tc_status tc_read_unemployment_csv(const char* path, tc_series** out) {
  if (auto st = require(path && out, "tc_read_unemployment_csv: bad arguments")) return st;
  return guarded([&] { *out = new tc_series{ingest_unemployment_csv(path)}; });
}

tc_status tc_read_trends_csv(const char* path, tc_weekly** out) {
  if (auto st = require(path && out, "tc_read_trends_csv: bad arguments")) return st;
  return guarded([&] { *out = new tc_weekly{ingest_trends_csv(path)}; });
}

tc_status tc_adf_test(const tc_series* series, int lags, int intercept, int trend,
                      tc_test_report* out) {
  if (auto st = require(series && out, "tc_adf_test: bad arguments")) return st;
  return guarded([&] {
    fill_report(adf_test(series->impl, lags, intercept != 0, trend != 0), out);
  });
}

tc_status tc_kpss_test(const tc_series* series, int trend, int bandwidth,
                       tc_test_report* out) {
  if (auto st = require(series && out, "tc_kpss_test: bad arguments")) return st;
  return guarded([&] {
    fill_report(kpss_test(series->impl, trend != 0,
                          bandwidth < 0 ? std::nullopt : std::optional<int>(bandwidth)),
                out);
  });
}

tc_status tc_elasticity_fit(const tc_series* d_unemployment, const tc_series* dlog_trends,
                            int hac_bandwidth, tc_elasticity* out) {
  if (auto st = require(d_unemployment && dlog_trends && out, "tc_elasticity_fit: bad arguments"))
    return st;
  return guarded([&] {
    const auto& dur = d_unemployment->impl;
    const auto& dlgi = dlog_trends->impl;
    if (dur.start() != dlgi.start() || dur.size() != dlgi.size())
      fail(ErrorCode::alignment_error, "tc_elasticity_fit: series are not aligned");
    const auto n = static_cast<Eigen::Index>(dur.size());
    DesignMatrix::Builder builder(n);
    builder.intercept();
    builder.column("dlog_gi", dlgi.values());
    const DesignMatrix design = builder.build();
    RegressionFit fit =
        ols_fit(design, Eigen::Map<const Eigen::VectorXd>(dur.values().data(), n));
    const int bw = hac_bandwidth < 0 ? newey_west_bandwidth(n) : hac_bandwidth;
    fit.cov_hac = hac_covariance(fit, design, bw);
    const Eigen::Index col = fit.column("dlog_gi");
    out->intercept = fit.coefficient("const");
    out->slope = fit.coefficient("dlog_gi");
    out->slope_se_hac = fit.se_hac(col);
    out->t_stat = out->slope / out->slope_se_hac;
    out->p_value = fit.p_value(col);
    out->hac_bandwidth = bw;
    out->n = static_cast<long long>(n);
  });
}

tc_status tc_nowcast_fit(const tc_series* d_unemployment, const tc_series* dlog_trends,
                         int publication_lag, int max_lag, tc_nowcast* out) {
  if (auto st = require(d_unemployment && dlog_trends && out, "tc_nowcast_fit: bad arguments"))
    return st;
  return guarded([&] {
    const NowcastFit fit =
        fit_nowcast(d_unemployment->impl, dlog_trends->impl, publication_lag, max_lag);
    out->adj_r2_with = fit.adj_r2_with;
    out->adj_r2_without = fit.adj_r2_without;
    out->f_stat = fit.proxy_joint_f.statistic;
    out->p_value = fit.proxy_joint_f.p_value.value_or(-1.0);
    out->proxy_terms = fit.proxy_joint_f.df1;
    out->n_eff = static_cast<long long>(fit.n_eff);
  });
}

tc_status tc_var_fit(const tc_series* a, const tc_series* b, int p, tc_var** out) {
  if (auto st = require(a && b && out, "tc_var_fit: bad arguments")) return st;
  return guarded([&] { *out = new tc_var{fit_var(a->impl, b->impl, p)}; });
}

void tc_var_free(tc_var* fit) { delete fit; }

int tc_var_lag_order(const tc_var* fit) { return fit ? fit->impl.p : 0; }

long long tc_var_effective_obs(const tc_var* fit) {
  return fit ? static_cast<long long>(fit->impl.effective_obs()) : 0;
}

tc_status tc_var_intercept(const tc_var* fit, int equation, double* out) {
  if (auto st = require(fit && out && equation >= 0 && equation < 2,
                        "tc_var_intercept: bad arguments"))
    return st;
  *out = fit->impl.intercepts[equation];
  return TC_OK;
}

tc_status tc_var_coefficient(const tc_var* fit, int lag, int equation, int variable,
                             double* out) {
  if (auto st = require(fit && out && equation >= 0 && equation < 2 && variable >= 0 &&
                            variable < 2 && lag >= 1,
                        "tc_var_coefficient: bad arguments"))
    return st;
  if (lag > fit->impl.p)
    return set_error(TC_ERR_INVALID_ARGUMENT, "tc_var_coefficient: lag exceeds order");
  *out = fit->impl.coef[static_cast<std::size_t>(lag - 1)](equation, variable);
  return TC_OK;
}

tc_status tc_var_granger(const tc_var* fit, int cause, int effect, tc_test_report* out) {
  if (auto st = require(fit && out && cause >= 0 && cause < 2 && effect >= 0 && effect < 2,
                        "tc_var_granger: bad arguments"))
    return st;
  return guarded([&] {
    fill_report(granger_test(fit->impl, fit->impl.variables[static_cast<std::size_t>(cause)],
                             fit->impl.variables[static_cast<std::size_t>(effect)]),
                out);
  });
}

tc_status tc_dm_test(const double* errors_1, const double* errors_2, size_t count,
                     tc_loss loss, int bandwidth, int small_sample, tc_dm_result* out) {
  if (auto st = require(errors_1 && errors_2 && out, "tc_dm_test: bad arguments")) return st;
  return guarded([&] {
    const DmResult dm =
        dm_test(std::span(errors_1, count), std::span(errors_2, count),
                loss == TC_LOSS_ABSOLUTE ? LossKind::absolute : LossKind::squared,
                bandwidth < 0 ? std::nullopt : std::optional<int>(bandwidth),
                small_sample != 0);
    fill_dm(dm, out);
  });
}

tc_status tc_forecast_compare(const tc_series* d_unemployment, const tc_series* dlog_trends,
                              int p, int train_year, int train_month, int horizon_months,
                              tc_scheme scheme, tc_loss loss, tc_forecast_comparison* out) {
  if (auto st = require(d_unemployment && dlog_trends && out,
                        "tc_forecast_compare: bad arguments"))
    return st;
  return guarded([&] {
    const WindowScheme window =
        scheme == TC_SCHEME_FIXED ? WindowScheme::fixed : WindowScheme::expanding;
    const YearMonth train_end{train_year, train_month};
    const ForecastModelSpec ar_spec{ModelKind::ar, p, window};
    const ForecastModelSpec var_spec{ModelKind::var, p, window};
    const auto ar_records = forecast_rolling(ar_spec, d_unemployment->impl, nullptr,
                                             train_end, horizon_months);
    const auto var_records = forecast_rolling(var_spec, d_unemployment->impl,
                                              &dlog_trends->impl, train_end, horizon_months);
    out->rmse_ar = rmse(ar_records);
    out->rmse_var = rmse(var_records);
    out->mae_ar = mae(ar_records);
    out->mae_var = mae(var_records);
    out->n_forecasts = static_cast<int>(ar_records.size());
    out->dm_degenerate = 0;
    std::vector<double> e_ar, e_var;
    for (const auto& rec : ar_records) e_ar.push_back(rec.error());
    for (const auto& rec : var_records) e_var.push_back(rec.error());
    try {
      const DmResult dm = dm_test(e_ar, e_var,
                                  loss == TC_LOSS_ABSOLUTE ? LossKind::absolute
                                                           : LossKind::squared);
      fill_dm(dm, &out->dm);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::degenerate_loss_differential) throw;
      out->dm_degenerate = 1;
      out->dm = tc_dm_result{};
    }
  });
}

tc_status tc_run_pipeline(const char* config_path, const char* out_dir, const char* country,
                          unsigned stages, uint64_t seed) {
  (void)seed;  // consumed only by the Monte Carlo harness
  if (auto st = require(config_path && out_dir, "tc_run_pipeline: bad arguments")) return st;
  if (auto st = require((stages & TC_STAGE_ALL) != 0, "tc_run_pipeline: no stages selected"))
    return st;
  return guarded([&] {
    PipelineConfig config = parse_config_file(config_path);
    if (country != nullptr) {
      std::erase_if(config.countries,
                    [&](const CountryConfig& c) { return c.code != country; });
      if (config.countries.empty())
        fail(ErrorCode::config_error,
             std::string("no country section named [") + country + "]");
    }
    const PipelineReport report = run_pipeline(config, stages & TC_STAGE_ALL);
    write_outputs(report, out_dir);
  });
}

}  // extern "C"
