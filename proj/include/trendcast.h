/*
 * trendcast C API: monthly/weekly series handling, stationarity tests,
 * HAC regression, nowcasting, VAR forecasting with Granger causality, and
 * the batch analysis pipeline.
 *
 * Conventions:
 *   - every fallible call returns a tc_status; TC_OK is 0
 *   - on failure, tc_last_error() returns a thread-local message
 *   - objects created through tc_*_create / tc_read_* are released with
 *     the matching tc_*_free (NULL is accepted)
 */

#ifndef TRENDCAST_H
#define TRENDCAST_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define TC_API __declspec(dllexport)
#else
#define TC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tc_status {
  TC_OK = 0,
  TC_ERR_SERIES_TOO_SHORT,
  TC_ERR_NON_POSITIVE_VALUE,
  TC_ERR_COVERAGE_GAP,
  TC_ERR_NON_WEEKLY_SPACING,
  TC_ERR_NO_OVERLAP,
  TC_ERR_RANK_DEFICIENT,
  TC_ERR_INSUFFICIENT_OBSERVATIONS,
  TC_ERR_BANDWIDTH_TOO_LARGE,
  TC_ERR_SAMPLE_MISMATCH,
  TC_ERR_NESTED_VIOLATION,
  TC_ERR_CONSTANT_SERIES,
  TC_ERR_DEGENERATE_VARIANCE,
  TC_ERR_UNKNOWN_VARIABLE,
  TC_ERR_ALIGNMENT,
  TC_ERR_WINDOW_OUT_OF_RANGE,
  TC_ERR_EMPTY_FORECAST_SET,
  TC_ERR_DEGENERATE_LOSS_DIFFERENTIAL,
  TC_ERR_NON_POSITIVE_LONG_RUN_VARIANCE,
  TC_ERR_LENGTH_MISMATCH,
  TC_ERR_PARSE,
  TC_ERR_GAP,
  TC_ERR_RANGE,
  TC_ERR_CONFIG,
  TC_ERR_IO,
  TC_ERR_INVALID_ARGUMENT,
  TC_ERR_INTERNAL
} tc_status;

TC_API const char* tc_version(void);
TC_API const char* tc_status_name(tc_status status);

/* Message describing the last failure on the calling thread. */
TC_API const char* tc_last_error(void);

/* ------------------------------------------------------------------ */
/* monthly series                                                      */
/* ------------------------------------------------------------------ */

typedef struct tc_series tc_series;

typedef enum tc_units {
  TC_UNITS_PERCENT = 0,
  TC_UNITS_INDEX_0_100 = 1,
  TC_UNITS_NONE = 2
} tc_units;

/* Values are consecutive months starting at start_year/start_month (1-12). */
TC_API tc_status tc_series_create(const char* id, int start_year, int start_month,
                                  const double* values, size_t count, tc_units units,
                                  tc_series** out);
TC_API void tc_series_free(tc_series* series);

TC_API size_t tc_series_length(const tc_series* series);
TC_API tc_status tc_series_start(const tc_series* series, int* year, int* month);
/* Copies all observations; buffer_len must be >= tc_series_length(). */
TC_API tc_status tc_series_values(const tc_series* series, double* buffer, size_t buffer_len);

TC_API tc_status tc_series_diff(const tc_series* series, tc_series** out);
TC_API tc_status tc_series_log(const tc_series* series, tc_series** out);
/* Restricts both series to their common month range. */
TC_API tc_status tc_series_align(const tc_series* a, const tc_series* b, tc_series** out_a,
                                 tc_series** out_b);

/* ------------------------------------------------------------------ */
/* weekly series and calendar aggregation                              */
/* ------------------------------------------------------------------ */

typedef struct tc_weekly tc_weekly;

/* Consecutive 7-day weeks starting at the given civil date. */
TC_API tc_status tc_weekly_create(int start_year, int start_month, int start_day,
                                  const double* values, size_t count, tc_weekly** out);
TC_API void tc_weekly_free(tc_weekly* weekly);
TC_API size_t tc_weekly_length(const tc_weekly* weekly);

/* Days-weighted monthly aggregation; partially covered edge months drop. */
TC_API tc_status tc_weekly_aggregate(const tc_weekly* weekly, const char* id, tc_series** out);

/* ------------------------------------------------------------------ */
/* CSV ingestion                                                       */
/* ------------------------------------------------------------------ */

/* Rows "YYYY-MM,<rate>" (optional header); consecutive months, rate 0-100. */
TC_API tc_status tc_read_unemployment_csv(const char* path, tc_series** out);
/* Rows "YYYY-MM-DD,<value>" with week starts exactly 7 days apart, 0-100. */
TC_API tc_status tc_read_trends_csv(const char* path, tc_weekly** out);

/* ------------------------------------------------------------------ */
/* stationarity tests                                                  */
/* ------------------------------------------------------------------ */

typedef struct tc_test_report {
  double statistic;
  double cv_1pct, cv_5pct, cv_10pct;
  /* smallest tabulated level (percent) at which H0 rejects; 0 = none */
  int rejected_at_pct;
  /* p-value: exact for F tests, interpolated between critical values
     (clamped to [0.01, 0.10]) for ADF/KPSS */
  double p_value;
  int lags;
  long long n;
  int degenerate;
} tc_test_report;

TC_API tc_status tc_adf_test(const tc_series* series, int lags, int intercept, int trend,
                             tc_test_report* out);
/* bandwidth < 0 selects floor(4 (n/100)^(2/9)). */
TC_API tc_status tc_kpss_test(const tc_series* series, int trend, int bandwidth,
                              tc_test_report* out);

/* ------------------------------------------------------------------ */
/* elasticity regression (HAC standard errors)                         */
/* ------------------------------------------------------------------ */

typedef struct tc_elasticity {
  double intercept;
  double slope;
  double slope_se_hac;
  double t_stat;
  double p_value; /* two-sided, t(n-2) */
  int hac_bandwidth;
  long long n;
} tc_elasticity;

/* Regression of d_unemployment on dlog_trends with Newey-West errors;
   bandwidth < 0 selects the automatic rule. */
TC_API tc_status tc_elasticity_fit(const tc_series* d_unemployment,
                                   const tc_series* dlog_trends, int hac_bandwidth,
                                   tc_elasticity* out);

/* ------------------------------------------------------------------ */
/* nowcasting                                                          */
/* ------------------------------------------------------------------ */

typedef struct tc_nowcast {
  double adj_r2_with;
  double adj_r2_without;
  double f_stat; /* joint F for excluding every proxy term */
  double p_value;
  int proxy_terms;
  long long n_eff;
} tc_nowcast;

TC_API tc_status tc_nowcast_fit(const tc_series* d_unemployment, const tc_series* dlog_trends,
                                int publication_lag, int max_lag, tc_nowcast* out);

/* ------------------------------------------------------------------ */
/* VAR estimation, Granger causality, forecast comparison              */
/* ------------------------------------------------------------------ */

typedef struct tc_var tc_var;

TC_API tc_status tc_var_fit(const tc_series* a, const tc_series* b, int p, tc_var** out);
TC_API void tc_var_free(tc_var* fit);
TC_API int tc_var_lag_order(const tc_var* fit);
TC_API long long tc_var_effective_obs(const tc_var* fit);
TC_API tc_status tc_var_intercept(const tc_var* fit, int equation, double* out);
/* Coefficient of variable `variable` at lag `lag` (1-based) in `equation`. */
TC_API tc_status tc_var_coefficient(const tc_var* fit, int lag, int equation, int variable,
                                    double* out);
/* cause/effect: 0 = first series passed to tc_var_fit, 1 = second. */
TC_API tc_status tc_var_granger(const tc_var* fit, int cause, int effect, tc_test_report* out);

typedef enum tc_loss { TC_LOSS_SQUARED = 0, TC_LOSS_ABSOLUTE = 1 } tc_loss;
typedef enum tc_scheme { TC_SCHEME_EXPANDING = 0, TC_SCHEME_FIXED = 1 } tc_scheme;

typedef struct tc_dm_result {
  double statistic;
  double p_one_sided; /* P(S > statistic): first sequence loses */
  double p_two_sided;
  double lrv;
  long long n;
} tc_dm_result;

/* Diebold-Mariano test on two forecast-error sequences. bandwidth < 0
   selects the one-step rule (0). */
TC_API tc_status tc_dm_test(const double* errors_1, const double* errors_2, size_t count,
                            tc_loss loss, int bandwidth, int small_sample, tc_dm_result* out);

typedef struct tc_forecast_comparison {
  double rmse_ar, rmse_var;
  double mae_ar, mae_var;
  tc_dm_result dm;
  int dm_degenerate;
  int n_forecasts;
} tc_forecast_comparison;

/* Rolling one-step AR(p)-versus-VAR(p) comparison of d_unemployment over
   the horizon following train_end. */
TC_API tc_status tc_forecast_compare(const tc_series* d_unemployment,
                                     const tc_series* dlog_trends, int p, int train_year,
                                     int train_month, int horizon_months, tc_scheme scheme,
                                     tc_loss loss, tc_forecast_comparison* out);

/* ------------------------------------------------------------------ */
/* batch pipeline                                                      */
/* ------------------------------------------------------------------ */

typedef enum tc_stage {
  TC_STAGE_STATIONARITY = 1,
  TC_STAGE_ELASTICITY = 2,
  TC_STAGE_NOWCAST = 4,
  TC_STAGE_FORECAST = 8,
  TC_STAGE_CAUSALITY = 16,
  TC_STAGE_ALL = 31
} tc_stage;

/* Runs the configured per-country workflow and writes report.txt plus the
 * plot-data files into out_dir. `country` filters to one config section
 * (NULL = all). `seed` is reserved for the Monte Carlo harness and does
 * not affect the deterministic analysis stages. */
TC_API tc_status tc_run_pipeline(const char* config_path, const char* out_dir,
                                 const char* country, unsigned stages, uint64_t seed);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* TRENDCAST_H */
