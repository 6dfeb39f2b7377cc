#include "trendcast/pipeline.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <map>
#include <sstream>

#include "trendcast/csv_io.hpp"
#include "trendcast/errors.hpp"

namespace trendcast {

namespace {

std::string fmt(double v, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

std::string fmt_pct(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%+.2f%%", v);
  return buf;
}

std::string stars(int count) { return std::string(static_cast<std::size_t>(count), '*'); }

std::string stars_for_p(double p) {
  if (p < 0.01) return "***";
  if (p < 0.05) return "**";
  if (p < 0.10) return "*";
  return "";
}

template <typename F>
auto stage_guard(const std::string& code, const char* stage, F&& body) {
  try {
    return body();
  } catch (const Error& e) {
    throw Error(e.code(),
                "country " + code + ", stage " + stage + ": " + e.what());
  }
}

struct CountryData {
  MonthlySeries ur_level;
  MonthlySeries gi_level;
  MonthlySeries ur_diff;
  MonthlySeries gi_log;
  MonthlySeries gi_diff;
  MonthlySeries gi_logdiff;
};

CountryData load_country(const CountryConfig& country) {
  const auto& opts = country.options;
  MonthlySeries ur = ingest_unemployment_csv(country.unemployment_csv)
                         .with_id(country.code + ".unemployment");
  const WeeklySeries weekly = ingest_trends_csv(country.trends_csv);
  MonthlySeries gi = aggregate_weekly_to_monthly(weekly, country.code + ".google");

  // effective sample: configured window intersected with both series
  auto [ur_w, gi_w] = align(ur, gi);
  const YearMonth from = std::max(ur_w.start(), opts.sample_start);
  const YearMonth to = std::min(ur_w.end(), opts.sample_end);
  if (from > to)
    fail(ErrorCode::no_overlap, "sample window " + to_string(opts.sample_start) + ".." +
                                    to_string(opts.sample_end) + " has no data");
  ur = ur_w.slice(from, to);
  gi = gi_w.slice(from, to);

  MonthlySeries gi_log = log_transform(gi);
  return CountryData{ur,
                     gi,
                     first_difference(ur),
                     gi_log,
                     first_difference(gi),
                     first_difference(gi_log)};
}

std::vector<StationarityRow> stationarity_stage(const CountryData& data,
                                                const AnalysisOptions& opts) {
  std::vector<StationarityRow> rows;
  const auto add = [&](const std::string& label, const MonthlySeries& s) {
    StationarityRow row;
    row.label = label;
    row.adf = adf_test(s, opts.adf_lags, true, opts.adf_trend);
    row.kpss = kpss_test(s, opts.kpss_trend,
                         opts.kpss_bandwidth < 0 ? std::nullopt
                                                 : std::optional<int>(opts.kpss_bandwidth));
    rows.push_back(std::move(row));
  };
  add("unemployment.level", data.ur_level);
  add("unemployment.diff", data.ur_diff);
  add("google.level", data.gi_level);
  add("google.log", data.gi_log);
  add("google.diff", data.gi_diff);
  add("google.logdiff", data.gi_logdiff);
  return rows;
}

ElasticityResult elasticity_stage(const CountryData& data, const AnalysisOptions& opts) {
  const auto& dur = data.ur_diff;
  const auto& dlgi = data.gi_logdiff;
  const auto n = static_cast<Eigen::Index>(dur.size());
  DesignMatrix::Builder builder(n);
  builder.intercept();
  builder.column("dlog_gi", dlgi.values());
  const DesignMatrix design = builder.build();
  RegressionFit fit = ols_fit(design, Eigen::Map<const Eigen::VectorXd>(dur.values().data(), n));
  const int bandwidth = opts.hac_bandwidth < 0 ? newey_west_bandwidth(n) : opts.hac_bandwidth;
  fit.cov_hac = hac_covariance(fit, design, bandwidth);
  fit.hac_bandwidth = bandwidth;

  ElasticityResult result;
  result.n = n;
  result.hac_bandwidth = bandwidth;
  result.intercept = fit.coefficient("const");
  result.slope = fit.coefficient("dlog_gi");
  const Eigen::Index slope_col = fit.column("dlog_gi");
  result.se_hac = fit.se_hac(slope_col);
  result.t_stat = result.slope / result.se_hac;
  result.p_value = fit.p_value(slope_col);
  return result;
}

NowcastResult nowcast_stage(const CountryData& data, const AnalysisOptions& opts) {
  const NowcastFit fit =
      fit_nowcast(data.ur_diff, data.gi_logdiff, opts.publication_lag, opts.nowcast_max_lag);
  NowcastResult result;
  result.n_eff = fit.n_eff;
  result.proxy_terms = fit.proxy_joint_f.df1;
  result.adj_r2_without = fit.adj_r2_without;
  result.adj_r2_with = fit.adj_r2_with;
  result.f_stat = fit.proxy_joint_f.statistic;
  result.p_value = *fit.proxy_joint_f.p_value;
  return result;
}

int resolve_var_p(const CountryData& data, const AnalysisOptions& opts) {
  if (!opts.var_lag_aic) return opts.var_p;
  return select_var_lag_aic(data.ur_diff, data.gi_logdiff, opts.var_p);
}

ForecastResult forecast_stage(const CountryData& data, const AnalysisOptions& opts) {
  const int p = resolve_var_p(data, opts);
  const int horizon = months_between(opts.train_end, opts.forecast_end);
  ForecastModelSpec ar_spec{ModelKind::ar, p, opts.forecast_scheme};
  ForecastModelSpec var_spec{ModelKind::var, p, opts.forecast_scheme};
  auto ar_records =
      forecast_rolling(ar_spec, data.ur_diff, nullptr, opts.train_end, horizon);
  auto var_records =
      forecast_rolling(var_spec, data.ur_diff, &data.gi_logdiff, opts.train_end, horizon);

  // keep only the configured forecast window (train_end+1 may precede it)
  const auto in_window = [&](const ForecastRecord& rec) {
    return rec.target >= opts.forecast_start && rec.target <= opts.forecast_end;
  };
  std::erase_if(ar_records, [&](const auto& r) { return !in_window(r); });
  std::erase_if(var_records, [&](const auto& r) { return !in_window(r); });

  ForecastResult result;
  result.window_start = opts.forecast_start;
  result.window_end = opts.forecast_end;
  result.scheme = opts.forecast_scheme;
  result.n_forecasts = static_cast<int>(ar_records.size());
  result.rmse_ar = rmse(ar_records);
  result.rmse_var = rmse(var_records);
  result.mae_ar = mae(ar_records);
  result.mae_var = mae(var_records);
  result.rmse_change_pct =
      result.rmse_ar > 0.0 ? 100.0 * (result.rmse_var - result.rmse_ar) / result.rmse_ar : 0.0;
  result.mae_change_pct =
      result.mae_ar > 0.0 ? 100.0 * (result.mae_var - result.mae_ar) / result.mae_ar : 0.0;
  result.dm_loss = opts.dm_loss;

  std::vector<double> e_ar, e_var;
  for (const auto& rec : ar_records) e_ar.push_back(rec.error());
  for (const auto& rec : var_records) e_var.push_back(rec.error());
  try {
    result.dm = dm_test(e_ar, e_var, opts.dm_loss,
                        opts.dm_bandwidth < 0 ? std::nullopt
                                              : std::optional<int>(opts.dm_bandwidth),
                        opts.dm_small_sample);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::degenerate_loss_differential) throw;
    result.dm_degenerate = true;
  }
  result.ar_records = std::move(ar_records);
  result.var_records = std::move(var_records);
  return result;
}

CausalityResult causality_stage(const CountryData& data, const AnalysisOptions& opts) {
  const int p = resolve_var_p(data, opts);
  const VarFit fit = fit_var(data.ur_diff, data.gi_logdiff, p);
  CausalityResult result;
  result.var_p = p;
  result.n_eff = fit.effective_obs();
  result.google_to_unemployment = granger_test(fit, data.gi_logdiff.id(), data.ur_diff.id());
  result.unemployment_to_google = granger_test(fit, data.ur_diff.id(), data.gi_logdiff.id());
  return result;
}

}  // namespace

CountryResult run_country(const CountryConfig& country, unsigned stages) {
  const CountryData data = stage_guard(country.code, "ingest",
                                       [&] { return load_country(country); });
  CountryResult result;
  result.code = country.code;
  result.sample_start = data.ur_level.start();
  result.sample_end = data.ur_level.end();
  result.months = static_cast<Eigen::Index>(data.ur_level.size());
  result.ur_level = data.ur_level;
  result.gi_level = data.gi_level;
  result.ur_diff = data.ur_diff;
  result.gi_logdiff = data.gi_logdiff;

  const auto& opts = country.options;
  if (stages & stage_stationarity)
    result.stationarity = stage_guard(country.code, "stationarity",
                                      [&] { return stationarity_stage(data, opts); });
  if (stages & stage_elasticity)
    result.elasticity = stage_guard(country.code, "elasticity",
                                    [&] { return elasticity_stage(data, opts); });
  if (stages & stage_nowcast)
    result.nowcast = stage_guard(country.code, "nowcast",
                                 [&] { return nowcast_stage(data, opts); });
  if (stages & stage_forecast)
    result.forecast = stage_guard(country.code, "forecast",
                                  [&] { return forecast_stage(data, opts); });
  if (stages & stage_causality)
    result.causality = stage_guard(country.code, "causality",
                                   [&] { return causality_stage(data, opts); });
  return result;
}

PipelineReport run_pipeline(const PipelineConfig& config, unsigned stages) {
  PipelineReport report;
  report.stages = stages;
  report.resolved_config = resolved_config_text(config);
  report.fingerprint = fnv1a64(report.resolved_config);
  report.countries.resize(config.countries.size());

  const auto worker = [&](std::size_t i) {
    report.countries[i] = run_country(config.countries[i], stages);
  };
  if (config.parallel && config.countries.size() > 1) {
    std::vector<std::future<void>> futures;
    futures.reserve(config.countries.size());
    for (std::size_t i = 0; i < config.countries.size(); ++i)
      futures.push_back(std::async(std::launch::async, worker, i));
    for (auto& future : futures) future.get();  // first failure wins, in config order
  } else {
    for (std::size_t i = 0; i < config.countries.size(); ++i) worker(i);
  }
  return report;
}

namespace {

void render_country(std::ostringstream& out, const CountryResult& c) {
  out << "[country " << c.code << "]\n";
  out << "sample " << to_string(c.sample_start) << ".." << to_string(c.sample_end) << "\n";
  out << "months " << c.months << "\n\n";

  if (c.stationarity) {
    out << "[country " << c.code << " / stationarity]\n";
    const auto& first = c.stationarity->front();
    out << "adf lags=" << first.adf.lags
        << " deterministic=" << (first.adf.trend ? "const+trend" : "const") << "\n";
    out << "kpss deterministic=" << (first.kpss.trend ? "const+trend" : "const") << "\n";
    char header[96];
    std::snprintf(header, sizeof(header), "%-22s %5s %14s %14s", "series", "n", "adf", "kpss");
    out << header << "\n";
    for (const auto& row : *c.stationarity) {
      const std::string adf_txt = fmt(row.adf.statistic) + stars(row.adf.stars());
      const std::string kpss_txt = fmt(row.kpss.statistic) + stars(row.kpss.stars()) +
                                   (row.kpss.degenerate ? "(degenerate)" : "");
      char line[128];
      std::snprintf(line, sizeof(line), "%-22s %5lld %14s %14s", row.label.c_str(),
                    static_cast<long long>(row.adf.n), adf_txt.c_str(), kpss_txt.c_str());
      out << line << "\n";
    }
    out << "\n";
  }

  if (c.elasticity) {
    const auto& e = *c.elasticity;
    out << "[country " << c.code << " / elasticity]\n";
    out << "n " << e.n << "\n";
    out << "hac_bandwidth " << e.hac_bandwidth << "\n";
    out << "intercept " << fmt(e.intercept) << "\n";
    out << "slope " << fmt(e.slope) << "\n";
    out << "slope_se_hac " << fmt(e.se_hac) << "\n";
    out << "slope_t " << fmt(e.t_stat) << "\n";
    out << "slope_p " << fmt(e.p_value) << "\n";
    const std::string sig = stars_for_p(e.p_value);
    out << "significance " << (sig.empty() ? "-" : sig) << "\n\n";
  }

  if (c.nowcast) {
    const auto& nc = *c.nowcast;
    out << "[country " << c.code << " / nowcast]\n";
    out << "n_eff " << nc.n_eff << "\n";
    out << "google_terms " << nc.proxy_terms << "\n";
    out << "adj_r2_without_google " << fmt(nc.adj_r2_without) << "\n";
    out << "adj_r2_with_google " << fmt(nc.adj_r2_with) << "\n";
    out << "google_joint_f " << fmt(nc.f_stat) << "\n";
    out << "google_joint_f_p " << fmt(nc.p_value) << "\n\n";
  }

  if (c.forecast) {
    const auto& f = *c.forecast;
    out << "[country " << c.code << " / forecast]\n";
    out << "window " << to_string(f.window_start) << ".." << to_string(f.window_end) << "\n";
    out << "scheme " << (f.scheme == WindowScheme::expanding ? "expanding" : "fixed") << "\n";
    out << "n_forecasts " << f.n_forecasts << "\n";
    out << "rmse_no_google " << fmt(f.rmse_ar) << "\n";
    out << "rmse_google " << fmt(f.rmse_var) << "\n";
    out << "rmse_change " << fmt_pct(f.rmse_change_pct) << "\n";
    out << "mae_no_google " << fmt(f.mae_ar) << "\n";
    out << "mae_google " << fmt(f.mae_var) << "\n";
    out << "mae_change " << fmt_pct(f.mae_change_pct) << "\n";
    out << "dm_loss " << (f.dm_loss == LossKind::squared ? "squared" : "absolute") << "\n";
    if (f.dm_degenerate) {
      out << "dm degenerate (zero-variance loss differential)\n\n";
    } else {
      out << "dm_stat " << fmt(f.dm.statistic) << "\n";
      out << "dm_p_one_sided " << fmt(f.dm.p_one_sided) << "\n";
      out << "dm_p_two_sided " << fmt(f.dm.p_two_sided) << "\n\n";
    }
  }

  if (c.causality) {
    const auto& g = *c.causality;
    out << "[country " << c.code << " / causality]\n";
    out << "var_p " << g.var_p << "\n";
    out << "n_eff " << g.n_eff << "\n";
    out << "google_to_unemployment_f " << fmt(g.google_to_unemployment.statistic) << "\n";
    out << "google_to_unemployment_p " << fmt(*g.google_to_unemployment.p_value) << "\n";
    out << "unemployment_to_google_f " << fmt(g.unemployment_to_google.statistic) << "\n";
    out << "unemployment_to_google_p " << fmt(*g.unemployment_to_google.p_value) << "\n\n";
  }
}

}  // namespace

std::string render_report(const PipelineReport& report) {
  std::ostringstream out;
  out << "trendcast report\n";
  out << "schema_version 1\n";
  out << "software_version " << version_string << "\n";
  char fp[32];
  std::snprintf(fp, sizeof(fp), "%016llx", static_cast<unsigned long long>(report.fingerprint));
  out << "config_fingerprint " << fp << "\n\n";
  out << "[config]\n" << report.resolved_config << "\n";
  for (const auto& country : report.countries) render_country(out, country);
  return out.str();
}

namespace {

void write_plot_file(const std::filesystem::path& path,
                     const std::vector<const CountryResult*>& countries,
                     const std::optional<MonthlySeries> CountryResult::*member) {
  YearMonth lo{9999, 12}, hi{0, 1};
  for (const auto* c : countries) {
    const auto& s = c->*member;
    if (!s) continue;
    lo = std::min(lo, s->start());
    hi = std::max(hi, s->end());
  }
  std::ofstream out(path);
  if (!out) fail(ErrorCode::io_error, "cannot write '" + path.string() + "'");
  out << "month";
  for (const auto* c : countries) out << "," << c->code;
  out << "\n";
  if (hi < lo) return;
  for (YearMonth m = lo; m <= hi; m = add_months(m, 1)) {
    out << to_string(m);
    for (const auto* c : countries) {
      out << ",";
      const auto& s = c->*member;
      if (s && m >= s->start() && m <= s->end())
        out << fmt((*s)[static_cast<std::size_t>(months_between(s->start(), m))], 6);
    }
    out << "\n";
  }
}

}  // namespace

std::string write_outputs(const PipelineReport& report, const std::string& out_dir) {
  const std::filesystem::path dir(out_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) fail(ErrorCode::io_error, "cannot create output directory '" + out_dir + "'");

  const auto report_path = dir / "report.txt";
  {
    std::ofstream out(report_path, std::ios::binary);
    if (!out) fail(ErrorCode::io_error, "cannot write '" + report_path.string() + "'");
    out << render_report(report);
  }

  std::vector<const CountryResult*> countries;
  for (const auto& c : report.countries) countries.push_back(&c);
  write_plot_file(dir / "plot_unemployment_level.csv", countries, &CountryResult::ur_level);
  write_plot_file(dir / "plot_google_level.csv", countries, &CountryResult::gi_level);
  write_plot_file(dir / "plot_unemployment_diff.csv", countries, &CountryResult::ur_diff);
  write_plot_file(dir / "plot_google_logdiff.csv", countries, &CountryResult::gi_logdiff);
  return report_path.string();
}

}  // namespace trendcast
