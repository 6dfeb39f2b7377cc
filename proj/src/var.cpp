#include "trendcast/var.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "trendcast/errors.hpp"

namespace trendcast {

namespace {

Eigen::VectorXd lag_column(const std::vector<double>& values, int start_row, int lag,
                           Eigen::Index nobs) {
  Eigen::VectorXd col(nobs);
  for (Eigen::Index i = 0; i < nobs; ++i) col[i] = values[start_row + i - lag];
  return col;
}

void require_aligned(const MonthlySeries& a, const MonthlySeries& b) {
  if (a.start() != b.start() || a.size() != b.size())
    fail(ErrorCode::alignment_error, "series '" + a.id() + "' and '" + b.id() +
                                         "' are not aligned (use align() first)");
}

std::string lag_name(const std::string& var, int lag) {
  return var + ".lag" + std::to_string(lag);
}

}  // namespace

RegressionFit fit_ar(const MonthlySeries& y, int p) {
  if (p < 1) fail(ErrorCode::invalid_argument, "fit_ar: lag order must be at least 1");
  const auto n = static_cast<Eigen::Index>(y.size());
  if (n <= p + 2)
    fail(ErrorCode::series_too_short,
         "fit_ar: series '" + y.id() + "' has " + std::to_string(n) +
             " observations, need more than " + std::to_string(p + 2));
  const Eigen::Index nobs = n - p;
  DesignMatrix::Builder builder(nobs);
  builder.intercept();
  for (int j = 1; j <= p; ++j)
    builder.column(lag_name("y", j), lag_column(y.values(), p, j, nobs));
  Eigen::VectorXd target(nobs);
  for (Eigen::Index i = 0; i < nobs; ++i) target[i] = y[p + i];
  return ols_fit(builder.build(), target);
}

VarFit fit_var(const MonthlySeries& a, const MonthlySeries& b, int p) {
  if (p < 1) fail(ErrorCode::invalid_argument, "fit_var: lag order must be at least 1");
  require_aligned(a, b);
  const auto n = static_cast<Eigen::Index>(a.size());
  if (n <= 2 * p + 2)
    fail(ErrorCode::series_too_short,
         "fit_var: " + std::to_string(n) + " observations, need more than " +
             std::to_string(2 * p + 2));

  const Eigen::Index nobs = n - p;
  VarFit fit;
  fit.variables = {a.id(), b.id()};
  if (fit.variables[0] == fit.variables[1]) {
    fit.variables[0] += ".0";
    fit.variables[1] += ".1";
  }
  fit.p = p;
  fit.first_target = add_months(a.start(), p);

  DesignMatrix::Builder builder(nobs);
  builder.intercept();
  for (int j = 1; j <= p; ++j) {
    builder.column(lag_name(fit.variables[0], j), lag_column(a.values(), p, j, nobs));
    builder.column(lag_name(fit.variables[1], j), lag_column(b.values(), p, j, nobs));
  }
  fit.design = builder.build();

  fit.targets.resize(nobs, 2);
  for (Eigen::Index i = 0; i < nobs; ++i) {
    fit.targets(i, 0) = a[p + i];
    fit.targets(i, 1) = b[p + i];
  }

  fit.residuals.resize(nobs, 2);
  fit.coef.assign(p, Eigen::Matrix2d::Zero());
  for (int eq = 0; eq < 2; ++eq) {
    RegressionFit eq_fit = ols_fit(*fit.design, fit.targets.col(eq));
    fit.intercepts[eq] = eq_fit.coefficient("const");
    for (int j = 1; j <= p; ++j)
      for (int v = 0; v < 2; ++v)
        fit.coef[j - 1](eq, v) = eq_fit.coefficient(lag_name(fit.variables[v], j));
    fit.residuals.col(eq) = eq_fit.residuals;
    fit.equations.push_back(std::move(eq_fit));
  }
  const Eigen::Index k = fit.design->cols();
  fit.residual_cov = (fit.residuals.transpose() * fit.residuals) /
                     static_cast<double>(nobs - k);
  return fit;
}

int select_var_lag_aic(const MonthlySeries& a, const MonthlySeries& b, int p_max) {
  if (p_max < 1) fail(ErrorCode::invalid_argument, "select_var_lag_aic: p_max must be >= 1");
  require_aligned(a, b);
  const auto n = static_cast<Eigen::Index>(a.size());
  if (n <= 2 * p_max + 2)
    fail(ErrorCode::series_too_short, "select_var_lag_aic: sample too short for p_max");

  // fit every candidate on the rows available at p_max so likelihoods compare
  const YearMonth from = add_months(a.start(), 0);
  const Eigen::Index nobs = n - p_max;
  int best_p = 1;
  double best_aic = std::numeric_limits<double>::infinity();
  for (int p = 1; p <= p_max; ++p) {
    // shift the start so the fitted rows coincide with the p_max sample
    const YearMonth start = add_months(from, p_max - p);
    auto sa = a.slice(start, a.end());
    auto sb = b.slice(start, b.end());
    VarFit fit = fit_var(sa, sb, p);
    const Eigen::Matrix2d sigma_ml =
        (fit.residuals.transpose() * fit.residuals) / static_cast<double>(nobs);
    const double log_det = std::log(sigma_ml.determinant());
    const double penalty = 2.0 * (4.0 * p + 2.0) / static_cast<double>(nobs);
    const double aic = log_det + penalty;
    if (aic < best_aic) {
      best_aic = aic;
      best_p = p;
    }
  }
  return best_p;
}

NowcastFit fit_nowcast(const MonthlySeries& dependent, const MonthlySeries& proxy,
                       int publication_lag, int max_lag) {
  if (publication_lag < 0 || max_lag < publication_lag)
    fail(ErrorCode::invalid_argument,
         "fit_nowcast: need 0 <= publication_lag <= max_lag");
  require_aligned(dependent, proxy);
  const auto n = static_cast<Eigen::Index>(dependent.size());
  const Eigen::Index nobs = n - max_lag;
  const Eigen::Index k_own = 1 + (max_lag - publication_lag + 1);
  const Eigen::Index k_full = k_own + (max_lag + 1);
  if (nobs <= k_full)
    fail(ErrorCode::insufficient_observations,
         "fit_nowcast: " + std::to_string(n) + " observations leave " + std::to_string(nobs) +
             " usable rows for " + std::to_string(k_full) + " regressors");

  Eigen::VectorXd target(nobs);
  for (Eigen::Index i = 0; i < nobs; ++i) target[i] = dependent[max_lag + i];

  DesignMatrix::Builder builder(nobs);
  builder.intercept();
  std::vector<std::string> own_names = {"const"};
  for (int i = publication_lag; i <= max_lag; ++i) {
    std::string name = lag_name("own", i);
    own_names.push_back(name);
    builder.column(std::move(name), lag_column(dependent.values(), max_lag, i, nobs));
  }
  std::vector<std::string> proxy_names;
  for (int j = 0; j <= max_lag; ++j) {
    std::string name = lag_name("proxy", j);
    proxy_names.push_back(name);
    builder.column(std::move(name), lag_column(proxy.values(), max_lag, j, nobs));
  }
  const DesignMatrix full = builder.build();
  const DesignMatrix restricted = full.keep(own_names);

  NowcastFit fit;
  fit.with_proxy = ols_fit(full, target);
  fit.without_proxy = ols_fit(restricted, target);
  fit.adj_r2_with = fit.with_proxy.adj_r2;
  fit.adj_r2_without = fit.without_proxy.adj_r2;
  fit.proxy_joint_f = joint_f_test(fit.with_proxy, fit.without_proxy,
                                   static_cast<int>(proxy_names.size()));
  fit.proxy_joint_f.test_name = "nowcast_proxy_joint_f";
  fit.publication_lag = publication_lag;
  fit.max_lag = max_lag;
  fit.n_eff = nobs;
  fit.first_target = add_months(dependent.start(), max_lag);
  return fit;
}

namespace {

double one_step_ar(const RegressionFit& fit, const MonthlySeries& y, int p,
                   Eigen::Index target_index) {
  double value = fit.coefficient("const");
  for (int j = 1; j <= p; ++j)
    value += fit.coefficient(lag_name("y", j)) * y[target_index - j];
  return value;
}

double one_step_var(const VarFit& fit, const MonthlySeries& a, const MonthlySeries& b,
                    Eigen::Index target_index) {
  double value = fit.intercepts[0];
  for (int j = 1; j <= fit.p; ++j) {
    value += fit.coef[j - 1](0, 0) * a[target_index - j];
    value += fit.coef[j - 1](0, 1) * b[target_index - j];
  }
  return value;
}

}  // namespace

std::vector<ForecastRecord> forecast_rolling(const ForecastModelSpec& spec,
                                             const MonthlySeries& target,
                                             const MonthlySeries* other,
                                             YearMonth train_end, int horizon_months) {
  if (horizon_months < 1)
    fail(ErrorCode::invalid_argument, "forecast_rolling: horizon must be at least 1");
  if (spec.kind == ModelKind::var && other == nullptr)
    fail(ErrorCode::invalid_argument, "forecast_rolling: VAR forecasts need both series");
  if (other != nullptr) require_aligned(target, *other);

  const YearMonth data_start = target.start();
  const YearMonth data_end = target.end();
  const YearMonth last_target = add_months(train_end, horizon_months);
  if (train_end < data_start || train_end >= data_end || last_target > data_end)
    fail(ErrorCode::window_out_of_range,
         "forecast_rolling: window " + to_string(train_end) + " + " +
             std::to_string(horizon_months) + " months exceeds data range " +
             to_string(data_start) + ".." + to_string(data_end));
  const int initial_len = months_between(data_start, train_end) + 1;

  std::vector<ForecastRecord> records;
  records.reserve(static_cast<std::size_t>(horizon_months));
  for (int m = 1; m <= horizon_months; ++m) {
    const YearMonth target_month = add_months(train_end, m);
    const YearMonth origin = add_months(target_month, -1);
    const YearMonth window_start = spec.scheme == WindowScheme::expanding
                                       ? data_start
                                       : add_months(origin, -(initial_len - 1));
    const MonthlySeries train_a = target.slice(window_start, origin);

    ForecastRecord record;
    record.origin = origin;
    record.target = target_month;
    record.actual = target[static_cast<std::size_t>(months_between(data_start, target_month))];
    const auto target_index =
        static_cast<Eigen::Index>(months_between(data_start, target_month));
    if (spec.kind == ModelKind::ar) {
      const RegressionFit fit = fit_ar(train_a, spec.p);
      record.forecast = one_step_ar(fit, target, spec.p, target_index);
    } else {
      const MonthlySeries train_b = other->slice(window_start, origin);
      const VarFit fit = fit_var(train_a, train_b, spec.p);
      record.forecast = one_step_var(fit, target, *other, target_index);
    }
    records.push_back(record);
  }
  return records;
}

TestReport granger_test(const VarFit& fit, const std::string& cause, const std::string& effect) {
  if (cause == effect)
    fail(ErrorCode::invalid_argument, "granger_test: cause and effect must differ");
  const auto find_var = [&](const std::string& name) -> int {
    for (std::size_t i = 0; i < fit.variables.size(); ++i)
      if (fit.variables[i] == name) return static_cast<int>(i);
    fail(ErrorCode::unknown_variable, "granger_test: no variable named '" + name + "'");
  };
  const int cause_index = find_var(cause);
  const int effect_index = find_var(effect);
  if (!fit.design)
    fail(ErrorCode::invalid_argument, "granger_test: fit carries no design matrix");

  std::vector<std::string> excluded;
  for (int j = 1; j <= fit.p; ++j)
    excluded.push_back(lag_name(fit.variables[static_cast<std::size_t>(cause_index)], j));
  const DesignMatrix restricted_design = fit.design->drop(excluded);
  const RegressionFit restricted = ols_fit(restricted_design, fit.targets.col(effect_index));

  TestReport report = joint_f_test(fit.equations[static_cast<std::size_t>(effect_index)],
                                   restricted, fit.p);
  report.test_name = "granger";
  report.note = cause + " -> " + effect;
  report.lags = fit.p;
  return report;
}

}  // namespace trendcast
