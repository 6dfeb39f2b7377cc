#include "trendcast/stationarity.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "trendcast/errors.hpp"

namespace trendcast {

namespace {

// Dickey-Fuller tau critical values (Fuller's tables), rows tabulated at
// n = 25, 50, 100, 250, 500 and the asymptotic limit; columns 1%, 5%, 10%.
constexpr std::array<double, 6> table_n = {25, 50, 100, 250, 500, 0};  // 0 = infinity

constexpr double df_table_none[6][3] = {
    {-2.66, -1.95, -1.60}, {-2.62, -1.95, -1.61}, {-2.60, -1.95, -1.61},
    {-2.58, -1.95, -1.62}, {-2.58, -1.95, -1.62}, {-2.58, -1.95, -1.62}};
constexpr double df_table_const[6][3] = {
    {-3.75, -3.00, -2.63}, {-3.58, -2.93, -2.60}, {-3.51, -2.89, -2.58},
    {-3.46, -2.88, -2.57}, {-3.44, -2.87, -2.57}, {-3.43, -2.86, -2.57}};
constexpr double df_table_trend[6][3] = {
    {-4.38, -3.60, -3.24}, {-4.15, -3.50, -3.18}, {-4.04, -3.45, -3.15},
    {-3.99, -3.43, -3.13}, {-3.98, -3.42, -3.13}, {-3.96, -3.41, -3.12}};

int level_index(int level_pct) {
  switch (level_pct) {
    case 1: return 0;
    case 5: return 1;
    case 10: return 2;
  }
  fail(ErrorCode::invalid_argument, "critical values tabulated at 1/5/10% only");
}

// Interpolated p-value: piecewise-linear between the tabulated critical
// values, clamped to [0.01, 0.10] outside the table.
double interpolate_p(double statistic, const std::map<int, double>& cvs, bool reject_below) {
  const std::array<std::pair<double, double>, 3> pts = {
      std::pair{cvs.at(1), 0.01}, std::pair{cvs.at(5), 0.05}, std::pair{cvs.at(10), 0.10}};
  // "before" = on the rejection side of the given critical value
  auto before = [&](double a, double b) { return reject_below ? a <= b : a >= b; };
  if (before(statistic, pts[0].first)) return 0.01;
  if (!before(statistic, pts[2].first)) return 0.10;
  for (int seg = 0; seg < 2; ++seg) {
    const auto [x0, p0] = pts[seg];
    const auto [x1, p1] = pts[seg + 1];
    if (before(statistic, x1)) return p0 + (p1 - p0) * (statistic - x0) / (x1 - x0);
  }
  return 0.10;
}

void fill_bracket(TestReport& report) {
  if (report.rejects(1)) report.bracket = PBracket::lt_1pct;
  else if (report.rejects(5)) report.bracket = PBracket::lt_5pct;
  else if (report.rejects(10)) report.bracket = PBracket::lt_10pct;
  else report.bracket = PBracket::ge_10pct;
  report.p_value = interpolate_p(report.statistic, report.critical_values, report.reject_below);
}

}  // namespace

double adf_critical_value(int level_pct, Eigen::Index n, bool intercept, bool trend) {
  const auto& table = trend ? df_table_trend : (intercept ? df_table_const : df_table_none);
  const int col = level_index(level_pct);
  if (n <= static_cast<Eigen::Index>(table_n[0])) return table[0][col];
  // linear interpolation in 1/n; the asymptotic row sits at 1/n = 0
  const double inv_n = 1.0 / static_cast<double>(n);
  for (int row = 0; row + 1 < 6; ++row) {
    const double inv_lo = 1.0 / table_n[row];
    const double inv_hi = table_n[row + 1] > 0 ? 1.0 / table_n[row + 1] : 0.0;
    if (inv_n <= inv_lo && inv_n >= inv_hi) {
      const double w = (inv_n - inv_hi) / (inv_lo - inv_hi);
      return w * table[row][col] + (1.0 - w) * table[row + 1][col];
    }
  }
  return table[5][col];
}

double kpss_critical_value(int level_pct, bool trend) {
  switch (level_index(level_pct)) {
    case 0: return trend ? 0.216 : 0.739;
    case 1: return trend ? 0.146 : 0.463;
    default: return trend ? 0.119 : 0.347;
  }
}

TestReport adf_test(const MonthlySeries& s, int lags, bool intercept, bool trend) {
  if (lags < 0) fail(ErrorCode::invalid_argument, "adf_test: negative lag order");
  const auto& z = s.values();
  const Eigen::Index total = static_cast<Eigen::Index>(z.size());
  const Eigen::Index k = 1 + lags + (intercept ? 1 : 0) + (trend ? 1 : 0);
  const Eigen::Index nobs = total - 1 - lags;
  if (nobs <= k)
    fail(ErrorCode::series_too_short,
         "adf_test: series '" + s.id() + "' has " + std::to_string(total) +
             " observations, too few for lag order " + std::to_string(lags));

  const double mean = Eigen::Map<const Eigen::VectorXd>(z.data(), total).mean();
  double var = 0.0;
  for (double v : z) var += (v - mean) * (v - mean);
  if (var <= 0.0)
    fail(ErrorCode::constant_series, "adf_test: series '" + s.id() + "' is constant");

  std::vector<double> dz(z.size() - 1);
  for (std::size_t t = 0; t + 1 < z.size(); ++t) dz[t] = z[t + 1] - z[t];

  // rows are dz[t] for t = lags .. total-2
  Eigen::VectorXd y(nobs);
  Eigen::VectorXd level(nobs);
  for (Eigen::Index i = 0; i < nobs; ++i) {
    y[i] = dz[lags + i];
    level[i] = z[lags + i];  // z one month before the differenced observation
  }
  DesignMatrix::Builder builder(nobs);
  builder.column("z.lag1", level);
  for (int j = 1; j <= lags; ++j) {
    Eigen::VectorXd col(nobs);
    for (Eigen::Index i = 0; i < nobs; ++i) col[i] = dz[lags + i - j];
    builder.column("dz.lag" + std::to_string(j), col);
  }
  if (intercept) builder.intercept();
  if (trend)
    builder.column("trend", Eigen::VectorXd::LinSpaced(nobs, 1.0, static_cast<double>(nobs)));

  const RegressionFit fit = ols_fit(builder.build(), y);
  const Eigen::Index theta = fit.column("z.lag1");

  TestReport report;
  report.test_name = "adf";
  report.statistic = fit.t_stat(theta);
  report.reject_below = true;
  report.intercept = intercept;
  report.trend = trend;
  report.lags = lags;
  report.n = nobs;
  for (int level_pct : {1, 5, 10})
    report.critical_values[level_pct] = adf_critical_value(level_pct, nobs, intercept, trend);
  fill_bracket(report);
  return report;
}

TestReport kpss_test(const MonthlySeries& s, bool trend, std::optional<int> bandwidth) {
  const Eigen::Index n = static_cast<Eigen::Index>(s.size());
  if (n < 10)
    fail(ErrorCode::series_too_short,
         "kpss_test: series '" + s.id() + "' has fewer than 10 observations");
  const int lag_max = bandwidth.value_or(newey_west_bandwidth(n));
  if (lag_max < 0) fail(ErrorCode::invalid_argument, "kpss_test: negative bandwidth");
  if (lag_max >= n)
    fail(ErrorCode::bandwidth_too_large,
         "kpss_test: bandwidth " + std::to_string(lag_max) + " >= n = " + std::to_string(n));

  const Eigen::Map<const Eigen::VectorXd> z(s.values().data(), n);
  Eigen::VectorXd resid;
  if (trend) {
    DesignMatrix::Builder builder(n);
    builder.intercept();
    builder.column("trend", Eigen::VectorXd::LinSpaced(n, 1.0, static_cast<double>(n)));
    resid = ols_fit(builder.build(), z).residuals;
  } else {
    resid = z.array() - z.mean();
  }

  TestReport report;
  report.test_name = "kpss";
  report.reject_below = false;
  report.intercept = true;
  report.trend = trend;
  report.lags = lag_max;
  report.n = n;
  for (int level_pct : {1, 5, 10})
    report.critical_values[level_pct] = kpss_critical_value(level_pct, trend);

  const double scale = z.cwiseAbs().maxCoeff();
  if (resid.cwiseAbs().maxCoeff() <= 1e-12 * std::max(1.0, scale)) {
    report.statistic = 0.0;
    report.degenerate = true;
    report.note = "degenerate variance: residuals are identically zero";
    report.bracket = PBracket::ge_10pct;
    report.p_value = 0.10;
    return report;
  }

  double omega2 = resid.squaredNorm() / static_cast<double>(n);
  for (int j = 1; j <= lag_max; ++j) {
    const double w = 1.0 - static_cast<double>(j) / (lag_max + 1.0);
    double gamma = 0.0;
    for (Eigen::Index t = j; t < n; ++t) gamma += resid[t] * resid[t - j];
    omega2 += 2.0 * w * gamma / static_cast<double>(n);
  }
  if (omega2 <= 0.0)
    fail(ErrorCode::degenerate_variance, "kpss_test: long-run variance is not positive");

  double sum_s2 = 0.0;
  double partial = 0.0;
  for (Eigen::Index t = 0; t < n; ++t) {
    partial += resid[t];
    sum_s2 += partial * partial;
  }
  report.statistic = sum_s2 / (static_cast<double>(n) * static_cast<double>(n) * omega2);
  fill_bracket(report);
  return report;
}

}  // namespace trendcast
