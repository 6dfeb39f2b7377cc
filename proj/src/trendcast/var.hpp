#ifndef TRENDCAST_VAR_HPP
#define TRENDCAST_VAR_HPP

#include <optional>
#include <string>
#include <vector>

#include "trendcast/ols.hpp"
#include "trendcast/series.hpp"

namespace trendcast {

/// Autoregression of a (differenced) series on its own lags 1..p with an
/// intercept. Coefficient layout: const, lag1, ..., lagp.
RegressionFit fit_ar(const MonthlySeries& y, int p);

/// Bivariate VAR(p) estimated equation by equation; both equations share
/// the regressor set (const + p lags of each variable), so single-equation
/// OLS coincides with the system estimator.
struct VarFit {
  std::vector<std::string> variables;  // size 2, series ids
  int p = 0;
  Eigen::Vector2d intercepts;
  std::vector<Eigen::Matrix2d> coef;  // coef[l](i, j): lag l+1 of variable j in equation i
  Eigen::MatrixXd residuals;          // T_eff x 2
  Eigen::Matrix2d residual_cov;       // df-adjusted: E'E / (T_eff - k)
  std::vector<RegressionFit> equations;
  YearMonth first_target;  // month of the first fitted observation

  // retained so restriction tests can refit on the identical rows
  std::optional<DesignMatrix> design;
  Eigen::MatrixXd targets;  // T_eff x 2

  Eigen::Index effective_obs() const { return residuals.rows(); }
};

VarFit fit_var(const MonthlySeries& a, const MonthlySeries& b, int p);

/// Smallest lag order in 1..p_max by Akaike's criterion, all candidates
/// fitted on the rows available at p_max.
int select_var_lag_aic(const MonthlySeries& a, const MonthlySeries& b, int p_max);

/// Nowcasting regression: dependent on its own lags publication_lag..max_lag
/// and the proxy's lags 0..max_lag, with the restricted (no-proxy) model
/// fitted on the identical rows.
struct NowcastFit {
  RegressionFit with_proxy;
  RegressionFit without_proxy;
  double adj_r2_with = 0.0;
  double adj_r2_without = 0.0;
  TestReport proxy_joint_f;
  int publication_lag = 0;
  int max_lag = 0;
  Eigen::Index n_eff = 0;
  YearMonth first_target;
};

NowcastFit fit_nowcast(const MonthlySeries& dependent, const MonthlySeries& proxy,
                       int publication_lag = 3, int max_lag = 12);

enum class ModelKind { ar, var };
enum class WindowScheme { expanding, fixed };

struct ForecastModelSpec {
  ModelKind kind = ModelKind::ar;
  int p = 12;
  WindowScheme scheme = WindowScheme::expanding;
};

struct ForecastRecord {
  YearMonth origin;  // last month used for estimation
  YearMonth target;
  double forecast = 0.0;
  double actual = 0.0;
  double error() const { return forecast - actual; }
};

/// One-step-ahead forecasts of `target` for each month in
/// (train_end, train_end + horizon], re-estimating at every origin.
/// `other` supplies the second VAR variable and is ignored for AR models.
std::vector<ForecastRecord> forecast_rolling(const ForecastModelSpec& spec,
                                             const MonthlySeries& target,
                                             const MonthlySeries* other,
                                             YearMonth train_end, int horizon_months);

/// F-test that all p lags of `cause` can be excluded from the equation for
/// `effect`; the restricted model is refitted on the identical rows.
/// H0 = no Granger causality.
TestReport granger_test(const VarFit& fit, const std::string& cause, const std::string& effect);

}  // namespace trendcast

#endif
