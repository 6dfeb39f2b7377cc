#include "trendcast/forecast_eval.hpp"

#include <cmath>

#include "trendcast/distributions.hpp"
#include "trendcast/errors.hpp"

namespace trendcast {

double mae(std::span<const ForecastRecord> pairs) {
  if (pairs.empty()) fail(ErrorCode::empty_forecast_set, "mae: no forecast pairs");
  double sum = 0.0;
  for (const auto& rec : pairs) sum += std::fabs(rec.error());
  return sum / static_cast<double>(pairs.size());
}

double rmse(std::span<const ForecastRecord> pairs) {
  if (pairs.empty()) fail(ErrorCode::empty_forecast_set, "rmse: no forecast pairs");
  double sum = 0.0;
  for (const auto& rec : pairs) sum += rec.error() * rec.error();
  return std::sqrt(sum / static_cast<double>(pairs.size()));
}

ForecastEvaluation evaluate_forecasts(std::vector<ForecastRecord> pairs) {
  ForecastEvaluation eval;
  eval.mae = mae(pairs);
  eval.rmse = rmse(pairs);
  eval.abs_losses.reserve(pairs.size());
  eval.sq_losses.reserve(pairs.size());
  for (const auto& rec : pairs) {
    eval.abs_losses.push_back(std::fabs(rec.error()));
    eval.sq_losses.push_back(rec.error() * rec.error());
  }
  eval.pairs = std::move(pairs);
  return eval;
}

DmResult dm_test(std::span<const double> errors_1, std::span<const double> errors_2,
                 LossKind loss, std::optional<int> bandwidth, bool small_sample) {
  if (errors_1.size() != errors_2.size())
    fail(ErrorCode::length_mismatch, "dm_test: error sequences have different lengths");
  const auto n = static_cast<Eigen::Index>(errors_1.size());
  if (n < 4) fail(ErrorCode::insufficient_observations, "dm_test: need at least 4 forecasts");
  const int lag_max = bandwidth.value_or(0);
  if (lag_max < 0 || lag_max >= n)
    fail(ErrorCode::bandwidth_too_large, "dm_test: bandwidth out of range");

  const auto apply_loss = [loss](double e) {
    return loss == LossKind::squared ? e * e : std::fabs(e);
  };
  Eigen::VectorXd d(n);
  for (Eigen::Index t = 0; t < n; ++t)
    d[t] = apply_loss(errors_1[t]) - apply_loss(errors_2[t]);

  const double mean = d.mean();
  const Eigen::VectorXd centered = d.array() - mean;
  const double gamma0 = centered.squaredNorm() / static_cast<double>(n);
  if (gamma0 <= 0.0)
    fail(ErrorCode::degenerate_loss_differential,
         "dm_test: loss differential has zero variance (all d_t equal)");

  // autocovariances with divisor (T - j); Bartlett weights 1 - j/(L+1)
  double lrv = gamma0;
  for (int j = 1; j <= lag_max; ++j) {
    double gamma = 0.0;
    for (Eigen::Index t = j; t < n; ++t) gamma += centered[t] * centered[t - j];
    gamma /= static_cast<double>(n - j);
    lrv += 2.0 * (1.0 - static_cast<double>(j) / (lag_max + 1.0)) * gamma;
  }
  if (lrv <= 0.0)
    fail(ErrorCode::non_positive_long_run_variance,
         "dm_test: long-run variance estimate is not positive");

  DmResult result;
  result.loss = loss;
  result.n = n;
  result.bandwidth = lag_max;
  result.lrv = lrv;
  result.small_sample = small_sample;
  result.statistic = mean / std::sqrt(lrv / static_cast<double>(n));
  if (small_sample) {
    // Harvey-Leybourne-Newbold correction at forecast horizon h = lag_max + 1
    const double h = lag_max + 1.0;
    const double T = static_cast<double>(n);
    result.statistic *= std::sqrt((T + 1.0 - 2.0 * h + h * (h - 1.0) / T) / T);
    result.p_one_sided = t_sf(result.statistic, T - 1.0);
    result.p_two_sided = t_two_sided_p(result.statistic, T - 1.0);
  } else {
    result.p_one_sided = normal_sf(result.statistic);
    result.p_two_sided = 2.0 * normal_sf(std::fabs(result.statistic));
  }
  return result;
}

}  // namespace trendcast
