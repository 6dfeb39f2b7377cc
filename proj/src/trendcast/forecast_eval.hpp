#ifndef TRENDCAST_FORECAST_EVAL_HPP
#define TRENDCAST_FORECAST_EVAL_HPP

#include <optional>
#include <span>
#include <vector>

#include "trendcast/var.hpp"

namespace trendcast {

double mae(std::span<const ForecastRecord> pairs);
double rmse(std::span<const ForecastRecord> pairs);

struct ForecastEvaluation {
  std::vector<ForecastRecord> pairs;
  std::vector<double> abs_losses;  // a_i = |f_i - y_i|
  std::vector<double> sq_losses;   // s_i = (f_i - y_i)^2
  double mae = 0.0;
  double rmse = 0.0;
};

ForecastEvaluation evaluate_forecasts(std::vector<ForecastRecord> pairs);

enum class LossKind { squared, absolute };

struct DmResult {
  double statistic = 0.0;
  double p_two_sided = 1.0;
  double p_one_sided = 1.0;  // P(S > statistic): first forecast worse
  LossKind loss = LossKind::squared;
  double lrv = 0.0;
  Eigen::Index n = 0;
  int bandwidth = 0;
  bool small_sample = false;
};

/// Diebold-Mariano equal-accuracy test on two forecast-error sequences.
/// The loss differential is d_t = loss(e1_t) - loss(e2_t); the statistic is
/// mean(d) / sqrt(LRV/T) with the Bartlett-kernel long-run variance. The
/// default truncation is h - 1 = 0 for one-step forecasts (gamma_0 only).
/// `small_sample` applies the Harvey-Leybourne-Newbold correction and
/// switches the reference distribution to t(T - 1).
DmResult dm_test(std::span<const double> errors_1, std::span<const double> errors_2,
                 LossKind loss, std::optional<int> bandwidth = std::nullopt,
                 bool small_sample = false);

}  // namespace trendcast

#endif
