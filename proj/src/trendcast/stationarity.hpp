#ifndef TRENDCAST_STATIONARITY_HPP
#define TRENDCAST_STATIONARITY_HPP

#include <optional>

#include "trendcast/ols.hpp"
#include "trendcast/series.hpp"

namespace trendcast {

/// Augmented Dickey-Fuller unit-root test: regresses the differenced series
/// on the lagged level, `lags` lagged differences and the requested
/// deterministic terms; the statistic is the t ratio of the lagged-level
/// coefficient. H0 = unit root, rejected for statistics below the critical
/// value.
TestReport adf_test(const MonthlySeries& s, int lags, bool intercept, bool trend);

/// KPSS stationarity test: partial sums of residuals from a regression on
/// an intercept (and optionally a trend), scaled by the Bartlett-kernel
/// long-run variance. H0 = stationarity, rejected for large statistics.
/// Bandwidth defaults to floor(4 (n/100)^(2/9)).
TestReport kpss_test(const MonthlySeries& s, bool trend,
                     std::optional<int> bandwidth = std::nullopt);

/// Dickey-Fuller critical value for the given deterministic specification,
/// interpolated linearly in 1/n between tabulated sample sizes.
double adf_critical_value(int level_pct, Eigen::Index n, bool intercept, bool trend);

double kpss_critical_value(int level_pct, bool trend);

}  // namespace trendcast

#endif
