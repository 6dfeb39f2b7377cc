#ifndef TRENDCAST_DISTRIBUTIONS_HPP
#define TRENDCAST_DISTRIBUTIONS_HPP

namespace trendcast {

/// Regularized incomplete beta function I_x(a, b), a,b > 0, x in [0, 1].
double incomplete_beta(double a, double b, double x);

/// P(F > f) for an F(d1, d2) variate.
double f_sf(double f, double d1, double d2);

/// Value f with P(F(d1, d2) > f) = alpha.
double f_upper_quantile(double alpha, double d1, double d2);

double normal_cdf(double x);
double normal_sf(double x);

/// Two-sided p-value of a t statistic with df degrees of freedom.
double t_two_sided_p(double t, double df);

/// One-sided P(T > t) for a t variate with df degrees of freedom.
double t_sf(double t, double df);

}  // namespace trendcast

#endif
