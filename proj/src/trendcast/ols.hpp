#ifndef TRENDCAST_OLS_HPP
#define TRENDCAST_OLS_HPP

#include <Eigen/Dense>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace trendcast {

/// Named regressor matrix. Column names travel with the matrix so fits and
/// restriction tests can refer to regressors by label.
class DesignMatrix {
 public:
  DesignMatrix(Eigen::MatrixXd x, std::vector<std::string> names);

  class Builder {
   public:
    explicit Builder(Eigen::Index rows) : rows_(rows) {}
    Builder& intercept();
    Builder& column(std::string name, const Eigen::VectorXd& values);
    Builder& column(std::string name, const std::vector<double>& values);
    DesignMatrix build();

   private:
    Eigen::Index rows_;
    std::vector<std::string> names_;
    std::vector<Eigen::VectorXd> cols_;
  };

  const Eigen::MatrixXd& matrix() const { return x_; }
  const std::vector<std::string>& names() const { return names_; }
  Eigen::Index rows() const { return x_.rows(); }
  Eigen::Index cols() const { return x_.cols(); }

  /// Index of the detected intercept column (a nonzero constant column).
  std::optional<Eigen::Index> intercept_column() const { return intercept_; }

  /// New design keeping only the named columns, in their original order.
  DesignMatrix keep(const std::vector<std::string>& names) const;

  /// New design without the named columns.
  DesignMatrix drop(const std::vector<std::string>& names) const;

 private:
  Eigen::MatrixXd x_;
  std::vector<std::string> names_;
  std::optional<Eigen::Index> intercept_;
};

struct RegressionFit {
  Eigen::VectorXd coefficients;
  Eigen::VectorXd residuals;
  Eigen::VectorXd fitted;
  std::vector<std::string> names;
  double ssr = 0.0;
  double sigma2 = 0.0;  // SSR / (n - k)
  Eigen::MatrixXd cov_ols;
  std::optional<Eigen::MatrixXd> cov_hac;
  int hac_bandwidth = -1;
  double r2 = 0.0;
  double adj_r2 = 0.0;
  Eigen::Index n = 0;
  Eigen::Index k = 0;
  bool has_intercept = false;

  double coefficient(const std::string& name) const;
  Eigen::Index column(const std::string& name) const;
  double se(Eigen::Index i) const { return std::sqrt(cov_ols(i, i)); }
  double se_hac(Eigen::Index i) const;
  double t_stat(Eigen::Index i) const { return coefficients[i] / se(i); }
  /// Two-sided p-value of coefficient i from the t(n - k) distribution,
  /// using the HAC covariance when present.
  double p_value(Eigen::Index i) const;
};

/// Least squares via column-pivoted Householder QR. Rank decided at
/// relative tolerance 1e-10.
RegressionFit ols_fit(const DesignMatrix& design, const Eigen::VectorXd& y);

/// Automatic Newey-West truncation lag: floor(4 (n/100)^(2/9)).
int newey_west_bandwidth(Eigen::Index n);

/// Newey-West sandwich covariance with Bartlett weights 1 - j/(L+1).
/// Bandwidth 0 collapses to the White (heteroskedasticity-only) estimator.
Eigen::MatrixXd hac_covariance(const RegressionFit& fit, const DesignMatrix& design,
                               std::optional<int> bandwidth = std::nullopt);

/// White heteroskedasticity-robust covariance (independent route used to
/// cross-check hac_covariance at bandwidth 0).
Eigen::MatrixXd white_covariance(const RegressionFit& fit, const DesignMatrix& design);

enum class PBracket { lt_1pct, lt_5pct, lt_10pct, ge_10pct };
enum class RejectBelow : bool { no = false, yes = true };

/// Result of a named hypothesis test. Critical values are keyed by
/// significance level in percent (1, 5, 10).
struct TestReport {
  std::string test_name;
  double statistic = 0.0;
  std::map<int, double> critical_values;
  bool reject_below = false;  // ADF rejects for small statistics; KPSS/F for large
  PBracket bracket = PBracket::ge_10pct;
  std::optional<double> p_value;  // exact for F tests, interpolated otherwise
  bool intercept = false;
  bool trend = false;
  int lags = 0;       // ADF lag order / KPSS-HAC truncation lag
  Eigen::Index n = 0;
  int df1 = 0;
  int df2 = 0;
  bool degenerate = false;
  std::string note;

  /// Significance stars: 3 below 1%, 2 below 5%, 1 below 10%.
  int stars() const;
  bool rejects(int level_pct) const;
};

PBracket bracket_from_p(double p);

/// Nested-model F test: F = [(SSR_r - SSR_u)/q] / [SSR_u/(n - k_u)], with
/// the p-value from F(q, n - k_u). Both fits must share the same rows and
/// dependent variable.
TestReport joint_f_test(const RegressionFit& unrestricted, const RegressionFit& restricted,
                        int excluded_count);

}  // namespace trendcast

#endif
