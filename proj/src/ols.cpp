#include "trendcast/ols.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "trendcast/distributions.hpp"
#include "trendcast/errors.hpp"

namespace trendcast {

namespace {

constexpr double rank_tolerance = 1e-10;

std::optional<Eigen::Index> find_intercept(const Eigen::MatrixXd& x) {
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    const double first = x(0, j);
    if (first == 0.0) continue;
    if ((x.col(j).array() == first).all()) return j;
  }
  return std::nullopt;
}

Eigen::MatrixXd xtx_inverse(const Eigen::MatrixXd& x) {
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(x);
  qr.setThreshold(rank_tolerance);
  const Eigen::Index k = x.cols();
  if (qr.rank() < k)
    fail(ErrorCode::rank_deficient, "design matrix is rank deficient");
  const Eigen::MatrixXd r = qr.matrixR().topLeftCorner(k, k).triangularView<Eigen::Upper>();
  const Eigen::MatrixXd r_inv =
      r.triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(k, k));
  return qr.colsPermutation() * (r_inv * r_inv.transpose()) *
         qr.colsPermutation().transpose();
}

void check_fit_matches_design(const RegressionFit& fit, const DesignMatrix& design) {
  if (fit.n != design.rows() || fit.k != design.cols() || fit.names != design.names())
    fail(ErrorCode::sample_mismatch, "fit was not produced from this design matrix");
}

}  // namespace

DesignMatrix::DesignMatrix(Eigen::MatrixXd x, std::vector<std::string> names)
    : x_(std::move(x)), names_(std::move(names)) {
  if (static_cast<Eigen::Index>(names_.size()) != x_.cols())
    fail(ErrorCode::invalid_argument, "design matrix: one name per column required");
  if (x_.rows() == 0 || x_.cols() == 0)
    fail(ErrorCode::insufficient_observations, "design matrix is empty");
  if (!x_.allFinite()) fail(ErrorCode::range_error, "design matrix has non-finite entries");
  for (Eigen::Index j = 0; j < x_.cols(); ++j)
    if ((x_.col(j).array() == 0.0).all())
      fail(ErrorCode::rank_deficient, "regressor '" + names_[j] + "' is identically zero");
  intercept_ = find_intercept(x_);
}

DesignMatrix::Builder& DesignMatrix::Builder::intercept() {
  return column("const", Eigen::VectorXd::Ones(rows_));
}

DesignMatrix::Builder& DesignMatrix::Builder::column(std::string name,
                                                     const Eigen::VectorXd& values) {
  if (values.size() != rows_)
    fail(ErrorCode::length_mismatch, "regressor '" + name + "' has wrong length");
  names_.push_back(std::move(name));
  cols_.push_back(values);
  return *this;
}

DesignMatrix::Builder& DesignMatrix::Builder::column(std::string name,
                                                     const std::vector<double>& values) {
  return column(std::move(name),
                Eigen::Map<const Eigen::VectorXd>(values.data(),
                                                  static_cast<Eigen::Index>(values.size())));
}

DesignMatrix DesignMatrix::Builder::build() {
  Eigen::MatrixXd x(rows_, static_cast<Eigen::Index>(cols_.size()));
  for (std::size_t j = 0; j < cols_.size(); ++j) x.col(static_cast<Eigen::Index>(j)) = cols_[j];
  return DesignMatrix(std::move(x), std::move(names_));
}

DesignMatrix DesignMatrix::keep(const std::vector<std::string>& names) const {
  std::vector<Eigen::Index> idx;
  for (Eigen::Index j = 0; j < cols(); ++j)
    if (std::find(names.begin(), names.end(), names_[j]) != names.end()) idx.push_back(j);
  if (idx.size() != names.size())
    fail(ErrorCode::unknown_variable, "keep: some requested columns are missing");
  Eigen::MatrixXd x(rows(), static_cast<Eigen::Index>(idx.size()));
  std::vector<std::string> kept;
  for (std::size_t j = 0; j < idx.size(); ++j) {
    x.col(static_cast<Eigen::Index>(j)) = x_.col(idx[j]);
    kept.push_back(names_[idx[j]]);
  }
  return DesignMatrix(std::move(x), std::move(kept));
}

DesignMatrix DesignMatrix::drop(const std::vector<std::string>& names) const {
  std::vector<std::string> kept;
  for (const auto& name : names_)
    if (std::find(names.begin(), names.end(), name) == names.end()) kept.push_back(name);
  if (kept.size() + names.size() != names_.size())
    fail(ErrorCode::unknown_variable, "drop: some requested columns are missing");
  return keep(kept);
}

double RegressionFit::coefficient(const std::string& name) const {
  return coefficients[column(name)];
}

Eigen::Index RegressionFit::column(const std::string& name) const {
  auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end())
    fail(ErrorCode::unknown_variable, "no regressor named '" + name + "'");
  return static_cast<Eigen::Index>(it - names.begin());
}

double RegressionFit::se_hac(Eigen::Index i) const {
  if (!cov_hac) fail(ErrorCode::invalid_argument, "HAC covariance not computed for this fit");
  return std::sqrt((*cov_hac)(i, i));
}

double RegressionFit::p_value(Eigen::Index i) const {
  const double se_i = cov_hac ? se_hac(i) : se(i);
  const double t = coefficients[i] / se_i;
  return t_two_sided_p(t, static_cast<double>(n - k));
}

RegressionFit ols_fit(const DesignMatrix& design, const Eigen::VectorXd& y) {
  const Eigen::MatrixXd& x = design.matrix();
  const Eigen::Index n = x.rows();
  const Eigen::Index k = x.cols();
  if (y.size() != n) fail(ErrorCode::length_mismatch, "ols_fit: y length differs from X rows");
  if (n <= k)
    fail(ErrorCode::insufficient_observations,
         "ols_fit: " + std::to_string(n) + " observations for " + std::to_string(k) +
             " regressors");
  if (!y.allFinite()) fail(ErrorCode::range_error, "ols_fit: y has non-finite entries");

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(x);
  qr.setThreshold(rank_tolerance);
  if (qr.rank() < k)
    fail(ErrorCode::rank_deficient,
         "ols_fit: design matrix has rank " + std::to_string(qr.rank()) + " < " +
             std::to_string(k));

  RegressionFit fit;
  fit.coefficients = qr.solve(y);
  fit.fitted = x * fit.coefficients;
  fit.residuals = y - fit.fitted;
  fit.names = design.names();
  fit.n = n;
  fit.k = k;
  fit.ssr = fit.residuals.squaredNorm();
  fit.sigma2 = fit.ssr / static_cast<double>(n - k);
  fit.has_intercept = design.intercept_column().has_value();

  const Eigen::MatrixXd r = qr.matrixR().topLeftCorner(k, k).triangularView<Eigen::Upper>();
  const Eigen::MatrixXd r_inv =
      r.triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(k, k));
  fit.cov_ols = fit.sigma2 * (qr.colsPermutation() * (r_inv * r_inv.transpose()) *
                              qr.colsPermutation().transpose());

  double tss;
  if (fit.has_intercept) {
    const double mean = y.mean();
    tss = (y.array() - mean).square().sum();
  } else {
    tss = y.squaredNorm();
  }
  fit.r2 = tss > 0.0 ? 1.0 - fit.ssr / tss : 0.0;
  if (fit.has_intercept) fit.r2 = std::clamp(fit.r2, 0.0, 1.0);
  const double df_total = static_cast<double>(n - (fit.has_intercept ? 1 : 0));
  fit.adj_r2 = 1.0 - (1.0 - fit.r2) * df_total / static_cast<double>(n - k);
  return fit;
}

int newey_west_bandwidth(Eigen::Index n) {
  return static_cast<int>(4.0 * std::pow(static_cast<double>(n) / 100.0, 2.0 / 9.0));
}

Eigen::MatrixXd hac_covariance(const RegressionFit& fit, const DesignMatrix& design,
                               std::optional<int> bandwidth) {
  check_fit_matches_design(fit, design);
  const Eigen::Index n = fit.n;
  const int lag_max = bandwidth.value_or(newey_west_bandwidth(n));
  if (lag_max < 0) fail(ErrorCode::invalid_argument, "hac_covariance: negative bandwidth");
  if (lag_max >= n)
    fail(ErrorCode::bandwidth_too_large, "hac_covariance: bandwidth " +
                                             std::to_string(lag_max) + " >= n = " +
                                             std::to_string(n));

  const Eigen::MatrixXd& x = design.matrix();
  // scores u_t = x_t e_t, one row per observation
  const Eigen::MatrixXd u = x.array().colwise() * fit.residuals.array();
  Eigen::MatrixXd meat = u.transpose() * u;
  for (int j = 1; j <= lag_max; ++j) {
    const double w = 1.0 - static_cast<double>(j) / (lag_max + 1.0);
    const Eigen::MatrixXd gamma =
        u.bottomRows(n - j).transpose() * u.topRows(n - j);
    meat += w * (gamma + gamma.transpose());
  }
  const Eigen::MatrixXd bread = xtx_inverse(x);
  Eigen::MatrixXd cov = bread * meat * bread;
  return 0.5 * (cov + cov.transpose());
}

Eigen::MatrixXd white_covariance(const RegressionFit& fit, const DesignMatrix& design) {
  check_fit_matches_design(fit, design);
  const Eigen::MatrixXd& x = design.matrix();
  Eigen::MatrixXd meat = Eigen::MatrixXd::Zero(fit.k, fit.k);
  for (Eigen::Index t = 0; t < fit.n; ++t) {
    const double e2 = fit.residuals[t] * fit.residuals[t];
    meat.noalias() += e2 * x.row(t).transpose() * x.row(t);
  }
  const Eigen::MatrixXd bread = xtx_inverse(x);
  Eigen::MatrixXd cov = bread * meat * bread;
  return 0.5 * (cov + cov.transpose());
}

int TestReport::stars() const {
  switch (bracket) {
    case PBracket::lt_1pct: return 3;
    case PBracket::lt_5pct: return 2;
    case PBracket::lt_10pct: return 1;
    case PBracket::ge_10pct: return 0;
  }
  return 0;
}

bool TestReport::rejects(int level_pct) const {
  auto it = critical_values.find(level_pct);
  if (it == critical_values.end())
    fail(ErrorCode::invalid_argument, "no critical value at " + std::to_string(level_pct) + "%");
  return reject_below ? statistic < it->second : statistic > it->second;
}

PBracket bracket_from_p(double p) {
  if (p < 0.01) return PBracket::lt_1pct;
  if (p < 0.05) return PBracket::lt_5pct;
  if (p < 0.10) return PBracket::lt_10pct;
  return PBracket::ge_10pct;
}

TestReport joint_f_test(const RegressionFit& unrestricted, const RegressionFit& restricted,
                        int excluded_count) {
  if (excluded_count <= 0)
    fail(ErrorCode::invalid_argument, "joint_f_test: excluded count must be positive");
  if (unrestricted.n != restricted.n)
    fail(ErrorCode::sample_mismatch, "joint_f_test: fits use different sample sizes");
  if (restricted.k + excluded_count != unrestricted.k)
    fail(ErrorCode::sample_mismatch,
         "joint_f_test: restricted fit does not exclude exactly q regressors");
  // same dependent variable: y reconstructs as fitted + residuals
  const Eigen::VectorXd yu = unrestricted.fitted + unrestricted.residuals;
  const Eigen::VectorXd yr = restricted.fitted + restricted.residuals;
  const double y_scale = std::max(1.0, yu.cwiseAbs().maxCoeff());
  if ((yu - yr).cwiseAbs().maxCoeff() > 1e-8 * y_scale)
    fail(ErrorCode::sample_mismatch, "joint_f_test: fits have different dependent variables");

  const double ssr_u = unrestricted.ssr;
  const double ssr_r = restricted.ssr;
  const double tol = 1e-8 * std::max(1.0, ssr_r);
  if (ssr_u > ssr_r + tol)
    fail(ErrorCode::nested_violation,
         "joint_f_test: unrestricted SSR exceeds restricted SSR (models not nested?)");

  // an SSR at rounding-noise level relative to the dependent variable is an
  // exact fit; the F ratio of two such numbers carries no information
  const double y_scale2 = std::max(1.0, yu.squaredNorm());
  const bool exact_u = ssr_u <= 1e-20 * y_scale2;
  const bool exact_r = ssr_r <= 1e-20 * y_scale2;

  const double numerator = exact_r ? 0.0 : std::max(0.0, ssr_r - ssr_u) / excluded_count;
  const Eigen::Index df2 = unrestricted.n - unrestricted.k;
  const double denominator = exact_u ? 0.0 : ssr_u / static_cast<double>(df2);

  TestReport report;
  report.test_name = "joint_f";
  report.n = unrestricted.n;
  report.df1 = excluded_count;
  report.df2 = static_cast<int>(df2);
  report.reject_below = false;
  if (denominator <= 0.0) {
    // perfect unrestricted fit: any reduction is infinitely significant
    report.degenerate = true;
    if (numerator <= 0.0) {
      report.statistic = 0.0;
      report.p_value = 1.0;
      report.note = "both fits are exact";
    } else {
      report.statistic = std::numeric_limits<double>::infinity();
      report.p_value = 0.0;
      report.note = "unrestricted fit is exact";
    }
  } else {
    report.statistic = numerator / denominator;
    report.p_value = f_sf(report.statistic, report.df1, report.df2);
  }
  report.bracket = bracket_from_p(*report.p_value);
  for (int level : {1, 5, 10})
    report.critical_values[level] =
        f_upper_quantile(level / 100.0, report.df1, static_cast<double>(df2));
  return report;
}

}  // namespace trendcast
