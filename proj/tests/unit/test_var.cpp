#include <cmath>
#include <doctest.h>
#include <random>

#include "test_support.hpp"
#include "trendcast/errors.hpp"
#include "trendcast/var.hpp"

using namespace trendcast;
using testsupport::make_series;

namespace {

void check_var_oracle(const VarFit& fit, const nlohmann::json& oracle) {
  const auto& intercepts = oracle["intercepts"];
  CHECK(fit.intercepts[0] == doctest::Approx(intercepts[0].get<double>()).epsilon(1e-6));
  CHECK(fit.intercepts[1] == doctest::Approx(intercepts[1].get<double>()).epsilon(1e-6));
  const auto& coefs = oracle["coefs"];
  REQUIRE(coefs.size() == static_cast<std::size_t>(fit.p));
  for (int lag = 0; lag < fit.p; ++lag)
    for (int eq = 0; eq < 2; ++eq)
      for (int var = 0; var < 2; ++var) {
        CAPTURE(lag);
        CAPTURE(eq);
        CAPTURE(var);
        CHECK(fit.coef[static_cast<std::size_t>(lag)](eq, var) ==
              doctest::Approx(coefs[lag][eq][var].get<double>()).epsilon(1e-6));
      }
}

void check_granger_oracle(const VarFit& fit, const nlohmann::json& oracle, int cause,
                          int effect) {
  const auto report = granger_test(fit, fit.variables[static_cast<std::size_t>(cause)],
                                   fit.variables[static_cast<std::size_t>(effect)]);
  CHECK(report.statistic == doctest::Approx(oracle["f_stat"].get<double>()).epsilon(1e-6));
  CHECK(*report.p_value == doctest::Approx(oracle["p_value"].get<double>()).epsilon(1e-6));
  CHECK(report.df1 == oracle["q"].get<int>());
  CHECK(report.df2 == oracle["df2"].get<int>());
}

}  // namespace

TEST_CASE("noiseless AR(1) recursion is recovered exactly") {
  std::vector<double> values(20);
  values[0] = 1.0;
  for (std::size_t t = 1; t < values.size(); ++t) values[t] = 0.5 * values[t - 1];
  const auto fit = fit_ar(make_series(values), 1);
  CHECK(fit.coefficient("y.lag1") == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(fit.coefficient("const") == doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("white-noise AR coefficients sit within three standard errors of zero") {
  const auto fit = fit_ar(make_series(testsupport::gaussian(400, 101)), 4);
  for (int j = 1; j <= 4; ++j) {
    const auto col = fit.column("y.lag" + std::to_string(j));
    CHECK(std::fabs(fit.coefficients[col]) < 3.0 * fit.se(col));
  }
}

TEST_CASE("seeded AR(2) estimates fall within two standard errors of truth") {
  std::mt19937_64 rng(103);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> values(500, 0.0);
  for (std::size_t t = 2; t < values.size(); ++t)
    values[t] = 0.5 * values[t - 1] - 0.3 * values[t - 2] + normal(rng);
  const auto fit = fit_ar(make_series(values), 2);
  const auto lag1 = fit.column("y.lag1");
  const auto lag2 = fit.column("y.lag2");
  CHECK(std::fabs(fit.coefficients[lag1] - 0.5) < 2.0 * fit.se(lag1));
  CHECK(std::fabs(fit.coefficients[lag2] + 0.3) < 2.0 * fit.se(lag2));
}

TEST_CASE("decoupled noiseless system has zero cross coefficients") {
  std::vector<double> a(25), b(25);
  a[0] = 1.0;
  b[0] = 1.0;
  for (std::size_t t = 1; t < a.size(); ++t) {
    a[t] = 0.5 * a[t - 1];
    b[t] = 0.3 * b[t - 1];
  }
  const auto fit = fit_var(make_series(a, "a"), make_series(b, "b"), 1);
  CHECK(std::fabs(fit.coef[0](0, 1)) < 1e-8);
  CHECK(std::fabs(fit.coef[0](1, 0)) < 1e-8);
  CHECK(fit.coef[0](0, 0) == doctest::Approx(0.5).epsilon(1e-8));
  CHECK(fit.coef[0](1, 1) == doctest::Approx(0.3).epsilon(1e-8));

  const auto granger = granger_test(fit, "a", "b");
  CHECK(granger.statistic == doctest::Approx(0.0).epsilon(1e-6));
  CHECK(*granger.p_value == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("seeded bivariate VAR(1) estimates fall within two standard errors") {
  std::mt19937_64 rng(105);
  std::normal_distribution<double> normal(0.0, 1.0);
  const int n = 500;
  std::vector<double> a(n, 0.0), b(n, 0.0);
  for (int t = 1; t < n; ++t) {
    a[t] = 0.5 * a[t - 1] + 0.3 * b[t - 1] + normal(rng);
    b[t] = 0.4 * b[t - 1] + normal(rng);
  }
  const auto fit = fit_var(make_series(a, "a"), make_series(b, "b"), 1);
  const double truth[2][2] = {{0.5, 0.3}, {0.0, 0.4}};
  for (int eq = 0; eq < 2; ++eq)
    for (int var = 0; var < 2; ++var) {
      const auto col = fit.equations[static_cast<std::size_t>(eq)].column(
          std::string(var == 0 ? "a" : "b") + ".lag1");
      const double se = fit.equations[static_cast<std::size_t>(eq)].se(col);
      CHECK(std::fabs(fit.coef[0](eq, var) - truth[eq][var]) < 2.0 * se);
    }
}

TEST_CASE("VAR coefficients and Granger tests match the reference package") {
  SUBCASE("coupled fixture, p = 3") {
    const auto fixture = testsupport::load_json("fixture_var_coupled.json");
    const auto fit = fit_var(make_series(testsupport::doubles_of(fixture["y0"]), "y0"),
                             make_series(testsupport::doubles_of(fixture["y1"]), "y1"), 3);
    check_var_oracle(fit, fixture["oracle"]);
    check_granger_oracle(fit, fixture["oracle"]["granger_0_to_1"], 0, 1);
    check_granger_oracle(fit, fixture["oracle"]["granger_1_to_0"], 1, 0);
  }
  SUBCASE("decoupled fixture, p = 2") {
    const auto fixture = testsupport::load_json("fixture_var_decoupled.json");
    const auto fit = fit_var(make_series(testsupport::doubles_of(fixture["y0"]), "y0"),
                             make_series(testsupport::doubles_of(fixture["y1"]), "y1"), 2);
    check_var_oracle(fit, fixture["oracle"]);
    check_granger_oracle(fit, fixture["oracle"]["granger_0_to_1"], 0, 1);
    check_granger_oracle(fit, fixture["oracle"]["granger_1_to_0"], 1, 0);
  }
  SUBCASE("nowcast fixture, p = 12") {
    const auto fixture = testsupport::load_json("fixture_nowcast.json");
    const auto fit = fit_var(make_series(testsupport::doubles_of(fixture["dur"]), "dur"),
                             make_series(testsupport::doubles_of(fixture["dgi"]), "dgi"), 12);
    check_var_oracle(fit, fixture["oracle"]["var12"]);
    check_granger_oracle(fit, fixture["oracle"]["var12"]["granger_0_to_1"], 0, 1);
    check_granger_oracle(fit, fixture["oracle"]["var12"]["granger_1_to_0"], 1, 0);
  }
}

TEST_CASE("equation-by-equation estimation equals an independently built regression") {
  const auto fixture = testsupport::load_json("fixture_var_coupled.json");
  const auto y0 = testsupport::doubles_of(fixture["y0"]);
  const auto y1 = testsupport::doubles_of(fixture["y1"]);
  const int p = 3;
  const auto fit = fit_var(make_series(y0, "y0"), make_series(y1, "y1"), p);

  // rebuild equation 0 from scratch with an interleaved-by-variable layout
  const auto n = static_cast<Eigen::Index>(y0.size()) - p;
  Eigen::VectorXd target(n);
  for (Eigen::Index i = 0; i < n; ++i) target[i] = y0[static_cast<std::size_t>(p + i)];
  DesignMatrix::Builder builder(n);
  builder.intercept();
  for (int v = 0; v < 2; ++v) {
    const auto& src = v == 0 ? y0 : y1;
    for (int j = 1; j <= p; ++j) {
      Eigen::VectorXd col(n);
      for (Eigen::Index i = 0; i < n; ++i) col[i] = src[static_cast<std::size_t>(p + i - j)];
      builder.column("v" + std::to_string(v) + "l" + std::to_string(j), col);
    }
  }
  const auto standalone = ols_fit(builder.build(), target);
  CHECK(standalone.coefficient("const") == doctest::Approx(fit.intercepts[0]).epsilon(1e-10));
  for (int v = 0; v < 2; ++v)
    for (int j = 1; j <= p; ++j)
      CHECK(standalone.coefficient("v" + std::to_string(v) + "l" + std::to_string(j)) ==
            doctest::Approx(fit.coef[static_cast<std::size_t>(j - 1)](0, v)).epsilon(1e-10));
}

TEST_CASE("Granger F statistic is invariant to rescaling either series") {
  const auto fixture = testsupport::load_json("fixture_var_coupled.json");
  auto y0 = testsupport::doubles_of(fixture["y0"]);
  auto y1 = testsupport::doubles_of(fixture["y1"]);
  const auto base = granger_test(
      fit_var(make_series(y0, "y0"), make_series(y1, "y1"), 3), "y1", "y0");
  for (auto& v : y0) v *= 3.75;
  for (auto& v : y1) v *= 0.031;
  const auto scaled = granger_test(
      fit_var(make_series(y0, "y0"), make_series(y1, "y1"), 3), "y1", "y0");
  CHECK(scaled.statistic == doctest::Approx(base.statistic).epsilon(1e-10));
}

TEST_CASE("Granger test argument validation") {
  const auto fixture = testsupport::load_json("fixture_var_decoupled.json");
  const auto fit = fit_var(make_series(testsupport::doubles_of(fixture["y0"]), "y0"),
                           make_series(testsupport::doubles_of(fixture["y1"]), "y1"), 2);
  CHECK_THROWS_AS(granger_test(fit, "y0", "y0"), Error);
  try {
    granger_test(fit, "nope", "y0");
    FAIL("expected error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::unknown_variable);
  }
}

TEST_CASE("nowcast fit matches the reference package and shares rows across models") {
  const auto fixture = testsupport::load_json("fixture_nowcast.json");
  const auto dur = make_series(testsupport::doubles_of(fixture["dur"]), "dur");
  const auto dgi = make_series(testsupport::doubles_of(fixture["dgi"]), "dgi");
  const auto fit = fit_nowcast(dur, dgi, 3, 12);
  const auto& oracle = fixture["oracle"]["nowcast"];
  CHECK(fit.proxy_joint_f.statistic ==
        doctest::Approx(oracle["f_stat"].get<double>()).epsilon(1e-6));
  CHECK(*fit.proxy_joint_f.p_value ==
        doctest::Approx(oracle["p_value"].get<double>()).epsilon(1e-6));
  CHECK(fit.adj_r2_with == doctest::Approx(oracle["adj_r2_with"].get<double>()).epsilon(1e-6));
  CHECK(fit.adj_r2_without ==
        doctest::Approx(oracle["adj_r2_without"].get<double>()).epsilon(1e-6));
  CHECK(fit.n_eff == oracle["n_eff"].get<long long>());
  CHECK(fit.proxy_joint_f.df1 == oracle["q"].get<int>());

  // row identity: both models reconstruct the identical dependent vector
  CHECK(fit.with_proxy.n == fit.without_proxy.n);
  const Eigen::VectorXd y_with = fit.with_proxy.fitted + fit.with_proxy.residuals;
  const Eigen::VectorXd y_without = fit.without_proxy.fitted + fit.without_proxy.residuals;
  CHECK((y_with - y_without).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("elasticity regression with HAC errors matches the reference package") {
  const auto fixture = testsupport::load_json("fixture_nowcast.json");
  const auto dur = testsupport::doubles_of(fixture["dur"]);
  const auto dgi = testsupport::doubles_of(fixture["dgi"]);
  const auto n = static_cast<Eigen::Index>(dur.size());
  DesignMatrix::Builder builder(n);
  builder.intercept();
  builder.column("dlog_gi", dgi);
  const auto design = builder.build();
  const auto fit = ols_fit(design, Eigen::Map<const Eigen::VectorXd>(dur.data(), n));
  const auto& oracle = fixture["oracle"]["elasticity"];
  CHECK(fit.coefficient("dlog_gi") ==
        doctest::Approx(oracle["slope"].get<double>()).epsilon(1e-6));
  CHECK(fit.coefficient("const") ==
        doctest::Approx(oracle["intercept"].get<double>()).epsilon(1e-6));
  CHECK(fit.se(fit.column("dlog_gi")) ==
        doctest::Approx(oracle["se_ols"].get<double>()).epsilon(1e-6));
  const int bw = oracle["hac_bandwidth"].get<int>();
  CHECK(newey_west_bandwidth(n) == bw);
  const Eigen::MatrixXd hac = hac_covariance(fit, design, bw);
  CHECK(std::sqrt(hac(1, 1)) == doctest::Approx(oracle["se_hac"].get<double>()).epsilon(1e-6));
}

TEST_CASE("nowcast guards: misalignment and short samples") {
  const auto a = make_series(testsupport::gaussian(60, 7), "a");
  const auto b = make_series(testsupport::gaussian(60, 8), "b", {2000, 2});
  CHECK_THROWS_AS(fit_nowcast(a, b, 3, 12), Error);
  const auto short_a = make_series(testsupport::gaussian(30, 9), "a");
  const auto short_b = make_series(testsupport::gaussian(30, 10), "b");
  try {
    fit_nowcast(short_a, short_b, 3, 12);
    FAIL("expected error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::insufficient_observations);
  }
}

TEST_CASE("rolling forecasts of a noiseless recursion have zero error") {
  std::vector<double> values(40);
  values[0] = 1.0;
  for (std::size_t t = 1; t < values.size(); ++t) values[t] = 0.9 * values[t - 1];
  const auto series = make_series(values);  // starts 2000-01
  const ForecastModelSpec spec{ModelKind::ar, 1, WindowScheme::expanding};
  const auto records = forecast_rolling(spec, series, nullptr, {2002, 6}, 6);
  REQUIRE(records.size() == 6);
  for (const auto& rec : records) CHECK(std::fabs(rec.error()) < 1e-12);
  CHECK(records.front().target == YearMonth{2002, 7});
  CHECK(records.back().target == YearMonth{2002, 12});
}

TEST_CASE("one-step AR forecast recomputes from the refitted coefficients") {
  const auto values = testsupport::gaussian(80, 11);
  const auto series = make_series(values);  // starts 2000-01
  const int p = 3;
  const ForecastModelSpec spec{ModelKind::ar, p, WindowScheme::expanding};
  const auto records = forecast_rolling(spec, series, nullptr, {2005, 12}, 4);
  REQUIRE(!records.empty());
  const auto& rec = records[2];
  const auto train = series.slice(series.start(), rec.origin);
  const auto fit = fit_ar(train, p);
  double expected = fit.coefficient("const");
  const auto target_index = static_cast<std::size_t>(months_between(series.start(), rec.target));
  for (int j = 1; j <= p; ++j)
    expected += fit.coefficient("y.lag" + std::to_string(j)) *
                values[target_index - static_cast<std::size_t>(j)];
  CHECK(rec.forecast == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("expanding and fixed estimation windows are both supported") {
  const auto values = testsupport::gaussian(90, 13);
  const auto series = make_series(values);
  const ForecastModelSpec expanding{ModelKind::ar, 2, WindowScheme::expanding};
  const ForecastModelSpec fixed{ModelKind::ar, 2, WindowScheme::fixed};
  const auto a = forecast_rolling(expanding, series, nullptr, {2004, 12}, 12);
  const auto b = forecast_rolling(fixed, series, nullptr, {2004, 12}, 12);
  REQUIRE(a.size() == b.size());
  CHECK(a.front().forecast == b.front().forecast);  // identical first origin
  bool any_difference = false;
  for (std::size_t i = 1; i < a.size(); ++i)
    if (a[i].forecast != b[i].forecast) any_difference = true;
  CHECK(any_difference);
}

TEST_CASE("forecast window validation") {
  const auto series = make_series(testsupport::gaussian(60, 17));
  const ForecastModelSpec spec{ModelKind::ar, 2, WindowScheme::expanding};
  CHECK_THROWS_AS(forecast_rolling(spec, series, nullptr, {2004, 11}, 2), Error);
  CHECK_THROWS_AS(forecast_rolling(spec, series, nullptr, {1999, 6}, 2), Error);
  const ForecastModelSpec var_spec{ModelKind::var, 2, WindowScheme::expanding};
  CHECK_THROWS_AS(forecast_rolling(var_spec, series, nullptr, {2003, 1}, 2), Error);
}

TEST_CASE("AIC lag selection recovers a strong VAR(1)") {
  std::mt19937_64 rng(119);
  std::normal_distribution<double> normal(0.0, 1.0);
  const int n = 300;
  std::vector<double> a(n, 0.0), b(n, 0.0);
  for (int t = 1; t < n; ++t) {
    a[t] = 0.8 * a[t - 1] + 0.3 * b[t - 1] + normal(rng);
    b[t] = 0.5 * b[t - 1] + normal(rng);
  }
  const int p = select_var_lag_aic(make_series(a, "a"), make_series(b, "b"), 4);
  CHECK(p == 1);
}
