#include <cmath>
#include <doctest.h>

#include "test_support.hpp"
#include "trendcast/errors.hpp"
#include "trendcast/forecast_eval.hpp"

using namespace trendcast;

namespace {

std::vector<ForecastRecord> make_pairs(const std::vector<double>& forecasts,
                                       const std::vector<double>& actuals) {
  std::vector<ForecastRecord> pairs;
  for (std::size_t i = 0; i < forecasts.size(); ++i) {
    ForecastRecord rec;
    rec.target = add_months({2013, 1}, static_cast<int>(i));
    rec.origin = add_months(rec.target, -1);
    rec.forecast = forecasts[i];
    rec.actual = actuals[i];
    pairs.push_back(rec);
  }
  return pairs;
}

}  // namespace

TEST_CASE("MAE and RMSE hand cases") {
  const auto exact = make_pairs({1.0, 2.0, 3.0}, {1.0, 2.0, 3.0});
  CHECK(mae(exact) == 0.0);
  CHECK(rmse(exact) == 0.0);

  const auto pairs = make_pairs({1.0, 2.0}, {2.0, 4.0});
  CHECK(mae(pairs) == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(rmse(pairs) == doctest::Approx(std::sqrt(2.5)).epsilon(1e-15));

  const auto constant = make_pairs({1.0, 2.0, 3.0}, {1.5, 2.5, 3.5});
  CHECK(rmse(constant) == doctest::Approx(mae(constant)).epsilon(1e-15));
  CHECK(mae(constant) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("empty forecast sets are rejected") {
  std::vector<ForecastRecord> empty;
  CHECK_THROWS_AS(mae(empty), Error);
  CHECK_THROWS_AS(rmse(empty), Error);
}

TEST_CASE("RMSE dominates MAE, with equality only for equal absolute errors") {
  const auto errors = testsupport::gaussian(48, 201);
  std::vector<double> zero(48, 0.0);
  const auto pairs = make_pairs(errors, zero);
  CHECK(rmse(pairs) >= mae(pairs));
  CHECK(rmse(pairs) > mae(pairs));  // unequal losses in a Gaussian draw
  const auto eval = evaluate_forecasts(pairs);
  CHECK(eval.mae == doctest::Approx(mae(pairs)));
  CHECK(eval.rmse == doctest::Approx(rmse(pairs)));
  CHECK(eval.abs_losses.size() == 48);
}

TEST_CASE("DM hand case: d = (2, 0, 2, 0) gives S = 2") {
  const std::vector<double> e1 = {std::sqrt(2.0), 0.0, std::sqrt(2.0), 0.0};
  const std::vector<double> e2 = {0.0, 0.0, 0.0, 0.0};
  const auto result = dm_test(e1, e2, LossKind::squared);
  CHECK(result.statistic == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(result.p_one_sided == doctest::Approx(0.0228).epsilon(1e-2));
  CHECK(result.p_one_sided == doctest::Approx(0.022750131948).epsilon(1e-9));
  CHECK(result.lrv == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("degenerate loss differentials are reported, not fabricated") {
  const std::vector<double> same = {0.5, -1.0, 2.0, 0.25};
  try {
    dm_test(same, same, LossKind::squared);
    FAIL("expected error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::degenerate_loss_differential);
  }
  // constant nonzero differential d = (1, 1, 1, 1) is degenerate too
  const std::vector<double> ones = {1.0, 1.0, 1.0, 1.0};
  const std::vector<double> zeros = {0.0, 0.0, 0.0, 0.0};
  CHECK_THROWS_AS(dm_test(ones, zeros, LossKind::squared), Error);
}

TEST_CASE("DM is antisymmetric in its arguments") {
  const auto e1 = testsupport::gaussian(36, 203);
  auto e2 = testsupport::gaussian(36, 204);
  for (auto& v : e2) v *= 1.3;
  const auto ab = dm_test(e1, e2, LossKind::squared);
  const auto ba = dm_test(e2, e1, LossKind::squared);
  CHECK(ab.statistic == -ba.statistic);  // exact
  CHECK(ab.p_two_sided == ba.p_two_sided);
}

TEST_CASE("DM depends on the errors only through the loss differential") {
  const std::vector<double> e1 = {3.0, 1.0, 2.0, 2.0, 0.5, 1.5};
  const std::vector<double> e2 = {1.0, 3.0, 2.0, 2.0, 1.5, 0.5};
  // sign flips preserve both squared-loss sequences
  std::vector<double> f1 = e1, f2 = e2;
  for (std::size_t i = 0; i < f1.size(); i += 2) {
    f1[i] = -f1[i];
    f2[i] = -f2[i];
  }
  const auto base = dm_test(e1, e2, LossKind::squared);
  const auto flipped = dm_test(f1, f2, LossKind::squared);
  CHECK(base.statistic == flipped.statistic);
}

TEST_CASE("squared-loss DM is invariant to a common error scale") {
  const auto e1 = testsupport::gaussian(40, 205);
  const auto e2 = testsupport::gaussian(40, 206);
  const auto base = dm_test(e1, e2, LossKind::squared);
  std::vector<double> s1 = e1, s2 = e2;
  for (auto& v : s1) v *= 12.5;
  for (auto& v : s2) v *= 12.5;
  const auto scaled = dm_test(s1, s2, LossKind::squared);
  CHECK(scaled.statistic == doctest::Approx(base.statistic).epsilon(1e-10));
}

TEST_CASE("DM length and size guards") {
  const std::vector<double> a = {1.0, 2.0, 3.0, 4.0};
  const std::vector<double> b = {1.0, 2.0, 3.0};
  CHECK_THROWS_AS(dm_test(a, b, LossKind::squared), Error);
  const std::vector<double> three = {1.0, 2.0, 3.0};
  CHECK_THROWS_AS(dm_test(three, three, LossKind::squared), Error);
}

TEST_CASE("Bartlett long-run variance with an explicit bandwidth") {
  // errors of 2.0 give exactly representable losses: d = (4,0,4,0,...),
  // gamma_0 = 4, gamma_1 = -4, gamma_2 = 4 under the (T - j) divisor,
  // so L = 2 gives LRV = 4 - 16/3 + 8/3 = 4/3 and S = 2/sqrt((4/3)/8)
  std::vector<double> e1(8, 0.0), e2(8, 0.0);
  for (std::size_t i = 0; i < 8; i += 2) e1[i] = 2.0;
  const auto result = dm_test(e1, e2, LossKind::squared, 2);
  CHECK(result.lrv == doctest::Approx(4.0 / 3.0).epsilon(1e-12));
  CHECK(result.statistic == doctest::Approx(std::sqrt(24.0)).epsilon(1e-10));
  // L = 1 zeroes the kernel sum entirely: not a usable variance
  CHECK_THROWS_AS(dm_test(e1, e2, LossKind::squared, 1), Error);
}

TEST_CASE("absolute loss changes the differential") {
  const std::vector<double> e1 = {2.0, -2.0, 1.0, -1.0, 2.0, -2.0};
  const std::vector<double> e2 = {1.0, 1.0, 2.0, 2.0, 1.0, 1.0};
  const auto sq = dm_test(e1, e2, LossKind::squared);
  const auto abs = dm_test(e1, e2, LossKind::absolute);
  CHECK(sq.statistic != abs.statistic);
  CHECK(abs.loss == LossKind::absolute);
}

TEST_CASE("small-sample correction shrinks the statistic and widens the p-value") {
  const auto e1 = testsupport::gaussian(12, 207);
  auto e2 = testsupport::gaussian(12, 208);
  for (auto& v : e2) v *= 1.8;
  const auto plain = dm_test(e1, e2, LossKind::squared);
  const auto corrected = dm_test(e1, e2, LossKind::squared, std::nullopt, true);
  const double factor = std::sqrt((12.0 + 1.0 - 2.0 + 0.0) / 12.0);
  CHECK(corrected.statistic == doctest::Approx(plain.statistic * factor).epsilon(1e-12));
  CHECK(std::fabs(corrected.statistic) < std::fabs(plain.statistic));
  CHECK(corrected.p_two_sided > plain.p_two_sided);
}
