#include <cstdio>
#include <doctest.h>
#include <filesystem>
#include <fstream>
#include <unistd.h>

#include "test_support.hpp"
#include "trendcast/errors.hpp"
#include "trendcast/pipeline.hpp"

using namespace trendcast;

namespace {

PipelineConfig fixture_config() {
  return parse_config_file(testsupport::fixture_path("pipeline/pipeline.conf"));
}

const CountryResult& country_of(const PipelineReport& report, const std::string& code) {
  for (const auto& c : report.countries)
    if (c.code == code) return c;
  throw std::runtime_error("missing country " + code);
}

}  // namespace

TEST_CASE("pipeline statistics match the end-to-end reference values") {
  const auto oracle = testsupport::load_json("pipeline_oracle.json");
  auto config = fixture_config();
  config.parallel = false;
  const auto report = run_pipeline(config, stage_all);
  REQUIRE(report.countries.size() == 4);

  for (const auto& [code, expected] : oracle.items()) {
    CAPTURE(code);
    const auto& c = country_of(report, code);
    CHECK(c.months == 120);

    REQUIRE(c.elasticity.has_value());
    CHECK(c.elasticity->slope ==
          doctest::Approx(expected["elasticity"]["slope"].get<double>()).epsilon(1e-6));
    CHECK(c.elasticity->intercept ==
          doctest::Approx(expected["elasticity"]["intercept"].get<double>()).epsilon(1e-6));
    CHECK(c.elasticity->se_hac ==
          doctest::Approx(expected["elasticity"]["se_hac"].get<double>()).epsilon(1e-6));
    CHECK(c.elasticity->hac_bandwidth == expected["elasticity"]["hac_bandwidth"].get<int>());

    REQUIRE(c.nowcast.has_value());
    CHECK(c.nowcast->f_stat ==
          doctest::Approx(expected["nowcast"]["f_stat"].get<double>()).epsilon(1e-6));
    CHECK(c.nowcast->p_value ==
          doctest::Approx(expected["nowcast"]["p_value"].get<double>()).epsilon(1e-6));
    CHECK(c.nowcast->adj_r2_with ==
          doctest::Approx(expected["nowcast"]["adj_r2_with"].get<double>()).epsilon(1e-6));
    CHECK(c.nowcast->adj_r2_without ==
          doctest::Approx(expected["nowcast"]["adj_r2_without"].get<double>()).epsilon(1e-6));

    REQUIRE(c.causality.has_value());
    // oracle variable order: 0 = d(ur), 1 = dlog(gi)
    CHECK(c.causality->google_to_unemployment.statistic ==
          doctest::Approx(expected["var12"]["granger_1_to_0"]["f_stat"].get<double>())
              .epsilon(1e-6));
    CHECK(*c.causality->google_to_unemployment.p_value ==
          doctest::Approx(expected["var12"]["granger_1_to_0"]["p_value"].get<double>())
              .epsilon(1e-6));
    CHECK(c.causality->unemployment_to_google.statistic ==
          doctest::Approx(expected["var12"]["granger_0_to_1"]["f_stat"].get<double>())
              .epsilon(1e-6));
    CHECK(*c.causality->unemployment_to_google.p_value ==
          doctest::Approx(expected["var12"]["granger_0_to_1"]["p_value"].get<double>())
              .epsilon(1e-6));

    REQUIRE(c.stationarity.has_value());
    const auto& rows = *c.stationarity;
    REQUIRE(rows.size() == 6);
    const auto row_oracle = [&](const char* key) { return expected["stationarity"][key]; };
    const struct {
      const char* label;
      const char* key;
    } mapping[] = {{"unemployment.level", "ur_level"}, {"unemployment.diff", "ur_diff"},
                   {"google.level", "gi_level"},       {"google.log", "gi_log"},
                   {"google.diff", "gi_diff"},         {"google.logdiff", "gi_logdiff"}};
    for (std::size_t i = 0; i < 6; ++i) {
      CAPTURE(mapping[i].label);
      CHECK(rows[i].label == mapping[i].label);
      CHECK(rows[i].adf.statistic ==
            doctest::Approx(row_oracle(mapping[i].key)["adf_ct"].get<double>()).epsilon(1e-6));
      CHECK(rows[i].kpss.statistic ==
            doctest::Approx(row_oracle(mapping[i].key)["kpss_ct"].get<double>()).epsilon(1e-6));
    }
  }
}

TEST_CASE("coupled countries reject, the decoupled country does not") {
  auto config = fixture_config();
  const auto report = run_pipeline(config, stage_all);
  for (const char* code : {"AA", "BB", "CC"}) {
    const auto& c = country_of(report, code);
    CHECK(c.nowcast->p_value < 0.01);
    CHECK(*c.causality->google_to_unemployment.p_value < 0.01);
    CHECK(c.nowcast->adj_r2_with > c.nowcast->adj_r2_without);
    CHECK(c.elasticity->slope > 0.0);
  }
  const auto& dd = country_of(report, "DD");
  CHECK(*dd.causality->google_to_unemployment.p_value > 0.05);
  CHECK(*dd.causality->unemployment_to_google.p_value > 0.05);
  REQUIRE(dd.forecast.has_value());
  CHECK_FALSE(dd.forecast->dm_degenerate);
  CHECK(dd.forecast->dm.p_one_sided > 0.05);
}

TEST_CASE("reports are byte-identical across runs and execution modes") {
  auto serial = fixture_config();
  serial.parallel = false;
  auto parallel = fixture_config();
  parallel.parallel = true;
  const auto a = render_report(run_pipeline(serial, stage_all));
  const auto b = render_report(run_pipeline(serial, stage_all));
  const auto c = render_report(run_pipeline(parallel, stage_all));
  CHECK(a == b);
  CHECK(a == c);
  CHECK(a.find("config_fingerprint") != std::string::npos);
}

TEST_CASE("stage selection trims the report") {
  auto config = fixture_config();
  config.countries.resize(1);
  const auto report = run_pipeline(config, stage_stationarity);
  const auto text = render_report(report);
  CHECK(text.find("/ stationarity]") != std::string::npos);
  CHECK(text.find("/ elasticity]") == std::string::npos);
  CHECK(text.find("/ forecast]") == std::string::npos);
  const auto& c = report.countries.front();
  CHECK(c.stationarity.has_value());
  CHECK_FALSE(c.elasticity.has_value());
}

TEST_CASE("printed numbers round-trip to module outputs at the printed precision") {
  auto config = fixture_config();
  config.countries.resize(1);  // AA
  const auto report = run_pipeline(config, stage_all);
  const auto text = render_report(report);
  const auto& c = report.countries.front();
  const auto fmt4 = [](double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.4f", v);
    return std::string(buf);
  };
  CHECK(text.find("slope " + fmt4(c.elasticity->slope) + "\n") != std::string::npos);
  CHECK(text.find("google_joint_f " + fmt4(c.nowcast->f_stat) + "\n") != std::string::npos);
  CHECK(text.find("adj_r2_with_google " + fmt4(c.nowcast->adj_r2_with) + "\n") !=
        std::string::npos);
  CHECK(text.find("rmse_google " + fmt4(c.forecast->rmse_var) + "\n") != std::string::npos);
  CHECK(text.find("dm_stat " + fmt4(c.forecast->dm.statistic) + "\n") != std::string::npos);
  CHECK(text.find("google_to_unemployment_f " +
                  fmt4(c.causality->google_to_unemployment.statistic) + "\n") !=
        std::string::npos);
  // percentage-change rows recompute from the printed inputs
  const double change = 100.0 * (c.forecast->rmse_var - c.forecast->rmse_ar) / c.forecast->rmse_ar;
  char pct[64];
  std::snprintf(pct, sizeof(pct), "%+.2f%%", change);
  CHECK(text.find(std::string("rmse_change ") + pct + "\n") != std::string::npos);
}

TEST_CASE("stage errors are tagged with country and stage") {
  auto config = fixture_config();
  config.countries.resize(1);
  config.countries[0].unemployment_csv = "/nonexistent/file.csv";
  try {
    run_pipeline(config, stage_all);
    FAIL("expected error");
  } catch (const Error& e) {
    const std::string message = e.what();
    CHECK(message.find("country AA") != std::string::npos);
    CHECK(message.find("stage ingest") != std::string::npos);
  }
}

TEST_CASE("write_outputs produces the report and the four plot files") {
  auto config = fixture_config();
  config.countries.resize(2);
  const auto report = run_pipeline(config, stage_all);
  const auto dir = std::filesystem::temp_directory_path() /
                   ("trendcast_out_" + std::to_string(::getpid()));
  const auto report_path = write_outputs(report, dir.string());
  CHECK(std::filesystem::exists(report_path));
  for (const char* name : {"plot_unemployment_level.csv", "plot_google_level.csv",
                           "plot_unemployment_diff.csv", "plot_google_logdiff.csv"}) {
    CAPTURE(name);
    CHECK(std::filesystem::exists(dir / name));
  }
  // header row carries the configured country order
  std::ifstream in(dir / "plot_unemployment_level.csv");
  std::string header;
  std::getline(in, header);
  CHECK(header == "month,AA,BB");
  std::string first_row;
  std::getline(in, first_row);
  CHECK(first_row.substr(0, 8) == "2004-01,");
  std::filesystem::remove_all(dir);
}
