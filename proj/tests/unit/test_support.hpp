#ifndef TRENDCAST_TEST_SUPPORT_HPP
#define TRENDCAST_TEST_SUPPORT_HPP

#include <fstream>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "trendcast/series.hpp"

namespace testsupport {

inline nlohmann::json load_json(const std::string& filename) {
  const std::string path = std::string(TRENDCAST_FIXTURE_DIR) + "/" + filename;
  std::ifstream in(path);
  if (!in) throw std::runtime_error("missing fixture " + path);
  nlohmann::json doc;
  in >> doc;
  return doc;
}

inline std::vector<double> doubles_of(const nlohmann::json& array) {
  return array.get<std::vector<double>>();
}

/// Wraps raw values as a monthly series with no unit semantics.
inline trendcast::MonthlySeries make_series(std::vector<double> values,
                                            const std::string& id = "test",
                                            trendcast::YearMonth start = {2000, 1}) {
  return trendcast::MonthlySeries(id, start, std::move(values), trendcast::Units::none,
                                  trendcast::TransformState::diff);
}

inline std::vector<double> gaussian(std::size_t n, std::uint64_t seed, double sd = 1.0) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, sd);
  std::vector<double> out(n);
  for (auto& v : out) v = normal(rng);
  return out;
}

inline std::string fixture_path(const std::string& filename) {
  return std::string(TRENDCAST_FIXTURE_DIR) + "/" + filename;
}

}  // namespace testsupport

#endif
