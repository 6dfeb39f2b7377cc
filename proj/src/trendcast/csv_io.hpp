#ifndef TRENDCAST_CSV_IO_HPP
#define TRENDCAST_CSV_IO_HPP

#include <string>

#include "trendcast/series.hpp"

namespace trendcast {

/// Reads "YYYY-MM,<rate>" rows (optional header, dot decimal) into a level
/// percent series. Months must be consecutive; rates must lie in [0, 100].
MonthlySeries ingest_unemployment_csv(const std::string& path);

/// Reads "YYYY-MM-DD,<value>" rows with week-start dates exactly 7 days
/// apart and values in [0, 100].
WeeklySeries ingest_trends_csv(const std::string& path);

}  // namespace trendcast

#endif
