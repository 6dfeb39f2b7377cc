#ifndef TRENDCAST_ERRORS_HPP
#define TRENDCAST_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace trendcast {

enum class ErrorCode {
  ok = 0,
  series_too_short,
  non_positive_value,
  coverage_gap,
  non_weekly_spacing,
  no_overlap,
  rank_deficient,
  insufficient_observations,
  bandwidth_too_large,
  sample_mismatch,
  nested_violation,
  constant_series,
  degenerate_variance,
  unknown_variable,
  alignment_error,
  window_out_of_range,
  empty_forecast_set,
  degenerate_loss_differential,
  non_positive_long_run_variance,
  length_mismatch,
  parse_error,
  gap_error,
  range_error,
  config_error,
  io_error,
  invalid_argument,
  internal,
};

const char* error_code_name(ErrorCode code) noexcept;

/// Library-wide exception: a code (stable across the C API) plus a message.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace trendcast

#endif
