#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rhop {

enum class ErrorCode {
  invalid_argument,
  domain_error,
  insufficient_decay,
  degenerate_measure,
  grid_underresolved,
  insufficient_moments,
  precision_exhausted,
  dynamic_range_exceeded,
  step_rejected,
  schur_parameter_out_of_disk,
  truncation_window_exceeded,
  use_boundary_mode,
  ill_conditioned,
  internal_error,
  config_error,
  io_error,
};

const char* to_string(ErrorCode code);

/// Error raised by every module; carries the originating module name so the
/// command-line front end can emit {code, module, message}.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string module, const std::string& message)
      : std::runtime_error(message), code_(code), module_(std::move(module)) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& module() const noexcept { return module_; }

 private:
  ErrorCode code_;
  std::string module_;
};

/// Recorded when a recurrence construction stops early; the partial result
/// up to (but excluding) `degree` remains usable.
struct Breakdown {
  std::size_t degree = 0;
  std::string reason;
};

}  // namespace rhop
