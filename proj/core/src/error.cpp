#include "rhop/error.hpp"

#include "rhop/precision.hpp"

namespace rhop {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid_argument";
    case ErrorCode::domain_error: return "domain_error";
    case ErrorCode::insufficient_decay: return "insufficient_decay";
    case ErrorCode::degenerate_measure: return "degenerate_measure";
    case ErrorCode::grid_underresolved: return "grid_underresolved";
    case ErrorCode::insufficient_moments: return "insufficient_moments";
    case ErrorCode::precision_exhausted: return "precision_exhausted";
    case ErrorCode::dynamic_range_exceeded: return "dynamic_range_exceeded";
    case ErrorCode::step_rejected: return "step_rejected";
    case ErrorCode::schur_parameter_out_of_disk: return "schur_parameter_out_of_disk";
    case ErrorCode::truncation_window_exceeded: return "truncation_window_exceeded";
    case ErrorCode::use_boundary_mode: return "use_boundary_mode";
    case ErrorCode::ill_conditioned: return "ill_conditioned";
    case ErrorCode::internal_error: return "internal_error";
    case ErrorCode::config_error: return "config_error";
    case ErrorCode::io_error: return "io_error";
  }
  return "unknown";
}

std::string_view to_string(Precision p) {
  switch (p) {
    case Precision::standard: return "double";
    case Precision::extended: return "extended";
    case Precision::exact: return "exact";
  }
  return "double";
}

Precision parse_precision(std::string_view text) {
  if (text == "double" || text == "standard") return Precision::standard;
  if (text == "extended") return Precision::extended;
  if (text == "exact") return Precision::exact;
  throw Error(ErrorCode::invalid_argument, "measures",
              "unknown precision tier '" + std::string(text) + "'");
}

}  // namespace rhop
