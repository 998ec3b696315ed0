#include "rombox/error.hpp"

namespace rombox {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_grid: return "invalid-grid";
    case ErrorCode::non_solenoidal_velocity: return "non-solenoidal-velocity";
    case ErrorCode::invalid_split: return "invalid-split";
    case ErrorCode::empty_snapshot: return "empty-snapshot";
    case ErrorCode::layout: return "layout";
    case ErrorCode::kernel: return "kernel";
    case ErrorCode::format: return "format";
    case ErrorCode::dimension: return "dimension";
    case ErrorCode::degenerate_basis: return "degenerate-basis";
    case ErrorCode::factorization: return "factorization";
    case ErrorCode::grid_mismatch: return "grid-mismatch";
    case ErrorCode::undefined_metric: return "undefined-metric";
    case ErrorCode::invalid_input: return "invalid-input";
    case ErrorCode::config: return "config";
    case ErrorCode::io: return "io";
  }
  return "unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + " error: " + message),
      code_(code),
      message_(message) {}

}  // namespace rombox
