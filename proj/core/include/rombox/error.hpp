#pragma once

#include <stdexcept>
#include <string>

namespace rombox {

enum class ErrorCode {
  invalid_grid,
  non_solenoidal_velocity,
  invalid_split,
  empty_snapshot,
  layout,
  kernel,
  format,
  dimension,
  degenerate_basis,
  factorization,
  grid_mismatch,
  undefined_metric,
  invalid_input,
  config,
  io,
};

const char* to_string(ErrorCode code) noexcept;

/// Single exception type for the library; `code()` tells callers which
/// contract was violated without parsing the message.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }
  /// The message without the "<code> error: " prefix.
  const std::string& message() const noexcept { return message_; }

 private:
  ErrorCode code_;
  std::string message_;
};

}  // namespace rombox
