#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace duopoly {

enum class ErrorCode {
  invalid_argument,
  invalid_point,
  invalid_threshold,
  degenerate_distribution,
  unsupported,
  unsupported_distribution,
  zero_density,
  zero_demand,
  out_of_range,
  unavailable,
  hypothesis_unmet,
};

std::string_view to_string(ErrorCode code);

// Every library failure is reported through this type; code() tells callers
// (and the CLI exit-status mapping) which precondition broke.
class DomainError : public std::runtime_error {
 public:
  DomainError(ErrorCode code, const std::string& message);
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace duopoly
