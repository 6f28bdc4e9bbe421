#include "duopoly/error.hpp"

namespace duopoly {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid-argument";
    case ErrorCode::invalid_point: return "invalid-point";
    case ErrorCode::invalid_threshold: return "invalid-threshold";
    case ErrorCode::degenerate_distribution: return "degenerate-distribution";
    case ErrorCode::unsupported: return "unsupported";
    case ErrorCode::unsupported_distribution: return "unsupported-distribution";
    case ErrorCode::zero_density: return "zero-density";
    case ErrorCode::zero_demand: return "zero-demand";
    case ErrorCode::out_of_range: return "out-of-range";
    case ErrorCode::unavailable: return "unavailable";
    case ErrorCode::hypothesis_unmet: return "hypothesis-unmet";
  }
  return "unknown";
}

DomainError::DomainError(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message),
      code_(code) {}

}  // namespace duopoly
