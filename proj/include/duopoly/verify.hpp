#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "duopoly/distributions.hpp"

namespace duopoly::verify {

struct SuiteOptions {
  // Replaces the built-in prior set for suites that take a prior.
  std::optional<ValueDistribution> dist;
  std::uint64_t seed = 1;
  // Overrides the default number of sampled cases; 0 keeps the default.
  std::size_t cases = 0;
  // Directory for CSV artifacts; empty disables them.
  std::string artifact_dir;
};

struct SuiteResult {
  std::string suite_id;
  std::size_t cases_run = 0;
  std::size_t cases_passed = 0;
  // Largest (observed - allowed) over all cases; positive means a failure.
  double worst_violation = 0.0;
  std::vector<std::string> artifacts;
  nlohmann::json details = nlohmann::json::object();
  double seconds = 0.0;

  bool passed() const { return cases_run > 0 && cases_passed == cases_run; }
};

struct SuiteInfo {
  std::string_view id;
  std::string_view checks;
};

const std::vector<SuiteInfo>& suites();
bool has_suite(std::string_view id);

// Throws std::invalid_argument for an unknown id.
SuiteResult run_suite(std::string_view id, const SuiteOptions& opts = {});

nlohmann::json to_json(const SuiteResult& r);

}  // namespace duopoly::verify
