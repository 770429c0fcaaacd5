#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hk/numeric.hpp"

namespace hk::verify {

struct Options {
  std::size_t trials = 100;
  std::uint64_t seed = 0;
  NumericMode mode = NumericMode::exact;
  /// Negative control: perturbs every average-based step so that range and
  /// contraction properties must fail.
  bool inject_fault = false;
};

struct PropertyResult {
  std::string name;
  std::size_t cases = 0;
  std::size_t failures = 0;
  bool skipped = false;
  std::string skip_reason;
  /// First failing case, shrunk by deleting agents/topics while it still fails.
  std::optional<nlohmann::json> counterexample;

  bool passed() const { return failures == 0; }
};

struct Report {
  Options options;
  std::vector<PropertyResult> properties;

  bool passed() const;
  nlohmann::json to_json() const;
};

std::vector<std::string> property_names();

/// Runs every registered property for options.trials random cases each.
/// Throws std::invalid_argument when trials == 0.
Report run(const Options& options);

}  // namespace hk::verify
