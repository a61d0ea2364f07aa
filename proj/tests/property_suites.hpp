// Randomized property suites shared by the property test binary and the
// acceptance runner. Each suite runs at least `min_cases` randomized
// cases and reports how many individual checks failed.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace properties {

struct SuiteResult {
  std::string name;
  std::size_t cases = 0;    // randomized scenarios exercised
  std::size_t checks = 0;   // individual assertions inside those cases
  std::size_t failures = 0; // failed assertions
  std::vector<std::string> notes; // first few failure descriptions

  bool ok() const { return failures == 0; }
  void fail(const std::string &msg) {
    ++failures;
    if (notes.size() < 5)
      notes.push_back(msg);
  }
};

SuiteResult prop_position_round_trips(std::uint32_t seed, std::size_t min_cases);
SuiteResult prop_mgu_soundness_generality(std::uint32_t seed,
                                          std::size_t min_cases);
SuiteResult prop_depth_monotonicity(std::uint32_t seed, std::size_t min_cases);
SuiteResult prop_constructor_keeping(std::uint32_t seed, std::size_t min_cases);
SuiteResult prop_substitution_stability(std::uint32_t seed,
                                        std::size_t min_cases);
SuiteResult prop_replacement_monotonicity(std::uint32_t seed,
                                          std::size_t min_cases);
SuiteResult prop_reduction_sandwich(std::uint32_t seed, std::size_t min_cases);
SuiteResult prop_peak_completeness(std::uint32_t seed, std::size_t min_cases);

/// All suites in a fixed order.
std::vector<SuiteResult> run_property_suites(std::uint32_t seed,
                                             std::size_t min_cases);

} // namespace properties
