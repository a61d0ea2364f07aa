#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "property_suites.hpp"

#include <cstdlib>

using properties::SuiteResult;

namespace {

constexpr std::uint32_t kSeed = 0xC0FFEEu;
constexpr std::size_t kMinCases = 1000;

void require_clean(const SuiteResult &r) {
  INFO(r.name << ": " << r.cases << " cases, " << r.checks << " checks");
  for (const std::string &note : r.notes)
    INFO(note);
  CHECK(r.cases >= kMinCases);
  CHECK(r.failures == 0);
}

} // namespace

TEST_CASE("positions and replacement round trip") {
  require_clean(properties::prop_position_round_trips(kSeed ^ 0x1u, kMinCases));
}

TEST_CASE("unification is sound and most general") {
  require_clean(
      properties::prop_mgu_soundness_generality(kSeed ^ 0x2u, kMinCases));
}

TEST_CASE("one-step tables are monotone in the depth index") {
  require_clean(properties::prop_depth_monotonicity(kSeed ^ 0x3u, kMinCases));
}

TEST_CASE("constructor terms stay constructor terms") {
  require_clean(properties::prop_constructor_keeping(kSeed ^ 0x4u, kMinCases));
}

TEST_CASE("steps survive instantiation") {
  require_clean(
      properties::prop_substitution_stability(kSeed ^ 0x5u, kMinCases));
}

TEST_CASE("steps lift into contexts") {
  require_clean(
      properties::prop_replacement_monotonicity(kSeed ^ 0x6u, kMinCases));
}

TEST_CASE("one-step, parallel and reachability nest") {
  require_clean(properties::prop_reduction_sandwich(kSeed ^ 0x7u, kMinCases));
}

TEST_CASE("critical peaks cover ground overlap divergences") {
  require_clean(properties::prop_peak_completeness(kSeed ^ 0x8u, kMinCases));
}
