#pragma once

#include "crsa/crs.hpp"
#include "crsa/engine.hpp"

#include <string>
#include <vector>

namespace crsa {

/// Per-rule tiers: "normal" when every equation carries a certified
/// irreducible ground side, "quasi_normal_syntactic" when a syntactic
/// fallback applies instead (constructor-variable sides, two ground
/// sides, or a matching Def literal), "unknown" when certification was
/// inconclusive, "fails" otherwise.
struct NormalityReport {
  std::string summary;
  std::vector<std::string> rules;
};

NormalityReport normality(const System &sys, const Engine &engine);

} // namespace crsa
