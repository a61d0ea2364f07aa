#pragma once

#include "crsa/crs.hpp"

#include <optional>
#include <set>
#include <utility>
#include <vector>

namespace crsa {

/// One-sided matching: finds sigma with pattern*sigma == subject, binding
/// pattern variables only. Constructor variables match pure constructor
/// subjects only.
std::optional<Substitution> match_term(const System &sys, const Term &pattern,
                                       const Term &subject);

/// Kind-respecting syntactic unification of the pairs, processed first to
/// last. Constructor variables bind constructor terms only; general
/// variables inside such a binding are weakened to fresh constructor
/// variables (named _c1, _c2, ...). Returns std::nullopt on clash or
/// occurs failure.
std::optional<Substitution>
mgu(const System &sys, const std::vector<std::pair<Term, Term>> &pairs);

/// Renames every variable of the rule with primes until the names avoid
/// `taken`. Returns the renamed rule and the renaming substitution.
std::pair<Rule, Substitution> rename_apart(const Rule &rule,
                                           const std::set<std::string> &taken);

} // namespace crsa
