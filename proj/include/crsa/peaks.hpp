#pragma once

#include "crsa/crs.hpp"
#include "crsa/engine.hpp"

#include <string>
#include <vector>

namespace crsa {

/// A critical overlap: rule0 (renamed apart) applied at `pos` inside
/// rule1's left-hand side under the recorded unifier. The stored terms
/// keep the unifier's variables uninstantiated; `canonical_peak` gives a
/// presentation-independent renaming.
struct CriticalPeak {
  int rule0;
  int rule1;
  Position pos;
  Term peak; ///< The unified redex, rule1's lhs under sigma.
  Term t0;   ///< Reduct of the inner step.
  Term t1;   ///< Reduct of the outer step.
  std::vector<Literal> c0; ///< Inner rule's conditions under sigma.
  std::vector<Literal> c1; ///< Outer rule's conditions under sigma.
  int lam0;
  int lam1;
  /// Outer lhs variables before renaming, for instantiation filters.
  std::vector<Term> outer_lhs_vars;
  Substitution sigma;

  bool is_overlay() const { return pos.empty(); }
  /// "(lam0,lam1)" as printed in reports.
  std::string form() const {
    return "(" + std::to_string(lam0) + "," + std::to_string(lam1) + ")";
  }
};

struct CanonicalPeak {
  Term peak;
  Term t0;
  Term t1;
  std::vector<Literal> c0;
  std::vector<Literal> c1;
  /// Original variable name to canonical variable (x1,... / X1,...).
  Substitution ren;
};

/// All critical peaks of the system, ordered by (rule0, rule1, pos).
/// Trivial overlaps (both reducts identical) are dropped; positions with
/// variable subterms do not overlap.
std::vector<CriticalPeak> critical_peaks(const System &sys);

/// First-occurrence renaming over peak, t0, c0, t1, c1: constructor
/// variables become x1,x2,..., general variables X1,X2,...
CanonicalPeak canonical_peak(const CriticalPeak &pk);

/// Syntactic complementarity of the two condition lists: either an
/// equation in one list recurs as the same disequation in the other, or
/// one shared left side is equated to two distinct certified-irreducible
/// ground terms. With `weak`, both lists are pooled first.
TriBool peak_complementary(const System &sys, const CriticalPeak &pk,
                           const Engine &engine, bool weak);

} // namespace crsa
