#pragma once

#include "crsa/criteria.hpp"
#include "crsa/crs.hpp"

#include <optional>
#include <string>
#include <vector>

namespace crsa {

/// Outcome of parsing a system description. `system` is present whenever
/// the text was syntactically readable; semantic validation diagnostics
/// (including warnings) are appended after parsing.
struct ParseResult {
  std::optional<System> system;
  Assumptions assumptions;
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return system.has_value() && !has_errors(diagnostics); }
};

/// Parses the clause language:
///
///   sorts nat bool;
///   cons 0 : nat;            cons s : nat -> nat;
///   func plus : nat nat -> nat;
///   cvar x y : nat;          gvar X : nat;
///   instantiate gvars;       (or: none, all)
///   rule plus(x,0) = x;
///   rule f(x) = y <= x == y, def x;
///   assume terminating;      assume constructor-confluent;
///
/// `#` starts a comment running to end of line. Declarations must
/// precede the rules that use them.
ParseResult parse_spec(const std::string &text, const std::string &id = "");

/// Renders the system (and assumption clauses) back into the clause
/// language; parsing the output reproduces the same system.
std::string print_spec(const System &sys, const Assumptions &a = {});

bool systems_equal(const System &a, const System &b);

} // namespace crsa
