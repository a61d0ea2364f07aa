#pragma once

#include "crsa/term.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace crsa {

enum class LiteralKind { Eq, Neq, Def };

/// A condition literal: a joinability equation, its negation, or a
/// definedness requirement on a single term.
struct Literal {
  LiteralKind kind;
  Term lhs;
  Term rhs; // invalid for Def literals

  static Literal eq(Term u, Term v) {
    return {LiteralKind::Eq, std::move(u), std::move(v)};
  }
  static Literal neq(Term u, Term v) {
    return {LiteralKind::Neq, std::move(u), std::move(v)};
  }
  static Literal def(Term u) { return {LiteralKind::Def, std::move(u), Term()}; }

  /// The literal's argument terms, one for Def, two otherwise.
  std::vector<Term> terms() const {
    if (kind == LiteralKind::Def)
      return {lhs};
    return {lhs, rhs};
  }

  std::string str() const;
  bool operator==(const Literal &o) const;
};

struct Rule {
  Term lhs;
  Term rhs;
  std::vector<Literal> conds;
  /// 0 when the left-hand side is a constructor term, 1 otherwise.
  int lambda = 1;
};

/// Which variables the fulfilledness semantics ranges over when closing
/// conditions under instantiation.
enum class InstSet { GeneralOnly, None, All };

struct SymbolInfo {
  std::vector<std::string> arg_sorts;
  std::string sort;
  bool is_cons = false;
};

struct Diagnostic {
  enum class Severity { Error, Warning };
  Severity severity;
  std::string code;
  std::string message;
  int rule_index = -1; // -1 when not tied to a rule
  int line = 0;        // 0 when not tied to source text
  int col = 0;

  bool is_error() const { return severity == Severity::Error; }
};

/// A conditional rewrite system over a sorted signature with a
/// distinguished constructor sub-signature and a two-kinded variable
/// supply. Instances are built programmatically or by the spec parser;
/// `validate` reports rule-format violations afterwards.
class System {
public:
  std::string id;
  std::vector<std::string> sorts; // declaration order
  std::map<std::string, SymbolInfo> symbols;
  std::map<std::string, std::pair<VarKind, std::string>> var_decls;
  std::vector<Rule> rules;
  InstSet instantiation = InstSet::GeneralOnly;

  void add_sort(const std::string &s);
  void add_symbol(const std::string &name, std::vector<std::string> arg_sorts,
                  std::string sort, bool is_cons);
  void add_var(const std::string &name, VarKind kind, const std::string &sort);
  /// Appends the rule and assigns its lambda; returns the rule index.
  int add_rule(Term lhs, Term rhs, std::vector<Literal> conds = {});

  bool has_symbol(const std::string &name) const {
    return symbols.count(name) != 0;
  }
  bool is_cons_symbol(const std::string &name) const {
    auto it = symbols.find(name);
    return it != symbols.end() && it->second.is_cons;
  }
  const SymbolInfo &symbol(const std::string &name) const;

  /// The declared variable as a term; throws if undeclared.
  Term make_var(const std::string &name) const;

  /// Parses `f(g(x),0)` style text using the system's symbols and
  /// declared variables. Throws std::runtime_error on malformed input.
  Term parse_term(const std::string &text) const;

  std::string sort_of(const Term &t) const;

  /// Built from constructors; variables of either kind allowed.
  bool is_cons_term(const Term &t) const;
  /// Constructors plus constructor variables only.
  bool is_pure_cons(const Term &t) const;
  bool is_ground_cons(const Term &t) const;

  /// All ground terms of the sort up to the size bound, any symbols,
  /// ordered by size then printed form.
  std::vector<Term> ground_terms(const std::string &sort,
                                 std::size_t max_size) const;
  std::vector<Term> pure_cons_ground_terms(const std::string &sort,
                                           std::size_t max_size) const;

  std::vector<std::string> cond_strs(const std::vector<Literal> &conds) const;
};

/// Checks the rule format: constructor rules must stay inside the
/// constructor fragment and be positive, right-hand sides may not invent
/// variables, and every sort needs a constructor ground term. Errors make
/// the system unusable; warnings degrade analysis answers to Unknown.
std::vector<Diagnostic> validate(const System &sys);

bool has_errors(const std::vector<Diagnostic> &diags);

/// Per-rule left-linearity; returns the offending rule indices.
std::pair<bool, std::vector<int>> left_linearity(const System &sys);

/// True when no constructor rule's condition mentions a general variable.
bool has_conservative_constructors(const System &sys);

/// The constructor rules of the system under the same signature.
System constructor_subsystem(const System &sys);

/// Variables of the rule in first-occurrence order: lhs, rhs, then
/// condition terms.
std::vector<Term> rule_vars(const Rule &r);

Literal apply_substitution(const Literal &c, const Substitution &s);

} // namespace crsa
