#include "crsa/crs.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <stdexcept>

namespace crsa {

std::string Literal::str() const {
  switch (kind) {
  case LiteralKind::Eq:
    return lhs.str() + " == " + rhs.str();
  case LiteralKind::Neq:
    return lhs.str() + " != " + rhs.str();
  default:
    return "def " + lhs.str();
  }
}

bool Literal::operator==(const Literal &o) const {
  if (kind != o.kind || !(lhs == o.lhs))
    return false;
  if (kind == LiteralKind::Def)
    return true;
  return rhs == o.rhs;
}

void System::add_sort(const std::string &s) {
  if (std::find(sorts.begin(), sorts.end(), s) == sorts.end())
    sorts.push_back(s);
}

void System::add_symbol(const std::string &name,
                        std::vector<std::string> arg_sorts, std::string sort,
                        bool is_cons) {
  symbols[name] = {std::move(arg_sorts), std::move(sort), is_cons};
}

void System::add_var(const std::string &name, VarKind kind,
                     const std::string &sort) {
  var_decls[name] = {kind, sort};
}

int System::add_rule(Term lhs, Term rhs, std::vector<Literal> conds) {
  Rule r;
  r.lambda = is_cons_term(lhs) ? 0 : 1;
  r.lhs = std::move(lhs);
  r.rhs = std::move(rhs);
  r.conds = std::move(conds);
  rules.push_back(std::move(r));
  return static_cast<int>(rules.size()) - 1;
}

const SymbolInfo &System::symbol(const std::string &name) const {
  auto it = symbols.find(name);
  if (it == symbols.end())
    throw std::runtime_error("unknown symbol: " + name);
  return it->second;
}

Term System::make_var(const std::string &name) const {
  auto it = var_decls.find(name);
  if (it == var_decls.end())
    throw std::runtime_error("undeclared variable: " + name);
  return Term::var(name, it->second.first, it->second.second);
}

namespace {

struct TermParser {
  const System &sys;
  const std::string &text;
  std::size_t i = 0;

  void skip_ws() {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i])))
      ++i;
  }

  std::string name() {
    skip_ws();
    std::size_t start = i;
    while (i < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[i])) ||
            text[i] == '_'))
      ++i;
    if (start == i)
      throw std::runtime_error("expected a name at offset " +
                               std::to_string(i) + " in '" + text + "'");
    return text.substr(start, i - start);
  }

  Term term() {
    std::string n = name();
    if (sys.var_decls.count(n)) {
      skip_ws();
      return sys.make_var(n);
    }
    if (!sys.has_symbol(n))
      throw std::runtime_error("unknown symbol '" + n + "' in '" + text + "'");
    const SymbolInfo &info = sys.symbol(n);
    std::vector<Term> args;
    skip_ws();
    if (i < text.size() && text[i] == '(') {
      ++i;
      while (true) {
        args.push_back(term());
        skip_ws();
        if (i < text.size() && text[i] == ',') {
          ++i;
          continue;
        }
        if (i < text.size() && text[i] == ')') {
          ++i;
          break;
        }
        throw std::runtime_error("expected ',' or ')' in '" + text + "'");
      }
    }
    if (args.size() != info.arg_sorts.size())
      throw std::runtime_error("symbol '" + n + "' expects " +
                               std::to_string(info.arg_sorts.size()) +
                               " arguments, got " +
                               std::to_string(args.size()));
    for (std::size_t k = 0; k < args.size(); ++k)
      if (sys.sort_of(args[k]) != info.arg_sorts[k])
        throw std::runtime_error("argument " + std::to_string(k + 1) + " of '" +
                                 n + "' has sort " + sys.sort_of(args[k]) +
                                 ", expected " + info.arg_sorts[k]);
    return Term::app(n, info.sort, std::move(args));
  }
};

} // namespace

Term System::parse_term(const std::string &text) const {
  TermParser p{*this, text};
  Term t = p.term();
  p.skip_ws();
  if (p.i != text.size())
    throw std::runtime_error("trailing input after term in '" + text + "'");
  return t;
}

std::string System::sort_of(const Term &t) const {
  if (t.is_var())
    return t.sort();
  return symbol(t.name()).sort;
}

bool System::is_cons_term(const Term &t) const {
  if (t.is_var())
    return true;
  if (!is_cons_symbol(t.name()))
    return false;
  for (const Term &a : t.args())
    if (!is_cons_term(a))
      return false;
  return true;
}

bool System::is_pure_cons(const Term &t) const {
  if (t.is_var())
    return t.kind() == VarKind::Cons;
  if (!is_cons_symbol(t.name()))
    return false;
  for (const Term &a : t.args())
    if (!is_pure_cons(a))
      return false;
  return true;
}

bool System::is_ground_cons(const Term &t) const {
  return t.is_ground() && is_pure_cons(t);
}

namespace {

/// Ways to write `total` as an ordered sum of `parts` positive integers.
void compositions(std::size_t total, std::size_t parts,
                  std::vector<std::size_t> &acc,
                  std::vector<std::vector<std::size_t>> &out) {
  if (parts == 1) {
    if (total >= 1) {
      acc.push_back(total);
      out.push_back(acc);
      acc.pop_back();
    }
    return;
  }
  for (std::size_t first = 1; total >= first + (parts - 1); ++first) {
    acc.push_back(first);
    compositions(total - first, parts - 1, acc, out);
    acc.pop_back();
  }
}

} // namespace

std::vector<Term> System::ground_terms(const std::string &sort,
                                       std::size_t max_size) const {
  // Terms of exactly a given size per sort, memoized.
  std::map<std::pair<std::string, std::size_t>, std::vector<Term>> memo;

  std::function<const std::vector<Term> &(const std::string &, std::size_t)>
      gen = [&](const std::string &srt,
                std::size_t sz) -> const std::vector<Term> & {
    auto key = std::make_pair(srt, sz);
    auto found = memo.find(key);
    if (found != memo.end())
      return found->second;
    std::vector<Term> out;
    for (const auto &[f, info] : symbols) {
      if (info.sort != srt || info.arg_sorts.size() + 1 > sz)
        continue;
      if (info.arg_sorts.empty()) {
        if (sz == 1)
          out.push_back(Term::app(f, info.sort, {}));
        continue;
      }
      std::vector<std::vector<std::size_t>> splits;
      std::vector<std::size_t> acc;
      compositions(sz - 1, info.arg_sorts.size(), acc, splits);
      for (const auto &split : splits) {
        // Odometer over the argument pools.
        std::vector<const std::vector<Term> *> pools;
        bool empty = false;
        for (std::size_t k = 0; k < split.size(); ++k) {
          pools.push_back(&gen(info.arg_sorts[k], split[k]));
          if (pools.back()->empty())
            empty = true;
        }
        if (empty)
          continue;
        std::vector<std::size_t> idx(pools.size(), 0);
        while (true) {
          std::vector<Term> args;
          args.reserve(pools.size());
          for (std::size_t k = 0; k < pools.size(); ++k)
            args.push_back((*pools[k])[idx[k]]);
          out.push_back(Term::app(f, info.sort, std::move(args)));
          std::size_t k = pools.size();
          while (k > 0) {
            --k;
            if (++idx[k] < pools[k]->size())
              break;
            idx[k] = 0;
            if (k == 0) {
              k = pools.size() + 1;
              break;
            }
          }
          if (k == pools.size() + 1)
            break;
        }
      }
    }
    return memo.emplace(key, std::move(out)).first->second;
  };

  std::vector<Term> res;
  for (std::size_t sz = 1; sz <= max_size; ++sz)
    for (const Term &t : gen(sort, sz))
      res.push_back(t);
  std::sort(res.begin(), res.end(), term_size_str_less);
  return res;
}

std::vector<Term>
System::pure_cons_ground_terms(const std::string &sort,
                               std::size_t max_size) const {
  std::vector<Term> out;
  for (const Term &t : ground_terms(sort, max_size))
    if (is_pure_cons(t))
      out.push_back(t);
  return out;
}

std::vector<std::string>
System::cond_strs(const std::vector<Literal> &conds) const {
  std::vector<std::string> out;
  out.reserve(conds.size());
  for (const Literal &c : conds)
    out.push_back(c.str());
  return out;
}

std::vector<Term> rule_vars(const Rule &r) {
  std::vector<Term> acc;
  auto collect = [&](const Term &t) {
    for (const Term &v : t.vars()) {
      bool seen = false;
      for (const Term &w : acc)
        if (w == v)
          seen = true;
      if (!seen)
        acc.push_back(v);
    }
  };
  collect(r.lhs);
  collect(r.rhs);
  for (const Literal &c : r.conds)
    for (const Term &t : c.terms())
      collect(t);
  return acc;
}

Literal apply_substitution(const Literal &c, const Substitution &s) {
  if (c.kind == LiteralKind::Def)
    return Literal::def(apply_substitution(c.lhs, s));
  Literal out = c;
  out.lhs = apply_substitution(c.lhs, s);
  out.rhs = apply_substitution(c.rhs, s);
  return out;
}

namespace {

void check_term(const System &sys, const Term &t, int rule_index,
                const char *where, std::vector<Diagnostic> &out) {
  if (t.is_var()) {
    auto it = sys.var_decls.find(t.name());
    if (it == sys.var_decls.end())
      out.push_back({Diagnostic::Severity::Error, "undeclared-variable",
                     std::string(where) + " uses undeclared variable " +
                         t.name(),
                     rule_index});
    return;
  }
  if (!sys.has_symbol(t.name())) {
    out.push_back({Diagnostic::Severity::Error, "unknown-symbol",
                   std::string(where) + " uses unknown symbol " + t.name(),
                   rule_index});
    return;
  }
  const SymbolInfo &info = sys.symbol(t.name());
  if (info.arg_sorts.size() != t.args().size()) {
    out.push_back({Diagnostic::Severity::Error, "arity-mismatch",
                   std::string(where) + ": " + t.name() + " expects " +
                       std::to_string(info.arg_sorts.size()) + " arguments",
                   rule_index});
    return;
  }
  for (std::size_t i = 0; i < t.args().size(); ++i) {
    check_term(sys, t.args()[i], rule_index, where, out);
    if (sys.sort_of(t.args()[i]) != info.arg_sorts[i])
      out.push_back({Diagnostic::Severity::Error, "argument-sort",
                     std::string(where) + ": argument " +
                         std::to_string(i + 1) + " of " + t.name() +
                         " has sort " + sys.sort_of(t.args()[i]) +
                         ", expected " + info.arg_sorts[i],
                     rule_index});
  }
}

bool subset_of(const std::vector<Term> &vs, const std::vector<Term> &within) {
  for (const Term &v : vs) {
    bool found = false;
    for (const Term &w : within)
      if (w == v)
        found = true;
    if (!found)
      return false;
  }
  return true;
}

std::string missing_names(const std::vector<Term> &vs,
                          const std::vector<Term> &within) {
  std::string out;
  for (const Term &v : vs) {
    bool found = false;
    for (const Term &w : within)
      if (w == v)
        found = true;
    if (!found) {
      if (!out.empty())
        out += ",";
      out += v.name();
    }
  }
  return out;
}

} // namespace

std::vector<Diagnostic> validate(const System &sys) {
  std::vector<Diagnostic> out;

  // Every sort must be inhabited by a constructor ground term; compute the
  // inhabited set as a fixpoint over constructor arities.
  std::set<std::string> inhabited;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto &[f, info] : sys.symbols) {
      if (!info.is_cons || inhabited.count(info.sort))
        continue;
      bool ok = true;
      for (const std::string &a : info.arg_sorts)
        if (!inhabited.count(a))
          ok = false;
      if (ok) {
        inhabited.insert(info.sort);
        changed = true;
      }
    }
  }
  for (const std::string &s : sys.sorts)
    if (!inhabited.count(s))
      out.push_back({Diagnostic::Severity::Error, "empty-sort",
                     "sort " + s + " has no constructor ground terms", -1});

  for (std::size_t i = 0; i < sys.rules.size(); ++i) {
    const Rule &r = sys.rules[i];
    int ri = static_cast<int>(i);

    if (r.lhs.is_var()) {
      out.push_back({Diagnostic::Severity::Error, "lhs-variable",
                     "left-hand side of rule " + std::to_string(i) +
                         " is a bare variable",
                     ri});
      continue;
    }
    check_term(sys, r.lhs, ri, "lhs", out);
    check_term(sys, r.rhs, ri, "rhs", out);
    for (const Literal &c : r.conds)
      for (const Term &t : c.terms())
        check_term(sys, t, ri, "condition", out);

    if (sys.sort_of(r.lhs) != sys.sort_of(r.rhs))
      out.push_back({Diagnostic::Severity::Error, "rule-sort",
                     "rule " + std::to_string(i) + " rewrites sort " +
                         sys.sort_of(r.lhs) + " to sort " + sys.sort_of(r.rhs),
                     ri});
    for (const Literal &c : r.conds)
      if (c.kind != LiteralKind::Def &&
          sys.sort_of(c.lhs) != sys.sort_of(c.rhs))
        out.push_back({Diagnostic::Severity::Error, "literal-sort",
                       "rule " + std::to_string(i) + " literal " + c.str() +
                           " compares different sorts",
                       ri});

    std::vector<Term> lhs_vars = r.lhs.vars();
    if (!subset_of(r.rhs.vars(), lhs_vars))
      out.push_back({Diagnostic::Severity::Error, "rhs-extra-variable",
                     "rule " + std::to_string(i) +
                         " right-hand side invents variables " +
                         missing_names(r.rhs.vars(), lhs_vars),
                     ri});

    std::vector<Term> cond_vars;
    for (const Literal &c : r.conds)
      for (const Term &t : c.terms())
        for (const Term &v : t.vars()) {
          bool seen = false;
          for (const Term &w : cond_vars)
            if (w == v)
              seen = true;
          if (!seen)
            cond_vars.push_back(v);
        }

    if (r.lambda == 0) {
      if (!sys.is_cons_term(r.rhs))
        out.push_back({Diagnostic::Severity::Error, "constructor-rule-rhs",
                       "constructor rule " + std::to_string(i) +
                           " has a non-constructor right-hand side",
                       ri});
      for (const Literal &c : r.conds) {
        if (c.kind == LiteralKind::Neq)
          out.push_back(
              {Diagnostic::Severity::Error, "constructor-rule-negative",
               "constructor rule " + std::to_string(i) +
                   " carries a negative literal " + c.str(),
               ri});
        for (const Term &t : c.terms())
          if (!sys.is_cons_term(t))
            out.push_back(
                {Diagnostic::Severity::Error, "constructor-rule-condition",
                 "constructor rule " + std::to_string(i) +
                     " condition leaves the constructor fragment: " + t.str(),
                 ri});
      }
      if (!subset_of(cond_vars, lhs_vars))
        out.push_back(
            {Diagnostic::Severity::Error, "constructor-rule-extra-variable",
             "constructor rule " + std::to_string(i) +
                 " condition invents variables " +
                 missing_names(cond_vars, lhs_vars),
             ri});
    } else if (!subset_of(cond_vars, lhs_vars)) {
      out.push_back({Diagnostic::Severity::Warning, "condition-extra-variable",
                     "rule " + std::to_string(i) +
                         " condition mentions variables not in the "
                         "left-hand side (" +
                         missing_names(cond_vars, lhs_vars) +
                         "); such redexes stay Unknown",
                     ri});
    }
  }
  return out;
}

bool has_errors(const std::vector<Diagnostic> &diags) {
  for (const Diagnostic &d : diags)
    if (d.is_error())
      return true;
  return false;
}

std::pair<bool, std::vector<int>> left_linearity(const System &sys) {
  std::vector<int> bad;
  for (std::size_t i = 0; i < sys.rules.size(); ++i)
    if (!sys.rules[i].lhs.is_linear())
      bad.push_back(static_cast<int>(i));
  return {bad.empty(), bad};
}

bool has_conservative_constructors(const System &sys) {
  for (const Rule &r : sys.rules) {
    if (r.lambda != 0)
      continue;
    for (const Literal &c : r.conds)
      for (const Term &t : c.terms())
        for (const Term &v : t.vars())
          if (v.kind() == VarKind::Gen)
            return false;
  }
  return true;
}

System constructor_subsystem(const System &sys) {
  System sub;
  sub.id = sys.id + "#cons";
  sub.sorts = sys.sorts;
  sub.symbols = sys.symbols;
  sub.var_decls = sys.var_decls;
  sub.instantiation = sys.instantiation;
  for (const Rule &r : sys.rules)
    if (r.lambda == 0)
      sub.rules.push_back(r);
  return sub;
}

} // namespace crsa
