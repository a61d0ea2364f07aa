#include "crsa/unify.hpp"

#include <deque>

namespace crsa {

namespace {

bool match_rec(const System &sys, const Term &pattern, const Term &subject,
               Substitution &sigma) {
  if (pattern.is_var()) {
    if (pattern.kind() == VarKind::Cons && !sys.is_pure_cons(subject))
      return false;
    if (const Term *bound = sigma.find(pattern.name()))
      return *bound == subject;
    sigma.bind(pattern.name(), subject);
    return true;
  }
  if (subject.is_var() || pattern.name() != subject.name())
    return false;
  for (std::size_t i = 0; i < pattern.args().size(); ++i)
    if (!match_rec(sys, pattern.args()[i], subject.args()[i], sigma))
      return false;
  return true;
}

/// Triangular composition: applies {name -> val} to the existing range
/// and then records the binding itself.
void compose_bind(Substitution &sigma, const std::string &name,
                  const Term &val) {
  Substitution single;
  single.bind(name, val);
  Substitution out;
  for (const auto &[k, v] : sigma.bindings())
    out.bind(k, apply_substitution(v, single));
  out.bind(name, val);
  sigma = std::move(out);
}

bool occurs(const std::string &name, const Term &t) {
  for (const Term &v : t.vars())
    if (v.name() == name)
      return true;
  return false;
}

} // namespace

std::optional<Substitution> match_term(const System &sys, const Term &pattern,
                                       const Term &subject) {
  Substitution sigma;
  if (!match_rec(sys, pattern, subject, sigma))
    return std::nullopt;
  return sigma;
}

std::optional<Substitution>
mgu(const System &sys, const std::vector<std::pair<Term, Term>> &pairs) {
  Substitution sigma;
  std::deque<std::pair<Term, Term>> work(pairs.begin(), pairs.end());
  int fresh = 0;

  while (!work.empty()) {
    auto [a, b] = work.front();
    work.pop_front();
    a = apply_substitution(a, sigma);
    b = apply_substitution(b, sigma);
    if (a == b)
      continue;
    if (!a.is_var() && !b.is_var()) {
      if (a.name() != b.name())
        return std::nullopt;
      // Decompose in front so argument pairs are handled before the rest.
      for (std::size_t i = a.args().size(); i > 0; --i)
        work.emplace_front(a.args()[i - 1], b.args()[i - 1]);
      continue;
    }
    if (!a.is_var())
      std::swap(a, b);
    if (b.is_var()) {
      if (a.kind() == b.kind() || a.kind() == VarKind::Gen)
        compose_bind(sigma, a.name(), b);
      else
        compose_bind(sigma, b.name(), a);
      continue;
    }
    if (occurs(a.name(), b))
      return std::nullopt;
    if (a.kind() == VarKind::Cons) {
      if (!sys.is_cons_term(b))
        return std::nullopt;
      // The binding must stay inside the constructor fragment, so any
      // general variables in it are weakened to fresh constructor ones.
      for (const Term &v : b.vars())
        if (v.kind() == VarKind::Gen) {
          ++fresh;
          Term w = Term::var("_c" + std::to_string(fresh), VarKind::Cons,
                             v.sort());
          compose_bind(sigma, v.name(), w);
        }
      b = apply_substitution(b, sigma);
    }
    compose_bind(sigma, a.name(), b);
  }
  return sigma;
}

std::pair<Rule, Substitution> rename_apart(const Rule &rule,
                                           const std::set<std::string> &taken) {
  Substitution ren;
  std::set<std::string> used;
  for (const Term &v : rule_vars(rule)) {
    std::string n = v.name();
    while (taken.count(n) || used.count(n))
      n += "'";
    used.insert(n);
    if (n != v.name())
      ren.bind(v.name(), Term::var(n, v.kind(), v.sort()));
  }
  Rule out;
  out.lhs = apply_substitution(rule.lhs, ren);
  out.rhs = apply_substitution(rule.rhs, ren);
  for (const Literal &c : rule.conds)
    out.conds.push_back(apply_substitution(c, ren));
  out.lambda = rule.lambda;
  return {std::move(out), std::move(ren)};
}

} // namespace crsa
