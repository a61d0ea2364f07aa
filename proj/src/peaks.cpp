#include "crsa/peaks.hpp"

#include "crsa/unify.hpp"

#include <algorithm>
#include <set>

namespace crsa {

std::vector<CriticalPeak> critical_peaks(const System &sys) {
  std::vector<CriticalPeak> peaks;
  for (std::size_t i1 = 0; i1 < sys.rules.size(); ++i1) {
    const Rule &r1 = sys.rules[i1];
    std::set<std::string> taken;
    for (const Term &v : rule_vars(r1))
      taken.insert(v.name());
    for (std::size_t i0 = 0; i0 < sys.rules.size(); ++i0) {
      auto [r0r, _ren] = rename_apart(sys.rules[i0], taken);
      for (const Position &p : r1.lhs.positions()) {
        Term inner = r1.lhs.subterm(p);
        if (inner.is_var())
          continue;
        if (sys.sort_of(r0r.lhs) != sys.sort_of(inner))
          continue;
        auto sigma = mgu(sys, {{r0r.lhs, inner}});
        if (!sigma)
          continue;
        Term t0 = apply_substitution(r1.lhs.replace(p, r0r.rhs), *sigma);
        Term t1 = apply_substitution(r1.rhs, *sigma);
        if (t0 == t1)
          continue;
        CriticalPeak pk;
        pk.rule0 = static_cast<int>(i0);
        pk.rule1 = static_cast<int>(i1);
        pk.pos = p;
        pk.peak = apply_substitution(r1.lhs, *sigma);
        pk.t0 = std::move(t0);
        pk.t1 = std::move(t1);
        for (const Literal &c : r0r.conds)
          pk.c0.push_back(apply_substitution(c, *sigma));
        for (const Literal &c : r1.conds)
          pk.c1.push_back(apply_substitution(c, *sigma));
        pk.lam0 = sys.rules[i0].lambda;
        pk.lam1 = r1.lambda;
        pk.outer_lhs_vars = r1.lhs.vars();
        pk.sigma = std::move(*sigma);
        peaks.push_back(std::move(pk));
      }
    }
  }
  std::sort(peaks.begin(), peaks.end(),
            [](const CriticalPeak &a, const CriticalPeak &b) {
              if (a.rule0 != b.rule0)
                return a.rule0 < b.rule0;
              if (a.rule1 != b.rule1)
                return a.rule1 < b.rule1;
              return a.pos < b.pos;
            });
  return peaks;
}

CanonicalPeak canonical_peak(const CriticalPeak &pk) {
  std::vector<Term> order;
  auto walk = [&order](const Term &t) {
    for (const Term &v : t.vars()) {
      bool seen = false;
      for (const Term &w : order)
        if (w == v)
          seen = true;
      if (!seen)
        order.push_back(v);
    }
  };
  walk(pk.peak);
  walk(pk.t0);
  for (const Literal &c : pk.c0)
    for (const Term &t : c.terms())
      walk(t);
  walk(pk.t1);
  for (const Literal &c : pk.c1)
    for (const Term &t : c.terms())
      walk(t);

  Substitution ren;
  int nc = 0, ng = 0;
  for (const Term &v : order) {
    if (v.kind() == VarKind::Cons) {
      ++nc;
      ren.bind(v.name(),
               Term::var("x" + std::to_string(nc), VarKind::Cons, v.sort()));
    } else {
      ++ng;
      ren.bind(v.name(),
               Term::var("X" + std::to_string(ng), VarKind::Gen, v.sort()));
    }
  }

  CanonicalPeak out;
  out.peak = apply_substitution(pk.peak, ren);
  out.t0 = apply_substitution(pk.t0, ren);
  out.t1 = apply_substitution(pk.t1, ren);
  for (const Literal &c : pk.c0)
    out.c0.push_back(apply_substitution(c, ren));
  for (const Literal &c : pk.c1)
    out.c1.push_back(apply_substitution(c, ren));
  out.ren = std::move(ren);
  return out;
}

TriBool peak_complementary(const System &sys, const CriticalPeak &pk,
                           const Engine &engine, bool weak) {
  (void)sys;
  std::vector<Literal> pooled;
  if (weak) {
    pooled = pk.c0;
    pooled.insert(pooled.end(), pk.c1.begin(), pk.c1.end());
  }
  const std::vector<Literal> &s0 = weak ? pooled : pk.c0;
  const std::vector<Literal> &s1 = weak ? pooled : pk.c1;

  bool unknown = false;
  const std::vector<Literal> *pairs[2][2] = {{&s0, &s1}, {&s1, &s0}};
  for (auto &pair : pairs) {
    const std::vector<Literal> &d0 = *pair[0];
    const std::vector<Literal> &d1 = *pair[1];
    // An equation recurring verbatim as a disequation refutes the pair of
    // condition lists outright.
    for (const Literal &c : d0) {
      if (c.kind != LiteralKind::Eq)
        continue;
      for (const Literal &c2 : d1)
        if (c2.kind == LiteralKind::Neq && c.lhs == c2.lhs && c.rhs == c2.rhs)
          return TriBool::Yes;
    }
    // One shared left side equated to two distinct ground terms that are
    // certified irreducible cannot be fulfilled on both sides.
    for (const Literal &c : d0) {
      if (c.kind != LiteralKind::Eq)
        continue;
      for (const Literal &c2 : d1) {
        if (c2.kind != LiteralKind::Eq || !(c.lhs == c2.lhs) ||
            c.rhs == c2.rhs)
          continue;
        const Term &u = c.rhs;
        const Term &v = c2.rhs;
        if (!u.is_ground() || !v.is_ground())
          continue;
        TriBool iu = engine.irreducible(u);
        TriBool iv = engine.irreducible(v);
        if (iu == TriBool::Yes && iv == TriBool::Yes)
          return TriBool::Yes;
        if (iu != TriBool::No && iv != TriBool::No)
          unknown = true;
      }
    }
  }
  return unknown ? TriBool::Unknown : TriBool::No;
}

} // namespace crsa
