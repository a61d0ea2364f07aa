#include "property_suites.hpp"

#include "crsa/engine.hpp"
#include "crsa/peaks.hpp"
#include "crsa/unify.hpp"
#include "test_support.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <random>
#include <tuple>
#include <unordered_set>

using namespace crsa;

namespace properties {

namespace {

// ------------------------------------------------------------ generators ---

/// Symbol and variable pools per sort, for random term construction.
struct SigPools {
  std::map<std::string, std::vector<std::string>> symbols;
  std::map<std::string, std::vector<std::string>> constants;
  std::map<std::string, std::vector<Term>> vars;
};

SigPools make_pools(const System &sys) {
  SigPools p;
  for (const auto &[name, info] : sys.symbols) {
    p.symbols[info.sort].push_back(name);
    if (info.arg_sorts.empty())
      p.constants[info.sort].push_back(name);
  }
  for (const auto &[name, decl] : sys.var_decls)
    p.vars[decl.second].push_back(Term::var(name, decl.first, decl.second));
  return p;
}

/// Random well-sorted term of the sort, roughly `max_size` symbols.
/// `var_prob` (percent) picks a declared variable when one exists.
Term random_term(const System &sys, const SigPools &pools,
                 const std::string &sort, int max_size, std::mt19937 &rng,
                 int var_prob) {
  auto vit = pools.vars.find(sort);
  bool can_var = vit != pools.vars.end() && !vit->second.empty();
  if (can_var && static_cast<int>(rng() % 100) < var_prob)
    return vit->second[rng() % vit->second.size()];
  auto cit = pools.constants.find(sort);
  if (max_size <= 1 && cit != pools.constants.end() && !cit->second.empty()) {
    const std::string &c = cit->second[rng() % cit->second.size()];
    return Term::app(c, sort, {});
  }
  const auto &symbols = pools.symbols.at(sort);
  std::vector<const std::string *> fitting;
  for (const std::string &name : symbols)
    if (static_cast<int>(sys.symbol(name).arg_sorts.size()) < max_size ||
        sys.symbol(name).arg_sorts.empty())
      fitting.push_back(&name);
  const std::string &pick = fitting.empty()
                                ? symbols[rng() % symbols.size()]
                                : *fitting[rng() % fitting.size()];
  const SymbolInfo &info = sys.symbol(pick);
  std::vector<Term> args;
  int remaining = max_size - 1;
  for (std::size_t i = 0; i < info.arg_sorts.size(); ++i) {
    int slots = static_cast<int>(info.arg_sorts.size() - i);
    int budget = std::max(1, remaining / slots);
    Term a = random_term(sys, pools, info.arg_sorts[i], budget, rng, var_prob);
    remaining -= static_cast<int>(a.size());
    args.push_back(std::move(a));
  }
  return Term::app(pick, info.sort, std::move(args));
}

std::vector<DepthIndex> depth_pool() {
  return {DepthIndex::fin(0),        DepthIndex::fin(1),
          DepthIndex::fin(2),        DepthIndex::fin(3),
          DepthIndex::fin(5),        DepthIndex::omega(),
          DepthIndex::omega_plus(1), DepthIndex::omega_plus(2),
          DepthIndex::omega_plus(3), DepthIndex::omega_omega()};
}

bool has_edge(const std::vector<Edge> &edges, const Position &pos, int rule,
              const Term &to) {
  for (const Edge &e : edges)
    if (e.pos == pos && e.rule == rule && e.to == to)
      return true;
  return false;
}

// ------------------------------------------------------- shared contexts ---

/// Parsed bundled systems, no engines attached. Cheap to build.
const std::vector<System> &bundled_systems() {
  static const std::vector<System> all = [] {
    std::vector<System> out;
    for (const std::string &id : corpus_ids())
      out.push_back(load_corpus_system(id));
    return out;
  }();
  return all;
}

struct Ctx {
  System sys;
  std::unique_ptr<Engine> engine;
};

/// One engine per bundled system, saturated from the reference seeds.
/// Built once; the suites only run read-only queries against them.
const std::vector<Ctx> &shared_engines() {
  static const std::vector<Ctx> ctxs = [] {
    std::vector<Ctx> out;
    for (const std::string &id : corpus_ids()) {
      auto loaded = testsupport::load_with_seeds(id);
      Ctx c{loaded.sys, nullptr};
      c.engine = std::make_unique<Engine>(c.sys, loaded.seeds,
                                          testsupport::reference_budget());
      out.push_back(std::move(c));
    }
    return out;
  }();
  return ctxs;
}

/// Budget for the per-suite batch engines. Admission room is generous
/// relative to the seed count so condition evidence saturates before any
/// cap can bite; the term size cap only trims oversized reducts, which
/// the suites skip via in_universe.
Budget batch_budget() {
  Budget b;
  b.max_steps = 20000;
  b.max_term_size = 32;
  b.max_strata = 12;
  b.max_depth = 500;
  return b;
}

std::string describe(const System &sys, const Term &t,
                     const std::string &what) {
  return sys.id + ": " + t.str() + ": " + what;
}

} // namespace

// --------------------------------------------------------------- suite 1 ---

SuiteResult prop_position_round_trips(std::uint32_t seed,
                                      std::size_t min_cases) {
  SuiteResult r;
  r.name = "position and replacement round trips";
  std::mt19937 rng(seed);
  const auto &systems = bundled_systems();
  while (r.cases < min_cases) {
    const System &sys = systems[rng() % systems.size()];
    SigPools pools = make_pools(sys);
    const std::string &sort = sys.sorts[rng() % sys.sorts.size()];
    Term t = random_term(sys, pools, sort, 2 + rng() % 9, rng, 25);
    ++r.cases;

    auto ps = t.positions();
    ++r.checks;
    if (ps.size() != t.size())
      r.fail(describe(sys, t, "position count differs from size"));

    const Position &p = ps[rng() % ps.size()];
    ++r.checks;
    if (t.replace(p, t.subterm(p)) != t)
      r.fail(describe(sys, t, "replace(subterm) changed the term"));
    Term fresh = random_term(sys, pools, sys.sort_of(t.subterm(p)),
                             1 + rng() % 4, rng, 25);
    ++r.checks;
    if (t.replace(p, fresh).subterm(p) != fresh)
      r.fail(describe(sys, t, "subterm after replace is not the filler"));

    // Parallel replacement at a random incomparable selection agrees
    // with doing the replacements one at a time.
    std::vector<Position> chosen;
    for (const Position &q : ps) {
      bool comparable = false;
      for (const Position &prev : chosen)
        comparable |= position_prefix(prev, q) || position_prefix(q, prev);
      if (!comparable && rng() % 2)
        chosen.push_back(q);
    }
    std::vector<std::pair<Position, Term>> subs;
    Term seq = t;
    for (const Position &q : chosen) {
      Term filler = random_term(sys, pools, sys.sort_of(t.subterm(q)),
                                1 + rng() % 3, rng, 25);
      subs.emplace_back(q, filler);
      seq = seq.replace(q, filler); // incomparable, so order is irrelevant
    }
    ++r.checks;
    if (replace_parallel(t, subs) != seq)
      r.fail(describe(sys, t, "parallel and sequential replacement differ"));
  }
  return r;
}

// --------------------------------------------------------------- suite 2 ---

SuiteResult prop_mgu_soundness_generality(std::uint32_t seed,
                                          std::size_t min_cases) {
  SuiteResult r;
  r.name = "unifier soundness and generality";
  std::mt19937 rng(seed);
  const auto &systems = bundled_systems();
  while (r.cases < min_cases) {
    const System &sys = systems[rng() % systems.size()];
    SigPools pools = make_pools(sys);
    const std::string &sort = sys.sorts[rng() % sys.sorts.size()];
    ++r.cases;

    // Generality: abstract a common ground instance twice with disjoint
    // linear variables; the unifier must exist and subsume the instance.
    Term ground = random_term(sys, pools, sort, 3 + rng() % 7, rng, 0);
    auto abstract_once = [&](const std::string &prefix) {
      Term out = ground;
      std::vector<Position> taken;
      int counter = 0;
      for (const Position &p : ground.positions()) {
        if (p.empty() || rng() % 4 != 0)
          continue;
        bool below = false;
        for (const Position &q : taken)
          below = below || position_prefix(q, p);
        if (below)
          continue;
        Term sub = ground.subterm(p);
        bool use_cvar = sys.is_pure_cons(sub) && rng() % 2;
        out = out.replace(p, Term::var(prefix + std::to_string(++counter),
                                       use_cvar ? VarKind::Cons : VarKind::Gen,
                                       sys.sort_of(sub)));
        taken.push_back(p);
      }
      return out;
    };
    Term a = abstract_once("_pa");
    Term b = abstract_once("_pb");
    auto sigma = mgu(sys, {{a, b}});
    ++r.checks;
    if (!sigma) {
      r.fail(describe(sys, ground,
                      "abstractions failed to unify: " + a.str() + " vs " +
                          b.str()));
      continue;
    }
    Term ua = apply_substitution(a, *sigma);
    Term ub = apply_substitution(b, *sigma);
    ++r.checks;
    if (ua != ub)
      r.fail(describe(sys, ground, "unifier does not equalize the pair"));
    ++r.checks;
    if (!match_term(sys, ua, ground))
      r.fail(describe(sys, ground,
                      "common instance does not factor through the unifier"));

    // Soundness on arbitrary pairs: whenever a unifier comes back it
    // really unifies, idempotently.
    Term t0 = random_term(sys, pools, sort, 2 + rng() % 6, rng, 40);
    Term t1 = random_term(sys, pools, sort, 2 + rng() % 6, rng, 40);
    if (auto s2 = mgu(sys, {{t0, t1}})) {
      Term u0 = apply_substitution(t0, *s2);
      Term u1 = apply_substitution(t1, *s2);
      ++r.checks;
      if (u0 != u1)
        r.fail(describe(sys, t0, "random-pair unifier unsound vs " + t1.str()));
      ++r.checks;
      if (apply_substitution(u0, *s2) != u0)
        r.fail(describe(sys, t0, "unifier is not idempotent"));
    }
  }
  return r;
}

// --------------------------------------------------------------- suite 3 ---

SuiteResult prop_depth_monotonicity(std::uint32_t seed,
                                    std::size_t min_cases) {
  SuiteResult r;
  r.name = "one-step tables grow monotonically with depth";
  std::mt19937 rng(seed);
  auto depths = depth_pool(); // ascending
  const auto &ctxs = shared_engines();
  while (r.cases < min_cases) {
    for (const Ctx &c : ctxs) {
      const auto &universe = c.engine->universe();
      for (int pick = 0; pick < 8 && r.cases < min_cases; ++pick) {
        const Term &t = universe[rng() % universe.size()];
        std::size_t i = rng() % depths.size();
        std::size_t j = rng() % depths.size();
        if (i > j)
          std::swap(i, j);
        ++r.cases;
        auto low = c.engine->one_step(t, depths[i]).first;
        auto high = c.engine->one_step(t, depths[j]).first;
        for (const Edge &e : low) {
          ++r.checks;
          if (!has_edge(high, e.pos, e.rule, e.to))
            r.fail(describe(c.sys, t,
                            "edge at " + depths[i].str() + " missing at " +
                                depths[j].str()));
        }
      }
    }
  }
  return r;
}

// --------------------------------------------------------------- suite 4 ---

SuiteResult prop_constructor_keeping(std::uint32_t seed,
                                     std::size_t min_cases) {
  SuiteResult r;
  r.name = "constructor terms only step to constructor terms";
  std::mt19937 rng(seed);
  auto depths = depth_pool();
  const auto &ctxs = shared_engines();
  std::vector<std::pair<const Ctx *, const Term *>> pool;
  for (const Ctx &c : ctxs)
    for (const Term &t : c.engine->universe())
      if (c.sys.is_cons_term(t))
        pool.emplace_back(&c, &t);
  while (r.cases < min_cases) {
    const auto &[c, t] = pool[rng() % pool.size()];
    DepthIndex beta = depths[rng() % depths.size()];
    ++r.cases;
    auto edges = c->engine->one_step(*t, beta).first;
    bool fin_stable = c->engine->strata().fin_stable;
    auto at_omega = c->engine->one_step(*t, DepthIndex::omega()).first;
    for (const Edge &e : edges) {
      ++r.checks;
      if (!c->sys.is_cons_term(e.to))
        r.fail(describe(c->sys, *t,
                        "left the constructor fragment: " + e.to.str()));
      // Constructor steps never need the full phase, so once the
      // constructor tower has stabilized they all sit inside it.
      if (fin_stable) {
        ++r.checks;
        if (!has_edge(at_omega, e.pos, e.rule, e.to))
          r.fail(describe(c->sys, *t,
                          "constructor step at " + beta.str() +
                              " is not derivable at w"));
      }
    }
  }
  return r;
}

// --------------------------------------------------------------- suite 5 ---

SuiteResult prop_substitution_stability(std::uint32_t seed,
                                        std::size_t min_cases) {
  SuiteResult r;
  r.name = "recorded steps are stable under instantiation";
  std::mt19937 rng(seed);
  const auto &systems = bundled_systems();

  std::size_t eligible = 0;
  for (const System &sys : systems)
    if (!sys.var_decls.empty())
      ++eligible;
  std::size_t per_system = min_cases / (eligible * 2) + 2;

  for (const System &sys : systems) {
    SigPools pools = make_pools(sys);
    if (pools.vars.empty())
      continue;

    struct Pair {
      Term open;
      Term instance;
      Substitution sigma;
    };
    std::vector<Pair> pairs;
    std::vector<Term> seeds;
    for (std::size_t k = 0; k < per_system; ++k) {
      const std::string &sort = sys.sorts[rng() % sys.sorts.size()];
      Term t = random_term(sys, pools, sort, 2 + rng() % 6, rng, 45);
      Substitution sigma;
      for (const Term &v : t.vars()) {
        auto values = v.kind() == VarKind::Cons
                          ? sys.pure_cons_ground_terms(v.sort(), 2)
                          : sys.ground_terms(v.sort(), 2);
        if (values.empty())
          values = sys.pure_cons_ground_terms(v.sort(), 4);
        sigma.bind(v.name(), values[rng() % values.size()]);
      }
      Term instance = apply_substitution(t, sigma);
      seeds.push_back(t);
      seeds.push_back(instance);
      pairs.push_back({t, instance, sigma});
    }
    Engine engine(sys, seeds, batch_budget());

    for (const Pair &p : pairs) {
      for (DepthIndex beta :
           {DepthIndex::omega(), DepthIndex::omega_omega()}) {
        ++r.cases;
        auto open_edges = engine.one_step(p.open, beta).first;
        auto inst_edges = engine.one_step(p.instance, beta).first;
        for (const Edge &e : open_edges) {
          Term expected = apply_substitution(e.to, p.sigma);
          if (!engine.in_universe(expected))
            continue; // reduct fell to a budget cap; nothing to compare
          ++r.checks;
          if (!has_edge(inst_edges, e.pos, e.rule, expected))
            r.fail(describe(sys, p.open,
                            "step to " + e.to.str() +
                                " has no instance step on " +
                                p.instance.str()));
        }
      }
    }
  }
  return r;
}

// --------------------------------------------------------------- suite 6 ---

SuiteResult prop_replacement_monotonicity(std::uint32_t seed,
                                          std::size_t min_cases) {
  SuiteResult r;
  r.name = "steps lift from subterms into surrounding contexts";
  std::mt19937 rng(seed);
  const auto &systems = bundled_systems();

  std::size_t per_system = min_cases / (systems.size() * 2) + 2;
  for (const System &sys : systems) {
    SigPools pools = make_pools(sys);

    struct Framed {
      Term filler;
      Term framed;
      Position pos;
    };
    std::vector<Framed> batch;
    std::vector<Term> seeds;
    for (std::size_t k = 0; k < per_system; ++k) {
      const std::string &sort = sys.sorts[rng() % sys.sorts.size()];
      Term u = random_term(sys, pools, sort, 3 + rng() % 6, rng, 0);
      auto ps = u.positions();
      Position p = ps[rng() % ps.size()];
      Term filler = random_term(sys, pools, sys.sort_of(u.subterm(p)),
                                2 + rng() % 5, rng, 0);
      Term framed = u.replace(p, filler);
      seeds.push_back(filler);
      seeds.push_back(framed);
      batch.push_back({filler, framed, p});
    }
    Engine engine(sys, seeds, batch_budget());

    for (const Framed &c : batch) {
      for (DepthIndex beta :
           {DepthIndex::omega(), DepthIndex::omega_omega()}) {
        ++r.cases;
        auto inner = engine.one_step(c.filler, beta).first;
        auto outer = engine.one_step(c.framed, beta).first;
        for (const Edge &e : inner) {
          Term expected = c.framed.replace(c.pos, e.to);
          if (!engine.in_universe(expected))
            continue; // the framed reduct outgrew a cap
          Position shifted = c.pos;
          shifted.insert(shifted.end(), e.pos.begin(), e.pos.end());
          ++r.checks;
          if (!has_edge(outer, shifted, e.rule, expected))
            r.fail(describe(sys, c.filler,
                            "step to " + e.to.str() + " does not lift to " +
                                c.framed.str() + " at " +
                                position_str(c.pos)));
        }
      }
    }
  }
  return r;
}

// --------------------------------------------------------------- suite 7 ---

SuiteResult prop_reduction_sandwich(std::uint32_t seed,
                                    std::size_t min_cases) {
  SuiteResult r;
  r.name = "single steps within parallel steps within reachability";
  std::mt19937 rng(seed);
  const auto &ctxs = shared_engines();
  while (r.cases < min_cases) {
    const Ctx &c = ctxs[rng() % ctxs.size()];
    const auto &universe = c.engine->universe();
    const Term &t = universe[rng() % universe.size()];
    ++r.cases;

    auto par = c.engine->parallel_reducts(t);
    if (par.size() >= 4096)
      continue; // truncated enumeration proves nothing
    std::unordered_set<Term, TermHash> par_set(par.begin(), par.end());

    ++r.checks;
    if (!par_set.count(t))
      r.fail(describe(c.sys, t, "parallel reducts miss the empty step"));

    auto edges = c.engine->one_step(t).first;
    for (const Edge &e : edges) {
      ++r.checks;
      if (!par_set.count(e.to))
        r.fail(describe(c.sys, t,
                        "single step to " + e.to.str() + " not parallel"));
    }

    ReachSet rs = c.engine->reach(t);
    if (!rs.complete)
      continue; // a capped closure may legitimately miss reducts
    for (const Term &v : par) {
      ++r.checks;
      if (!rs.set.count(v))
        r.fail(describe(c.sys, t,
                        "parallel reduct " + v.str() + " not reachable"));
    }
  }
  return r;
}

// --------------------------------------------------------------- suite 8 ---

namespace {

/// Fixed tiny signature for the random-system suite: one sort, two
/// constant constructors, one unary constructor, defined f/1 and g/2.
System random_system(std::mt19937 &rng) {
  System sys;
  sys.id = "random";
  sys.add_sort("s");
  sys.add_symbol("a", {}, "s", true);
  sys.add_symbol("b", {}, "s", true);
  sys.add_symbol("c", {"s"}, "s", true);
  sys.add_symbol("f", {"s"}, "s", false);
  sys.add_symbol("g", {"s", "s"}, "s", false);
  sys.add_var("x", VarKind::Cons, "s");
  sys.add_var("y", VarKind::Cons, "s");
  sys.add_var("X", VarKind::Gen, "s");
  sys.add_var("Y", VarKind::Gen, "s");

  SigPools pools = make_pools(sys);
  for (int k = 0; k < 2; ++k) {
    // Defined root, variable-rich arguments so overlaps are frequent.
    bool unary = rng() % 2 == 0;
    std::vector<Term> args;
    for (int i = 0; i < (unary ? 1 : 2); ++i)
      args.push_back(random_term(sys, pools, "s", 1 + rng() % 3, rng, 60));
    Term lhs =
        unary ? Term::app("f", "s", {args[0]}) : Term::app("g", "s", args);
    std::vector<Term> lhs_vars = lhs.vars();
    Term rhs;
    if (!lhs_vars.empty() && rng() % 3 != 0) {
      rhs = lhs_vars[rng() % lhs_vars.size()];
      if (rng() % 2)
        rhs = Term::app("c", "s", {rhs});
      if (rng() % 3 == 0)
        rhs = Term::app("f", "s", {rhs});
    } else {
      rhs = random_term(sys, pools, "s", 1 + rng() % 3, rng, 0);
    }
    sys.add_rule(lhs, rhs);
  }
  return sys;
}

/// All redexes of t: every rule matching at every position.
std::vector<std::tuple<Position, int, Term>> redexes(const System &sys,
                                                     const Term &t) {
  std::vector<std::tuple<Position, int, Term>> out;
  for (const Position &p : t.positions()) {
    Term sub = t.subterm(p);
    for (std::size_t i = 0; i < sys.rules.size(); ++i) {
      if (auto m = match_term(sys, sys.rules[i].lhs, sub))
        out.emplace_back(
            p, static_cast<int>(i),
            t.replace(p, apply_substitution(sys.rules[i].rhs, *m)));
    }
  }
  return out;
}

/// True when `rel` addresses a non-variable node of the pattern.
bool non_variable_position(const Term &pattern, const Position &rel) {
  Term cur = pattern;
  for (int step : rel) {
    if (cur.is_var())
      return false;
    if (step < 1 || static_cast<std::size_t>(step) > cur.args().size())
      return false;
    cur = cur.args()[static_cast<std::size_t>(step) - 1];
  }
  return !cur.is_var();
}

} // namespace

SuiteResult prop_peak_completeness(std::uint32_t seed, std::size_t min_cases) {
  SuiteResult r;
  r.name = "peaks cover every ground overlap divergence";
  std::mt19937 rng(seed);
  while (r.cases < min_cases) {
    System sys = random_system(rng);
    if (has_errors(validate(sys)))
      continue; // rare degenerate draw
    ++r.cases;
    auto peaks = critical_peaks(sys);

    for (const Term &t : sys.ground_terms("s", 6)) {
      auto rx = redexes(sys, t);
      for (const auto &[p, i, u] : rx) {
        for (const auto &[q, j, v] : rx) {
          if (!position_prefix(q, p))
            continue;
          if (p == q && i == j)
            continue; // same rule at the same redex, same reduct
          Position rel(p.begin() + static_cast<long>(q.size()), p.end());
          if (!non_variable_position(sys.rules[static_cast<std::size_t>(j)].lhs,
                                     rel))
            continue; // variable overlap is never critical
          if (u == v)
            continue; // a trivial divergence may come from a dropped peak
          ++r.checks;

          bool covered = false;
          for (const CriticalPeak &pk : peaks) {
            if (pk.rule0 != i || pk.rule1 != j || pk.pos != rel)
              continue;
            auto phi = match_term(sys, pk.peak, t.subterm(q));
            if (!phi)
              continue;
            Term want_u = t.replace(q, apply_substitution(pk.t0, *phi));
            Term want_v = t.replace(q, apply_substitution(pk.t1, *phi));
            if (want_u == u && want_v == v) {
              covered = true;
              break;
            }
          }
          if (!covered)
            r.fail("system {" + sys.rules[0].lhs.str() + " = " +
                   sys.rules[0].rhs.str() + "; " + sys.rules[1].lhs.str() +
                   " = " + sys.rules[1].rhs.str() + "}: divergence of " +
                   t.str() + " at " + position_str(p) + " / " +
                   position_str(q) + " uncovered");
        }
      }
    }
  }
  return r;
}

std::vector<SuiteResult> run_property_suites(std::uint32_t seed,
                                             std::size_t min_cases) {
  return {
      prop_position_round_trips(seed ^ 0x1u, min_cases),
      prop_mgu_soundness_generality(seed ^ 0x2u, min_cases),
      prop_depth_monotonicity(seed ^ 0x3u, min_cases),
      prop_constructor_keeping(seed ^ 0x4u, min_cases),
      prop_substitution_stability(seed ^ 0x5u, min_cases),
      prop_replacement_monotonicity(seed ^ 0x6u, min_cases),
      prop_reduction_sandwich(seed ^ 0x7u, min_cases),
      prop_peak_completeness(seed ^ 0x8u, min_cases),
    };
}

} // namespace properties
