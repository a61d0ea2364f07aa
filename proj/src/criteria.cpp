#include "crsa/criteria.hpp"

#include <algorithm>
#include <set>

namespace crsa {

std::pair<TriBool, std::string>
check_constructor_confluence(const System &sys, const Engine &engine,
                             bool assumed) {
  if (assumed)
    return {TriBool::Yes, "assumed"};
  System sub = constructor_subsystem(sys);
  if (sub.rules.empty())
    return {TriBool::Yes, "no constructor rules"};
  auto [ll, bad] = left_linearity(sub);
  (void)bad;
  if (!ll)
    return {TriBool::Unknown, "subsystem not left-linear"};
  NormalityReport rep = normality(sub, engine);
  if (rep.summary != "normal")
    return {TriBool::Unknown, "subsystem not normal (" + rep.summary + ")"};
  std::vector<CriticalPeak> pks = critical_peaks(sub);
  for (const CriticalPeak &pk : pks)
    if (peak_complementary(sub, pk, engine, false) != TriBool::Yes)
      return {TriBool::Unknown, "subsystem peak not complementary"};
  return {TriBool::Yes, pks.empty() ? "no critical peaks in subsystem"
                                    : "all subsystem peaks complementary"};
}

std::pair<bool, std::vector<EqFailure>>
check_eq_requirement(const System &sys, const Engine &engine,
                     bool implicit_def) {
  std::vector<EqFailure> failures;
  for (std::size_t i = 0; i < sys.rules.size(); ++i) {
    const Rule &r = sys.rules[i];
    for (const Literal &c : r.conds) {
      if (c.kind != LiteralKind::Eq)
        continue;
      const Term &u = c.lhs;
      const Term &v = c.rhs;
      bool ok = false;
      for (const Term *s : {&u, &v}) {
        for (const Literal &d : r.conds)
          if (d.kind == LiteralKind::Def && d.lhs == *s)
            ok = true;
        if (s->is_ground() && engine.irreducible(*s) == TriBool::Yes)
          ok = true;
      }
      if (implicit_def && sys.is_pure_cons(u) && sys.is_pure_cons(v))
        ok = true;
      if (!ok)
        failures.push_back(
            {static_cast<int>(i), u.str() + " == " + v.str()});
    }
  }
  return {failures.empty(), failures};
}

namespace {

/// Variables of the peak in name order, for deterministic instantiation.
std::vector<Term> peak_vars(const CriticalPeak &pk) {
  std::vector<Term> vs;
  auto walk = [&vs](const Term &t) {
    for (const Term &v : t.vars()) {
      bool seen = false;
      for (const Term &w : vs)
        if (w == v)
          seen = true;
      if (!seen)
        vs.push_back(v);
    }
  };
  walk(pk.peak);
  walk(pk.t0);
  walk(pk.t1);
  for (const std::vector<Literal> *cs : {&pk.c0, &pk.c1})
    for (const Literal &c : *cs)
      for (const Term &t : c.terms())
        walk(t);
  std::sort(vs.begin(), vs.end(),
            [](const Term &a, const Term &b) { return a.name() < b.name(); });
  return vs;
}

/// Row-major product over the pools (last pool varies fastest), calling
/// the consumer with each assignment; a false return stops early.
template <typename F>
void for_each_assignment(const std::vector<Term> &vs,
                         const std::vector<std::vector<Term>> &pools, F &&f) {
  for (const auto &pool : pools)
    if (pool.empty())
      return;
  if (vs.empty()) {
    f(Substitution{});
    return;
  }
  std::vector<std::size_t> idx(pools.size(), 0);
  while (true) {
    Substitution phi;
    for (std::size_t k = 0; k < vs.size(); ++k)
      phi.bind(vs[k].name(), pools[k][idx[k]]);
    if (!f(phi))
      return;
    std::size_t k = pools.size();
    bool done = true;
    while (k > 0) {
      --k;
      if (++idx[k] < pools[k].size()) {
        done = false;
        break;
      }
      idx[k] = 0;
    }
    if (done)
      return;
  }
}

struct FullInstance {
  std::map<std::string, std::string> phi_canon;
  std::string status;
  Term t0;
  Term t1;
  Substitution phi;
};

std::vector<FullInstance> survey_peak_full(const System &sys,
                                           const Engine &engine,
                                           const CriticalPeak &pk,
                                           const CanonicalPeak &canon,
                                           std::size_t k) {
  std::vector<Term> vs = peak_vars(pk);
  std::vector<std::vector<Term>> pools;
  for (const Term &v : vs) {
    std::vector<Term> pool;
    for (const Term &t : sys.pure_cons_ground_terms(v.sort(), k))
      if (engine.irreducible(t) == TriBool::Yes)
        pool.push_back(t);
    pools.push_back(std::move(pool));
  }

  std::vector<FullInstance> instances;
  for_each_assignment(vs, pools, [&](const Substitution &phi) {
    if (!pk.pos.empty()) {
      // Inner overlaps only count when the outer redex context is in
      // normal form, so the outer lhs variable images must be
      // irreducible.
      for (const Term &x : pk.outer_lhs_vars) {
        Term inst =
            apply_substitution(apply_substitution(x, pk.sigma), phi);
        if (engine.irreducible(inst) != TriBool::Yes)
          return true;
      }
    }
    std::vector<Literal> conds;
    for (const std::vector<Literal> *cs : {&pk.c0, &pk.c1})
      for (const Literal &c : *cs)
        conds.push_back(apply_substitution(c, phi));
    TriBool st = engine.fulfilled(conds, Substitution{});
    Term t0 = apply_substitution(pk.t0, phi);
    Term t1 = apply_substitution(pk.t1, phi);
    std::string status;
    if (st == TriBool::No)
      status = "ConditionInfeasible";
    else if (st == TriBool::Unknown)
      status = "Unknown";
    else {
      TriBool j = engine.joinable(t0, t1);
      status = j == TriBool::Yes    ? "Joinable"
               : j == TriBool::No   ? "NotJoinable"
                                    : "Unknown";
    }
    std::map<std::string, std::string> phi_canon;
    for (const Term &v : vs) {
      const Term *cv = canon.ren.find(v.name());
      phi_canon[cv ? cv->name() : v.name()] = phi.find(v.name())->str();
    }
    instances.push_back({std::move(phi_canon), std::move(status), std::move(t0),
                         std::move(t1), phi});
    return true;
  });
  return instances;
}

std::string survey_summary(const std::vector<FullInstance> &instances) {
  bool any_nj = false, any_unknown = false;
  for (const FullInstance &i : instances) {
    if (i.status == "NotJoinable")
      any_nj = true;
    if (i.status == "Unknown")
      any_unknown = true;
  }
  if (any_nj)
    return "NOT-JOINABLE-instance-found";
  if (any_unknown)
    return "some-unknown";
  return "all-instances-ok";
}

std::vector<WitnessStep> path_from_parents(const Engine &engine,
                                           const ReachSet &r, const Term &seed,
                                           const Term &target) {
  std::vector<std::pair<Term, Edge>> chain;
  Term cur = target;
  while (!(cur == seed)) {
    const auto &pe = r.parents.at(cur);
    chain.push_back(pe);
    cur = pe.first;
  }
  std::reverse(chain.begin(), chain.end());
  std::vector<WitnessStep> steps;
  for (const auto &[src, edge] : chain)
    steps.push_back({src.str(), position_str(edge.pos), edge.rule,
                     edge.to.str(), engine.stamp_of(src, edge)});
  return steps;
}

std::vector<WitnessStep>
derivation_steps(const Engine &engine, const std::vector<Term> &terms,
                 const std::vector<std::pair<Position, int>> &moves) {
  std::vector<WitnessStep> steps;
  for (std::size_t i = 0; i + 1 < terms.size() && i < moves.size(); ++i) {
    const Term &src = terms[i];
    const Term &dst = terms[i + 1];
    const auto &[p, ridx] = moves[i];
    auto [edges, _c] = engine.one_step(src);
    std::string stamp = "?";
    for (const Edge &e : edges)
      if (e.pos == p && e.rule == ridx && e.to == dst)
        stamp = engine.stamp_of(src, e);
    steps.push_back({src.str(), position_str(p), ridx, dst.str(), stamp});
  }
  return steps;
}

Witness mk_witness(const Engine &engine, const Term &seed, const Term &e0,
                   const Term &e1, std::vector<WitnessStep> d0,
                   std::vector<WitnessStep> d1, const std::string &route) {
  ReachSet r0 = engine.reach(e0);
  ReachSet r1 = engine.reach(e1);
  Witness w;
  w.route = route;
  w.seed = seed.str();
  w.endpoint0 = e0.str();
  w.endpoint1 = e1.str();
  w.derivation0 = std::move(d0);
  w.derivation1 = std::move(d1);
  for (const Term &m : r0.members)
    w.nonjoin0.push_back(m.str());
  for (const Term &m : r1.members)
    w.nonjoin1.push_back(m.str());
  std::sort(w.nonjoin0.begin(), w.nonjoin0.end());
  std::sort(w.nonjoin1.begin(), w.nonjoin1.end());
  w.seed_term = seed;
  w.e0 = e0;
  w.e1 = e1;
  return w;
}

} // namespace

PeakSurvey bounded_joinability_survey(const System &sys, const Engine &engine,
                                      const CriticalPeak &pk,
                                      const CanonicalPeak &canon,
                                      std::size_t inst_size_bound) {
  std::vector<FullInstance> full =
      survey_peak_full(sys, engine, pk, canon, inst_size_bound);
  PeakSurvey out;
  out.summary = survey_summary(full);
  for (FullInstance &i : full)
    out.instances.push_back({std::move(i.phi_canon), std::move(i.status)});
  return out;
}

std::optional<Witness>
search_counterexample(const System &sys, const Engine &engine,
                      const std::vector<CriticalPeak> &peaks,
                      const std::vector<CanonicalPeak> &canons,
                      std::size_t k) {
  for (std::size_t pi = 0; pi < peaks.size(); ++pi) {
    const CriticalPeak &pk = peaks[pi];
    for (const FullInstance &inst :
         survey_peak_full(sys, engine, pk, canons[pi], k)) {
      if (inst.status != "NotJoinable")
        continue;
      Term seed = apply_substitution(pk.peak, inst.phi);
      std::vector<WitnessStep> d0 = derivation_steps(
          engine, {seed, inst.t0}, {{pk.pos, pk.rule0}});
      std::vector<WitnessStep> d1 =
          derivation_steps(engine, {seed, inst.t1}, {{Position{}, pk.rule1}});
      return mk_witness(engine, seed, inst.t0, inst.t1, std::move(d0),
                        std::move(d1), "peak-instance");
    }
  }

  std::vector<std::string> sorted_sorts(sys.sorts);
  std::sort(sorted_sorts.begin(), sorted_sorts.end());
  std::vector<Term> seeds;
  for (const std::string &sort : sorted_sorts)
    for (const Term &t : sys.ground_terms(sort, k))
      seeds.push_back(t);
  std::sort(seeds.begin(), seeds.end(), term_size_str_less);

  for (const Term &seed : seeds) {
    ReachSet r = engine.reach(seed);
    const std::vector<Term> &members = r.members;
    std::vector<bool> complete;
    complete.reserve(members.size());
    for (const Term &m : members)
      complete.push_back(engine.reach(m).complete);
    for (std::size_t i = 0; i < members.size(); ++i) {
      if (!complete[i])
        continue;
      ReachSet ri = engine.reach(members[i]);
      for (std::size_t j = i + 1; j < members.size(); ++j) {
        if (!complete[j])
          continue;
        ReachSet rj = engine.reach(members[j]);
        bool disjoint = true;
        for (const Term &m : ri.members)
          if (rj.set.count(m))
            disjoint = false;
        if (!disjoint)
          continue;
        std::vector<WitnessStep> d0 =
            path_from_parents(engine, r, seed, members[i]);
        std::vector<WitnessStep> d1 =
            path_from_parents(engine, r, seed, members[j]);
        return mk_witness(engine, seed, members[i], members[j], std::move(d0),
                          std::move(d1), "seed-divergence");
      }
    }
  }
  return std::nullopt;
}

std::optional<Witness> search_counterexample(const System &sys,
                                             const std::vector<Term> &seeds,
                                             const Budget &budget,
                                             std::size_t k) {
  std::vector<CriticalPeak> peaks = critical_peaks(sys);
  std::vector<CanonicalPeak> canons;
  for (const CriticalPeak &pk : peaks)
    canons.push_back(canonical_peak(pk));

  std::vector<Term> engine_seeds = seeds;
  for (const Term &t : pipeline_seeds(sys, peaks))
    engine_seeds.push_back(t);
  Engine engine(sys, engine_seeds, budget);

  if (!seeds.empty()) {
    // Scan the caller's seeds ahead of the generated enumeration.
    for (const Term &seed : seeds) {
      ReachSet r = engine.reach(seed);
      std::vector<bool> complete;
      for (const Term &m : r.members)
        complete.push_back(engine.reach(m).complete);
      for (std::size_t i = 0; i < r.members.size(); ++i) {
        if (!complete[i])
          continue;
        ReachSet ri = engine.reach(r.members[i]);
        for (std::size_t j = i + 1; j < r.members.size(); ++j) {
          if (!complete[j])
            continue;
          ReachSet rj = engine.reach(r.members[j]);
          bool disjoint = true;
          for (const Term &m : ri.members)
            if (rj.set.count(m))
              disjoint = false;
          if (!disjoint)
            continue;
          return mk_witness(engine, seed, r.members[i], r.members[j],
                            path_from_parents(engine, r, seed, r.members[i]),
                            path_from_parents(engine, r, seed, r.members[j]),
                            "seed-divergence");
        }
      }
    }
  }
  return search_counterexample(sys, engine, peaks, canons, k);
}

bool verify_witness(const System &sys, const Witness &w,
                    const Budget &budget) {
  Engine eng(sys, {w.seed_term, w.e0, w.e1}, budget);
  if (eng.joinable(w.e0, w.e1) != TriBool::No)
    return false;
  auto replay = [&](const std::vector<WitnessStep> &steps,
                    const Term &target) {
    Term cur = w.seed_term;
    for (const WitnessStep &s : steps) {
      if (cur.str() != s.from)
        return false;
      auto [edges, _c] = eng.one_step(cur);
      bool found = false;
      for (const Edge &e : edges)
        if (position_str(e.pos) == s.pos && e.rule == s.rule &&
            e.to.str() == s.to) {
          cur = e.to;
          found = true;
          break;
        }
      if (!found)
        return false;
    }
    return cur == target;
  };
  return replay(w.derivation0, w.e0) && replay(w.derivation1, w.e1);
}

std::vector<Term> pipeline_seeds(const System &sys,
                                 const std::vector<CriticalPeak> &peaks) {
  std::vector<Term> seeds;
  std::vector<std::string> sorted_sorts(sys.sorts);
  std::sort(sorted_sorts.begin(), sorted_sorts.end());
  for (const std::string &sort : sorted_sorts)
    for (const Term &t : sys.ground_terms(sort, 3))
      seeds.push_back(t);
  for (const CriticalPeak &pk : peaks)
    for (const std::vector<Literal> *cs : {&pk.c0, &pk.c1})
      for (const Literal &c : *cs)
        for (const Term &t : c.terms())
          if (t.is_ground())
            seeds.push_back(t);
  // Survey instance terms: every assignment of pure constructor ground
  // terms to the peak variables, unfiltered; the survey itself filters
  // by irreducibility later.
  for (const CriticalPeak &pk : peaks) {
    std::vector<Term> vs = peak_vars(pk);
    std::vector<std::vector<Term>> pools;
    for (const Term &v : vs)
      pools.push_back(sys.pure_cons_ground_terms(v.sort(), 3));
    for_each_assignment(vs, pools, [&](const Substitution &phi) {
      seeds.push_back(apply_substitution(pk.peak, phi));
      seeds.push_back(apply_substitution(pk.t0, phi));
      seeds.push_back(apply_substitution(pk.t1, phi));
      for (const std::vector<Literal> *cs : {&pk.c0, &pk.c1})
        for (const Literal &c : *cs)
          for (const Term &t : c.terms())
            seeds.push_back(apply_substitution(t, phi));
      for (const Term &x : pk.outer_lhs_vars)
        seeds.push_back(
            apply_substitution(apply_substitution(x, pk.sigma), phi));
      return true;
    });
  }
  for (const Rule &r : sys.rules)
    for (const Literal &c : r.conds)
      for (const Term &t : c.terms())
        if (t.is_ground())
          seeds.push_back(t);
  return seeds;
}

namespace {

std::string join_ints(const std::vector<int> &v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i)
      out += ",";
    out += std::to_string(v[i]);
  }
  return out;
}

} // namespace

PipelineResult run_pipeline(const System &sys, const Assumptions &assumptions,
                            const Budget &budget,
                            const std::vector<Term> &extra_seeds,
                            std::size_t inst_size_bound) {
  PipelineResult out;
  out.diagnostics = validate(sys);
  if (has_errors(out.diagnostics)) {
    out.analysis.verdict = "error";
    out.analysis.exit_code = 3;
    return out;
  }

  out.peaks = critical_peaks(sys);
  for (const CriticalPeak &pk : out.peaks)
    out.canons.push_back(canonical_peak(pk));

  std::vector<Term> seeds = extra_seeds;
  for (const Term &t : pipeline_seeds(sys, out.peaks))
    seeds.push_back(t);
  Engine engine(sys, seeds, budget);

  for (const CriticalPeak &pk : out.peaks) {
    out.complementary.push_back(peak_complementary(sys, pk, engine, false));
    out.weakly.push_back(peak_complementary(sys, pk, engine, true));
  }

  AnalysisResult &a = out.analysis;
  bool implicit = assumptions.cvar_equations.value_or(sys.instantiation !=
                                                      InstSet::All);
  std::tie(a.left_linear, a.non_left_linear) = left_linearity(sys);
  a.conservative_constructors = has_conservative_constructors(sys);
  a.normality = normality(sys, engine);
  std::tie(a.constructor_confluence, a.constructor_confluence_why) =
      check_constructor_confluence(sys, engine,
                                   assumptions.constructor_confluent);
  std::tie(a.eq_requirement_ok, a.eq_failures) =
      check_eq_requirement(sys, engine, implicit);

  auto hypo = [](std::string name, TriBool status, std::string detail = "") {
    return Hypothesis{std::move(name), status, std::move(detail)};
  };

  a.hypotheses_complementary.push_back(
      hypo("left-linear", a.left_linear ? TriBool::Yes : TriBool::No,
           a.left_linear ? "" : "rules " + join_ints(a.non_left_linear)));
  a.hypotheses_complementary.push_back(
      hypo("conservative-constructors",
           a.conservative_constructors ? TriBool::Yes : TriBool::No));
  a.hypotheses_complementary.push_back(hypo(
      "equation-definedness", a.eq_requirement_ok ? TriBool::Yes : TriBool::No,
      a.eq_requirement_ok ? ""
                          : "{\"rule\": " +
                                std::to_string(a.eq_failures[0].rule) +
                                ", \"literal\": \"" +
                                a.eq_failures[0].literal + "\"}"));
  a.hypotheses_complementary.push_back(hypo("constructor-level-confluence",
                                            a.constructor_confluence,
                                            a.constructor_confluence_why));
  std::vector<int> bad_peaks;
  for (std::size_t i = 0; i < out.complementary.size(); ++i)
    if (out.complementary[i] != TriBool::Yes)
      bad_peaks.push_back(static_cast<int>(i));
  a.hypotheses_complementary.push_back(
      hypo("peaks-complementary", bad_peaks.empty() ? TriBool::Yes : TriBool::No,
           bad_peaks.empty() ? "" : "peaks " + join_ints(bad_peaks)));
  bool comp_ok = true;
  for (const Hypothesis &h : a.hypotheses_complementary)
    if (h.status != TriBool::Yes)
      comp_ok = false;

  bool gen_vars_ok = true;
  for (const Rule &r : sys.rules)
    for (const Literal &c : r.conds)
      for (const Term &t : c.terms())
        for (const Term &v : t.vars())
          if (v.kind() == VarKind::Gen)
            gen_vars_ok = false;
  std::vector<int> weak_bad;
  for (std::size_t i = 0; i < out.peaks.size(); ++i) {
    bool form11 = out.peaks[i].lam0 == 1 && out.peaks[i].lam1 == 1;
    TriBool need = form11 ? out.weakly[i] : out.complementary[i];
    if (need != TriBool::Yes)
      weak_bad.push_back(static_cast<int>(i));
  }
  a.hypotheses_weakly.push_back(a.hypotheses_complementary[0]);
  a.hypotheses_weakly.push_back(
      hypo("constructor-variable-conditions",
           gen_vars_ok ? TriBool::Yes : TriBool::No,
           gen_vars_ok ? "" : "a condition uses a general variable"));
  a.hypotheses_weakly.push_back(a.hypotheses_complementary[2]);
  a.hypotheses_weakly.push_back(a.hypotheses_complementary[3]);
  a.hypotheses_weakly.push_back(
      hypo("peaks-weakly-complementary",
           weak_bad.empty() ? TriBool::Yes : TriBool::No,
           weak_bad.empty() ? "" : "peaks " + join_ints(weak_bad)));
  bool weak_ok = true;
  for (const Hypothesis &h : a.hypotheses_weakly)
    if (h.status != TriBool::Yes)
      weak_ok = false;

  if (comp_ok) {
    a.verdict = "confluent";
    a.criterion = "complementary";
  } else if (weak_ok) {
    a.verdict = "confluent";
    a.criterion = "weakly-complementary";
  } else {
    a.witness = search_counterexample(sys, engine, out.peaks, out.canons,
                                      inst_size_bound);
    if (a.witness)
      a.verdict = "not-confluent";
  }
  if (a.verdict.empty()) {
    if (assumptions.terminating) {
      std::vector<PeakSurvey> survey;
      for (std::size_t i = 0; i < out.peaks.size(); ++i)
        survey.push_back(bounded_joinability_survey(
            sys, engine, out.peaks[i], out.canons[i], inst_size_bound));
      a.survey = std::move(survey);
    }
    a.verdict = "unknown";
  }
  a.exit_code = a.verdict == "confluent" ? 0
                : a.verdict == "not-confluent" ? 1
                                               : 2;
  return out;
}

} // namespace crsa
