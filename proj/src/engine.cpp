#include "crsa/engine.hpp"

#include "crsa/unify.hpp"

#include <algorithm>

namespace crsa {

namespace {

// The universe never grows past this many terms, independent of the
// query budget; it bounds memory, while max_term_size and max_depth
// bound the shape of what gets admitted.
constexpr std::size_t kUniverseCap = 6000;

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

bool edge_less(const Edge &a, const Edge &b) {
  if (a.pos != b.pos)
    return a.pos < b.pos;
  if (a.rule != b.rule)
    return a.rule < b.rule;
  return a.to.str() < b.to.str();
}

} // namespace

std::size_t Engine::StampKeyHash::operator()(const StampKey &k) const {
  std::size_t h = k.t.hash();
  for (int i : k.pos)
    h = mix(h, static_cast<std::size_t>(i) + 1);
  h = mix(h, static_cast<std::size_t>(k.rule));
  h = mix(h, k.to.hash());
  return h;
}

Engine::Engine(const System &sys, const std::vector<Term> &seeds, Budget b)
    : sys_(sys), budget_(b) {
  saturate_(seeds);
  layering_();
}

bool Engine::add_(const Term &t, std::size_t gen) {
  if (uset_.count(t))
    return true;
  if (t.size() > budget_.max_term_size || universe_.size() >= kUniverseCap ||
      gen > budget_.max_depth)
    return false;
  uset_.insert(t);
  universe_.push_back(t);
  gen_of_.emplace(t, gen);
  return true;
}

void Engine::saturate_(const std::vector<Term> &seeds) {
  for (const Term &t : seeds)
    add_(t, 0);
  std::size_t i = 0;
  while (i < universe_.size()) {
    Term t = universe_[i];
    ++i;
    std::size_t next_gen = gen_of_.at(t) + 1;
    std::vector<Cand> cands;
    for (const Position &p : t.positions()) {
      Term sub = t.subterm(p);
      if (sub.is_var())
        continue;
      for (std::size_t ridx = 0; ridx < sys_.rules.size(); ++ridx) {
        const Rule &rule = sys_.rules[ridx];
        auto sigma = match_term(sys_, rule.lhs, sub);
        if (!sigma)
          continue;
        Term reduct = t.replace(p, apply_substitution(rule.rhs, *sigma));
        bool ok = add_(reduct, next_gen);
        bool cond_ok = true;
        for (const Literal &c : rule.conds)
          for (const Term &ct : c.terms())
            if (!add_(apply_substitution(ct, *sigma), next_gen))
              cond_ok = false;
        cands.push_back({p, static_cast<int>(ridx), std::move(*sigma),
                         std::move(reduct), ok, cond_ok});
      }
    }
    cands_[t] = std::move(cands);
  }
}

Engine::Table Engine::empty_table_() const {
  Table tbl;
  tbl.reserve(universe_.size());
  for (const Term &t : universe_)
    tbl.emplace(t, EdgeList{{}, true});
  return tbl;
}

Engine::Table Engine::step_(const Table &low, LayerKey low_key, bool cons_only,
                            const Table *base) const {
  Table tbl;
  tbl.reserve(universe_.size());
  for (const Term &t : universe_) {
    EdgeList el;
    if (base)
      el = base->at(t);
    auto ci = cands_.find(t);
    if (ci != cands_.end()) {
      for (const Cand &cd : ci->second) {
        const Rule &rule = sys_.rules[static_cast<std::size_t>(cd.rule)];
        if (cons_only && rule.lambda != 0)
          continue;
        if (!cd.cond_ok) {
          el.complete = false;
          continue;
        }
        TriBool st = fulfilled_(rule.conds, cd.sigma, low, low_key);
        if (st == TriBool::No)
          continue;
        if (st == TriBool::Unknown || !cd.reduct_ok) {
          el.complete = false;
          continue;
        }
        el.edges.push_back({cd.pos, cd.rule, cd.reduct});
      }
    }
    std::sort(el.edges.begin(), el.edges.end(), edge_less);
    el.edges.erase(std::unique(el.edges.begin(), el.edges.end()),
                   el.edges.end());
    tbl.emplace(t, std::move(el));
  }
  return tbl;
}

void Engine::layering_() {
  fin_.push_back(empty_table_());
  for (std::size_t k = 1; k <= budget_.max_strata; ++k) {
    Table nxt = step_(fin_.back(), {'f', fin_.size() - 1}, true, nullptr);
    stamp_(nxt, std::to_string(k));
    if (tables_equal_(nxt, fin_.back())) {
      fin_stable_ = true;
      break;
    }
    fin_.push_back(std::move(nxt));
  }
  om_.push_back(fin_.back());
  for (std::size_t k = 1; k <= budget_.max_strata; ++k) {
    Table nxt = step_(om_.back(), {'m', om_.size() - 1}, false, &fin_.back());
    stamp_(nxt, "w+" + std::to_string(k));
    if (tables_equal_(nxt, om_.back())) {
      om_stable_ = true;
      break;
    }
    om_.push_back(std::move(nxt));
  }
}

void Engine::stamp_(const Table &tbl, const std::string &label) {
  for (const Term &t : universe_) {
    const EdgeList &el = tbl.at(t);
    for (const Edge &e : el.edges)
      stamps_.emplace(StampKey{t, e.pos, e.rule, e.to}, label);
  }
}

bool Engine::tables_equal_(const Table &a, const Table &b) const {
  for (const Term &t : universe_) {
    const EdgeList &ea = a.at(t);
    const EdgeList &eb = b.at(t);
    if (ea.complete != eb.complete || ea.edges.size() != eb.edges.size())
      return false;
    for (std::size_t i = 0; i < ea.edges.size(); ++i)
      if (!(ea.edges[i] == eb.edges[i]))
        return false;
  }
  return true;
}

Engine::Resolved Engine::resolve_(DepthIndex depth) const {
  switch (depth.kind()) {
  case DepthIndex::Kind::Fin: {
    std::size_t n = depth.offset();
    if (n < fin_.size())
      return {&fin_[n], true, {'f', n}};
    return {&fin_.back(), fin_stable_, {'f', fin_.size() - 1}};
  }
  case DepthIndex::Kind::Omega:
    return {&fin_.back(), fin_stable_, {'f', fin_.size() - 1}};
  case DepthIndex::Kind::OmegaPlus: {
    std::size_t n = depth.offset();
    if (n < om_.size())
      return {&om_[n], fin_stable_, {'m', n}};
    return {&om_.back(), om_stable_ && fin_stable_, {'m', om_.size() - 1}};
  }
  default:
    return {&om_.back(), om_stable_ && fin_stable_, {'m', om_.size() - 1}};
  }
}

TriBool Engine::fulfilled_(const std::vector<Literal> &conds,
                           const Substitution &sigma, const Table &low,
                           LayerKey key) const {
  TriBool res = TriBool::Yes;
  for (const Literal &c : conds) {
    std::vector<Term> args;
    for (const Term &t : c.terms())
      args.push_back(apply_substitution(t, sigma));
    bool missing = false;
    for (const Term &a : args)
      if (!uset_.count(a))
        missing = true;
    TriBool st;
    if (missing)
      st = TriBool::Unknown;
    else if (c.kind == LiteralKind::Eq)
      st = joinable_(args[0], args[1], low, key);
    else if (c.kind == LiteralKind::Def)
      st = def_(args[0], low, key);
    else
      st = neq_(args[0], args[1], low, key);
    if (st == TriBool::No)
      return TriBool::No;
    if (st == TriBool::Unknown)
      res = TriBool::Unknown;
  }
  return res;
}

const Engine::ReachWork &Engine::reach_(const Term &t, const Table &low,
                                        LayerKey key) const {
  auto &bucket = reach_memo_[key];
  auto it = bucket.find(t);
  if (it != bucket.end())
    return *it->second;
  auto work = std::make_unique<ReachWork>();
  work->members.push_back(t);
  work->set.insert(t);
  work->complete = true;
  std::size_t i = 0;
  while (i < work->members.size()) {
    Term cur = work->members[i];
    ++i;
    auto found = low.find(cur);
    if (found == low.end()) {
      work->complete = false;
      continue;
    }
    const EdgeList &el = found->second;
    if (!el.complete)
      work->complete = false;
    for (const Edge &e : el.edges) {
      if (!work->set.count(e.to)) {
        if (work->members.size() >= budget_.max_steps) {
          work->complete = false;
          break;
        }
        work->set.insert(e.to);
        work->members.push_back(e.to);
      }
    }
  }
  return *bucket.emplace(t, std::move(work)).first->second;
}

TriBool Engine::joinable_(const Term &a, const Term &b, const Table &low,
                          LayerKey key) const {
  const ReachWork &ra = reach_(a, low, key);
  const ReachWork &rb = reach_(b, low, key);
  const ReachWork &small = ra.set.size() <= rb.set.size() ? ra : rb;
  const ReachWork &large = ra.set.size() <= rb.set.size() ? rb : ra;
  for (const Term &m : small.members)
    if (large.set.count(m))
      return TriBool::Yes;
  if (ra.complete && rb.complete)
    return TriBool::No;
  return TriBool::Unknown;
}

TriBool Engine::def_(const Term &a, const Table &low, LayerKey key) const {
  const ReachWork &ra = reach_(a, low, key);
  for (const Term &m : ra.members)
    if (sys_.is_ground_cons(m))
      return TriBool::Yes;
  return ra.complete ? TriBool::No : TriBool::Unknown;
}

TriBool Engine::neq_(const Term &a, const Term &b, const Table &low,
                     LayerKey key) const {
  const ReachWork &ra = reach_(a, low, key);
  const ReachWork &rb = reach_(b, low, key);
  std::vector<Term> ga, gb;
  for (const Term &m : ra.members)
    if (sys_.is_ground_cons(m))
      ga.push_back(m);
  for (const Term &m : rb.members)
    if (sys_.is_ground_cons(m))
      gb.push_back(m);
  bool saw_unknown = false;
  for (const Term &u : ga)
    for (const Term &v : gb) {
      TriBool j = joinable_(u, v, low, key);
      if (j == TriBool::No)
        return TriBool::Yes;
      if (j == TriBool::Unknown)
        saw_unknown = true;
    }
  if (ra.complete && rb.complete && !saw_unknown)
    return TriBool::No;
  return TriBool::Unknown;
}

std::pair<std::vector<Edge>, bool> Engine::one_step(const Term &t,
                                                    DepthIndex depth) const {
  Resolved r = resolve_(depth);
  auto it = r.tbl->find(t);
  if (it == r.tbl->end())
    return {{}, false};
  return {it->second.edges, it->second.complete && r.stable};
}

ReachSet Engine::reach(const Term &t, DepthIndex depth) const {
  Resolved r = resolve_(depth);
  ReachSet out;
  out.origin = t;
  out.members.push_back(t);
  out.set.insert(t);
  out.complete = true;
  std::size_t i = 0;
  while (i < out.members.size()) {
    Term cur = out.members[i];
    ++i;
    auto found = r.tbl->find(cur);
    if (found == r.tbl->end()) {
      out.complete = false;
      continue;
    }
    const EdgeList &el = found->second;
    if (!el.complete)
      out.complete = false;
    for (const Edge &e : el.edges) {
      if (!out.set.count(e.to)) {
        if (out.members.size() >= budget_.max_steps) {
          out.complete = false;
          break;
        }
        out.set.insert(e.to);
        out.members.push_back(e.to);
        out.parents.emplace(e.to, std::make_pair(cur, e));
      }
    }
  }
  out.complete = out.complete && r.stable;
  return out;
}

TriBool Engine::joinable(const Term &a, const Term &b,
                         DepthIndex depth) const {
  ReachSet ra = reach(a, depth);
  ReachSet rb = reach(b, depth);
  const ReachSet &small = ra.set.size() <= rb.set.size() ? ra : rb;
  const ReachSet &large = ra.set.size() <= rb.set.size() ? rb : ra;
  for (const Term &m : small.members)
    if (large.set.count(m))
      return TriBool::Yes;
  if (ra.complete && rb.complete)
    return TriBool::No;
  return TriBool::Unknown;
}

TriBool Engine::irreducible(const Term &t, DepthIndex depth) const {
  auto [edges, complete] = one_step(t, depth);
  if (!edges.empty())
    return TriBool::No;
  return complete ? TriBool::Yes : TriBool::Unknown;
}

std::pair<std::vector<Term>, bool> Engine::normal_forms(const Term &t) const {
  ReachSet r = reach(t);
  std::vector<Term> forms;
  for (const Term &m : r.members)
    if (irreducible(m) == TriBool::Yes)
      forms.push_back(m);
  std::sort(forms.begin(), forms.end(), term_size_str_less);
  return {std::move(forms), r.complete};
}

std::vector<Term> Engine::parallel_reducts(const Term &t,
                                           std::size_t cap) const {
  Resolved r = resolve_(DepthIndex::omega_omega());
  auto it = r.tbl->find(t);
  if (it == r.tbl->end())
    return {};
  std::map<Position, std::vector<Term>> by_pos;
  for (const Edge &e : it->second.edges)
    by_pos[e.pos].push_back(e.to);
  std::vector<Position> plist;
  for (const auto &[p, _] : by_pos)
    plist.push_back(p);
  std::unordered_set<Term, TermHash> results;
  results.insert(t);

  auto compatible = [](const std::vector<Position> &sel, const Position &p) {
    for (const Position &a : sel)
      if (position_prefix(a, p) || position_prefix(p, a))
        return false;
    return true;
  };

  std::function<void(std::size_t, std::vector<Position> &, const Term &)> go =
      [&](std::size_t idx, std::vector<Position> &sel, const Term &cur) {
        if (results.size() > cap)
          return;
        if (idx == plist.size())
          return;
        go(idx + 1, sel, cur);
        const Position &p = plist[idx];
        if (compatible(sel, p)) {
          for (const Term &to : by_pos[p]) {
            Term nxt = cur.replace(p, to.subterm(p));
            results.insert(nxt);
            sel.push_back(p);
            go(idx + 1, sel, nxt);
            sel.pop_back();
          }
        }
      };
  std::vector<Position> sel;
  go(0, sel, t);

  std::vector<Term> out(results.begin(), results.end());
  std::sort(out.begin(), out.end(), term_size_str_less);
  return out;
}

TriBool Engine::fulfilled(const std::vector<Literal> &conds,
                          const Substitution &sigma, DepthIndex depth) const {
  Resolved r = resolve_(depth);
  return fulfilled_(conds, sigma, *r.tbl, r.key);
}

std::string Engine::stamp_of(const Term &t, const Edge &e) const {
  auto it = stamps_.find(StampKey{t, e.pos, e.rule, e.to});
  return it == stamps_.end() ? "?" : it->second;
}

Strata Engine::strata() const {
  return {fin_.size(), fin_stable_, om_.size(), om_stable_};
}

} // namespace crsa
