#pragma once

#include "crsa/crs.hpp"
#include "crsa/types.hpp"

#include <map>
#include <memory>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

namespace crsa {

/// One rewrite step recorded in a layer table: redex position, rule index
/// and the full reduct.
struct Edge {
  Position pos;
  int rule;
  Term to;

  bool operator==(const Edge &o) const {
    return pos == o.pos && rule == o.rule && to == o.to;
  }
};

struct ReachSet {
  Term origin;
  /// Breadth-first order, origin first.
  std::vector<Term> members;
  std::unordered_set<Term, TermHash> set;
  bool complete = true;
  /// For every member but the origin: the term and edge it was first
  /// reached through.
  std::unordered_map<Term, std::pair<Term, Edge>, TermHash> parents;
};

struct Strata {
  std::size_t fin_layers;
  bool fin_stable;
  std::size_t omega_layers;
  bool omega_stable;
};

/// Depth-stratified reduction over a finite saturated universe.
///
/// Construction saturates the universe from the seed terms (adding every
/// rule reduct and condition instance, within budget), then builds two
/// layer towers: the constructor phase iterates constructor rules from
/// the empty relation to a fixpoint, the full phase continues with all
/// rules on top of that limit. Each layer judges rule conditions against
/// the layer below it. A table entry's completeness flag records whether
/// every candidate redex of the term was definitively licensed or
/// refuted; reaching a fixpoint inside the layer cap certifies the
/// tower's limit.
///
/// All query answers are conservative: Yes and No are only reported when
/// the relevant tables are complete, otherwise Unknown.
class Engine {
public:
  Engine(const System &sys, const std::vector<Term> &seeds,
         Budget budget = Budget{});

  Engine(const Engine &) = delete;
  Engine &operator=(const Engine &) = delete;

  /// The recorded steps out of `t` at the given depth. The flag is true
  /// when the edge list is provably exhaustive.
  std::pair<std::vector<Edge>, bool>
  one_step(const Term &t, DepthIndex depth = DepthIndex::omega_omega()) const;

  ReachSet reach(const Term &t,
                 DepthIndex depth = DepthIndex::omega_omega()) const;

  TriBool joinable(const Term &a, const Term &b,
                   DepthIndex depth = DepthIndex::omega_omega()) const;

  TriBool irreducible(const Term &t,
                      DepthIndex depth = DepthIndex::omega_omega()) const;

  /// Irreducible terms reachable from `t` at the final depth, ordered by
  /// size then printed form, with a completeness flag.
  std::pair<std::vector<Term>, bool> normal_forms(const Term &t) const;

  /// Simultaneous steps at pairwise incomparable redex positions,
  /// including the empty selection, at the final depth.
  std::vector<Term> parallel_reducts(const Term &t,
                                     std::size_t cap = 4096) const;

  /// Conjunction of the condition literals under sigma, judged against
  /// the table at the given depth.
  TriBool fulfilled(const std::vector<Literal> &conds,
                    const Substitution &sigma,
                    DepthIndex depth = DepthIndex::omega_omega()) const;

  /// The label of the first layer the edge appeared in ("1", "2", ...,
  /// "w+1", ...), or "?" if it was never recorded.
  std::string stamp_of(const Term &t, const Edge &e) const;

  Strata strata() const;
  /// The saturated universe in admission order, seeds first.
  const std::vector<Term> &universe() const { return universe_; }
  std::size_t universe_size() const { return universe_.size(); }
  bool in_universe(const Term &t) const { return uset_.count(t) != 0; }
  const System &system() const { return sys_; }
  const Budget &budget() const { return budget_; }

private:
  struct Cand {
    Position pos;
    int rule;
    Substitution sigma;
    Term reduct;
    bool reduct_ok;
    bool cond_ok;
  };

  struct EdgeList {
    std::vector<Edge> edges;
    bool complete = true;
  };

  using Table = std::unordered_map<Term, EdgeList, TermHash>;
  /// Identifies a layer for memoization: phase 'f' or 'm' plus index.
  using LayerKey = std::pair<char, std::size_t>;

  struct ReachWork {
    std::vector<Term> members;
    std::unordered_set<Term, TermHash> set;
    bool complete;
  };

  struct Resolved {
    const Table *tbl;
    bool stable;
    LayerKey key;
  };

  struct StampKey {
    Term t;
    Position pos;
    int rule;
    Term to;
    bool operator==(const StampKey &o) const {
      return t == o.t && pos == o.pos && rule == o.rule && to == o.to;
    }
  };
  struct StampKeyHash {
    std::size_t operator()(const StampKey &k) const;
  };

  bool add_(const Term &t, std::size_t gen);
  void saturate_(const std::vector<Term> &seeds);
  Table empty_table_() const;
  Table step_(const Table &low, LayerKey low_key, bool cons_only,
              const Table *base) const;
  void layering_();
  void stamp_(const Table &tbl, const std::string &label);
  bool tables_equal_(const Table &a, const Table &b) const;
  Resolved resolve_(DepthIndex depth) const;

  TriBool fulfilled_(const std::vector<Literal> &conds,
                     const Substitution &sigma, const Table &low,
                     LayerKey key) const;
  const ReachWork &reach_(const Term &t, const Table &low, LayerKey key) const;
  TriBool joinable_(const Term &a, const Term &b, const Table &low,
                    LayerKey key) const;
  TriBool def_(const Term &a, const Table &low, LayerKey key) const;
  TriBool neq_(const Term &a, const Term &b, const Table &low,
               LayerKey key) const;

  System sys_;
  Budget budget_;
  std::vector<Term> universe_;
  std::unordered_set<Term, TermHash> uset_;
  std::unordered_map<Term, std::size_t, TermHash> gen_of_;
  std::unordered_map<Term, std::vector<Cand>, TermHash> cands_;
  std::vector<Table> fin_;
  std::vector<Table> om_;
  bool fin_stable_ = false;
  bool om_stable_ = false;
  std::unordered_map<StampKey, std::string, StampKeyHash> stamps_;
  mutable std::map<LayerKey,
                   std::unordered_map<Term, std::unique_ptr<ReachWork>,
                                      TermHash>>
      reach_memo_;
};

} // namespace crsa
