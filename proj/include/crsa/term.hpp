#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace crsa {

/// Variable discipline: constructor variables range over constructor
/// terms only, general variables range over arbitrary terms.
enum class VarKind { Cons, Gen };

class Term;

/// A tree address: the empty vector is the root, child indices are
/// 1-based to match the printed form ("1.2" is the second child of the
/// first child).
using Position = std::vector<int>;

std::string position_str(const Position &p);

/// True when `prefix` is a (not necessarily proper) prefix of `p`.
bool position_prefix(const Position &prefix, const Position &p);

namespace detail {
struct TermNode {
  bool is_var;
  VarKind kind; // meaningful for variables only
  std::string name;
  std::string sort;
  std::vector<Term> args;
  std::size_t size;
  std::size_t hash;
};
} // namespace detail

/// Immutable first-order term. Copies are cheap handle copies; equality
/// is structural (vars compare by name, kind and sort).
class Term {
public:
  Term() = default;

  static Term var(std::string name, VarKind kind, std::string sort);
  static Term app(std::string fn, std::string sort, std::vector<Term> args);

  bool valid() const { return node_ != nullptr; }
  bool is_var() const { return node_->is_var; }
  VarKind kind() const { return node_->kind; }
  /// Variable name or function symbol, depending on the node.
  const std::string &name() const { return node_->name; }
  const std::string &sort() const { return node_->sort; }
  const std::vector<Term> &args() const { return node_->args; }
  std::size_t size() const { return node_->size; }
  std::size_t hash() const { return node_->hash; }

  bool operator==(const Term &o) const;
  bool operator!=(const Term &o) const { return !(*this == o); }

  std::string str() const;

  /// All positions in pre-order, root first.
  std::vector<Position> positions() const;
  Term subterm(const Position &p) const;
  Term replace(const Position &p, const Term &s) const;

  /// Variables in first-occurrence order (left to right, outside in).
  std::vector<Term> vars() const;
  bool is_ground() const;
  /// No variable occurs twice.
  bool is_linear() const;

private:
  explicit Term(std::shared_ptr<const detail::TermNode> n)
      : node_(std::move(n)) {}
  std::shared_ptr<const detail::TermNode> node_;
};

/// Replaces at several pairwise incomparable positions at once. Throws
/// std::invalid_argument if any position is a prefix of another.
Term replace_parallel(const Term &t,
                      const std::vector<std::pair<Position, Term>> &subs);

/// Finite map from variable names to terms. Bindings are keyed by name;
/// callers are responsible for sort and kind discipline.
class Substitution {
public:
  Substitution() = default;

  void bind(const std::string &name, Term t) {
    map_.insert_or_assign(name, std::move(t));
  }
  const Term *find(const std::string &name) const {
    auto it = map_.find(name);
    return it == map_.end() ? nullptr : &it->second;
  }
  bool empty() const { return map_.empty(); }
  std::size_t size() const { return map_.size(); }
  const std::map<std::string, Term> &bindings() const { return map_; }

private:
  std::map<std::string, Term> map_;
};

Term apply_substitution(const Term &t, const Substitution &s);

/// Ordering used whenever term lists are presented: smaller first, ties
/// broken by the printed form.
bool term_size_str_less(const Term &a, const Term &b);

struct TermHash {
  std::size_t operator()(const Term &t) const { return t.hash(); }
};

} // namespace crsa
