#include "crsa/term.hpp"

#include <algorithm>
#include <stdexcept>

namespace crsa {

std::string position_str(const Position &p) {
  if (p.empty())
    return "e";
  std::string out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i)
      out += '.';
    out += std::to_string(p[i]);
  }
  return out;
}

bool position_prefix(const Position &prefix, const Position &p) {
  if (prefix.size() > p.size())
    return false;
  return std::equal(prefix.begin(), prefix.end(), p.begin());
}

namespace {

std::size_t hash_combine(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

std::size_t node_hash(const detail::TermNode &n) {
  std::size_t h = std::hash<std::string>{}(n.name);
  h = hash_combine(h, n.is_var ? (n.kind == VarKind::Cons ? 1 : 2) : 0);
  h = hash_combine(h, std::hash<std::string>{}(n.sort));
  for (const Term &a : n.args)
    h = hash_combine(h, a.hash());
  return h;
}

} // namespace

Term Term::var(std::string name, VarKind kind, std::string sort) {
  auto n = std::make_shared<detail::TermNode>();
  n->is_var = true;
  n->kind = kind;
  n->name = std::move(name);
  n->sort = std::move(sort);
  n->size = 1;
  n->hash = node_hash(*n);
  return Term(std::move(n));
}

Term Term::app(std::string fn, std::string sort, std::vector<Term> args) {
  auto n = std::make_shared<detail::TermNode>();
  n->is_var = false;
  n->kind = VarKind::Gen;
  n->name = std::move(fn);
  n->sort = std::move(sort);
  n->args = std::move(args);
  n->size = 1;
  for (const Term &a : n->args)
    n->size += a.size();
  n->hash = node_hash(*n);
  return Term(std::move(n));
}

bool Term::operator==(const Term &o) const {
  if (node_ == o.node_)
    return true;
  if (!node_ || !o.node_)
    return false;
  if (node_->hash != o.node_->hash || node_->size != o.node_->size)
    return false;
  if (node_->is_var != o.node_->is_var || node_->name != o.node_->name ||
      node_->sort != o.node_->sort)
    return false;
  if (node_->is_var)
    return node_->kind == o.node_->kind;
  if (node_->args.size() != o.node_->args.size())
    return false;
  for (std::size_t i = 0; i < node_->args.size(); ++i)
    if (!(node_->args[i] == o.node_->args[i]))
      return false;
  return true;
}

std::string Term::str() const {
  if (is_var())
    return name();
  if (args().empty())
    return name();
  std::string out = name();
  out += '(';
  for (std::size_t i = 0; i < args().size(); ++i) {
    if (i)
      out += ',';
    out += args()[i].str();
  }
  out += ')';
  return out;
}

std::vector<Position> Term::positions() const {
  std::vector<Position> out;
  out.push_back({});
  if (!is_var()) {
    for (std::size_t i = 0; i < args().size(); ++i) {
      for (Position sub : args()[i].positions()) {
        Position p;
        p.reserve(sub.size() + 1);
        p.push_back(static_cast<int>(i) + 1);
        p.insert(p.end(), sub.begin(), sub.end());
        out.push_back(std::move(p));
      }
    }
  }
  return out;
}

Term Term::subterm(const Position &p) const {
  Term cur = *this;
  for (int i : p) {
    if (cur.is_var() || i < 1 || static_cast<std::size_t>(i) > cur.args().size())
      throw std::out_of_range("no subterm at " + position_str(p) + " in " +
                              str());
    cur = cur.args()[i - 1];
  }
  return cur;
}

Term Term::replace(const Position &p, const Term &s) const {
  if (p.empty())
    return s;
  int i = p[0];
  if (is_var() || i < 1 || static_cast<std::size_t>(i) > args().size())
    throw std::out_of_range("no subterm at " + position_str(p) + " in " +
                            str());
  std::vector<Term> new_args = args();
  Position rest(p.begin() + 1, p.end());
  new_args[i - 1] = new_args[i - 1].replace(rest, s);
  return app(name(), sort(), std::move(new_args));
}

namespace {

void collect_vars(const Term &t, std::vector<Term> &out) {
  if (t.is_var()) {
    for (const Term &v : out)
      if (v.name() == t.name())
        return;
    out.push_back(t);
    return;
  }
  for (const Term &a : t.args())
    collect_vars(a, out);
}

} // namespace

std::vector<Term> Term::vars() const {
  std::vector<Term> out;
  collect_vars(*this, out);
  return out;
}

bool Term::is_ground() const {
  if (is_var())
    return false;
  for (const Term &a : args())
    if (!a.is_ground())
      return false;
  return true;
}

bool Term::is_linear() const {
  std::vector<std::string> seen;
  bool linear = true;
  std::function<void(const Term &)> walk = [&](const Term &t) {
    if (!linear)
      return;
    if (t.is_var()) {
      if (std::find(seen.begin(), seen.end(), t.name()) != seen.end())
        linear = false;
      else
        seen.push_back(t.name());
      return;
    }
    for (const Term &a : t.args())
      walk(a);
  };
  walk(*this);
  return linear;
}

Term replace_parallel(const Term &t,
                      const std::vector<std::pair<Position, Term>> &subs) {
  for (std::size_t i = 0; i < subs.size(); ++i)
    for (std::size_t j = 0; j < subs.size(); ++j)
      if (i != j && position_prefix(subs[i].first, subs[j].first))
        throw std::invalid_argument("overlapping positions " +
                                    position_str(subs[i].first) + " and " +
                                    position_str(subs[j].first));
  Term cur = t;
  for (const auto &[pos, repl] : subs)
    cur = cur.replace(pos, repl);
  return cur;
}

Term apply_substitution(const Term &t, const Substitution &s) {
  if (t.is_var()) {
    if (const Term *b = s.find(t.name()))
      return *b;
    return t;
  }
  bool changed = false;
  std::vector<Term> new_args;
  new_args.reserve(t.args().size());
  for (const Term &a : t.args()) {
    Term na = apply_substitution(a, s);
    if (!(na == a))
      changed = true;
    new_args.push_back(std::move(na));
  }
  if (!changed)
    return t;
  return Term::app(t.name(), t.sort(), std::move(new_args));
}

bool term_size_str_less(const Term &a, const Term &b) {
  if (a.size() != b.size())
    return a.size() < b.size();
  return a.str() < b.str();
}

} // namespace crsa
