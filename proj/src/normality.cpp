#include "crsa/normality.hpp"

#include <algorithm>
#include <map>

namespace crsa {

NormalityReport normality(const System &sys, const Engine &engine) {
  std::vector<std::string> per_rule;
  for (const Rule &rule : sys.rules) {
    TriBool normal_st = TriBool::Yes;
    TriBool quasi_st = TriBool::Yes;
    for (const Literal &c : rule.conds) {
      if (c.kind != LiteralKind::Eq)
        continue;
      const Term &u = c.lhs;
      const Term &v = c.rhs;
      TriBool side = TriBool::No;
      for (const Term *s : {&u, &v}) {
        if (!s->is_ground())
          continue;
        TriBool ir = engine.irreducible(*s);
        if (ir == TriBool::Yes) {
          side = TriBool::Yes;
          break;
        }
        if (ir == TriBool::Unknown && side == TriBool::No)
          side = TriBool::Unknown;
      }
      normal_st = tri_and(normal_st, side);
      TriBool q = side;
      if (q != TriBool::Yes) {
        auto all_cons_vars = [](const Term &t) {
          for (const Term &w : t.vars())
            if (w.kind() != VarKind::Cons)
              return false;
          return true;
        };
        bool has_def = false;
        for (const Literal &d : rule.conds)
          if (d.kind == LiteralKind::Def && (d.lhs == u || d.lhs == v))
            has_def = true;
        if (all_cons_vars(u) && all_cons_vars(v))
          q = TriBool::Yes;
        else if (u.is_ground() && v.is_ground())
          q = TriBool::Yes;
        else if (has_def)
          q = TriBool::Yes;
      }
      quasi_st = tri_and(quasi_st, q);
    }
    if (normal_st == TriBool::Yes)
      per_rule.push_back("normal");
    else if (quasi_st == TriBool::Yes)
      per_rule.push_back("quasi_normal_syntactic");
    else if (normal_st == TriBool::Unknown || quasi_st == TriBool::Unknown)
      per_rule.push_back("unknown");
    else
      per_rule.push_back("fails");
  }

  static const std::map<std::string, int> order = {
      {"normal", 0}, {"quasi_normal_syntactic", 1}, {"unknown", 2},
      {"fails", 3}};
  std::string summary = "normal";
  for (const std::string &s : per_rule)
    if (order.at(s) > order.at(summary))
      summary = s;
  return {summary, per_rule};
}

} // namespace crsa
