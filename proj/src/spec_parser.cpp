#include "crsa/spec_parser.hpp"

#include <cctype>
#include <sstream>

namespace crsa {

namespace {

struct Token {
  enum Type { Ident, Punct, End };
  Type type;
  std::string text;
  int line;
  int col;
};

bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

std::vector<Token> tokenize(const std::string &text,
                            std::vector<Diagnostic> &diags) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (text[i + k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    i += n;
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == '#') {
      while (i < text.size() && text[i] != '\n')
        advance(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (ident_char(c)) {
      int l = line, co = col;
      std::string name;
      while (i < text.size() &&
             (ident_char(text[i]) ||
              // A dash joins identifier words (constructor-confluent)
              // unless it starts an arrow.
              (text[i] == '-' && i + 1 < text.size() && text[i + 1] != '>' &&
               ident_char(text[i + 1])))) {
        name += text[i];
        advance(1);
      }
      out.push_back({Token::Ident, name, l, co});
      continue;
    }
    auto two = [&](const char *p) {
      return i + 1 < text.size() && text[i] == p[0] && text[i + 1] == p[1];
    };
    int l = line, co = col;
    if (two("==") || two("!=") || two("<=") || two("->")) {
      out.push_back({Token::Punct, text.substr(i, 2), l, co});
      advance(2);
      continue;
    }
    if (c == ';' || c == ':' || c == '(' || c == ')' || c == ',' || c == '=') {
      out.push_back({Token::Punct, std::string(1, c), l, co});
      advance(1);
      continue;
    }
    diags.push_back({Diagnostic::Severity::Error, "bad-character",
                     std::string("unexpected character '") + c + "'", -1, line,
                     col});
    advance(1);
  }
  out.push_back({Token::End, "", line, col});
  return out;
}

struct Parser {
  const std::vector<Token> &toks;
  std::size_t i = 0;
  System sys;
  Assumptions assumptions;
  std::vector<Diagnostic> &diags;
  std::vector<int> rule_lines;
  bool instantiate_seen = false;

  const Token &peek() const { return toks[i]; }
  Token next() { return toks[i++]; }
  bool at_punct(const std::string &p) const {
    return peek().type == Token::Punct && peek().text == p;
  }
  bool at_ident(const std::string &w) const {
    return peek().type == Token::Ident && peek().text == w;
  }

  void error(const std::string &code, const std::string &msg) {
    diags.push_back({Diagnostic::Severity::Error, code, msg, -1, peek().line,
                     peek().col});
  }

  /// Skips past the next ';' so later clauses still get checked.
  void recover() {
    while (peek().type != Token::End && !at_punct(";"))
      next();
    if (at_punct(";"))
      next();
  }

  bool expect_punct(const std::string &p, const std::string &what) {
    if (at_punct(p)) {
      next();
      return true;
    }
    error(std::string("expected-") +
              (p == ";" ? "semicolon" : p == ":" ? "colon" : "token"),
          "expected '" + p + "' " + what + ", found '" + peek().text + "'");
    return false;
  }

  std::optional<std::string> expect_ident(const std::string &what) {
    if (peek().type == Token::Ident)
      return next().text;
    error("expected-name", "expected " + what + ", found '" + peek().text +
                               "'");
    return std::nullopt;
  }

  void run() {
    while (peek().type != Token::End) {
      if (!clause())
        recover();
    }
  }

  bool clause() {
    if (peek().type != Token::Ident) {
      error("expected-clause", "expected a clause keyword, found '" +
                                   peek().text + "'");
      return false;
    }
    std::string kw = peek().text;
    if (kw == "sorts")
      return sorts_clause();
    if (kw == "cons" || kw == "func")
      return symbol_clause(kw == "cons");
    if (kw == "cvar" || kw == "gvar")
      return var_clause(kw == "cvar" ? VarKind::Cons : VarKind::Gen);
    if (kw == "instantiate")
      return instantiate_clause();
    if (kw == "rule")
      return rule_clause();
    if (kw == "assume")
      return assume_clause();
    error("unknown-clause", "unknown clause keyword '" + kw + "'");
    return false;
  }

  bool sorts_clause() {
    next();
    if (peek().type != Token::Ident) {
      error("expected-name", "expected at least one sort name");
      return false;
    }
    while (peek().type == Token::Ident)
      sys.add_sort(next().text);
    return expect_punct(";", "after sort names");
  }

  bool check_sort(const std::string &s) {
    for (const std::string &d : sys.sorts)
      if (d == s)
        return true;
    error("unknown-sort", "sort '" + s + "' was never declared");
    return false;
  }

  bool symbol_clause(bool is_cons) {
    next();
    auto name = expect_ident("a symbol name");
    if (!name)
      return false;
    if (sys.has_symbol(*name) || sys.var_decls.count(*name)) {
      error("duplicate-name", "'" + *name + "' is already declared");
      return false;
    }
    if (!expect_punct(":", "after the symbol name"))
      return false;
    std::vector<std::string> parts;
    while (peek().type == Token::Ident)
      parts.push_back(next().text);
    std::vector<std::string> arg_sorts;
    std::string result;
    if (at_punct("->")) {
      next();
      auto res = expect_ident("a result sort");
      if (!res)
        return false;
      arg_sorts = std::move(parts);
      result = *res;
      if (arg_sorts.empty()) {
        error("expected-name", "arrow given but no argument sorts");
        return false;
      }
    } else {
      if (parts.size() != 1) {
        error("bad-arity", "expected 'sort' or 'sort ... -> sort'");
        return false;
      }
      result = parts[0];
    }
    bool ok = check_sort(result);
    for (const std::string &a : arg_sorts)
      ok = check_sort(a) && ok;
    if (!ok)
      return false;
    sys.add_symbol(*name, std::move(arg_sorts), std::move(result), is_cons);
    return expect_punct(";", "after the symbol declaration");
  }

  bool var_clause(VarKind kind) {
    next();
    std::vector<std::string> names;
    while (peek().type == Token::Ident)
      names.push_back(next().text);
    if (names.empty()) {
      error("expected-name", "expected at least one variable name");
      return false;
    }
    if (!expect_punct(":", "after the variable names"))
      return false;
    auto sort = expect_ident("a sort name");
    if (!sort || !check_sort(*sort))
      return false;
    for (const std::string &n : names) {
      if (sys.has_symbol(n) || sys.var_decls.count(n)) {
        error("duplicate-name", "'" + n + "' is already declared");
        return false;
      }
      sys.add_var(n, kind, *sort);
    }
    return expect_punct(";", "after the variable declaration");
  }

  bool instantiate_clause() {
    next();
    auto which = expect_ident("'gvars', 'none' or 'all'");
    if (!which)
      return false;
    if (*which == "gvars")
      sys.instantiation = InstSet::GeneralOnly;
    else if (*which == "none")
      sys.instantiation = InstSet::None;
    else if (*which == "all")
      sys.instantiation = InstSet::All;
    else {
      error("bad-instantiate",
            "instantiate takes 'gvars', 'none' or 'all', not '" + *which +
                "'");
      return false;
    }
    instantiate_seen = true;
    return expect_punct(";", "after the instantiate clause");
  }

  std::optional<Term> term() {
    if (peek().type != Token::Ident) {
      error("expected-term", "expected a term, found '" + peek().text + "'");
      return std::nullopt;
    }
    Token tok = next();
    const std::string &n = tok.text;
    if (sys.var_decls.count(n))
      return sys.make_var(n);
    if (!sys.has_symbol(n)) {
      diags.push_back({Diagnostic::Severity::Error, "unknown-name",
                       "'" + n + "' is neither a declared symbol nor a "
                                 "variable",
                       -1, tok.line, tok.col});
      return std::nullopt;
    }
    const SymbolInfo &info = sys.symbol(n);
    std::vector<Term> args;
    if (at_punct("(")) {
      next();
      while (true) {
        auto a = term();
        if (!a)
          return std::nullopt;
        args.push_back(std::move(*a));
        if (at_punct(",")) {
          next();
          continue;
        }
        if (!expect_punct(")", "to close the argument list"))
          return std::nullopt;
        break;
      }
    }
    if (args.size() != info.arg_sorts.size()) {
      diags.push_back({Diagnostic::Severity::Error, "arity-mismatch",
                       "'" + n + "' expects " +
                           std::to_string(info.arg_sorts.size()) +
                           " arguments, got " + std::to_string(args.size()),
                       -1, tok.line, tok.col});
      return std::nullopt;
    }
    for (std::size_t k = 0; k < args.size(); ++k)
      if (sys.sort_of(args[k]) != info.arg_sorts[k]) {
        diags.push_back({Diagnostic::Severity::Error, "argument-sort",
                         "argument " + std::to_string(k + 1) + " of '" + n +
                             "' has sort " + sys.sort_of(args[k]) +
                             ", expected " + info.arg_sorts[k],
                         -1, tok.line, tok.col});
        return std::nullopt;
      }
    return Term::app(n, info.sort, std::move(args));
  }

  std::optional<Literal> literal() {
    if (at_ident("def")) {
      next();
      auto t = term();
      if (!t)
        return std::nullopt;
      return Literal::def(std::move(*t));
    }
    auto lhs = term();
    if (!lhs)
      return std::nullopt;
    bool is_eq;
    if (at_punct("=="))
      is_eq = true;
    else if (at_punct("!="))
      is_eq = false;
    else {
      error("expected-relation",
            "expected '==' or '!=' in the condition literal");
      return std::nullopt;
    }
    next();
    auto rhs = term();
    if (!rhs)
      return std::nullopt;
    return is_eq ? Literal::eq(std::move(*lhs), std::move(*rhs))
                 : Literal::neq(std::move(*lhs), std::move(*rhs));
  }

  bool rule_clause() {
    int line = peek().line;
    next();
    auto lhs = term();
    if (!lhs)
      return false;
    if (!expect_punct("=", "between the rule sides"))
      return false;
    auto rhs = term();
    if (!rhs)
      return false;
    std::vector<Literal> conds;
    if (at_punct("<=")) {
      next();
      while (true) {
        auto lit = literal();
        if (!lit)
          return false;
        conds.push_back(std::move(*lit));
        if (at_punct(",")) {
          next();
          continue;
        }
        break;
      }
    }
    if (!expect_punct(";", "after the rule"))
      return false;
    sys.add_rule(std::move(*lhs), std::move(*rhs), std::move(conds));
    rule_lines.push_back(line);
    return true;
  }

  bool assume_clause() {
    next();
    auto what = expect_ident("'terminating' or 'constructor-confluent'");
    if (!what)
      return false;
    if (*what == "terminating")
      assumptions.terminating = true;
    else if (*what == "constructor-confluent")
      assumptions.constructor_confluent = true;
    else {
      error("bad-assume", "assume takes 'terminating' or "
                          "'constructor-confluent', not '" +
                              *what + "'");
      return false;
    }
    return expect_punct(";", "after the assume clause");
  }
};

} // namespace

ParseResult parse_spec(const std::string &text, const std::string &id) {
  ParseResult out;
  std::vector<Token> toks = tokenize(text, out.diagnostics);
  Parser p{toks, 0, System{}, Assumptions{}, out.diagnostics, {}};
  p.sys.id = id;
  p.run();

  if (p.sys.sorts.empty())
    out.diagnostics.push_back(
        {Diagnostic::Severity::Error, "no-sorts", "no sorts declared", -1, 0,
         0});

  // Semantic validation, with rule diagnostics pointed at their lines.
  for (Diagnostic d : validate(p.sys)) {
    if (d.rule_index >= 0 &&
        d.rule_index < static_cast<int>(p.rule_lines.size()))
      d.line = p.rule_lines[static_cast<std::size_t>(d.rule_index)];
    out.diagnostics.push_back(std::move(d));
  }

  out.system = std::move(p.sys);
  out.assumptions = p.assumptions;
  return out;
}

std::string print_spec(const System &sys, const Assumptions &a) {
  std::ostringstream os;
  os << "sorts";
  for (const std::string &s : sys.sorts)
    os << " " << s;
  os << ";\n\n";
  for (bool cons_pass : {true, false}) {
    bool any = false;
    for (const auto &[name, info] : sys.symbols) {
      if (info.is_cons != cons_pass)
        continue;
      any = true;
      os << (cons_pass ? "cons " : "func ") << name << " :";
      for (const std::string &s : info.arg_sorts)
        os << " " << s;
      if (!info.arg_sorts.empty())
        os << " ->";
      os << " " << info.sort << ";\n";
    }
    if (any)
      os << "\n";
  }
  for (bool cons_pass : {true, false}) {
    bool any = false;
    for (const auto &[name, decl] : sys.var_decls) {
      if ((decl.first == VarKind::Cons) != cons_pass)
        continue;
      any = true;
      os << (cons_pass ? "cvar " : "gvar ") << name << " : " << decl.second
         << ";\n";
    }
    if (any)
      os << "\n";
  }
  os << "instantiate "
     << (sys.instantiation == InstSet::GeneralOnly
             ? "gvars"
             : sys.instantiation == InstSet::None ? "none" : "all")
     << ";\n\n";
  for (const Rule &r : sys.rules) {
    os << "rule " << r.lhs.str() << " = " << r.rhs.str();
    for (std::size_t i = 0; i < r.conds.size(); ++i)
      os << (i == 0 ? " <= " : ", ") << r.conds[i].str();
    os << ";\n";
  }
  if (a.terminating)
    os << "assume terminating;\n";
  if (a.constructor_confluent)
    os << "assume constructor-confluent;\n";
  return os.str();
}

bool systems_equal(const System &a, const System &b) {
  if (a.sorts != b.sorts || a.instantiation != b.instantiation)
    return false;
  if (a.var_decls != b.var_decls)
    return false;
  if (a.symbols.size() != b.symbols.size())
    return false;
  for (const auto &[name, info] : a.symbols) {
    auto it = b.symbols.find(name);
    if (it == b.symbols.end() || it->second.arg_sorts != info.arg_sorts ||
        it->second.sort != info.sort || it->second.is_cons != info.is_cons)
      return false;
  }
  if (a.rules.size() != b.rules.size())
    return false;
  for (std::size_t i = 0; i < a.rules.size(); ++i) {
    const Rule &ra = a.rules[i];
    const Rule &rb = b.rules[i];
    if (!(ra.lhs == rb.lhs) || !(ra.rhs == rb.rhs) ||
        ra.lambda != rb.lambda || ra.conds.size() != rb.conds.size())
      return false;
    for (std::size_t k = 0; k < ra.conds.size(); ++k)
      if (!(ra.conds[k] == rb.conds[k]))
        return false;
  }
  return true;
}

} // namespace crsa
