// Command-line front end: check, peaks, reduce and join over .crs files.

#include "crsa/corpus.hpp"
#include "crsa/criteria.hpp"
#include "crsa/engine.hpp"
#include "crsa/peaks.hpp"
#include "crsa/report.hpp"
#include "crsa/spec_parser.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace {

using namespace crsa;

/// Default budgets, overridable through the environment. Documented
/// names: CRSA_MAX_STEPS, CRSA_MAX_TERM_SIZE, CRSA_MAX_STRATA,
/// CRSA_MAX_DEPTH.
Budget env_budget() {
  Budget b;
  auto pick = [](const char *name, std::size_t fallback) {
    const char *v = std::getenv(name);
    if (!v || !*v)
      return fallback;
    char *end = nullptr;
    unsigned long long n = std::strtoull(v, &end, 10);
    if (end == v || *end != '\0' || n == 0)
      return fallback;
    return static_cast<std::size_t>(n);
  };
  b.max_steps = pick("CRSA_MAX_STEPS", b.max_steps);
  b.max_term_size = pick("CRSA_MAX_TERM_SIZE", b.max_term_size);
  b.max_strata = pick("CRSA_MAX_STRATA", b.max_strata);
  b.max_depth = pick("CRSA_MAX_DEPTH", b.max_depth);
  return b;
}

std::optional<std::string> read_file(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    return std::nullopt;
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void print_diagnostics(const std::vector<Diagnostic> &diags) {
  for (const Diagnostic &d : diags) {
    std::cerr << (d.is_error() ? "error" : "warning");
    if (d.line)
      std::cerr << " (line " << d.line << ")";
    std::cerr << ": " << d.message << "\n";
  }
}

nlohmann::json diagnostics_json(const std::vector<Diagnostic> &diags) {
  nlohmann::json out = nlohmann::json::array();
  for (const Diagnostic &d : diags)
    out.push_back({{"severity", d.is_error() ? "error" : "warning"},
                   {"code", d.code},
                   {"message", d.message},
                   {"line", d.line},
                   {"col", d.col}});
  return out;
}

/// Emits the schema-stable error object for unreadable or unparseable
/// input when JSON output was requested.
int input_error(const std::string &format, const std::string &file,
                const std::vector<Diagnostic> &diags) {
  if (format == "json") {
    nlohmann::json j = {{"system", file},       {"verdict", "error"},
                        {"criterion", nullptr}, {"hypotheses", nlohmann::json::array()},
                        {"peaks", nlohmann::json::array()}, {"witness", nullptr},
                        {"exit_code", 3},       {"diagnostics", diagnostics_json(diags)}};
    std::cout << j.dump(2) << "\n";
  } else {
    print_diagnostics(diags);
  }
  return 3;
}

struct Loaded {
  System sys;
  Assumptions assumptions;
  std::vector<Diagnostic> diagnostics;
};

std::optional<Loaded> load(const std::string &file, const std::string &format,
                           int &rc) {
  auto text = read_file(file);
  if (!text) {
    rc = input_error(format, file,
                     {{Diagnostic::Severity::Error, "io",
                       "cannot open " + file, -1, 0, 0}});
    return std::nullopt;
  }
  ParseResult pr = parse_spec(*text, file);
  if (!pr.ok()) {
    rc = input_error(format, file, pr.diagnostics);
    return std::nullopt;
  }
  return Loaded{*pr.system, pr.assumptions, pr.diagnostics};
}

int cmd_check(const std::string &file, const std::string &format,
              const Assumptions &flag_assume, bool force_no_cvar_eq,
              std::size_t bound) {
  int rc = 3;
  auto loaded = load(file, format, rc);
  if (!loaded)
    return rc;

  Assumptions a = loaded->assumptions;
  a.terminating |= flag_assume.terminating;
  a.constructor_confluent |= flag_assume.constructor_confluent;
  if (flag_assume.cvar_equations)
    a.cvar_equations = flag_assume.cvar_equations;
  if (force_no_cvar_eq)
    a.cvar_equations = false;

  PipelineResult res = run_pipeline(loaded->sys, a, env_budget(), {}, bound);
  if (format == "json")
    std::cout << report_json(loaded->sys, res, a, bound).dump(2) << "\n";
  else
    std::cout << report_text(loaded->sys, res, a, bound);
  return res.analysis.exit_code;
}

int cmd_peaks(const std::string &file, const std::string &format) {
  int rc = 3;
  auto loaded = load(file, format, rc);
  if (!loaded)
    return rc;
  const System &sys = loaded->sys;

  std::vector<CriticalPeak> peaks = critical_peaks(sys);
  Engine engine(sys, pipeline_seeds(sys, peaks), env_budget());

  nlohmann::json arr = nlohmann::json::array();
  std::ostringstream os;
  os << "peaks: " << peaks.size() << "\n";
  for (std::size_t i = 0; i < peaks.size(); ++i) {
    const CriticalPeak &pk = peaks[i];
    CanonicalPeak cn = canonical_peak(pk);
    TriBool comp = peak_complementary(sys, pk, engine, false);
    TriBool weak = peak_complementary(sys, pk, engine, true);
    if (format == "json") {
      arr.push_back({{"rule0", pk.rule0},
                     {"rule1", pk.rule1},
                     {"pos", position_str(pk.pos)},
                     {"overlay", pk.is_overlay()},
                     {"form", pk.form()},
                     {"peak", cn.peak.str()},
                     {"t0", cn.t0.str()},
                     {"c0", sys.cond_strs(cn.c0)},
                     {"t1", cn.t1.str()},
                     {"c1", sys.cond_strs(cn.c1)},
                     {"complementary", to_string(comp)},
                     {"weakly_complementary", to_string(weak)}});
    } else {
      os << "  [" << i << "] r" << pk.rule0 << " -> r" << pk.rule1 << " @"
         << position_str(pk.pos) << " " << pk.form()
         << (pk.is_overlay() ? " overlay" : "") << "\n"
         << "      peak " << cn.peak.str() << "\n"
         << "      t0   " << cn.t0.str();
      for (const std::string &s : sys.cond_strs(cn.c0))
        os << "  if " << s;
      os << "\n      t1   " << cn.t1.str();
      for (const std::string &s : sys.cond_strs(cn.c1))
        os << "  if " << s;
      os << "\n      complementary " << to_string(comp) << ", weakly "
         << to_string(weak) << "\n";
    }
  }
  if (format == "json")
    std::cout << nlohmann::json{{"system", sys.id}, {"peaks", arr}}.dump(2)
              << "\n";
  else
    std::cout << os.str();
  return 0;
}

int cmd_reduce(const std::string &file, const std::string &term_text,
               const std::string &depth_text, std::size_t fuel,
               const std::string &format) {
  int rc = 3;
  auto loaded = load(file, format, rc);
  if (!loaded)
    return rc;
  const System &sys = loaded->sys;

  Term t;
  DepthIndex depth = DepthIndex::omega_omega();
  try {
    t = sys.parse_term(term_text);
    depth = DepthIndex::parse(depth_text);
  } catch (const std::exception &e) {
    return input_error(format, file,
                       {{Diagnostic::Severity::Error, "term", e.what(), -1, 0,
                         0}});
  }

  Budget b = env_budget();
  if (fuel)
    b.max_steps = fuel;
  Engine engine(sys, {t}, b);
  ReachSet rs = engine.reach(t, depth);
  auto [nfs, nf_complete] = engine.normal_forms(t);

  if (format == "json") {
    nlohmann::json members = nlohmann::json::array();
    for (const Term &m : rs.members)
      members.push_back(m.str());
    nlohmann::json nfj = nlohmann::json::array();
    for (const Term &m : nfs)
      nfj.push_back(m.str());
    std::cout << nlohmann::json{{"system", sys.id},
                                {"term", t.str()},
                                {"depth", depth.str()},
                                {"reach", members},
                                {"complete", rs.complete},
                                {"normal_forms", nfj},
                                {"normal_forms_complete", nf_complete}}
                     .dump(2)
              << "\n";
  } else {
    std::cout << "reach of " << t.str() << " at depth " << depth.str() << " ("
              << (rs.complete ? "complete" : "incomplete") << "):\n";
    for (const Term &m : rs.members)
      std::cout << "  " << m.str() << "\n";
    std::cout << "normal forms ("
              << (nf_complete ? "complete" : "incomplete") << "):";
    for (const Term &m : nfs)
      std::cout << " " << m.str();
    std::cout << "\n";
  }
  return 0;
}

int cmd_join(const std::string &file, const std::string &t0_text,
             const std::string &t1_text, const std::string &depth_text,
             const std::string &format) {
  int rc = 3;
  auto loaded = load(file, format, rc);
  if (!loaded)
    return rc;
  const System &sys = loaded->sys;

  Term t0, t1;
  DepthIndex depth = DepthIndex::omega_omega();
  try {
    t0 = sys.parse_term(t0_text);
    t1 = sys.parse_term(t1_text);
    depth = DepthIndex::parse(depth_text);
  } catch (const std::exception &e) {
    return input_error(format, file,
                       {{Diagnostic::Severity::Error, "term", e.what(), -1, 0,
                         0}});
  }

  Engine engine(sys, {t0, t1}, env_budget());
  TriBool ans = engine.joinable(t0, t1, depth);

  std::string evidence;
  if (ans == TriBool::Yes) {
    ReachSet r0 = engine.reach(t0, depth);
    ReachSet r1 = engine.reach(t1, depth);
    Term best;
    for (const Term &m : r0.members)
      if (r1.set.count(m) &&
          (!best.valid() || term_size_str_less(m, best)))
        best = m;
    if (best.valid())
      evidence = "common reduct " + best.str();
  } else if (ans == TriBool::No) {
    ReachSet r0 = engine.reach(t0, depth);
    ReachSet r1 = engine.reach(t1, depth);
    evidence = "reach sets complete and disjoint (" +
               std::to_string(r0.members.size()) + " vs " +
               std::to_string(r1.members.size()) + " terms)";
  } else {
    evidence = "search incomplete at this budget";
  }

  if (format == "json") {
    std::cout << nlohmann::json{{"system", sys.id},
                                {"t0", t0.str()},
                                {"t1", t1.str()},
                                {"depth", depth.str()},
                                {"joinable", to_string(ans)},
                                {"evidence", evidence}}
                     .dump(2)
              << "\n";
  } else {
    std::cout << "joinable(" << t0.str() << ", " << t1.str() << ") at "
              << depth.str() << ": " << to_string(ans) << "  (" << evidence
              << ")\n";
  }
  return 0;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Confluence analysis for conditional rewrite systems with "
               "constructor sub-signatures"};
  app.require_subcommand(1);
  app.footer("Budget environment overrides: CRSA_MAX_STEPS, "
             "CRSA_MAX_TERM_SIZE, CRSA_MAX_STRATA, CRSA_MAX_DEPTH.");

  std::string file, format = "text";
  std::string term_text, t0_text, t1_text, depth_text = "w+w";
  std::size_t fuel = 0, bound = 3;
  Assumptions flag_assume;
  bool cvar_eq_on = false, cvar_eq_off = false;

  CLI::App *check = app.add_subcommand("check", "Run the confluence pipeline");
  check->add_option("file", file, "System description (.crs)")->required();
  check->add_option("--format", format, "Output format: text|json")
      ->check(CLI::IsMember({"text", "json"}));
  check->add_flag("--assume-terminating", flag_assume.terminating,
                  "Treat the system as terminating (enables the bounded "
                  "instantiation survey)");
  check->add_flag("--assume-constructor-confluent",
                  flag_assume.constructor_confluent,
                  "Take constructor-level confluence as given");
  check->add_flag("--assume-cvar-equations", cvar_eq_on,
                  "Count pure constructor equations as definedness-satisfying");
  check->add_flag("--no-assume-cvar-equations", cvar_eq_off,
                  "Disable the implicit definedness allowance");
  check->add_option("-k,--instantiation-bound", bound,
                    "Ground term size bound for the survey");

  CLI::App *peaks = app.add_subcommand("peaks", "List critical peaks");
  peaks->add_option("file", file, "System description (.crs)")->required();
  peaks->add_option("--format", format, "Output format: text|json")
      ->check(CLI::IsMember({"text", "json"}));

  CLI::App *reduce =
      app.add_subcommand("reduce", "Reach set and normal forms of a term");
  reduce->add_option("file", file, "System description (.crs)")->required();
  reduce->add_option("term", term_text, "Term to reduce")->required();
  reduce->add_option("--depth", depth_text,
                     "Depth index: a number, w, w+n or w+w");
  reduce->add_option("--fuel", fuel, "Step budget override");
  reduce->add_option("--format", format, "Output format: text|json")
      ->check(CLI::IsMember({"text", "json"}));

  CLI::App *join = app.add_subcommand("join", "Decide joinability of two terms");
  join->add_option("file", file, "System description (.crs)")->required();
  join->add_option("t0", t0_text, "First term")->required();
  join->add_option("t1", t1_text, "Second term")->required();
  join->add_option("--depth", depth_text,
                   "Depth index: a number, w, w+n or w+w");
  join->add_option("--format", format, "Output format: text|json")
      ->check(CLI::IsMember({"text", "json"}));

  CLI11_PARSE(app, argc, argv);

  if (cvar_eq_on)
    flag_assume.cvar_equations = true;

  if (check->parsed())
    return cmd_check(file, format, flag_assume, cvar_eq_off, bound);
  if (peaks->parsed())
    return cmd_peaks(file, format);
  if (reduce->parsed())
    return cmd_reduce(file, term_text, depth_text, fuel, format);
  return cmd_join(file, t0_text, t1_text, depth_text, format);
}
