#include "crsa/report.hpp"

#include <sstream>

namespace crsa {

namespace {

nlohmann::json hypo_json(const Hypothesis &h, const char *criterion) {
  return {{"criterion", criterion},
          {"name", h.name},
          {"status", to_string(h.status)},
          {"detail", h.detail}};
}

nlohmann::json witness_json(const Witness &w) {
  auto steps = [](const std::vector<WitnessStep> &d) {
    nlohmann::json out = nlohmann::json::array();
    for (const WitnessStep &s : d)
      out.push_back({{"from", s.from},
                     {"pos", s.pos},
                     {"rule", s.rule},
                     {"to", s.to},
                     {"stamp", s.stamp}});
    return out;
  };
  return {{"route", w.route},
          {"seed", w.seed},
          {"endpoints", {w.endpoint0, w.endpoint1}},
          {"derivation0", steps(w.derivation0)},
          {"derivation1", steps(w.derivation1)},
          {"nonjoin0", w.nonjoin0},
          {"nonjoin1", w.nonjoin1}};
}

} // namespace

nlohmann::json report_json(const System &sys, const PipelineResult &res,
                           const Assumptions &assumptions,
                           std::size_t inst_size_bound) {
  const AnalysisResult &a = res.analysis;
  nlohmann::json j;
  j["system"] = sys.id;
  j["verdict"] = a.verdict;
  j["criterion"] =
      a.criterion ? nlohmann::json(*a.criterion) : nlohmann::json(nullptr);

  nlohmann::json hypos = nlohmann::json::array();
  for (const Hypothesis &h : a.hypotheses_complementary)
    hypos.push_back(hypo_json(h, "complementary"));
  for (const Hypothesis &h : a.hypotheses_weakly)
    hypos.push_back(hypo_json(h, "weakly-complementary"));
  j["hypotheses"] = std::move(hypos);

  nlohmann::json peaks = nlohmann::json::array();
  for (std::size_t i = 0; i < res.peaks.size(); ++i) {
    const CriticalPeak &pk = res.peaks[i];
    const CanonicalPeak &cn = res.canons[i];
    peaks.push_back({{"rule0", pk.rule0},
                     {"rule1", pk.rule1},
                     {"pos", position_str(pk.pos)},
                     {"overlay", pk.is_overlay()},
                     {"form", pk.form()},
                     {"peak", cn.peak.str()},
                     {"t0", cn.t0.str()},
                     {"c0", sys.cond_strs(cn.c0)},
                     {"t1", cn.t1.str()},
                     {"c1", sys.cond_strs(cn.c1)},
                     {"complementary", to_string(res.complementary[i])},
                     {"weakly_complementary", to_string(res.weakly[i])}});
  }
  j["peaks"] = std::move(peaks);

  j["witness"] =
      a.witness ? witness_json(*a.witness) : nlohmann::json(nullptr);

  if (a.survey) {
    nlohmann::json sv = nlohmann::json::array();
    for (const PeakSurvey &ps : *a.survey) {
      nlohmann::json inst = nlohmann::json::array();
      for (const SurveyInstance &si : ps.instances)
        inst.push_back({{"phi", si.phi}, {"status", si.status}});
      nlohmann::json entry = {{"summary", ps.summary},
                              {"instances", std::move(inst)}};
      if (ps.summary == "all-instances-ok")
        entry["advisory"] = "SUPPORTED (bounded, " +
                            std::to_string(inst_size_bound) + ")";
      sv.push_back(std::move(entry));
    }
    j["survey"] = std::move(sv);
  }

  j["checks"] = {
      {"left_linear", a.left_linear},
      {"conservative_constructors", a.conservative_constructors},
      {"normality",
       {{"summary", a.normality.summary}, {"rules", a.normality.rules}}},
      {"constructor_confluence",
       {{"status", to_string(a.constructor_confluence)},
        {"why", a.constructor_confluence_why}}},
      {"eq_requirement_ok", a.eq_requirement_ok}};
  j["assumptions"] = {{"terminating", assumptions.terminating},
                      {"constructor_confluent",
                       assumptions.constructor_confluent}};
  j["exit_code"] = a.exit_code;

  nlohmann::json diags = nlohmann::json::array();
  for (const Diagnostic &d : res.diagnostics)
    diags.push_back({{"severity", d.is_error() ? "error" : "warning"},
                     {"code", d.code},
                     {"message", d.message},
                     {"line", d.line}});
  j["diagnostics"] = std::move(diags);
  return j;
}

std::string report_text(const System &sys, const PipelineResult &res,
                        const Assumptions &assumptions,
                        std::size_t inst_size_bound) {
  const AnalysisResult &a = res.analysis;
  std::ostringstream os;
  os << "system: " << sys.id << "\n";
  for (const Diagnostic &d : res.diagnostics)
    os << (d.is_error() ? "error" : "warning") << ": " << d.message
       << (d.line ? " (line " + std::to_string(d.line) + ")" : "") << "\n";
  if (a.verdict == "error")
    return os.str();

  os << "peaks: " << res.peaks.size() << "\n";
  for (std::size_t i = 0; i < res.peaks.size(); ++i) {
    const CriticalPeak &pk = res.peaks[i];
    const CanonicalPeak &cn = res.canons[i];
    os << "  [" << i << "] r" << pk.rule0 << " -> r" << pk.rule1 << " @"
       << position_str(pk.pos) << " " << pk.form()
       << (pk.is_overlay() ? " overlay" : "") << "\n";
    os << "      peak " << cn.peak.str() << "\n";
    auto side = [&](const char *lbl, const Term &t,
                    const std::vector<Literal> &cs) {
      os << "      " << lbl << " " << t.str();
      if (!cs.empty()) {
        os << "  if ";
        for (std::size_t k = 0; k < cs.size(); ++k)
          os << (k ? ", " : "") << cs[k].str();
      }
      os << "\n";
    };
    side("t0  ", cn.t0, cn.c0);
    side("t1  ", cn.t1, cn.c1);
    os << "      complementary " << to_string(res.complementary[i])
       << ", weakly " << to_string(res.weakly[i]) << "\n";
  }

  auto hypo_block = [&](const char *label,
                        const std::vector<Hypothesis> &hs) {
    os << label << ":\n";
    for (const Hypothesis &h : hs) {
      os << "  " << h.name << ": " << to_string(h.status);
      if (!h.detail.empty())
        os << "  (" << h.detail << ")";
      os << "\n";
    }
  };
  hypo_block("complementary criterion", a.hypotheses_complementary);
  hypo_block("weakly-complementary criterion", a.hypotheses_weakly);

  os << "normality: " << a.normality.summary << "\n";
  os << "constructor confluence: " << to_string(a.constructor_confluence)
     << " (" << a.constructor_confluence_why << ")\n";
  if (assumptions.terminating)
    os << "assumed terminating\n";
  if (assumptions.constructor_confluent)
    os << "assumed constructor-confluent\n";

  if (a.witness) {
    const Witness &w = *a.witness;
    os << "witness (" << w.route << "): seed " << w.seed << " diverges to "
       << w.endpoint0 << " and " << w.endpoint1 << "\n";
    auto deriv = [&](const char *lbl, const std::vector<WitnessStep> &d) {
      os << "  " << lbl << ":";
      if (d.empty())
        os << " (empty)";
      for (const WitnessStep &s : d)
        os << " " << s.from << " -[r" << s.rule << "@" << s.pos << ","
           << s.stamp << "]-> " << s.to;
      os << "\n";
    };
    deriv("derivation0", w.derivation0);
    deriv("derivation1", w.derivation1);
  }

  if (a.survey) {
    for (std::size_t i = 0; i < a.survey->size(); ++i) {
      const PeakSurvey &ps = (*a.survey)[i];
      os << "survey peak[" << i << "]: " << ps.summary;
      if (ps.summary == "all-instances-ok")
        os << "  advisory: SUPPORTED (bounded, " << inst_size_bound << ")";
      os << "\n";
      for (const SurveyInstance &si : ps.instances) {
        os << "  ";
        bool first = true;
        for (const auto &[k, v] : si.phi) {
          os << (first ? "" : ", ") << k << "=" << v;
          first = false;
        }
        os << (si.phi.empty() ? "" : " ") << ": " << si.status << "\n";
      }
    }
  }

  os << "verdict: " << a.verdict;
  if (a.criterion)
    os << " (criterion: " << *a.criterion << ")";
  os << "\n";
  return os.str();
}

} // namespace crsa
