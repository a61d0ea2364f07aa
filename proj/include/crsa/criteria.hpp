#pragma once

#include "crsa/crs.hpp"
#include "crsa/engine.hpp"
#include "crsa/normality.hpp"
#include "crsa/peaks.hpp"
#include "crsa/types.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace crsa {

struct Hypothesis {
  std::string name;
  TriBool status;
  std::string detail;
};

struct WitnessStep {
  std::string from;
  std::string pos;
  int rule;
  std::string to;
  std::string stamp;
};

/// A certified non-confluence witness: a seed with two derivations whose
/// endpoints have complete, disjoint reachability sets.
struct Witness {
  std::string route; // "peak-instance" or "seed-divergence"
  std::string seed;
  std::string endpoint0;
  std::string endpoint1;
  std::vector<WitnessStep> derivation0;
  std::vector<WitnessStep> derivation1;
  std::vector<std::string> nonjoin0;
  std::vector<std::string> nonjoin1;
  // The same data as terms, for independent re-verification.
  Term seed_term;
  Term e0;
  Term e1;
};

struct SurveyInstance {
  std::map<std::string, std::string> phi; // canonical variable -> term
  std::string status; // Joinable | NotJoinable | ConditionInfeasible | Unknown
};

struct PeakSurvey {
  std::string summary; // all-instances-ok | some-unknown |
                       // NOT-JOINABLE-instance-found
  std::vector<SurveyInstance> instances;
};

struct Assumptions {
  bool terminating = false;
  bool constructor_confluent = false;
  /// Implicit definedness for equations between pure constructor terms.
  /// Unset means: on exactly when the instantiation set avoids
  /// constructor variables.
  std::optional<bool> cvar_equations;
};

struct EqFailure {
  int rule;
  std::string literal;
};

struct AnalysisResult {
  bool left_linear = true;
  std::vector<int> non_left_linear;
  bool conservative_constructors = true;
  NormalityReport normality;
  TriBool constructor_confluence = TriBool::Unknown;
  std::string constructor_confluence_why;
  bool eq_requirement_ok = true;
  std::vector<EqFailure> eq_failures;
  std::vector<Hypothesis> hypotheses_complementary;
  std::vector<Hypothesis> hypotheses_weakly;
  std::string verdict; // confluent | not-confluent | unknown | error
  std::optional<std::string> criterion;
  std::optional<Witness> witness;
  std::optional<std::vector<PeakSurvey>> survey;
  int exit_code = 2;
};

struct PipelineResult {
  std::vector<Diagnostic> diagnostics;
  std::vector<CriticalPeak> peaks;
  std::vector<CanonicalPeak> canons;
  std::vector<TriBool> complementary;
  std::vector<TriBool> weakly;
  AnalysisResult analysis;
};

/// Confluence of the constructor subsystem: Yes with a reason when
/// assumed, when there are no constructor rules, or when the subsystem is
/// left-linear, normal and all its peaks are complementary; Unknown with
/// the failing check otherwise.
std::pair<TriBool, std::string>
check_constructor_confluence(const System &sys, const Engine &engine,
                             bool assumed);

/// Every equation needs a Def literal on one side, a certified
/// irreducible ground side, or (with the implicit allowance) two pure
/// constructor sides.
std::pair<bool, std::vector<EqFailure>>
check_eq_requirement(const System &sys, const Engine &engine,
                     bool implicit_def);

/// Instantiates the peak with irreducible pure constructor ground terms
/// of size at most `inst_size_bound` and classifies every instance.
PeakSurvey bounded_joinability_survey(const System &sys, const Engine &engine,
                                      const CriticalPeak &pk,
                                      const CanonicalPeak &canon,
                                      std::size_t inst_size_bound);

/// Bounded non-confluence search: first over non-joinable peak
/// instances, then over diverging ground seeds. Returns a witness whose
/// endpoint reach sets are complete and disjoint, or nothing.
std::optional<Witness>
search_counterexample(const System &sys, const Engine &engine,
                      const std::vector<CriticalPeak> &peaks,
                      const std::vector<CanonicalPeak> &canons, std::size_t k);

/// Convenience form that assembles seeds (the given ones, or ground
/// terms up to size `k` when none are given) and builds its own engine.
std::optional<Witness> search_counterexample(const System &sys,
                                             const std::vector<Term> &seeds,
                                             const Budget &budget,
                                             std::size_t k = 3);

/// Re-checks a witness against a freshly built engine: both derivations
/// must replay and the endpoints must stay certified non-joinable.
bool verify_witness(const System &sys, const Witness &w, const Budget &budget);

/// Full analysis: validation, peaks, both criterion traces, then witness
/// search and (under a termination assumption) the instantiation survey.
PipelineResult run_pipeline(const System &sys, const Assumptions &assumptions,
                            const Budget &budget,
                            const std::vector<Term> &extra_seeds = {},
                            std::size_t inst_size_bound = 3);

/// The seed terms run_pipeline feeds its engine: ground terms up to size
/// 3 for every sort, peak condition sides, survey instance terms, and
/// rule condition ground sides.
std::vector<Term> pipeline_seeds(const System &sys,
                                 const std::vector<CriticalPeak> &peaks);

} // namespace crsa
