// Replays the frozen pipeline results: hypothesis traces for both
// criteria, normality tiers, constructor-level confluence, verdicts,
// witnesses and instantiation surveys.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "crsa/criteria.hpp"
#include "test_support.hpp"

#include <set>

using namespace crsa;
using testsupport::extra_seeds;
using testsupport::load_fixture;
using testsupport::reference_budget;

namespace {

const std::set<std::string> kAssumeTerminating = {"integer", "gramlich",
                                                  "asso"};

PipelineResult run_reference(const std::string &id, const System &sys) {
  Assumptions a;
  a.terminating = kAssumeTerminating.count(id) != 0;
  return run_pipeline(sys, a, reference_budget(), extra_seeds(sys, id));
}

void check_hypotheses(const std::vector<Hypothesis> &got,
                      const nlohmann::json &want) {
  REQUIRE(got.size() == want.size());
  for (std::size_t i = 0; i < got.size(); ++i) {
    INFO("hypothesis ", got[i].name);
    CHECK(got[i].name == want[i]["name"].get<std::string>());
    CHECK(to_string(got[i].status) == want[i]["status"].get<std::string>());
    CHECK(got[i].detail == want[i]["detail"].get<std::string>());
  }
}

void check_witness(const std::optional<Witness> &got,
                   const nlohmann::json &want) {
  if (want.is_null()) {
    CHECK_FALSE(got.has_value());
    return;
  }
  REQUIRE(got.has_value());
  CHECK(got->route == want["route"].get<std::string>());
  CHECK(got->seed == want["seed"].get<std::string>());
  CHECK(got->endpoint0 == want["endpoints"][0].get<std::string>());
  CHECK(got->endpoint1 == want["endpoints"][1].get<std::string>());
  CHECK(got->nonjoin0 == want["nonjoin0"].get<std::vector<std::string>>());
  CHECK(got->nonjoin1 == want["nonjoin1"].get<std::vector<std::string>>());
  auto check_deriv = [](const std::vector<WitnessStep> &steps,
                        const nlohmann::json &w) {
    REQUIRE(steps.size() == w.size());
    for (std::size_t i = 0; i < steps.size(); ++i) {
      CHECK(steps[i].from == w[i]["from"].get<std::string>());
      CHECK(steps[i].pos == w[i]["pos"].get<std::string>());
      CHECK(steps[i].rule == w[i]["rule"].get<int>());
      CHECK(steps[i].to == w[i]["to"].get<std::string>());
      CHECK(steps[i].stamp == w[i]["stamp"].get<std::string>());
    }
  };
  check_deriv(got->derivation0, want["derivation0"]);
  check_deriv(got->derivation1, want["derivation1"]);
}

} // namespace

TEST_CASE("frozen pipeline results replay exactly") {
  nlohmann::json fx = load_fixture("criteria.json");
  for (auto &[id, want] : fx.items()) {
    CAPTURE(id);
    System sys = load_corpus_system(id);
    PipelineResult res = run_reference(id, sys);
    const AnalysisResult &a = res.analysis;

    CHECK(a.left_linear == want["left_linear"].get<bool>());
    CHECK(a.conservative_constructors ==
          want["conservative_constructors"].get<bool>());
    CHECK(a.normality.summary ==
          want["normality"]["summary"].get<std::string>());
    CHECK(a.normality.rules ==
          want["normality"]["rules"].get<std::vector<std::string>>());
    CHECK(to_string(a.constructor_confluence) ==
          want["constructor_confluence"]["status"].get<std::string>());
    CHECK(a.constructor_confluence_why ==
          want["constructor_confluence"]["why"].get<std::string>());
    CHECK(a.eq_requirement_ok == want["eq_requirement_ok"].get<bool>());

    check_hypotheses(a.hypotheses_complementary,
                     want["hypotheses_complementary"]);
    check_hypotheses(a.hypotheses_weakly, want["hypotheses_weakly"]);

    CHECK(a.verdict == want["verdict"].get<std::string>());
    if (want["criterion"].is_null())
      CHECK_FALSE(a.criterion.has_value());
    else
      CHECK(a.criterion.value_or("") == want["criterion"].get<std::string>());
    CHECK(a.exit_code == want["exit_code"].get<int>());

    check_witness(a.witness, want["witness"]);
  }
}

TEST_CASE("frozen witnesses replay and verify, also at a doubled budget") {
  nlohmann::json fx = load_fixture("witness.json");
  for (auto &[id, want] : fx.items()) {
    CAPTURE(id);
    System sys = load_corpus_system(id);
    PipelineResult res = run_reference(id, sys);
    REQUIRE(res.analysis.witness.has_value());
    check_witness(res.analysis.witness, want);

    Budget b = reference_budget();
    CHECK(verify_witness(sys, *res.analysis.witness, b));
    b.max_steps *= 2;
    b.max_strata *= 2;
    CHECK(verify_witness(sys, *res.analysis.witness, b));
  }
}

TEST_CASE("frozen surveys replay exactly") {
  nlohmann::json fx = load_fixture("survey.json");
  for (auto &[id, want] : fx.items()) {
    CAPTURE(id);
    System sys = load_corpus_system(id);
    PipelineResult res = run_reference(id, sys);
    REQUIRE(res.analysis.survey.has_value());
    const auto &got = *res.analysis.survey;
    REQUIRE(got.size() == want.size());
    for (std::size_t i = 0; i < got.size(); ++i) {
      INFO(id, " survey peak ", i);
      CHECK(got[i].summary == want[i]["summary"].get<std::string>());
      REQUIRE(got[i].instances.size() == want[i]["instances"].size());
      for (std::size_t k = 0; k < got[i].instances.size(); ++k) {
        const SurveyInstance &inst = got[i].instances[k];
        const nlohmann::json &w = want[i]["instances"][k];
        CHECK(inst.status == w["status"].get<std::string>());
        CHECK(inst.phi ==
              w["phi"].get<std::map<std::string, std::string>>());
      }
    }
  }
}

TEST_CASE("peak-instance route fires on a ground divergence between constants") {
  // a rewrites to both b and c, which are distinct normal forms: the
  // single overlay peak is its own non-joinable ground instance.
  System sys;
  sys.add_sort("t");
  sys.add_symbol("b", {}, "t", true);
  sys.add_symbol("c", {}, "t", true);
  sys.add_symbol("a", {}, "t", false);
  sys.add_rule(sys.parse_term("a"), sys.parse_term("b"));
  sys.add_rule(sys.parse_term("a"), sys.parse_term("c"));

  Assumptions assume;
  PipelineResult res = run_pipeline(sys, assume, Budget{});
  CHECK(res.analysis.verdict == "not-confluent");
  REQUIRE(res.analysis.witness.has_value());
  const Witness &w = *res.analysis.witness;
  CHECK(w.route == "peak-instance");
  CHECK(w.seed == "a");
  CHECK(w.endpoint0 == "b");
  CHECK(w.endpoint1 == "c");
  // Route (a) derivations are the two peak reductions themselves.
  REQUIRE(w.derivation0.size() == 1);
  REQUIRE(w.derivation1.size() == 1);
  CHECK(w.derivation0[0].pos == "e");
  CHECK(w.derivation1[0].pos == "e");
  CHECK(verify_witness(sys, w, Budget{}));
}

TEST_CASE("witness verification rejects tampered evidence") {
  System sys = load_corpus_system("bergstra-klop");
  PipelineResult res = run_reference("bergstra-klop", sys);
  REQUIRE(res.analysis.witness.has_value());
  Witness w = *res.analysis.witness;

  // Endpoints that are actually joinable must be rejected.
  Witness joined = w;
  joined.e1 = joined.e0;
  joined.endpoint1 = joined.endpoint0;
  joined.derivation1 = joined.derivation0;
  CHECK_FALSE(verify_witness(sys, joined, reference_budget()));

  // A derivation step that names a rule which cannot produce it fails.
  Witness broken = w;
  REQUIRE(!broken.derivation0.empty());
  broken.derivation0[0].rule += 1;
  CHECK_FALSE(verify_witness(sys, broken, reference_budget()));
}

TEST_CASE("surveys only run under a termination assumption") {
  System sys = load_corpus_system("integer");
  Assumptions bare;
  PipelineResult res =
      run_pipeline(sys, bare, reference_budget(), extra_seeds(sys, "integer"));
  CHECK_FALSE(res.analysis.survey.has_value());
  CHECK(res.analysis.verdict == "unknown");
}

TEST_CASE("constructor confluence can be assumed outright") {
  System sys = load_corpus_system("integer");
  Engine engine(sys, pipeline_seeds(sys, critical_peaks(sys)),
                reference_budget());
  auto [status, why] = check_constructor_confluence(sys, engine, true);
  CHECK(status == TriBool::Yes);
  CHECK(why == "assumed");
}
