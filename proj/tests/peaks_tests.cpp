// Replays the frozen critical-peak fixtures: peak count, rules,
// positions, forms, canonical presentations, condition lists and both
// complementarity verdicts per system.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "crsa/engine.hpp"
#include "crsa/peaks.hpp"
#include "test_support.hpp"

using namespace crsa;
using testsupport::load_fixture;
using testsupport::load_with_seeds;
using testsupport::reference_budget;

TEST_CASE("frozen critical peaks replay exactly") {
  nlohmann::json fx = load_fixture("peaks.json");
  for (auto &[id, expected] : fx.items()) {
    CAPTURE(id);
    auto loaded = load_with_seeds(id);
    Engine engine(loaded.sys, loaded.seeds, reference_budget());

    REQUIRE(loaded.peaks.size() == expected["count"].get<std::size_t>());
    for (std::size_t i = 0; i < loaded.peaks.size(); ++i) {
      const CriticalPeak &pk = loaded.peaks[i];
      const nlohmann::json &e = expected["peaks"][i];
      INFO(id, " peak ", i);
      CHECK(pk.rule0 == e["rule0"].get<int>());
      CHECK(pk.rule1 == e["rule1"].get<int>());
      CHECK(position_str(pk.pos) == e["pos"].get<std::string>());
      CHECK(pk.is_overlay() == e["overlay"].get<bool>());
      CHECK(pk.form() == e["form"].get<std::string>());

      CanonicalPeak cn = canonical_peak(pk);
      CHECK(cn.peak.str() == e["peak"].get<std::string>());
      CHECK(cn.t0.str() == e["t0"].get<std::string>());
      CHECK(cn.t1.str() == e["t1"].get<std::string>());
      CHECK(loaded.sys.cond_strs(cn.c0) ==
            e["c0"].get<std::vector<std::string>>());
      CHECK(loaded.sys.cond_strs(cn.c1) ==
            e["c1"].get<std::vector<std::string>>());

      CHECK(to_string(peak_complementary(loaded.sys, pk, engine, false)) ==
            e["complementary"].get<std::string>());
      CHECK(to_string(peak_complementary(loaded.sys, pk, engine, true)) ==
            e["weakly_complementary"].get<std::string>());
    }
  }
}

TEST_CASE("peaks are ordered by rule pair then position") {
  for (const std::string &id : corpus_ids()) {
    System sys = load_corpus_system(id);
    auto peaks = critical_peaks(sys);
    for (std::size_t i = 1; i < peaks.size(); ++i) {
      auto key = [](const CriticalPeak &p) {
        return std::make_tuple(p.rule0, p.rule1, p.pos);
      };
      CHECK(key(peaks[i - 1]) <= key(peaks[i]));
    }
  }
}

TEST_CASE("peak substitution unifies the overlapped subterm") {
  for (const std::string &id : corpus_ids()) {
    System sys = load_corpus_system(id);
    for (const CriticalPeak &pk : critical_peaks(sys)) {
      INFO(id, " r", pk.rule0, "->r", pk.rule1, " @", position_str(pk.pos));
      // The peak is rule1's lhs under sigma, and the subterm at the
      // overlap position is rule0's (renamed) lhs under sigma.
      CHECK(pk.peak ==
            apply_substitution(sys.rules[pk.rule1].lhs, pk.sigma));
      Term sub = pk.peak.subterm(pk.pos);
      CHECK(sub == apply_substitution(sub, pk.sigma)); // sigma idempotent here
      // Reducing the peak by rule1 at the root gives t1.
      CHECK(pk.t1 == apply_substitution(sys.rules[pk.rule1].rhs, pk.sigma));
    }
  }
}

TEST_CASE("canonical renaming is deterministic and kind-preserving") {
  System sys = load_corpus_system("member");
  auto peaks = critical_peaks(sys);
  REQUIRE(!peaks.empty());
  CanonicalPeak a = canonical_peak(peaks[0]);
  CanonicalPeak b = canonical_peak(peaks[0]);
  CHECK(a.peak == b.peak);
  CHECK(a.t0 == b.t0);
  // Canonical names: constructor variables x1,x2,..., general X1,X2,...
  for (const Term &v : a.peak.vars()) {
    if (v.kind() == VarKind::Cons)
      CHECK(v.name()[0] == 'x');
    else
      CHECK(v.name()[0] == 'X');
  }
}

TEST_CASE("self-overlap of a rule at the root is dropped as trivial") {
  // A rule trivially overlaps itself at the root with identical reducts;
  // those pairs never show up.
  System sys = load_corpus_system("member");
  for (const CriticalPeak &pk : critical_peaks(sys)) {
    CHECK((pk.rule0 != pk.rule1 || !pk.pos.empty()));
  }
}
