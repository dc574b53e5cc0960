#include "tca/analysis.hpp"

#include "helpers.hpp"
#include "tca/errors.hpp"
#include "tca/generator.hpp"

#include <doctest.h>

using namespace tca;
using namespace tca::testing;

TEST_CASE("local conflicts on a norm set") {
    const TimedContractAutomaton m = resource_automaton();
    const NormIndex o = m.state(m.state_index("q3")).pers[0];
    const NormSet q4 = m.state(m.state_index("q4")).eph;

    SUBCASE("obligation against an open prohibition") {
        const auto findings = local_conflict(m.norms(), set_union(NormSet{o}, q4));
        REQUIRE(findings.size() == 1);
        CHECK(findings[0].left == o);
        CHECK(m.norm(findings[0].right).id == "f_release");
        CHECK(findings[0].witness == guard_of(m.clocks(), {upper("t", "<=", 15)}));
        CHECK(findings[0].sample.at("t") == Rational(0));
    }
    SUBCASE("disjoint windows do not conflict") {
        const auto clocks = clocks_t();
        const std::vector<Norm> pool = {
            {Modality::Obligation, "A", "a", guard_of(clocks, {upper("t", "<=", 5)}), "o"},
            {Modality::Prohibition, "A", "a", guard_of(clocks, {upper("t", ">=", 10)}), "f"},
        };
        CHECK(local_conflict(pool, NormSet{0, 1}).empty());
    }
    SUBCASE("a prohibition alone has nothing to oppose") {
        CHECK(local_conflict(m.norms(), q4).empty());
    }
}

TEST_CASE("analysis of the resource contract") {
    const TimedContractAutomaton m = resource_automaton();
    const AnalysisVerdict verdict = analyze(m);

    CHECK(!verdict.conflict_free);
    REQUIRE(verdict.findings.size() == 1);
    const ConflictFinding& f = verdict.findings[0];
    CHECK(f.base_state == "q4");
    CHECK(m.norm(f.left).id == "o_release");
    CHECK(m.norm(f.right).id == "f_release");
    CHECK(f.witness == guard_of(m.clocks(), {upper("t", "<=", 15)}));
    CHECK(f.witness.contains(f.sample));
    CHECK(m.norm(f.left).guard.contains(f.sample));
    CHECK(m.norm(f.right).guard.contains(f.sample));
    CHECK(verdict.stats.flat_states_after <= verdict.stats.flat_states_before);
}

TEST_CASE("removing the opposing prohibitions clears the verdict") {
    TimedContractAutomaton::Definition def = resource_definition();
    def.states[3].eph.clear();  // q4
    const AnalysisVerdict verdict = analyze(TimedContractAutomaton(std::move(def)));
    CHECK(verdict.conflict_free);
    CHECK(verdict.findings.empty());
}

TEST_CASE("an automaton without norms is conflict-free") {
    TimedContractAutomaton::Definition def = resource_definition();
    for (auto& st : def.states) {
        st.pers.clear();
        st.eph.clear();
    }
    CHECK(analyze(TimedContractAutomaton(std::move(def))).conflict_free);
}

TEST_CASE("analysis rejects ill-formed automata") {
    TimedContractAutomaton::Definition def = resource_definition();
    def.transitions[0].reset[kGlobalClock] = Rational(0);
    CHECK_THROWS_AS(analyze(TimedContractAutomaton(std::move(def))), ModelError);
}

TEST_CASE("every reported witness is satisfiable and inhabited by its sample") {
    GenParams params;
    for (std::uint64_t seed = 1; seed <= 80; ++seed) {
        params.seed = seed;
        const TimedContractAutomaton m = gen_automaton(params);
        const AnalysisVerdict verdict = analyze(m);
        for (const ConflictFinding& f : verdict.findings) {
            CHECK(!f.witness.is_false());
            CHECK(f.witness.contains(f.sample));
            CHECK(m.norm(f.left).guard.contains(f.sample));
            CHECK(m.norm(f.right).guard.contains(f.sample));
            CHECK(m.norm(f.right).modality == Modality::Prohibition);
            CHECK(m.norm(f.left).party == m.norm(f.right).party);
            CHECK(m.norm(f.left).action == m.norm(f.right).action);
        }
    }
}

TEST_CASE("pruning never turns a conflict-free verdict into findings") {
    GenParams params;
    for (std::uint64_t seed = 1; seed <= 80; ++seed) {
        params.seed = seed;
        const TimedContractAutomaton m = gen_automaton(params);
        const AnalysisVerdict unpruned = analyze(m, AnalyzeOptions{false});
        const AnalysisVerdict pruned = analyze(m, AnalyzeOptions{true});
        if (unpruned.conflict_free) {
            CHECK(pruned.conflict_free);
        }
        CHECK(pruned.findings.size() <= unpruned.findings.size());
    }
}
