#include "tca/generator.hpp"

#include "helpers.hpp"
#include "tca/json_io.hpp"
#include "tca/oracle.hpp"

#include <doctest.h>

using namespace tca;
using namespace tca::testing;

TEST_CASE("automaton generation is reproducible and well-formed") {
    GenParams params;
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        params.seed = seed;
        const TimedContractAutomaton a = gen_automaton(params);
        const TimedContractAutomaton b = gen_automaton(params);
        CHECK(a == b);
        CHECK(validate_wellformed(a).ok());
        CHECK(static_cast<int>(a.states().size()) <= params.maxStates);
        CHECK(static_cast<int>(a.clocks().size()) <= params.maxClocks + 1);
        CHECK(static_cast<int>(a.norms().size()) <= 2 * params.maxNormsPerState);
    }
}

TEST_CASE("trace generation is reproducible and monotone") {
    GenParams params;
    params.seed = 3;
    const TimedContractAutomaton m = gen_automaton(params);
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        params.seed = seed;
        const TimedTrace a = gen_trace(m, params);
        const TimedTrace b = gen_trace(m, params);
        REQUIRE(a.events.size() == b.events.size());
        CHECK(static_cast<int>(a.events.size()) <= params.traceLength);
        Rational prev(-1);
        for (std::size_t i = 0; i < a.events.size(); ++i) {
            CHECK(a.events[i].label == b.events[i].label);
            CHECK(a.events[i].at == b.events[i].at);
            CHECK(prev < a.events[i].at);
            CHECK(a.events[i].at <= params.maxTimestamp);
            prev = a.events[i].at;
        }
    }
}

TEST_CASE("delay witness oracle") {
    const auto clocks = clocks_t();
    SUBCASE("a lapsed upper bound admits no delay") {
        CHECK(!delta_interval_oracle(guard_of(clocks, {upper("t", "<=", 15)}), val_t(20, 20))
                   .has_value());
    }
    SUBCASE("a lower bound is reached by waiting") {
        const auto delay = delta_interval_oracle(guard_of(clocks, {upper("t", ">=", 5)}), val_t(0, 0));
        REQUIRE(delay.has_value());
        CHECK(*delay == Rational(5));
    }
    SUBCASE("the trivial guard needs no delay") {
        const auto delay = delta_interval_oracle(Guard::true_guard(clocks), val_t(2, 2));
        REQUIRE(delay.has_value());
        CHECK(*delay == Rational(0));
    }
    SUBCASE("strict windows land strictly inside") {
        const Guard g = guard_of(clocks, {upper("t", ">", 3), upper("t", "<", 4)});
        const auto delay = delta_interval_oracle(g, val_t(0, 0));
        REQUIRE(delay.has_value());
        CHECK(g.contains(shifted(val_t(0, 0), *delay)));
    }
}

TEST_CASE("every property suite runs green at small scale") {
    for (const Suite suite : {Suite::ActiveMembership, Suite::TimingExclusion,
                              Suite::SatImpliesTiming, Suite::Determinism, Suite::Lockstep,
                              Suite::Soundness, Suite::Zones}) {
        const SuiteResult result = run_suite(suite, 1, 15);
        CHECK(result.failed == 0);
        CHECK(result.passed == 15);
        if (result.failed != 0) {
            MESSAGE(to_string(suite), " seed ", result.first_failing_seed, ": ", result.message);
        }
    }
}

TEST_CASE("lockstep correspondence on the worked example") {
    const TimedContractAutomaton m = resource_automaton();
    std::string diagnostic;
    const TimedTrace scenario{
        {event("A", "get", 1), event("B", "request", 2), event("A", "start", 3)}};
    CHECK_MESSAGE(check_theorem_lockstep(m, scenario, &diagnostic), diagnostic);

    // Initial correspondence alone (the empty trace) must hold as well.
    CHECK(check_theorem_lockstep(m, TimedTrace{}, &diagnostic));
}

TEST_CASE("soundness probe on the worked example") {
    SUBCASE("a contract with findings makes no claim") {
        CHECK(check_soundness(resource_automaton(), 50, 900));
    }
    SUBCASE("dropping the prohibitions yields a verdict that survives simulation") {
        TimedContractAutomaton::Definition def = resource_definition();
        def.states[3].eph.clear();  // q4
        const TimedContractAutomaton m(std::move(def));
        REQUIRE(analyze(m).conflict_free);
        std::string diagnostic;
        CHECK_MESSAGE(check_soundness(m, 1000, 901, &diagnostic), diagnostic);
    }
    SUBCASE("a norm-free contract holds trivially") {
        TimedContractAutomaton::Definition def = resource_definition();
        for (auto& st : def.states) {
            st.pers.clear();
            st.eph.clear();
        }
        CHECK(check_soundness(TimedContractAutomaton(std::move(def)), 100, 902));
    }
}
