#include "tca/analysis.hpp"
#include "tca/flatten.hpp"
#include "tca/generator.hpp"
#include "tca/semantics.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace tca;

/// Resource-sharing contract: five states, one persistent obligation, two
/// ephemeral prohibitions (the shape pruning and analysis are tuned for).
TimedContractAutomaton resource_contract() {
    using Def = TimedContractAutomaton::Definition;
    const std::vector<std::string> clocks = {kGlobalClock, "t"};
    const Guard window = Guard::of_zone(ConvexZone::from_constraints(
        clocks, {Constraint{"t", "", Comparator::LessEq, Rational(15)}}));

    Def def;
    def.clocks = {"t"};
    def.parties = {"A", "B"};
    def.actions = {"get", "release", "request", "start", "end"};
    def.states = {
        {"q1", {}, {}},
        {"q2", {}, {}},
        {"q3", {Norm{Modality::Obligation, "A", "release", window, "o_release"}}, {}},
        {"q4",
         {},
         {Norm{Modality::Prohibition, "A", "release", Guard::true_guard(clocks), "f_release"},
          Norm{Modality::Prohibition, "B", "request", Guard::true_guard(clocks), "f_request"}}},
        {"q5", {}, {}},
    };
    def.initial = "q1";
    auto arc = [&](const char* from, const char* party, const char* action, const char* to,
                   PartialReset reset = {}) {
        Def::TransitionDef td;
        td.from = from;
        td.label = ActionLabel{party, action, false};
        td.guard = Guard::true_guard(clocks);
        td.reset = std::move(reset);
        td.to = to;
        return td;
    };
    def.transitions = {
        arc("q1", "A", "get", "q2"),
        arc("q2", "A", "release", "q1"),
        arc("q2", "B", "request", "q3", PartialReset{{"t", Rational(0)}}),
        arc("q3", "A", "release", "q1"),
        arc("q3", "A", "start", "q4"),
        arc("q4", "A", "end", "q5"),
        arc("q5", "A", "start", "q4"),
        arc("q5", "A", "release", "q1"),
    };
    return TimedContractAutomaton(std::move(def));
}

/// One state holding `count` persistent norms with staggered windows: the
/// worst case for the subset construction.
TimedContractAutomaton stress_contract(int count) {
    using Def = TimedContractAutomaton::Definition;
    const std::vector<std::string> clocks = {kGlobalClock, "t"};
    Def def;
    def.clocks = {"t"};
    def.parties = {"A"};
    def.actions = {"a"};
    Def::StateDef st;
    st.id = "q0";
    for (int i = 0; i < count; ++i) {
        const Guard window = Guard::of_zone(ConvexZone::from_constraints(
            clocks, {Constraint{"t", "", Comparator::LessEq, Rational(i + 1)}}));
        st.pers.push_back(Norm{i % 2 == 0 ? Modality::Permission : Modality::Prohibition, "A",
                               "a", window, "n" + std::to_string(i)});
    }
    def.states = {st};
    def.initial = "q0";
    return TimedContractAutomaton(std::move(def));
}

void BM_FlattenResource(benchmark::State& state) {
    const TimedContractAutomaton m = resource_contract();
    for (auto _ : state) {
        benchmark::DoNotOptimize(flatten(m));
    }
}
BENCHMARK(BM_FlattenResource);

void BM_FlattenAndPruneResource(benchmark::State& state) {
    const TimedContractAutomaton m = resource_contract();
    for (auto _ : state) {
        benchmark::DoNotOptimize(prune_unsat(flatten(m)));
    }
}
BENCHMARK(BM_FlattenAndPruneResource);

void BM_AnalyzeResource(benchmark::State& state) {
    const TimedContractAutomaton m = resource_contract();
    for (auto _ : state) {
        benchmark::DoNotOptimize(analyze(m));
    }
}
BENCHMARK(BM_AnalyzeResource);

void BM_FlattenStress(benchmark::State& state) {
    const TimedContractAutomaton m = stress_contract(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(flatten(m));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_FlattenStress)->DenseRange(2, 6, 2);

void BM_RunTrace(benchmark::State& state) {
    const TimedContractAutomaton m = resource_contract();
    GenParams params;
    params.seed = 11;
    const TimedTrace trace = gen_trace(m, params);
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_trace(m, trace));
    }
}
BENCHMARK(BM_RunTrace);

}  // namespace

BENCHMARK_MAIN();
