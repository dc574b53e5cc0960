#include "tca/generator.hpp"
#include "tca/zone.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace tca;

const std::vector<std::string> kClocks = {kGlobalClock, "c1", "c2"};

std::vector<Guard> sample_guards(int count) {
    std::vector<Guard> out;
    Rng rng(42);
    for (int i = 0; i < count; ++i) out.push_back(gen_guard(rng, kClocks, 10));
    return out;
}

void BM_ZoneFromConstraints(benchmark::State& state) {
    const std::vector<Constraint> cs = {
        {"c1", "", Comparator::LessEq, Rational(7)},
        {"c2", "", Comparator::GreaterEq, Rational(2)},
        {"c1", "c2", Comparator::Less, Rational(3)},
    };
    for (auto _ : state) {
        benchmark::DoNotOptimize(ConvexZone::from_constraints(kClocks, cs));
    }
}
BENCHMARK(BM_ZoneFromConstraints);

void BM_GuardAnd(benchmark::State& state) {
    const std::vector<Guard> guards = sample_guards(32);
    std::size_t i = 0;
    for (auto _ : state) {
        const Guard& a = guards[i % guards.size()];
        const Guard& b = guards[(i + 7) % guards.size()];
        benchmark::DoNotOptimize(guard_and(a, b));
        ++i;
    }
}
BENCHMARK(BM_GuardAnd);

void BM_GuardNot(benchmark::State& state) {
    const std::vector<Guard> guards = sample_guards(32);
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(guard_not(guards[i++ % guards.size()]));
    }
}
BENCHMARK(BM_GuardNot);

void BM_TimePredecessor(benchmark::State& state) {
    const std::vector<Guard> guards = sample_guards(32);
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(time_predecessor(guards[i++ % guards.size()]));
    }
}
BENCHMARK(BM_TimePredecessor);

void BM_GuardContains(benchmark::State& state) {
    const std::vector<Guard> guards = sample_guards(32);
    Rng rng(7);
    const ClockValuation v = gen_valuation(rng, kClocks, 10);
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(guards[i++ % guards.size()].contains(v));
    }
}
BENCHMARK(BM_GuardContains);

}  // namespace

BENCHMARK_MAIN();
