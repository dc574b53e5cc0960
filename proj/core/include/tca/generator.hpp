#pragma once

#include "tca/model.hpp"

#include <cstdint>
#include <random>

namespace tca {

/// Bounds for random instance generation. Defaults are sized for desk-scale
/// differential runs: a handful of states and clocks, small integer
/// constants, short traces.
struct GenParams {
    std::uint64_t seed = 1;
    int maxStates = 5;
    int maxClocks = 2;          // user clocks; the global clock always exists
    int maxNormsPerState = 2;   // total norms are capped at twice this
    int maxConstant = 10;
    int alphabetSize = 3;       // actions; parties are fixed at two
    int traceLength = 8;
    Rational maxTimestamp = Rational(40);
};

/// Deterministic source of bounded draws. Built on a fixed-width engine with
/// hand-rolled reduction so sequences are stable across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }
    int below(int bound) {
        return bound <= 1 ? 0 : static_cast<int>(next() % static_cast<std::uint64_t>(bound));
    }
    int between(int lo, int hi) { return lo + below(hi - lo + 1); }  // inclusive
    bool chance(int percent) { return below(100) < percent; }

    template <typename T>
    const T& pick(const std::vector<T>& pool) {
        return pool[static_cast<std::size_t>(below(static_cast<int>(pool.size())))];
    }

private:
    std::mt19937_64 engine_;
};

/// A random well-formed automaton, reproducible from the seed. Determinism is
/// enforced by construction: same-label siblings partition a clock interval.
TimedContractAutomaton gen_automaton(const GenParams& params);

/// A random trace over the automaton's alphabet (attempted variants
/// included), with strictly increasing half-integer timestamps.
TimedTrace gen_trace(const TimedContractAutomaton& m, const GenParams& params);

/// Building blocks for property suites over standalone norms and guards.
Guard gen_guard(Rng& rng, const std::vector<std::string>& clocks, int maxConstant);
Norm gen_norm(Rng& rng, const std::vector<std::string>& clocks,
              const std::vector<ActionLabel>& labels, int maxConstant, const std::string& id);
ClockValuation gen_valuation(Rng& rng, const std::vector<std::string>& clocks, int maxConstant);

/// Random constraint list over one clock pair, the raw material for the
/// zone-algebra differential suite.
std::vector<Constraint> gen_constraints(Rng& rng, const std::vector<std::string>& clocks,
                                        int maxConstant);

}  // namespace tca
