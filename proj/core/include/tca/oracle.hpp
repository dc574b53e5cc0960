#pragma once

#include "tca/analysis.hpp"
#include "tca/generator.hpp"
#include "tca/semantics.hpp"

#include <functional>
#include <optional>
#include <string>

namespace tca {

/// Independent witness for delayed satisfaction: solves, per atomic bound of
/// each zone, the interval of delays under which the shifted valuation still
/// meets it, intersecting within a zone and unioning across zones. Returns a
/// delay in the union, or nothing when every window is out of reach. This
/// never goes through the time_predecessor implementation.
std::optional<Rational> delta_interval_oracle(const Guard& g, const ClockValuation& v);

/// Enumerates the half-step grid [0, bound]^clocks used as the exhaustive
/// side of zone-algebra checks. Stops early when the callback returns false.
void for_each_grid_valuation(const std::vector<std::string>& clocks, int bound,
                             const std::function<bool(const ClockValuation&)>& fn);

/// Runs the automaton and its flattening in lockstep over the trace and
/// checks the configuration correspondence: both bottom out together, or the
/// flattened state tracks exactly the original's state and active norm sets,
/// with equal valuations and conflict flags. On failure, `diagnostic`
/// receives a description when non-null.
bool check_theorem_lockstep(const TimedContractAutomaton& m, const TimedTrace& trace,
                            std::string* diagnostic = nullptr);

/// Lockstep check against a flattening built beforehand, for callers running
/// many traces over the same automaton.
bool check_theorem_lockstep(const TimedContractAutomaton& m, const FlattenedAutomaton& flat,
                            const TimedTrace& trace, std::string* diagnostic = nullptr);

/// Soundness probe: when analysis reports the automaton conflict-free, runs
/// the given number of random traces and checks that none ever flags a
/// conflict. Vacuously true when the analysis reports potential conflicts.
bool check_soundness(const TimedContractAutomaton& m, int num_traces, std::uint64_t trace_seed,
                     std::string* diagnostic = nullptr);

// ── Seeded property suites ──────────────────────────────────────────────────

enum class Suite {
    ActiveMembership,   // concrete active set belongs to the abstract family
    TimingExclusion,    // timing conditions of distinct subsets never overlap
    SatImpliesTiming,   // satisfaction implies the discharge window holds
    Determinism,        // every flattening is deterministic
    Lockstep,           // configuration correspondence under random traces
    Soundness,          // conflict-free verdicts survive random simulation
    Zones,              // zone algebra agrees with grid evaluation and the delay oracle
};

std::optional<Suite> suite_from(const std::string& token);
std::string to_string(Suite suite);

struct SuiteResult {
    int passed = 0;
    int failed = 0;
    std::uint64_t first_failing_seed = 0;
    std::string message;

    bool ok() const { return failed == 0; }
};

/// Runs `count` seeded instances of the suite starting at `seed`.
SuiteResult run_suite(Suite suite, std::uint64_t seed, int count);

}  // namespace tca
