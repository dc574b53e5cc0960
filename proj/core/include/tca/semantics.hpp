#pragma once

#include "tca/model.hpp"

#include <optional>
#include <utility>

namespace tca {

/// Runtime snapshot: automaton state, clock valuation, and the active
/// persistent and ephemeral norm sets. The global clock equals the total
/// elapsed time.
struct Configuration {
    int state = 0;
    ClockValuation valuation;
    NormSet persistent;
    NormSet ephemeral;

    bool operator==(const Configuration&) const = default;
};

/// A norm pair witnessing a conflict: an obligation or permission together
/// with a prohibition on the same party:action, both windows open.
using ConflictPair = std::pair<NormIndex, NormIndex>;

struct Violation {
    NormSet norms;  // every norm violated by the event
    TimedEvent event;
};

/// Result of consuming one event: either the next configuration or a
/// violation, plus a conflict witness evaluated at the post-step valuation.
struct StepOutcome {
    std::optional<Configuration> next;
    std::optional<Violation> violated;
    std::optional<ConflictPair> conflict;
};

Configuration initial_configuration(const TimedContractAutomaton& m);

/// Norm bookkeeping for one event: if any active norm is violated at the
/// shifted valuation the step bottoms out, otherwise satisfied norms are
/// dropped. State and valuation stay untouched.
StepOutcome deontic_step(const TimedContractAutomaton& m, const Configuration& c,
                         const TimedEvent& e);

/// Clock progression and state change for one event: the matching enabled
/// transition fires (re-activating the target's ephemeral norms), otherwise
/// the configuration stays put with clocks advanced.
Configuration temporal_step(const TimedContractAutomaton& m, const Configuration& c,
                            const TimedEvent& e);

/// Full step: norm bookkeeping first, then clock/state progression, then a
/// conflict check on the resulting configuration.
StepOutcome step(const TimedContractAutomaton& m, const Configuration& c, const TimedEvent& e);

/// First norm pair (in id order) with an obligation or permission and a
/// prohibition on the same party:action whose windows both contain v.
std::optional<ConflictPair> conflict_at(const std::vector<Norm>& pool, const NormSet& norms,
                                        const ClockValuation& v);

struct RunStep {
    TimedEvent event;
    StepOutcome outcome;
};

struct RunReport {
    std::optional<ConflictPair> initial_conflict;
    std::vector<RunStep> steps;
    bool violated = false;
    bool any_conflict = false;
    Configuration final_configuration;  // last non-violated configuration
};

/// Executes the trace from the initial configuration, halting at the first
/// violation and flagging every configuration holding conflicting norms.
RunReport run_trace(const TimedContractAutomaton& m, const TimedTrace& trace);

}  // namespace tca
