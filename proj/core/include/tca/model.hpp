#pragma once

#include "tca/zone.hpp"

#include <cstdint>
#include <set>
#include <string>
#include <vector>

namespace tca {

// ── Events and traces ───────────────────────────────────────────────────────

/// A party:action pair as observed in traces or labelling transitions.
/// Attempted events record an attempt rather than a performance; they violate
/// permissions inside their window and never match ordinary transitions.
struct ActionLabel {
    std::string party;
    std::string action;
    bool attempted = false;

    bool operator==(const ActionLabel&) const = default;
    auto operator<=>(const ActionLabel&) const = default;

    std::string str() const { return party + ":" + (attempted ? "~" : "") + action; }
};

/// One observed event stamped with absolute (global-clock) time.
struct TimedEvent {
    ActionLabel label;
    Rational at;
};

/// Finite sequence of observed events with strictly increasing timestamps.
struct TimedTrace {
    std::vector<TimedEvent> events;
};

/// Throws ModelError unless timestamps are nonnegative and strictly increasing.
void validate_trace(const TimedTrace& trace);

// ── Norms ───────────────────────────────────────────────────────────────────

enum class Modality { Obligation, Permission, Prohibition };

std::string to_string(Modality m);

/// A deontic atom: a modality over a party, an action, and a timing window.
/// Norms are compared by content for set semantics; the id only names the
/// norm in reports and serialized documents.
struct Norm {
    Modality modality = Modality::Obligation;
    std::string party;
    std::string action;
    Guard guard = Guard::false_guard({});
    std::string id;

    bool same_content(const Norm& o) const {
        return modality == o.modality && party == o.party && action == o.action &&
               guard == o.guard;
    }

    std::string str() const;
};

/// Index into an automaton's norm pool.
using NormIndex = std::uint32_t;

/// Set of norms, kept as a sorted vector of pool indices.
using NormSet = std::vector<NormIndex>;

bool set_contains(const NormSet& s, NormIndex n);
NormSet set_union(const NormSet& a, const NormSet& b);
NormSet set_difference(const NormSet& a, const NormSet& b);
bool is_subset(const NormSet& a, const NormSet& b);

// ── Automata ────────────────────────────────────────────────────────────────

struct Transition {
    int from = 0;
    ActionLabel label;
    Guard guard = Guard::false_guard({});
    PartialReset reset;
    int to = 0;
};

struct State {
    std::string id;
    NormSet pers;
    NormSet eph;
};

/// A timed contract automaton: states labelled with persistent and ephemeral
/// norms, transitions carrying party:action labels, clock guards, and resets.
/// Immutable after construction; all queries are const.
class TimedContractAutomaton {
public:
    /// Construction input with concrete norm objects attached to states.
    /// Norms with equal content are merged into one pool entry.
    struct Definition {
        std::vector<std::string> clocks;  // user clocks; the global clock is added first
        std::vector<std::string> parties;
        std::vector<std::string> actions;
        struct StateDef {
            std::string id;
            std::vector<Norm> pers;
            std::vector<Norm> eph;
        };
        std::vector<StateDef> states;
        std::string initial;
        struct TransitionDef {
            std::string from;
            ActionLabel label;
            Guard guard = Guard::false_guard({});
            PartialReset reset;
            std::string to;
        };
        std::vector<TransitionDef> transitions;
    };

    /// Pre-resolved construction input used by automaton transformations.
    struct Parts {
        std::vector<std::string> clocks;  // full list, global clock first
        std::vector<std::string> parties;
        std::vector<std::string> actions;
        std::vector<Norm> norms;
        std::vector<State> states;
        int initial = 0;
        std::vector<Transition> transitions;
    };

    explicit TimedContractAutomaton(Definition def);
    static TimedContractAutomaton from_parts(Parts parts);

    const std::vector<std::string>& clocks() const { return clocks_; }
    const std::vector<std::string>& parties() const { return parties_; }
    const std::vector<std::string>& actions() const { return actions_; }

    const std::vector<Norm>& norms() const { return norms_; }
    const Norm& norm(NormIndex n) const { return norms_[n]; }

    const std::vector<State>& states() const { return states_; }
    const State& state(int index) const { return states_[static_cast<std::size_t>(index)]; }
    int state_index(const std::string& id) const;  // -1 when absent
    int initial_index() const { return initial_; }

    const std::vector<Transition>& transitions() const { return transitions_; }
    const std::vector<int>& transitions_from(int state) const {
        return outgoing_[static_cast<std::size_t>(state)];
    }

    /// Declared alphabet in deterministic order: every party:action pair,
    /// followed by the attempted variants when requested.
    std::vector<ActionLabel> alphabet(bool include_attempted) const;

    Guard true_guard() const { return Guard::true_guard(clocks_); }
    Guard false_guard() const { return Guard::false_guard(clocks_); }

    /// All clocks at zero.
    ClockValuation zero_valuation() const;

    bool operator==(const TimedContractAutomaton& o) const;

private:
    TimedContractAutomaton() = default;
    void index();

    std::vector<std::string> clocks_;
    std::vector<std::string> parties_;
    std::vector<std::string> actions_;
    std::vector<Norm> norms_;
    std::vector<State> states_;
    int initial_ = 0;
    std::vector<Transition> transitions_;
    std::vector<std::vector<int>> outgoing_;
};

// ── Well-formedness and reachability ────────────────────────────────────────

struct ValidationReport {
    std::vector<std::string> problems;
    bool ok() const { return problems.empty(); }
};

/// Checks the two well-formedness conditions: the global clock is never
/// reset, and same-label transitions from a state either agree on target and
/// reset or have disjoint guards.
ValidationReport validate_wellformed(const TimedContractAutomaton& m);

/// States reachable from the initial state ignoring guards.
std::set<std::string> reachable_states(const TimedContractAutomaton& m);

// ── Norm semantics ──────────────────────────────────────────────────────────

/// Violation at an event: permissions by a matching attempted action inside
/// the window, prohibitions by a matching performed action inside the window,
/// obligations by the window closing for good.
bool vio(const Norm& n, const ActionLabel& label, const ClockValuation& v);

/// Satisfaction at an event: obligations by a matching performed action
/// inside the window, permissions and prohibitions by the window closing.
bool sat(const Norm& n, const ActionLabel& label, const ClockValuation& v);

/// Drops from the set every norm satisfied at the event.
NormSet active(const std::vector<Norm>& pool, const NormSet& set, const ActionLabel& label,
               const ClockValuation& v);

}  // namespace tca
