#pragma once

#include "tca/model.hpp"

#include <vector>

namespace tca {

/// One state of a flattened automaton: a base state of the original automaton
/// together with the ephemeral norms still active there and the persistent
/// norms carried over from earlier states.
struct FlatState {
    int base = 0;
    std::string base_id;
    NormSet eph;
    NormSet pers;

    bool operator==(const FlatState&) const = default;
};

/// An automaton whose norms are all ephemeral: each state is a FlatState and
/// its ephemeral labelling is the union of the tracked sets. The persistent
/// labelling is empty everywhere, and the construction is deterministic.
struct FlattenedAutomaton {
    TimedContractAutomaton automaton;
    std::vector<FlatState> flat_states;  // aligned with automaton.states()
};

/// Timing condition under which a norm is discharged: the window itself for
/// obligations, and the window being permanently closed for permissions and
/// prohibitions.
Guard tc(const Norm& n);

/// All subsets of the set that the event might leave active, ignoring time:
/// every subset must retain each obligation whose party:action differs from
/// the label. Subsets are emitted in canonical (sorted-id) order.
std::vector<NormSet> active_alpha(const std::vector<Norm>& pool, const NormSet& set,
                                  const ActionLabel& label);

/// Guard that holds exactly when every norm in `satisfied` is discharged by
/// the event and none in `retained` is: the conjunction of discharge windows
/// for the former against the negated disjunction for the latter (keeping
/// only obligations over the label itself on the negated side). Obligations
/// over other actions may not appear in `satisfied`.
Guard timing_condition(const std::vector<Norm>& pool, const std::vector<std::string>& clocks,
                       const ActionLabel& label, const NormSet& satisfied,
                       const NormSet& retained);

/// Reduces persistent norms to ephemeral ones. States of the result track the
/// currently active norm sets; explicit transitions split over the possible
/// discharge subsets of the carried persistent norms, and implicit self-loops
/// (one per alphabet label, attempted variants included) cover the events
/// that fire no transition. Only states reachable from the initial flat state
/// are constructed.
FlattenedAutomaton flatten(const TimedContractAutomaton& m);

/// Drops transitions that can never fire: those whose guard, conjoined with
/// the non-violation windows of every norm active in the source state, is
/// unsatisfiable. States left unreachable are dropped too. A run of the
/// pruned automaton is step-for-step identical to a run of the input.
FlattenedAutomaton prune_unsat(const FlattenedAutomaton& flat);

/// Same-label transitions from each state either agree on target and reset or
/// have disjoint guards. Holds for every flatten() output.
bool check_determinism(const TimedContractAutomaton& m);

}  // namespace tca
