#include "tca/flatten.hpp"

#include "tca/errors.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <tuple>

namespace tca {

Guard tc(const Norm& n) {
    if (n.modality == Modality::Obligation) {
        return n.guard;
    }
    return guard_not(time_predecessor(n.guard));
}

namespace {

/// Does the label discharge-match an obligation over party:action?
bool obligation_over(const Norm& n, const ActionLabel& label) {
    return n.modality == Modality::Obligation && !label.attempted && n.party == label.party &&
           n.action == label.action;
}

}  // namespace

std::vector<NormSet> active_alpha(const std::vector<Norm>& pool, const NormSet& set,
                                  const ActionLabel& label) {
    NormSet mandatory;
    NormSet optional;
    for (NormIndex n : set) {
        if (pool[n].modality == Modality::Obligation && !obligation_over(pool[n], label)) {
            mandatory.push_back(n);
        } else {
            optional.push_back(n);
        }
    }
    std::sort(optional.begin(), optional.end(),
              [&](NormIndex a, NormIndex b) { return pool[a].id < pool[b].id; });

    std::vector<NormSet> out;
    const std::size_t count = std::size_t{1} << optional.size();
    out.reserve(count);
    for (std::size_t mask = 0; mask < count; ++mask) {
        NormSet subset = mandatory;
        for (std::size_t bit = 0; bit < optional.size(); ++bit) {
            if (mask & (std::size_t{1} << bit)) subset.push_back(optional[bit]);
        }
        std::sort(subset.begin(), subset.end());
        out.push_back(std::move(subset));
    }
    return out;
}

Guard timing_condition(const std::vector<Norm>& pool, const std::vector<std::string>& clocks,
                       const ActionLabel& label, const NormSet& satisfied,
                       const NormSet& retained) {
    Guard conj = Guard::true_guard(clocks);
    for (NormIndex n : satisfied) {
        const Norm& norm = pool[n];
        if (norm.modality == Modality::Obligation && !obligation_over(norm, label)) {
            throw ModelError("timing condition: obligation " + norm.id +
                             " cannot be discharged by " + label.str());
        }
        conj = guard_and(conj, tc(norm));
    }
    Guard disj = Guard::false_guard(clocks);
    for (NormIndex n : retained) {
        const Norm& norm = pool[n];
        if (norm.modality != Modality::Obligation || obligation_over(norm, label)) {
            disj = guard_or(disj, tc(norm));
        }
    }
    return guard_and(conj, guard_not(disj));
}

namespace {

std::string join_ids(const std::vector<Norm>& pool, const NormSet& set) {
    std::vector<std::string> ids;
    ids.reserve(set.size());
    for (NormIndex n : set) ids.push_back(pool[n].id);
    std::sort(ids.begin(), ids.end());
    std::string out;
    for (std::size_t i = 0; i < ids.size(); ++i) {
        if (i > 0) out += ",";
        out += ids[i];
    }
    return out;
}

std::string flat_state_id(const TimedContractAutomaton& m, const FlatState& fs) {
    return fs.base_id + "|E={" + join_ids(m.norms(), fs.eph) + "}|P={" +
           join_ids(m.norms(), fs.pers) + "}";
}

/// Guard under which the event does NOT violate the norm.
Guard non_violation_window(const Norm& n, const ActionLabel& label,
                           const std::vector<std::string>& clocks) {
    switch (n.modality) {
        case Modality::Obligation:
            return time_predecessor(n.guard);
        case Modality::Permission:
            if (label.attempted && label.party == n.party && label.action == n.action) {
                return guard_not(n.guard);
            }
            return Guard::true_guard(clocks);
        case Modality::Prohibition:
            if (!label.attempted && label.party == n.party && label.action == n.action) {
                return guard_not(n.guard);
            }
            return Guard::true_guard(clocks);
    }
    return Guard::true_guard(clocks);
}

}  // namespace

FlattenedAutomaton flatten(const TimedContractAutomaton& m) {
    using Key = std::tuple<int, NormSet, NormSet>;
    std::map<Key, int> seen;
    std::vector<FlatState> flat_states;
    std::vector<Transition> transitions;
    std::deque<int> worklist;

    // Caches: discharge windows are reused across every subset split.
    std::vector<Guard> tc_cache;
    tc_cache.reserve(m.norms().size());
    for (const Norm& n : m.norms()) tc_cache.push_back(tc(n));

    auto cached_timing = [&](const ActionLabel& label, const NormSet& satisfied,
                             const NormSet& retained) {
        Guard conj = m.true_guard();
        for (NormIndex n : satisfied) conj = guard_and(conj, tc_cache[n]);
        Guard disj = m.false_guard();
        for (NormIndex n : retained) {
            const Norm& norm = m.norm(n);
            if (norm.modality != Modality::Obligation || obligation_over(norm, label)) {
                disj = guard_or(disj, tc_cache[n]);
            }
        }
        return guard_and(conj, guard_not(disj));
    };

    auto intern = [&](int base, NormSet eph, NormSet pers) -> int {
        Key key{base, eph, pers};
        auto it = seen.find(key);
        if (it != seen.end()) return it->second;
        const int index = static_cast<int>(flat_states.size());
        seen.emplace(std::move(key), index);
        flat_states.push_back(FlatState{base, m.state(base).id, std::move(eph), std::move(pers)});
        worklist.push_back(index);
        return index;
    };

    const State& q0 = m.state(m.initial_index());
    intern(m.initial_index(), q0.eph, q0.pers);

    const std::vector<ActionLabel> labels = m.alphabet(true);

    while (!worklist.empty()) {
        const int s = worklist.front();
        worklist.pop_front();
        // Copy: intern() may grow flat_states and invalidate references.
        const FlatState fs = flat_states[static_cast<std::size_t>(s)];

        // Explicit rule: each original transition splits over the possible
        // discharge subsets of the carried persistent norms.
        for (int t : m.transitions_from(fs.base)) {
            const Transition& tr = m.transitions()[static_cast<std::size_t>(t)];
            for (const NormSet& kept : active_alpha(m.norms(), fs.pers, tr.label)) {
                const Guard guard = guard_and(
                    tr.guard, cached_timing(tr.label, set_difference(fs.pers, kept), kept));
                const State& target = m.state(tr.to);
                const int to = intern(tr.to, target.eph, set_union(kept, target.pers));
                transitions.push_back(Transition{s, tr.label, guard, tr.reset, to});
            }
        }

        // Implicit rule: for every alphabet label (attempted variants too),
        // a self-loop covers the case where no transition fires, splitting
        // over discharge subsets of both tracked sets.
        for (const ActionLabel& label : labels) {
            Guard fired = m.false_guard();
            for (int t : m.transitions_from(fs.base)) {
                const Transition& tr = m.transitions()[static_cast<std::size_t>(t)];
                if (tr.label == label) fired = guard_or(fired, tr.guard);
            }
            const Guard not_fired = guard_not(fired);
            for (const NormSet& eph_kept : active_alpha(m.norms(), fs.eph, label)) {
                const Guard eph_cond =
                    cached_timing(label, set_difference(fs.eph, eph_kept), eph_kept);
                for (const NormSet& pers_kept : active_alpha(m.norms(), fs.pers, label)) {
                    const Guard guard = guard_and(
                        not_fired,
                        guard_and(eph_cond, cached_timing(label, set_difference(fs.pers, pers_kept),
                                                          pers_kept)));
                    const int to = intern(fs.base, eph_kept, pers_kept);
                    transitions.push_back(Transition{s, label, guard, PartialReset{}, to});
                }
            }
        }
    }

    TimedContractAutomaton::Parts parts;
    parts.clocks = m.clocks();
    parts.parties = m.parties();
    parts.actions = m.actions();
    parts.norms = m.norms();
    parts.initial = 0;
    parts.transitions = std::move(transitions);
    parts.states.reserve(flat_states.size());
    for (const FlatState& fs : flat_states) {
        State st;
        st.id = flat_state_id(m, fs);
        st.eph = set_union(fs.eph, fs.pers);
        parts.states.push_back(std::move(st));
    }

    return FlattenedAutomaton{TimedContractAutomaton::from_parts(std::move(parts)),
                              std::move(flat_states)};
}

FlattenedAutomaton prune_unsat(const FlattenedAutomaton& flat) {
    const TimedContractAutomaton& a = flat.automaton;

    // A transition can only fire at valuations where its guard holds and no
    // norm active in the source state is violated by the event; everything
    // else bottoms out in the norm-bookkeeping step first.
    std::vector<bool> keep(a.transitions().size(), false);
    for (std::size_t t = 0; t < a.transitions().size(); ++t) {
        const Transition& tr = a.transitions()[t];
        Guard feasible = tr.guard;
        for (NormIndex n : a.state(tr.from).eph) {
            if (feasible.is_false()) break;
            feasible = guard_and(feasible, non_violation_window(a.norm(n), tr.label, a.clocks()));
        }
        keep[t] = !feasible.is_false();
    }

    std::vector<int> remap(a.states().size(), -1);
    std::deque<int> frontier = {0};
    remap[0] = 0;
    std::vector<int> order = {0};
    while (!frontier.empty()) {
        const int q = frontier.front();
        frontier.pop_front();
        for (int t : a.transitions_from(q)) {
            if (!keep[static_cast<std::size_t>(t)]) continue;
            const int next = a.transitions()[static_cast<std::size_t>(t)].to;
            if (remap[static_cast<std::size_t>(next)] == -1) {
                remap[static_cast<std::size_t>(next)] = static_cast<int>(order.size());
                order.push_back(next);
                frontier.push_back(next);
            }
        }
    }

    TimedContractAutomaton::Parts parts;
    parts.clocks = a.clocks();
    parts.parties = a.parties();
    parts.actions = a.actions();
    parts.norms = a.norms();
    parts.initial = 0;
    std::vector<FlatState> flat_states;
    for (int old_index : order) {
        parts.states.push_back(a.state(old_index));
        flat_states.push_back(flat.flat_states[static_cast<std::size_t>(old_index)]);
    }
    for (std::size_t t = 0; t < a.transitions().size(); ++t) {
        if (!keep[t]) continue;
        Transition tr = a.transitions()[t];
        if (remap[static_cast<std::size_t>(tr.from)] == -1) continue;
        tr.from = remap[static_cast<std::size_t>(tr.from)];
        tr.to = remap[static_cast<std::size_t>(tr.to)];
        parts.transitions.push_back(std::move(tr));
    }
    return FlattenedAutomaton{TimedContractAutomaton::from_parts(std::move(parts)),
                              std::move(flat_states)};
}

bool check_determinism(const TimedContractAutomaton& m) {
    for (std::size_t s = 0; s < m.states().size(); ++s) {
        const auto& out = m.transitions_from(static_cast<int>(s));
        for (std::size_t i = 0; i < out.size(); ++i) {
            for (std::size_t j = i + 1; j < out.size(); ++j) {
                const Transition& a = m.transitions()[static_cast<std::size_t>(out[i])];
                const Transition& b = m.transitions()[static_cast<std::size_t>(out[j])];
                if (!(a.label == b.label)) continue;
                if (a.to == b.to && a.reset == b.reset) continue;
                if (!guard_and(a.guard, b.guard).is_false()) return false;
            }
        }
    }
    return true;
}

}  // namespace tca
