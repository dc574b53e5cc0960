#include "tca/semantics.hpp"

#include "tca/errors.hpp"

#include <algorithm>

namespace tca {

namespace {

Rational delay_of(const Configuration& c, const TimedEvent& e) {
    const Rational now = c.valuation.at(kGlobalClock);
    if (e.at < now) {
        throw ModelError("event " + e.label.str() + " at " + e.at.str() +
                         " precedes the current global time " + now.str());
    }
    return e.at - now;
}

}  // namespace

Configuration initial_configuration(const TimedContractAutomaton& m) {
    const State& q0 = m.state(m.initial_index());
    return Configuration{m.initial_index(), m.zero_valuation(), q0.pers, q0.eph};
}

StepOutcome deontic_step(const TimedContractAutomaton& m, const Configuration& c,
                         const TimedEvent& e) {
    const Rational delta = delay_of(c, e);
    const ClockValuation at_event = shifted(c.valuation, delta);

    NormSet violating;
    for (NormIndex n : set_union(c.persistent, c.ephemeral)) {
        if (vio(m.norm(n), e.label, at_event)) violating.push_back(n);
    }
    StepOutcome out;
    if (!violating.empty()) {
        out.violated = Violation{std::move(violating), e};
        return out;
    }
    // The valuation itself is not advanced here; only the norm sets change.
    out.next = Configuration{c.state, c.valuation,
                             active(m.norms(), c.persistent, e.label, at_event),
                             active(m.norms(), c.ephemeral, e.label, at_event)};
    return out;
}

Configuration temporal_step(const TimedContractAutomaton& m, const Configuration& c,
                            const TimedEvent& e) {
    const Rational delta = delay_of(c, e);
    const ClockValuation at_event = shifted(c.valuation, delta);

    const Transition* firing = nullptr;
    for (int t : m.transitions_from(c.state)) {
        const Transition& tr = m.transitions()[static_cast<std::size_t>(t)];
        if (!(tr.label == e.label)) continue;
        if (!tr.guard.contains(at_event)) continue;
        if (firing != nullptr) {
            if (firing->to == tr.to && firing->reset == tr.reset) continue;
            throw ModelError("nondeterministic step: two transitions fire on " + e.label.str() +
                             " from state " + m.state(c.state).id);
        }
        firing = &tr;
    }
    if (firing == nullptr) {
        return Configuration{c.state, at_event, c.persistent, c.ephemeral};
    }
    const State& target = m.state(firing->to);
    return Configuration{firing->to, overridden(at_event, firing->reset),
                         set_union(c.persistent, target.pers), target.eph};
}

StepOutcome step(const TimedContractAutomaton& m, const Configuration& c, const TimedEvent& e) {
    StepOutcome out = deontic_step(m, c, e);
    if (out.violated) return out;
    out.next = temporal_step(m, *out.next, e);
    out.conflict =
        conflict_at(m.norms(), set_union(out.next->persistent, out.next->ephemeral),
                    out.next->valuation);
    return out;
}

std::optional<ConflictPair> conflict_at(const std::vector<Norm>& pool, const NormSet& norms,
                                        const ClockValuation& v) {
    std::vector<ConflictPair> candidates;
    for (NormIndex a : norms) {
        const Norm& left = pool[a];
        if (left.modality == Modality::Prohibition) continue;
        for (NormIndex b : norms) {
            const Norm& right = pool[b];
            if (right.modality != Modality::Prohibition) continue;
            if (left.party != right.party || left.action != right.action) continue;
            candidates.emplace_back(a, b);
        }
    }
    std::sort(candidates.begin(), candidates.end(), [&](const ConflictPair& x, const ConflictPair& y) {
        const auto kx = std::make_pair(pool[x.first].id, pool[x.second].id);
        const auto ky = std::make_pair(pool[y.first].id, pool[y.second].id);
        return kx < ky;
    });
    for (const ConflictPair& p : candidates) {
        if (pool[p.first].guard.contains(v) && pool[p.second].guard.contains(v)) {
            return p;
        }
    }
    return std::nullopt;
}

RunReport run_trace(const TimedContractAutomaton& m, const TimedTrace& trace) {
    validate_trace(trace);
    RunReport report;
    Configuration current = initial_configuration(m);
    report.initial_conflict = conflict_at(
        m.norms(), set_union(current.persistent, current.ephemeral), current.valuation);
    report.any_conflict = report.initial_conflict.has_value();

    for (const TimedEvent& e : trace.events) {
        StepOutcome outcome = step(m, current, e);
        const bool violated = outcome.violated.has_value();
        if (outcome.conflict) report.any_conflict = true;
        if (!violated) current = *outcome.next;
        report.steps.push_back(RunStep{e, std::move(outcome)});
        if (violated) {
            report.violated = true;
            break;
        }
    }
    report.final_configuration = current;
    return report;
}

}  // namespace tca
