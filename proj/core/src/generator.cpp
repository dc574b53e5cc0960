#include "tca/generator.hpp"

#include <algorithm>
#include <string>

namespace tca {

namespace {

const std::vector<std::string> kParties = {"A", "B"};
const std::vector<std::string> kActionPool = {"a", "b", "c", "d", "e"};

Guard interval_guard(const std::vector<std::string>& clocks, const std::string& clock,
                     Comparator op, int constant) {
    return Guard::of_zone(ConvexZone::from_constraints(
        clocks, {Constraint{clock, "", op, Rational(constant)}}));
}

}  // namespace

Guard gen_guard(Rng& rng, const std::vector<std::string>& clocks, int maxConstant) {
    // User clocks only; the global clock stays unconstrained in norm guards.
    std::vector<std::string> usable(clocks.begin() + 1, clocks.end());
    if (usable.empty()) return Guard::true_guard(clocks);

    const std::string& x = rng.pick(usable);
    const int c = rng.below(maxConstant + 1);
    switch (rng.below(8)) {
        case 0:
            return Guard::true_guard(clocks);
        case 1:
            return interval_guard(clocks, x, Comparator::LessEq, c);
        case 2:
            return interval_guard(clocks, x, Comparator::Less, std::max(1, c));
        case 3:
            return interval_guard(clocks, x, Comparator::GreaterEq, c);
        case 4:
            return interval_guard(clocks, x, Comparator::Greater, c);
        case 5: {  // bounded window
            const int hi = rng.between(c, maxConstant);
            return Guard::of_zone(ConvexZone::from_constraints(
                clocks, {Constraint{x, "", Comparator::GreaterEq, Rational(c)},
                         Constraint{x, "", Comparator::LessEq, Rational(hi)}}));
        }
        case 6: {  // difference constraint when two user clocks exist
            if (usable.size() < 2) return interval_guard(clocks, x, Comparator::LessEq, c);
            const std::string& y = usable[0] == x ? usable[1] : usable[0];
            return Guard::of_zone(ConvexZone::from_constraints(
                clocks,
                {Constraint{x, y, Comparator::LessEq, Rational(rng.between(-maxConstant, maxConstant))}}));
        }
        default: {  // two-zone union
            const int hi = rng.between(std::min(c + 1, maxConstant), maxConstant);
            return guard_or(interval_guard(clocks, x, Comparator::LessEq, c),
                            interval_guard(clocks, x, Comparator::GreaterEq, hi));
        }
    }
}

Norm gen_norm(Rng& rng, const std::vector<std::string>& clocks,
              const std::vector<ActionLabel>& labels, int maxConstant, const std::string& id) {
    Norm n;
    switch (rng.below(3)) {
        case 0: n.modality = Modality::Obligation; break;
        case 1: n.modality = Modality::Permission; break;
        default: n.modality = Modality::Prohibition; break;
    }
    const ActionLabel& label = rng.pick(labels);
    n.party = label.party;
    n.action = label.action;
    n.guard = gen_guard(rng, clocks, maxConstant);
    n.id = id;
    return n;
}

ClockValuation gen_valuation(Rng& rng, const std::vector<std::string>& clocks, int maxConstant) {
    // Half-integer grid up to maxConstant + 1, covering both sides of every
    // strict and non-strict boundary the generator can produce.
    ClockValuation v;
    const int steps = 2 * (maxConstant + 1);
    for (const std::string& c : clocks) {
        v[c] = Rational(rng.below(steps + 1), 2);
    }
    return v;
}

std::vector<Constraint> gen_constraints(Rng& rng, const std::vector<std::string>& clocks,
                                        int maxConstant) {
    std::vector<std::string> usable(clocks.begin() + 1, clocks.end());
    std::vector<Constraint> out;
    const int count = rng.between(0, 3);
    const std::vector<Comparator> ops = {Comparator::Less, Comparator::LessEq, Comparator::Eq,
                                         Comparator::GreaterEq, Comparator::Greater};
    for (int i = 0; i < count && !usable.empty(); ++i) {
        Constraint c;
        c.left = rng.pick(usable);
        if (usable.size() >= 2 && rng.chance(30)) {
            do {
                c.right = rng.pick(usable);
            } while (c.right == c.left);
            c.constant = Rational(rng.between(-maxConstant, maxConstant));
        } else {
            c.constant = Rational(rng.below(maxConstant + 1));
        }
        c.op = ops[static_cast<std::size_t>(rng.below(static_cast<int>(ops.size())))];
        out.push_back(std::move(c));
    }
    return out;
}

TimedContractAutomaton gen_automaton(const GenParams& params) {
    Rng rng(params.seed);

    TimedContractAutomaton::Definition def;
    const int clock_count = rng.between(1, std::max(1, params.maxClocks));
    for (int i = 0; i < clock_count; ++i) {
        def.clocks.push_back("c" + std::to_string(i + 1));
    }
    std::vector<std::string> full_clocks = {kGlobalClock};
    full_clocks.insert(full_clocks.end(), def.clocks.begin(), def.clocks.end());

    def.parties = kParties;
    const int action_count = std::clamp(params.alphabetSize, 1, static_cast<int>(kActionPool.size()));
    def.actions.assign(kActionPool.begin(), kActionPool.begin() + action_count);

    std::vector<ActionLabel> labels;
    for (const std::string& p : def.parties) {
        for (const std::string& a : def.actions) {
            labels.push_back(ActionLabel{p, a, false});
        }
    }

    const int state_count = rng.between(1, std::max(1, params.maxStates));
    int norm_budget = 2 * params.maxNormsPerState;
    int norm_counter = 0;
    for (int s = 0; s < state_count; ++s) {
        TimedContractAutomaton::Definition::StateDef st;
        st.id = "q" + std::to_string(s);
        const int norms_here = std::min(rng.between(0, params.maxNormsPerState), norm_budget);
        for (int k = 0; k < norms_here; ++k) {
            Norm n = gen_norm(rng, full_clocks, labels, params.maxConstant,
                              "n" + std::to_string(norm_counter++));
            if (rng.chance(50)) {
                st.pers.push_back(std::move(n));
            } else {
                st.eph.push_back(std::move(n));
            }
            --norm_budget;
        }
        def.states.push_back(std::move(st));
    }
    def.initial = "q0";

    auto random_reset = [&]() {
        PartialReset reset;
        for (const std::string& c : def.clocks) {
            if (rng.chance(30)) reset[c] = Rational(0);
        }
        return reset;
    };

    for (int s = 0; s < state_count; ++s) {
        const int groups = rng.between(0, 3);
        std::vector<ActionLabel> used;
        for (int g = 0; g < groups; ++g) {
            const ActionLabel& label = rng.pick(labels);
            if (std::find(used.begin(), used.end(), label) != used.end()) continue;
            used.push_back(label);

            const std::string from = "q" + std::to_string(s);
            if (rng.chance(60)) {
                // Single transition; any guard keeps the state deterministic.
                TimedContractAutomaton::Definition::TransitionDef td;
                td.from = from;
                td.label = label;
                td.guard = rng.chance(50) ? Guard::true_guard(full_clocks)
                                          : gen_guard(rng, full_clocks, params.maxConstant);
                td.reset = random_reset();
                td.to = "q" + std::to_string(rng.below(state_count));
                def.transitions.push_back(std::move(td));
            } else {
                // Two siblings partitioning an interval on one clock.
                const std::string clock = "c" + std::to_string(rng.between(1, clock_count));
                const int threshold = rng.between(1, params.maxConstant);
                TimedContractAutomaton::Definition::TransitionDef low;
                low.from = from;
                low.label = label;
                low.guard = interval_guard(full_clocks, clock, Comparator::Less, threshold);
                low.reset = random_reset();
                low.to = "q" + std::to_string(rng.below(state_count));
                TimedContractAutomaton::Definition::TransitionDef high;
                high.from = from;
                high.label = label;
                high.guard = interval_guard(full_clocks, clock, Comparator::GreaterEq, threshold);
                high.reset = random_reset();
                high.to = "q" + std::to_string(rng.below(state_count));
                def.transitions.push_back(std::move(low));
                def.transitions.push_back(std::move(high));
            }
        }
    }
    return TimedContractAutomaton(std::move(def));
}

TimedTrace gen_trace(const TimedContractAutomaton& m, const GenParams& params) {
    Rng rng(params.seed);
    const std::vector<ActionLabel> labels = m.alphabet(false);
    TimedTrace trace;
    if (labels.empty()) return trace;

    const int count = rng.between(1, std::max(1, params.traceLength));
    Rational now(0);
    for (int i = 0; i < count; ++i) {
        now += Rational(rng.between(1, 6), 2);  // half-steps between ½ and 3
        if (now > params.maxTimestamp) break;
        ActionLabel label = rng.pick(labels);
        label.attempted = rng.chance(25);
        trace.events.push_back(TimedEvent{std::move(label), now});
    }
    return trace;
}

}  // namespace tca
