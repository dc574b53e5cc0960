#include "tca/model.hpp"

#include "tca/errors.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>
#include <unordered_set>

namespace tca {

void validate_trace(const TimedTrace& trace) {
    Rational prev(-1);
    bool first = true;
    for (const TimedEvent& e : trace.events) {
        if (e.at < Rational(0)) {
            throw ModelError("trace timestamp " + e.at.str() + " is negative");
        }
        if (!first && !(prev < e.at)) {
            throw ModelError("trace timestamps must be strictly increasing (" + prev.str() +
                             " then " + e.at.str() + ")");
        }
        prev = e.at;
        first = false;
    }
}

std::string to_string(Modality m) {
    switch (m) {
        case Modality::Obligation: return "obligation";
        case Modality::Permission: return "permission";
        case Modality::Prohibition: return "prohibition";
    }
    return "?";
}

std::string Norm::str() const {
    const char* letter = modality == Modality::Obligation   ? "O"
                         : modality == Modality::Permission ? "P"
                                                            : "F";
    return std::string(letter) + "(" + party + ":" + action + " | " + guard.str() + ")";
}

bool set_contains(const NormSet& s, NormIndex n) {
    return std::binary_search(s.begin(), s.end(), n);
}

NormSet set_union(const NormSet& a, const NormSet& b) {
    NormSet out;
    out.reserve(a.size() + b.size());
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

NormSet set_difference(const NormSet& a, const NormSet& b) {
    NormSet out;
    out.reserve(a.size());
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

bool is_subset(const NormSet& a, const NormSet& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

namespace {

bool valid_identifier(const std::string& s) {
    if (s.empty()) return false;
    if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
    return std::all_of(s.begin(), s.end(), [](unsigned char c) {
        return std::isalnum(c) || c == '_';
    });
}

}  // namespace

TimedContractAutomaton::TimedContractAutomaton(Definition def) {
    // Clock list: the global clock first, then declared clocks.
    clocks_.push_back(kGlobalClock);
    for (const std::string& c : def.clocks) {
        if (c == kGlobalClock) {
            throw ModelError("clock name '" + kGlobalClock + "' is reserved for the global clock");
        }
        if (!valid_identifier(c)) {
            throw ModelError("invalid clock name '" + c + "'");
        }
        if (std::find(clocks_.begin(), clocks_.end(), c) != clocks_.end()) {
            throw ModelError("duplicate clock '" + c + "'");
        }
        clocks_.push_back(c);
    }
    parties_ = def.parties;
    actions_ = def.actions;

    auto declared = [](const std::vector<std::string>& pool, const std::string& name) {
        return std::find(pool.begin(), pool.end(), name) != pool.end();
    };

    // Intern norms by content; ids must be unambiguous.
    std::unordered_map<std::string, NormIndex> by_id;
    auto intern = [&](Norm n, const std::string& where) -> NormIndex {
        if (!declared(parties_, n.party)) {
            throw ModelError(where + ": undeclared party '" + n.party + "'");
        }
        if (!declared(actions_, n.action)) {
            throw ModelError(where + ": undeclared action '" + n.action + "'");
        }
        if (n.guard.clocks() != clocks_) {
            throw ModelError(where + ": norm guard is not over the automaton's clock list");
        }
        for (NormIndex i = 0; i < norms_.size(); ++i) {
            if (norms_[i].same_content(n)) return i;
        }
        if (n.id.empty()) {
            n.id = "n" + std::to_string(norms_.size());
        }
        auto [it, fresh] = by_id.emplace(n.id, static_cast<NormIndex>(norms_.size()));
        if (!fresh) {
            throw ModelError(where + ": norm id '" + n.id + "' names two different norms");
        }
        norms_.push_back(std::move(n));
        return it->second;
    };

    std::unordered_map<std::string, int> state_index;
    for (const auto& sd : def.states) {
        if (state_index.count(sd.id)) {
            throw ModelError("duplicate state id '" + sd.id + "'");
        }
        state_index[sd.id] = static_cast<int>(states_.size());
        State st;
        st.id = sd.id;
        for (const Norm& n : sd.pers) st.pers.push_back(intern(n, "state " + sd.id));
        for (const Norm& n : sd.eph) st.eph.push_back(intern(n, "state " + sd.id));
        auto dedup = [](NormSet& s) {
            std::sort(s.begin(), s.end());
            s.erase(std::unique(s.begin(), s.end()), s.end());
        };
        dedup(st.pers);
        dedup(st.eph);
        states_.push_back(std::move(st));
    }
    if (states_.empty()) {
        throw ModelError("automaton has no states");
    }
    auto init = state_index.find(def.initial);
    if (init == state_index.end()) {
        throw ModelError("initial state '" + def.initial + "' is not declared");
    }
    initial_ = init->second;

    for (const auto& td : def.transitions) {
        auto from = state_index.find(td.from);
        auto to = state_index.find(td.to);
        if (from == state_index.end()) {
            throw ModelError("transition from undeclared state '" + td.from + "'");
        }
        if (to == state_index.end()) {
            throw ModelError("transition to undeclared state '" + td.to + "'");
        }
        if (!declared(parties_, td.label.party)) {
            throw ModelError("transition uses undeclared party '" + td.label.party + "'");
        }
        if (!declared(actions_, td.label.action)) {
            throw ModelError("transition uses undeclared action '" + td.label.action + "'");
        }
        if (td.guard.clocks() != clocks_) {
            throw ModelError("transition guard is not over the automaton's clock list");
        }
        for (const auto& [clock, value] : td.reset) {
            // The global clock is caught by the well-formedness report, not here.
            if (clock != kGlobalClock &&
                std::find(clocks_.begin(), clocks_.end(), clock) == clocks_.end()) {
                throw ModelError("transition resets undeclared clock '" + clock + "'");
            }
        }
        transitions_.push_back(
            Transition{from->second, td.label, td.guard, td.reset, to->second});
    }
    index();
}

TimedContractAutomaton TimedContractAutomaton::from_parts(Parts parts) {
    TimedContractAutomaton m;
    m.clocks_ = std::move(parts.clocks);
    m.parties_ = std::move(parts.parties);
    m.actions_ = std::move(parts.actions);
    m.norms_ = std::move(parts.norms);
    m.states_ = std::move(parts.states);
    m.initial_ = parts.initial;
    m.transitions_ = std::move(parts.transitions);
    m.index();
    return m;
}

void TimedContractAutomaton::index() {
    outgoing_.assign(states_.size(), {});
    for (std::size_t t = 0; t < transitions_.size(); ++t) {
        outgoing_[static_cast<std::size_t>(transitions_[t].from)].push_back(static_cast<int>(t));
    }
}

int TimedContractAutomaton::state_index(const std::string& id) const {
    for (std::size_t i = 0; i < states_.size(); ++i) {
        if (states_[i].id == id) return static_cast<int>(i);
    }
    return -1;
}

std::vector<ActionLabel> TimedContractAutomaton::alphabet(bool include_attempted) const {
    std::vector<ActionLabel> out;
    out.reserve(parties_.size() * actions_.size() * (include_attempted ? 2 : 1));
    for (const std::string& p : parties_) {
        for (const std::string& a : actions_) {
            out.push_back(ActionLabel{p, a, false});
        }
    }
    if (include_attempted) {
        for (const std::string& p : parties_) {
            for (const std::string& a : actions_) {
                out.push_back(ActionLabel{p, a, true});
            }
        }
    }
    return out;
}

ClockValuation TimedContractAutomaton::zero_valuation() const {
    ClockValuation v;
    for (const std::string& c : clocks_) v[c] = Rational(0);
    return v;
}

bool TimedContractAutomaton::operator==(const TimedContractAutomaton& o) const {
    auto states_equal = [&]() {
        if (states_.size() != o.states_.size()) return false;
        for (std::size_t i = 0; i < states_.size(); ++i) {
            if (states_[i].id != o.states_[i].id) return false;
            auto norms_equal = [&](const NormSet& a, const NormSet& b) {
                if (a.size() != b.size()) return false;
                for (std::size_t k = 0; k < a.size(); ++k) {
                    if (!norms_[a[k]].same_content(o.norms_[b[k]])) return false;
                }
                return true;
            };
            if (!norms_equal(states_[i].pers, o.states_[i].pers)) return false;
            if (!norms_equal(states_[i].eph, o.states_[i].eph)) return false;
        }
        return true;
    };
    auto transitions_equal = [&]() {
        if (transitions_.size() != o.transitions_.size()) return false;
        for (std::size_t i = 0; i < transitions_.size(); ++i) {
            const Transition& a = transitions_[i];
            const Transition& b = o.transitions_[i];
            if (a.from != b.from || a.to != b.to || !(a.label == b.label) ||
                a.reset != b.reset || !(a.guard == b.guard)) {
                return false;
            }
        }
        return true;
    };
    return clocks_ == o.clocks_ && parties_ == o.parties_ && actions_ == o.actions_ &&
           initial_ == o.initial_ && states_equal() && transitions_equal();
}

ValidationReport validate_wellformed(const TimedContractAutomaton& m) {
    ValidationReport report;
    for (std::size_t t = 0; t < m.transitions().size(); ++t) {
        const Transition& tr = m.transitions()[t];
        if (tr.reset.count(kGlobalClock)) {
            report.problems.push_back("transition " + m.state(tr.from).id + " --" +
                                      tr.label.str() + "--> " + m.state(tr.to).id +
                                      " resets the global clock");
        }
    }
    for (std::size_t s = 0; s < m.states().size(); ++s) {
        const auto& out = m.transitions_from(static_cast<int>(s));
        for (std::size_t i = 0; i < out.size(); ++i) {
            for (std::size_t j = i + 1; j < out.size(); ++j) {
                const Transition& a = m.transitions()[static_cast<std::size_t>(out[i])];
                const Transition& b = m.transitions()[static_cast<std::size_t>(out[j])];
                if (!(a.label == b.label)) continue;
                if (a.to == b.to && a.reset == b.reset) continue;
                if (!guard_and(a.guard, b.guard).is_false()) {
                    report.problems.push_back(
                        "state " + m.state(static_cast<int>(s)).id + " is nondeterministic on " +
                        a.label.str() + ": overlapping guards lead to different outcomes");
                }
            }
        }
    }
    return report;
}

std::set<std::string> reachable_states(const TimedContractAutomaton& m) {
    std::vector<bool> seen(m.states().size(), false);
    std::deque<int> frontier = {m.initial_index()};
    seen[static_cast<std::size_t>(m.initial_index())] = true;
    while (!frontier.empty()) {
        const int q = frontier.front();
        frontier.pop_front();
        for (int t : m.transitions_from(q)) {
            const int next = m.transitions()[static_cast<std::size_t>(t)].to;
            if (!seen[static_cast<std::size_t>(next)]) {
                seen[static_cast<std::size_t>(next)] = true;
                frontier.push_back(next);
            }
        }
    }
    std::set<std::string> out;
    for (std::size_t i = 0; i < seen.size(); ++i) {
        if (seen[i]) out.insert(m.states()[i].id);
    }
    return out;
}

bool vio(const Norm& n, const ActionLabel& label, const ClockValuation& v) {
    switch (n.modality) {
        case Modality::Permission:
            return label.attempted && label.party == n.party && label.action == n.action &&
                   n.guard.contains(v);
        case Modality::Prohibition:
            return !label.attempted && label.party == n.party && label.action == n.action &&
                   n.guard.contains(v);
        case Modality::Obligation:
            return exceeds(v, n.guard);
    }
    return false;
}

bool sat(const Norm& n, const ActionLabel& label, const ClockValuation& v) {
    switch (n.modality) {
        case Modality::Obligation:
            return !label.attempted && label.party == n.party && label.action == n.action &&
                   n.guard.contains(v);
        case Modality::Permission:
        case Modality::Prohibition:
            return exceeds(v, n.guard);
    }
    return false;
}

NormSet active(const std::vector<Norm>& pool, const NormSet& set, const ActionLabel& label,
               const ClockValuation& v) {
    NormSet out;
    out.reserve(set.size());
    for (NormIndex n : set) {
        if (!sat(pool[n], label, v)) out.push_back(n);
    }
    return out;
}

}  // namespace tca
