#pragma once

#include "tca/model.hpp"

#include <string>
#include <vector>

namespace tca::testing {

inline std::vector<std::string> clocks_t() { return {kGlobalClock, "t"}; }
inline std::vector<std::string> clocks_c12() { return {kGlobalClock, "c1", "c2"}; }

inline Constraint upper(const std::string& clock, const char* op, long long value) {
    return Constraint{clock, "", *comparator_from(op), Rational(value)};
}

inline Constraint diff(const std::string& left, const std::string& right, const char* op,
                       long long value) {
    return Constraint{left, right, *comparator_from(op), Rational(value)};
}

inline Guard guard_of(const std::vector<std::string>& clocks,
                      const std::vector<Constraint>& constraints) {
    return Guard::of_zone(ConvexZone::from_constraints(clocks, constraints));
}

inline ClockValuation val_t(long long gamma_num, long long t_num, long long den = 1) {
    return ClockValuation{{kGlobalClock, Rational(gamma_num, den)}, {"t", Rational(t_num, den)}};
}

/// The resource-sharing contract bundled as examples/resource.json: party A
/// holds a resource that B may request; a persistent obligation to release
/// within 15 time units arms on the request, and a high-priority transaction
/// window prohibits releasing or re-requesting.
inline TimedContractAutomaton::Definition resource_definition() {
    using Def = TimedContractAutomaton::Definition;
    const std::vector<std::string> clocks = clocks_t();

    Norm o_release{Modality::Obligation, "A", "release",
                   guard_of(clocks, {upper("t", "<=", 15)}), "o_release"};
    Norm f_release{Modality::Prohibition, "A", "release", Guard::true_guard(clocks), "f_release"};
    Norm f_request{Modality::Prohibition, "B", "request", Guard::true_guard(clocks), "f_request"};

    Def def;
    def.clocks = {"t"};
    def.parties = {"A", "B"};
    def.actions = {"get", "release", "request", "start", "end"};
    def.states = {
        {"q1", {}, {}},
        {"q2", {}, {}},
        {"q3", {o_release}, {}},
        {"q4", {}, {f_release, f_request}},
        {"q5", {}, {}},
    };
    def.initial = "q1";

    auto arc = [&](const std::string& from, const std::string& party, const std::string& action,
                   const std::string& to, PartialReset reset = {}) {
        Def::TransitionDef td;
        td.from = from;
        td.label = ActionLabel{party, action, false};
        td.guard = Guard::true_guard(clocks);
        td.reset = std::move(reset);
        td.to = to;
        return td;
    };
    def.transitions = {
        arc("q1", "A", "get", "q2"),
        arc("q2", "A", "release", "q1"),
        arc("q2", "B", "request", "q3", PartialReset{{"t", Rational(0)}}),
        arc("q3", "A", "release", "q1"),
        arc("q3", "A", "start", "q4"),
        arc("q4", "A", "end", "q5"),
        arc("q5", "A", "start", "q4"),
        arc("q5", "A", "release", "q1"),
    };
    return def;
}

inline TimedContractAutomaton resource_automaton() {
    return TimedContractAutomaton(resource_definition());
}

/// resource_automaton() plus an ephemeral prohibition on starting a
/// high-priority transaction while a request is pending (state q3).
inline TimedContractAutomaton resource_fixed_automaton() {
    TimedContractAutomaton::Definition def = resource_definition();
    def.states[2].eph.push_back(Norm{Modality::Prohibition, "A", "start",
                                     Guard::true_guard(clocks_t()), "f_start"});
    return TimedContractAutomaton(std::move(def));
}

inline TimedEvent event(const std::string& party, const std::string& action, long long at,
                        bool attempted = false) {
    return TimedEvent{ActionLabel{party, action, attempted}, Rational(at)};
}

}  // namespace tca::testing
