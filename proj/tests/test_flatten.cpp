#include "tca/flatten.hpp"

#include "helpers.hpp"
#include "tca/errors.hpp"
#include "tca/generator.hpp"
#include "tca/json_io.hpp"
#include "tca/oracle.hpp"

#include <doctest.h>

#include <algorithm>
#include <map>

using namespace tca;
using namespace tca::testing;

namespace {

NormIndex by_id(const TimedContractAutomaton& m, const std::string& id) {
    for (NormIndex i = 0; i < m.norms().size(); ++i) {
        if (m.norm(i).id == id) return i;
    }
    REQUIRE(false);
    return 0;
}

}  // namespace

TEST_CASE("discharge windows") {
    const auto clocks = clocks_t();
    const Norm o{Modality::Obligation, "A", "release", guard_of(clocks, {upper("t", "<=", 15)}),
                 "o"};
    const Norm f_bounded{Modality::Prohibition, "A", "release",
                         guard_of(clocks, {upper("t", "<=", 15)}), "f1"};
    const Norm f_open{Modality::Prohibition, "A", "release", Guard::true_guard(clocks), "f2"};

    CHECK(tc(o) == o.guard);
    CHECK(tc(f_bounded) == guard_of(clocks, {upper("t", ">", 15)}));
    CHECK(tc(f_open).is_false());  // an unbounded window is never exceeded
}

TEST_CASE("abstract families of post-event norm sets") {
    const TimedContractAutomaton m = resource_automaton();
    const NormSet obligation = m.state(m.state_index("q3")).pers;

    SUBCASE("an obligation over another action is mandatory everywhere") {
        const auto family = active_alpha(m.norms(), obligation, ActionLabel{"B", "request", false});
        CHECK(family == std::vector<NormSet>{obligation});
    }
    SUBCASE("an obligation over the event's action may or may not be discharged") {
        const auto family = active_alpha(m.norms(), obligation, ActionLabel{"A", "release", false});
        REQUIRE(family.size() == 2);
        CHECK(family[0].empty());
        CHECK(family[1] == obligation);
    }
    SUBCASE("the empty set has one abstraction") {
        CHECK(active_alpha(m.norms(), NormSet{}, ActionLabel{"A", "get", false}) ==
              std::vector<NormSet>{NormSet{}});
    }
    SUBCASE("attempted events never discharge obligations") {
        const auto family = active_alpha(m.norms(), obligation, ActionLabel{"A", "release", true});
        CHECK(family == std::vector<NormSet>{obligation});
    }
}

TEST_CASE("timing conditions for chosen discharge sets") {
    const TimedContractAutomaton m = resource_automaton();
    const auto clocks = m.clocks();
    const NormSet obligation = m.state(m.state_index("q3")).pers;
    const ActionLabel release{"A", "release", false};

    CHECK(timing_condition(m.norms(), clocks, release, obligation, {}) ==
          guard_of(clocks, {upper("t", "<=", 15)}));
    CHECK(timing_condition(m.norms(), clocks, release, {}, obligation) ==
          guard_of(clocks, {upper("t", ">", 15)}));
    CHECK(timing_condition(m.norms(), clocks, release, {}, {}).is_true());

    // Obligations over other actions cannot sit on the discharged side.
    CHECK_THROWS_AS(
        timing_condition(m.norms(), clocks, ActionLabel{"A", "start", false}, obligation, {}),
        ModelError);
}

TEST_CASE("flattening the resource contract") {
    const TimedContractAutomaton m = resource_automaton();
    const FlattenedAutomaton flat = flatten(m);

    SUBCASE("all norms become ephemeral") {
        for (const State& st : flat.automaton.states()) {
            CHECK(st.pers.empty());
        }
        for (std::size_t i = 0; i < flat.flat_states.size(); ++i) {
            CHECK(flat.automaton.state(static_cast<int>(i)).eph ==
                  set_union(flat.flat_states[i].eph, flat.flat_states[i].pers));
        }
    }
    SUBCASE("the initial flat state carries the initial labelling") {
        const FlatState& start = flat.flat_states[0];
        CHECK(start.base == m.initial_index());
        CHECK(start.eph == m.state(m.initial_index()).eph);
        CHECK(start.pers == m.state(m.initial_index()).pers);
    }
    SUBCASE("the release transition from q3 splits over the obligation's fate") {
        const NormIndex o = by_id(flat.automaton, "o_release");
        std::vector<Guard> split_guards;
        for (std::size_t t = 0; t < flat.automaton.transitions().size(); ++t) {
            const Transition& tr = flat.automaton.transitions()[t];
            const FlatState& from = flat.flat_states[static_cast<std::size_t>(tr.from)];
            if (from.base != m.state_index("q3") || !set_contains(from.pers, o)) continue;
            if (!(tr.label == ActionLabel{"A", "release", false})) continue;
            const FlatState& to = flat.flat_states[static_cast<std::size_t>(tr.to)];
            if (to.base != m.state_index("q1")) continue;
            split_guards.push_back(tr.guard);
        }
        REQUIRE(split_guards.size() == 2);
        CHECK(split_guards[0] == guard_of(m.clocks(), {upper("t", "<=", 15)}));
        CHECK(split_guards[1] == guard_of(m.clocks(), {upper("t", ">", 15)}));
    }
    SUBCASE("after pruning, only the transaction states gain the obligation") {
        const FlattenedAutomaton pruned = prune_unsat(flat);
        std::map<std::string, std::pair<NormSet, NormSet>> shape;
        for (const FlatState& fs : pruned.flat_states) {
            shape[fs.base_id] = {fs.eph, fs.pers};
        }
        REQUIRE(shape.size() == 5);
        const NormIndex o = by_id(pruned.automaton, "o_release");
        CHECK(shape["q1"] == std::pair<NormSet, NormSet>{{}, {}});
        CHECK(shape["q2"] == std::pair<NormSet, NormSet>{{}, {}});
        CHECK(shape["q3"].second == NormSet{o});
        CHECK(shape["q4"].first == m.state(m.state_index("q4")).eph);
        CHECK(shape["q4"].second == NormSet{o});
        CHECK(shape["q5"] == std::pair<NormSet, NormSet>{{}, NormSet{o}});
    }
}

TEST_CASE("flattening a norm-free automaton changes nothing observable") {
    TimedContractAutomaton::Definition def = resource_definition();
    for (auto& st : def.states) {
        st.pers.clear();
        st.eph.clear();
    }
    const TimedContractAutomaton m(std::move(def));
    const FlattenedAutomaton flat = flatten(m);
    CHECK(flat.automaton.states().size() == reachable_states(m).size());
    for (const FlatState& fs : flat.flat_states) {
        CHECK(fs.eph.empty());
        CHECK(fs.pers.empty());
    }
    // Explicit guards pass through untouched (the timing condition is TRUE).
    for (const Transition& tr : flat.automaton.transitions()) {
        if (flat.automaton.transitions_from(tr.from).empty()) continue;
        if (tr.from != tr.to) {
            CHECK(tr.guard.is_true());
        }
    }
}

TEST_CASE("pruning drops only never-firing transitions") {
    const TimedContractAutomaton m = resource_automaton();
    const FlattenedAutomaton flat = flatten(m);
    const FlattenedAutomaton pruned = prune_unsat(flat);

    SUBCASE("prohibition discharge loops in q4 disappear") {
        const NormSet q4_eph = m.state(m.state_index("q4")).eph;
        for (std::size_t t = 0; t < pruned.automaton.transitions().size(); ++t) {
            const Transition& tr = pruned.automaton.transitions()[t];
            const FlatState& from = pruned.flat_states[static_cast<std::size_t>(tr.from)];
            const FlatState& to = pruned.flat_states[static_cast<std::size_t>(tr.to)];
            if (from.base != m.state_index("q4") || tr.from != tr.to) continue;
            CHECK(from.eph == q4_eph);
            CHECK(to.eph == q4_eph);  // the open-ended prohibitions never discharge
        }
    }
    SUBCASE("an automaton with no dead transitions is untouched") {
        // A guarded transition keeps every implicit complement satisfiable,
        // and without norms there are no discharge or violation windows.
        TimedContractAutomaton::Definition def;
        def.clocks = {"t"};
        def.parties = {"A"};
        def.actions = {"a", "b"};
        def.states = {{"q0", {}, {}}, {"q1", {}, {}}};
        def.initial = "q0";
        using TD = TimedContractAutomaton::Definition::TransitionDef;
        TD td;
        td.from = "q0";
        td.label = ActionLabel{"A", "a", false};
        td.guard = guard_of(clocks_t(), {upper("t", "<=", 5)});
        td.to = "q1";
        def.transitions = {td};
        const FlattenedAutomaton clean = flatten(TimedContractAutomaton(std::move(def)));
        const FlattenedAutomaton after = prune_unsat(clean);
        CHECK(after.automaton.states().size() == clean.automaton.states().size());
        CHECK(after.automaton.transitions().size() == clean.automaton.transitions().size());
    }
}

TEST_CASE("determinism of flattenings") {
    SUBCASE("the resource contract's flattening is deterministic") {
        CHECK(check_determinism(flatten(resource_automaton()).automaton));
    }
    SUBCASE("an overlap to different targets is caught") {
        TimedContractAutomaton::Definition def;
        def.clocks = {"t"};
        def.parties = {"A"};
        def.actions = {"a"};
        def.states = {{"q0", {}, {}}, {"q1", {}, {}}};
        def.initial = "q0";
        using TD = TimedContractAutomaton::Definition::TransitionDef;
        TD a;
        a.from = "q0";
        a.label = ActionLabel{"A", "a", false};
        a.guard = guard_of(clocks_t(), {upper("t", "<=", 5)});
        a.to = "q0";
        TD b = a;
        b.guard = guard_of(clocks_t(), {upper("t", "<=", 3)});
        b.to = "q1";
        def.transitions = {a, b};
        CHECK(!check_determinism(TimedContractAutomaton(std::move(def))));
    }
    SUBCASE("no transitions is trivially deterministic") {
        TimedContractAutomaton::Definition def;
        def.parties = {"A"};
        def.actions = {"a"};
        def.states = {{"q0", {}, {}}};
        def.initial = "q0";
        CHECK(check_determinism(TimedContractAutomaton(std::move(def))));
    }
}

TEST_CASE("distinct discharge choices have mutually exclusive timing conditions") {
    const std::vector<std::string> clocks = clocks_c12();
    const std::vector<ActionLabel> labels = {{"A", "a", false}, {"B", "b", false},
                                             {"A", "b", true}};
    for (std::uint64_t seed = 1; seed <= 150; ++seed) {
        Rng rng(seed);
        std::vector<Norm> pool;
        NormSet all;
        const int count = rng.between(0, 3);
        for (int i = 0; i < count; ++i) {
            pool.push_back(gen_norm(rng, clocks, labels, 10, "n" + std::to_string(i)));
            all.push_back(static_cast<NormIndex>(i));
        }
        const ActionLabel label = labels[static_cast<std::size_t>(rng.below(3))];
        const auto family = active_alpha(pool, all, label);
        std::vector<Guard> conditions;
        for (const NormSet& kept : family) {
            conditions.push_back(
                timing_condition(pool, clocks, label, set_difference(all, kept), kept));
        }
        for (std::size_t i = 0; i < conditions.size(); ++i) {
            for (std::size_t j = i + 1; j < conditions.size(); ++j) {
                CHECK(guard_and(conditions[i], conditions[j]).is_false());
            }
        }
    }
}

TEST_CASE("subset blow-up stays within the exponential bound") {
    const TimedContractAutomaton stress = load_automaton("examples/stress6.json");
    const FlattenedAutomaton flat = flatten(stress);
    CHECK(flat.automaton.states().size() <= 64);  // 2^6 subset variants
    CHECK(flat.automaton.states().size() == 64);  // every subset is reachable in one hop
}
