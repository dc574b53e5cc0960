#include "tca/oracle.hpp"

#include "tca/errors.hpp"
#include "tca/flatten.hpp"

#include <algorithm>
#include <sstream>

namespace tca {

namespace {

struct DeltaInterval {
    // lower bound on delta (value, strict), upper bound possibly absent
    Rational lo = Rational(0);
    bool lo_strict = false;
    std::optional<Rational> hi;
    bool hi_strict = false;
    bool empty = false;

    void clamp_lower(const Rational& value, bool strict) {
        if (value > lo || (value == lo && strict && !lo_strict)) {
            lo = value;
            lo_strict = strict;
        }
    }
    void clamp_upper(const Rational& value, bool strict) {
        if (!hi || value < *hi || (value == *hi && strict && !hi_strict)) {
            hi = value;
            hi_strict = strict;
        }
    }
    std::optional<Rational> witness() const {
        if (empty) return std::nullopt;
        if (hi) {
            if (lo > *hi) return std::nullopt;
            if (lo == *hi) {
                if (lo_strict || hi_strict) return std::nullopt;
                return lo;
            }
            if (!lo_strict) return lo;
            return (lo + *hi) / Rational(2);
        }
        if (!lo_strict) return lo;
        return lo + Rational(1, 2);
    }
};

}  // namespace

std::optional<Rational> delta_interval_oracle(const Guard& g, const ClockValuation& v) {
    for (const ConvexZone& zone : g.zones()) {
        DeltaInterval interval;
        const std::size_t n = zone.dim();
        std::vector<Rational> vals(n);
        vals[0] = Rational(0);
        for (std::size_t i = 1; i < n; ++i) {
            auto it = v.find(zone.clocks()[i - 1]);
            if (it == v.end()) {
                throw ModelError("valuation does not cover clock '" + zone.clocks()[i - 1] + "'");
            }
            vals[i] = it->second;
        }
        for (std::size_t i = 0; i < n && !interval.empty; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (i == j) continue;
                const Bound& b = zone.bound(i, j);
                if (b.is_unbounded()) continue;
                if (i >= 1 && j >= 1) {
                    // Differences are invariant under uniform delay.
                    if (!b.admits(vals[i] - vals[j])) {
                        interval.empty = true;
                        break;
                    }
                } else if (j == 0) {
                    // x_i + delta ≺ m  ⇒  delta ≺ m - v(x_i)
                    interval.clamp_upper(b.value() - vals[i], b.is_strict());
                } else {
                    // -(x_j + delta) ≺ m  ⇒  delta ≻ -m - v(x_j)
                    interval.clamp_lower(-b.value() - vals[j], b.is_strict());
                }
            }
        }
        if (const auto witness = interval.witness()) {
            return witness;
        }
    }
    return std::nullopt;
}

void for_each_grid_valuation(const std::vector<std::string>& clocks, int bound,
                             const std::function<bool(const ClockValuation&)>& fn) {
    const int steps = 2 * bound;  // half-step grid over [0, bound]
    std::vector<int> cursor(clocks.size(), 0);
    ClockValuation v;
    while (true) {
        for (std::size_t i = 0; i < clocks.size(); ++i) {
            v[clocks[i]] = Rational(cursor[i], 2);
        }
        if (!fn(v)) return;
        std::size_t i = 0;
        for (; i < cursor.size(); ++i) {
            if (++cursor[i] <= steps) break;
            cursor[i] = 0;
        }
        if (i == cursor.size()) return;
    }
}

namespace {

std::string describe_set(const std::vector<Norm>& pool, const NormSet& set) {
    std::string out = "{";
    for (std::size_t i = 0; i < set.size(); ++i) {
        if (i > 0) out += ",";
        out += pool[set[i]].id;
    }
    return out + "}";
}

bool fail(std::string* diagnostic, const std::string& message) {
    if (diagnostic != nullptr) *diagnostic = message;
    return false;
}

}  // namespace

bool check_theorem_lockstep(const TimedContractAutomaton& m, const TimedTrace& trace,
                            std::string* diagnostic) {
    return check_theorem_lockstep(m, flatten(m), trace, diagnostic);
}

bool check_theorem_lockstep(const TimedContractAutomaton& m, const FlattenedAutomaton& flat,
                            const TimedTrace& trace, std::string* diagnostic) {
    const TimedContractAutomaton& mp = flat.automaton;

    Configuration conf = initial_configuration(m);
    Configuration conf_plus = initial_configuration(mp);

    auto correspond = [&](const char* where) {
        const FlatState& fs = flat.flat_states[static_cast<std::size_t>(conf_plus.state)];
        if (fs.base != conf.state) {
            return fail(diagnostic, std::string(where) + ": flat state tracks " + fs.base_id +
                                        " but the original is in " + m.state(conf.state).id);
        }
        if (fs.eph != conf.ephemeral || fs.pers != conf.persistent) {
            return fail(diagnostic, std::string(where) + ": flat state tracks E=" +
                                        describe_set(m.norms(), fs.eph) + " P=" +
                                        describe_set(m.norms(), fs.pers) +
                                        " but the original holds E=" +
                                        describe_set(m.norms(), conf.ephemeral) + " P=" +
                                        describe_set(m.norms(), conf.persistent));
        }
        if (conf_plus.valuation != conf.valuation) {
            return fail(diagnostic, std::string(where) + ": valuations diverge");
        }
        if (!conf_plus.persistent.empty()) {
            return fail(diagnostic, std::string(where) + ": flattening has persistent norms");
        }
        if (conf_plus.ephemeral != set_union(conf.ephemeral, conf.persistent)) {
            return fail(diagnostic, std::string(where) + ": flattened ephemeral set mismatch");
        }
        return true;
    };

    if (!correspond("initially")) return false;

    for (const TimedEvent& e : trace.events) {
        const StepOutcome a = step(m, conf, e);
        const StepOutcome b = step(mp, conf_plus, e);
        if (a.violated.has_value() != b.violated.has_value()) {
            return fail(diagnostic, "event " + e.label.str() + "@" + e.at.str() +
                                        ": one side bottomed out and the other did not");
        }
        if (a.violated) {
            if (a.violated->norms != b.violated->norms) {
                return fail(diagnostic, "event " + e.label.str() + "@" + e.at.str() +
                                            ": different violating norm sets");
            }
            return true;  // both halted together
        }
        conf = *a.next;
        conf_plus = *b.next;
        if (!correspond(("after " + e.label.str() + "@" + e.at.str()).c_str())) return false;
        if (a.conflict != b.conflict) {
            return fail(diagnostic, "event " + e.label.str() + "@" + e.at.str() +
                                        ": conflict flags diverge");
        }
    }
    return true;
}

bool check_soundness(const TimedContractAutomaton& m, int num_traces, std::uint64_t trace_seed,
                     std::string* diagnostic) {
    const AnalysisVerdict verdict = analyze(m);
    if (!verdict.conflict_free) {
        return true;  // no claim is made for potential conflicts
    }
    GenParams params;
    for (int i = 0; i < num_traces; ++i) {
        params.seed = trace_seed + static_cast<std::uint64_t>(i);
        const TimedTrace trace = gen_trace(m, params);
        const RunReport report = run_trace(m, trace);
        if (report.any_conflict) {
            return fail(diagnostic, "declared conflict-free, but trace seed " +
                                        std::to_string(params.seed) + " reached a conflict");
        }
    }
    return true;
}

// ── Suites ──────────────────────────────────────────────────────────────────

std::optional<Suite> suite_from(const std::string& token) {
    if (token == "lemma1") return Suite::ActiveMembership;
    if (token == "lemma2") return Suite::TimingExclusion;
    if (token == "lemma3") return Suite::SatImpliesTiming;
    if (token == "determinism") return Suite::Determinism;
    if (token == "theorem1") return Suite::Lockstep;
    if (token == "soundness") return Suite::Soundness;
    if (token == "zones") return Suite::Zones;
    return std::nullopt;
}

std::string to_string(Suite suite) {
    switch (suite) {
        case Suite::ActiveMembership: return "lemma1";
        case Suite::TimingExclusion: return "lemma2";
        case Suite::SatImpliesTiming: return "lemma3";
        case Suite::Determinism: return "determinism";
        case Suite::Lockstep: return "theorem1";
        case Suite::Soundness: return "soundness";
        case Suite::Zones: return "zones";
    }
    return "?";
}

namespace {

constexpr int kMaxConstant = 10;

std::vector<ActionLabel> small_label_pool() {
    return {ActionLabel{"A", "a", false}, ActionLabel{"A", "b", false},
            ActionLabel{"B", "a", false}, ActionLabel{"B", "b", false}};
}

ActionLabel random_label(Rng& rng, bool allow_attempted) {
    ActionLabel label = rng.pick(small_label_pool());
    if (allow_attempted) label.attempted = rng.chance(25);
    return label;
}

struct NormFixture {
    std::vector<Norm> pool;
    NormSet all;
};

NormFixture random_norms(Rng& rng, const std::vector<std::string>& clocks, int max_count) {
    NormFixture fx;
    const int count = rng.between(0, max_count);
    for (int i = 0; i < count; ++i) {
        fx.pool.push_back(
            gen_norm(rng, clocks, small_label_pool(), kMaxConstant, "n" + std::to_string(i)));
        fx.all.push_back(static_cast<NormIndex>(i));
    }
    return fx;
}

bool check_active_membership(std::uint64_t seed, std::string* diagnostic) {
    Rng rng(seed);
    const std::vector<std::string> clocks = {kGlobalClock, "c1"};
    const NormFixture fx = random_norms(rng, clocks, 4);
    const ActionLabel label = random_label(rng, true);
    const ClockValuation v = gen_valuation(rng, clocks, kMaxConstant);

    const NormSet concrete = active(fx.pool, fx.all, label, v);
    const std::vector<NormSet> family = active_alpha(fx.pool, fx.all, label);
    if (std::find(family.begin(), family.end(), concrete) == family.end()) {
        return fail(diagnostic, "active set " + describe_set(fx.pool, concrete) +
                                    " not in the abstract family for " + label.str());
    }
    return true;
}

bool check_timing_exclusion(std::uint64_t seed, std::string* diagnostic) {
    Rng rng(seed);
    const std::vector<std::string> clocks = {kGlobalClock, "c1"};
    const NormFixture fx = random_norms(rng, clocks, 3);
    const ActionLabel label = random_label(rng, true);

    const std::vector<NormSet> family = active_alpha(fx.pool, fx.all, label);
    std::vector<Guard> conditions;
    conditions.reserve(family.size());
    for (const NormSet& kept : family) {
        conditions.push_back(
            timing_condition(fx.pool, clocks, label, set_difference(fx.all, kept), kept));
    }
    for (std::size_t i = 0; i < family.size(); ++i) {
        for (std::size_t j = i + 1; j < family.size(); ++j) {
            if (!guard_and(conditions[i], conditions[j]).is_false()) {
                return fail(diagnostic, "timing conditions for " +
                                            describe_set(fx.pool, family[i]) + " and " +
                                            describe_set(fx.pool, family[j]) + " overlap");
            }
        }
    }
    return true;
}

bool check_sat_implies_timing(std::uint64_t seed, std::string* diagnostic) {
    Rng rng(seed);
    const std::vector<std::string> clocks = {kGlobalClock, "c1"};
    Norm n = gen_norm(rng, clocks, small_label_pool(), kMaxConstant, "n0");
    const ActionLabel label = random_label(rng, true);
    const ClockValuation v = gen_valuation(rng, clocks, kMaxConstant);

    if (sat(n, label, v) && !tc(n).contains(v)) {
        return fail(diagnostic, n.str() + " satisfied at " + label.str() +
                                    " outside its discharge window");
    }
    return true;
}

bool check_determinism_case(std::uint64_t seed, std::string* diagnostic) {
    GenParams params;
    params.seed = seed;
    const TimedContractAutomaton m = gen_automaton(params);
    if (!check_determinism(flatten(m).automaton)) {
        return fail(diagnostic, "flattening of seed " + std::to_string(seed) +
                                    " is nondeterministic");
    }
    return true;
}

bool check_lockstep_case(std::uint64_t seed, std::string* diagnostic) {
    GenParams params;
    params.seed = seed;
    const TimedContractAutomaton m = gen_automaton(params);
    params.seed = seed * 1000 + 7;
    const TimedTrace trace = gen_trace(m, params);
    return check_theorem_lockstep(m, trace, diagnostic);
}

bool check_soundness_case(std::uint64_t seed, std::string* diagnostic) {
    GenParams params;
    params.seed = seed;
    const TimedContractAutomaton m = gen_automaton(params);
    return check_soundness(m, 100, seed * 1000 + 13, diagnostic);
}

bool check_zones_case(std::uint64_t seed, std::string* diagnostic) {
    Rng rng(seed);
    const std::vector<std::string> clocks =
        rng.chance(50) ? std::vector<std::string>{kGlobalClock, "c1"}
                       : std::vector<std::string>{kGlobalClock, "c1", "c2"};

    // Raw constraint lists are the reference; zones are the implementation.
    auto make = [&]() {
        std::vector<std::vector<Constraint>> lists;
        const int zone_count = rng.between(1, 2);
        for (int i = 0; i < zone_count; ++i) lists.push_back(gen_constraints(rng, clocks, kMaxConstant));
        std::vector<ConvexZone> zones;
        for (const auto& cs : lists) zones.push_back(ConvexZone::from_constraints(clocks, cs));
        return std::make_pair(lists, Guard::of_zones(clocks, zones));
    };
    const auto made1 = make();
    const auto made2 = make();
    const std::vector<std::vector<Constraint>>& lists1 = made1.first;
    const Guard& g1 = made1.second;
    const std::vector<std::vector<Constraint>>& lists2 = made2.first;
    const Guard& g2 = made2.second;

    auto direct1 = [&](const ClockValuation& v) {
        return std::any_of(lists1.begin(), lists1.end(),
                           [&](const auto& cs) { return evaluate_all(cs, v); });
    };
    auto direct2 = [&](const ClockValuation& v) {
        return std::any_of(lists2.begin(), lists2.end(),
                           [&](const auto& cs) { return evaluate_all(cs, v); });
    };

    const Guard conj = guard_and(g1, g2);
    const Guard disj = guard_or(g1, g2);
    const Guard comp = guard_not(g1);
    const Guard past = time_predecessor(g1);

    bool ok = true;
    std::string detail;
    for_each_grid_valuation(clocks, kMaxConstant + 1, [&](const ClockValuation& v) {
        if (g1.contains(v) != direct1(v)) {
            detail = "containment disagrees with direct evaluation";
        } else if (conj.contains(v) != (direct1(v) && direct2(v))) {
            detail = "conjunction disagrees with direct evaluation";
        } else if (disj.contains(v) != (direct1(v) || direct2(v))) {
            detail = "disjunction disagrees with direct evaluation";
        } else if (comp.contains(v) != !direct1(v)) {
            detail = "complement disagrees with direct evaluation";
        } else if (past.contains(v) != delta_interval_oracle(g1, v).has_value()) {
            detail = "time predecessor disagrees with the delay oracle";
        } else if (exceeds(v, g1) != !delta_interval_oracle(g1, v).has_value()) {
            detail = "exceeds disagrees with the delay oracle";
        } else {
            return true;
        }
        ok = false;
        return false;
    });
    if (!ok) return fail(diagnostic, detail);

    // Emptiness against exhaustive raw evaluation. Constants are integers,
    // but chained difference constraints can push the reachable corner out to
    // the sum of two constants, so the emptiness grid scans twice as far.
    bool found = false;
    for_each_grid_valuation(clocks, 2 * kMaxConstant + 1, [&](const ClockValuation& v) {
        if (direct1(v)) {
            found = true;
            return false;
        }
        return true;
    });
    if (g1.is_false() == found) {
        return fail(diagnostic, "emptiness disagrees with grid search");
    }
    return true;
}

}  // namespace

SuiteResult run_suite(Suite suite, std::uint64_t seed, int count) {
    SuiteResult result;
    for (int i = 0; i < count; ++i) {
        const std::uint64_t instance_seed = seed + static_cast<std::uint64_t>(i);
        std::string diagnostic;
        bool ok = false;
        switch (suite) {
            case Suite::ActiveMembership: ok = check_active_membership(instance_seed, &diagnostic); break;
            case Suite::TimingExclusion: ok = check_timing_exclusion(instance_seed, &diagnostic); break;
            case Suite::SatImpliesTiming: ok = check_sat_implies_timing(instance_seed, &diagnostic); break;
            case Suite::Determinism: ok = check_determinism_case(instance_seed, &diagnostic); break;
            case Suite::Lockstep: ok = check_lockstep_case(instance_seed, &diagnostic); break;
            case Suite::Soundness: ok = check_soundness_case(instance_seed, &diagnostic); break;
            case Suite::Zones: ok = check_zones_case(instance_seed, &diagnostic); break;
        }
        if (ok) {
            ++result.passed;
        } else {
            if (result.failed == 0) {
                result.first_failing_seed = instance_seed;
                result.message = diagnostic;
            }
            ++result.failed;
        }
    }
    return result;
}

}  // namespace tca
