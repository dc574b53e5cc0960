#include "tca/analysis.hpp"

#include "tca/errors.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <tuple>

namespace tca {

std::vector<LocalConflict> local_conflict(const std::vector<Norm>& pool, const NormSet& norms) {
    std::vector<std::pair<NormIndex, NormIndex>> candidates;
    for (NormIndex a : norms) {
        if (pool[a].modality == Modality::Prohibition) continue;
        for (NormIndex b : norms) {
            if (pool[b].modality != Modality::Prohibition) continue;
            if (pool[a].party != pool[b].party || pool[a].action != pool[b].action) continue;
            candidates.emplace_back(a, b);
        }
    }
    std::sort(candidates.begin(), candidates.end(), [&](const auto& x, const auto& y) {
        return std::make_pair(pool[x.first].id, pool[x.second].id) <
               std::make_pair(pool[y.first].id, pool[y.second].id);
    });

    std::vector<LocalConflict> out;
    for (const auto& [a, b] : candidates) {
        Guard witness = guard_and(pool[a].guard, pool[b].guard);
        if (witness.is_false()) continue;
        LocalConflict lc;
        lc.left = a;
        lc.right = b;
        lc.sample = *witness.zones().front().sample_point();
        lc.witness = std::move(witness);
        out.push_back(std::move(lc));
    }
    return out;
}

AnalysisVerdict analyze(const TimedContractAutomaton& m, const AnalyzeOptions& options) {
    const auto start = std::chrono::steady_clock::now();

    const ValidationReport validation = validate_wellformed(m);
    if (!validation.ok()) {
        throw ModelError("analysis requires a well-formed automaton: " + validation.problems[0]);
    }

    FlattenedAutomaton flat = flatten(m);
    AnalysisVerdict verdict;
    verdict.stats.flat_states_before = flat.automaton.states().size();
    verdict.stats.transitions_before = flat.automaton.transitions().size();
    if (options.prune) {
        flat = prune_unsat(flat);
    }
    verdict.stats.flat_states_after = flat.automaton.states().size();
    verdict.stats.transitions_after = flat.automaton.transitions().size();

    // Deduplicate by (base state, pair); the witness is the union of the
    // per-variant witness zones.
    using Key = std::tuple<int, NormIndex, NormIndex>;
    std::map<Key, ConflictFinding> merged;
    for (std::size_t s = 0; s < flat.flat_states.size(); ++s) {
        const FlatState& fs = flat.flat_states[s];
        const NormSet labelling = set_union(fs.eph, fs.pers);
        for (LocalConflict& lc : local_conflict(flat.automaton.norms(), labelling)) {
            const Key key{fs.base, lc.left, lc.right};
            auto it = merged.find(key);
            if (it == merged.end()) {
                ConflictFinding finding;
                finding.base_state = fs.base_id;
                finding.flat_states = {flat.automaton.state(static_cast<int>(s)).id};
                finding.left = lc.left;
                finding.right = lc.right;
                finding.witness = lc.witness;
                finding.sample = lc.sample;
                merged.emplace(key, std::move(finding));
            } else {
                it->second.flat_states.push_back(flat.automaton.state(static_cast<int>(s)).id);
                it->second.witness = guard_or(it->second.witness, lc.witness);
                it->second.sample = *it->second.witness.zones().front().sample_point();
            }
        }
    }
    for (auto& [key, finding] : merged) {
        verdict.findings.push_back(std::move(finding));
    }
    verdict.conflict_free = verdict.findings.empty();

    verdict.stats.wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    return verdict;
}

}  // namespace tca
