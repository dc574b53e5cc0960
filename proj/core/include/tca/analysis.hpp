#pragma once

#include "tca/flatten.hpp"
#include "tca/semantics.hpp"

#include <string>
#include <vector>

namespace tca {

/// A potentially conflicting norm pair found in one flattened state: an
/// obligation or permission against a prohibition on the same party:action,
/// with the nonempty conjunction of their windows as witness.
struct LocalConflict {
    NormIndex left = 0;   // obligation or permission
    NormIndex right = 0;  // prohibition
    Guard witness = Guard::false_guard({});
    ClockValuation sample;
};

/// All conflicting pairs among the given norms, in id order.
std::vector<LocalConflict> local_conflict(const std::vector<Norm>& pool, const NormSet& norms);

/// One deduplicated analysis finding: a conflicting pair diagnosed at a base
/// state, with the union of witness zones over every flattened variant of
/// that state exhibiting the pair.
struct ConflictFinding {
    std::string base_state;
    std::vector<std::string> flat_states;
    NormIndex left = 0;
    NormIndex right = 0;
    Guard witness = Guard::false_guard({});
    ClockValuation sample;
};

struct AnalyzeOptions {
    bool prune = true;
};

struct AnalysisStats {
    std::size_t flat_states_before = 0;
    std::size_t flat_states_after = 0;
    std::size_t transitions_before = 0;
    std::size_t transitions_after = 0;
    double wall_ms = 0.0;
};

/// Whole-automaton verdict. A conflict-free verdict is a sound guarantee
/// that no trace ever reaches a configuration with conflicting norms;
/// findings are advisory, as some diagnosed states may be unreachable.
struct AnalysisVerdict {
    bool conflict_free = true;
    std::vector<ConflictFinding> findings;
    AnalysisStats stats;
};

/// Flattens the automaton (pruning by default), then checks every flattened
/// state's norm labelling for satisfiable opposing pairs. Throws ModelError
/// when the input is not well-formed.
AnalysisVerdict analyze(const TimedContractAutomaton& m, const AnalyzeOptions& options = {});

}  // namespace tca
