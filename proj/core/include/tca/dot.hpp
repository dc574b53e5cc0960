#pragma once

#include "tca/model.hpp"

#include <string>

namespace tca {

/// Renders the automaton as a Graphviz digraph: states labelled with their
/// norms, edges with "party:action | guard" plus any resets. Node order
/// follows the automaton's state order, so output is deterministic.
std::string export_dot(const TimedContractAutomaton& m);

}  // namespace tca
