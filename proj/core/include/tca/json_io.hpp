#pragma once

#include "tca/model.hpp"

#include <string>

namespace tca {

/// Parses the JSON automaton document. Diagnostics are anchored to the JSON
/// path of the offending element ("states[2].eph[0].guard[0][1]: ...").
/// Throws ParseError on malformed text, ModelError on semantic problems.
TimedContractAutomaton parse_automaton(const std::string& text);

/// Reads and parses an automaton document from a file.
TimedContractAutomaton load_automaton(const std::string& path);

/// Serializes to the same document format; parsing the result yields an
/// automaton structurally equal to the input.
std::string serialize_automaton(const TimedContractAutomaton& m);

/// Parses the JSON trace format: an array of events with decimal-string
/// timestamps, validated to be strictly increasing.
TimedTrace parse_trace(const std::string& text);

TimedTrace load_trace(const std::string& path);

std::string serialize_trace(const TimedTrace& trace);

}  // namespace tca
