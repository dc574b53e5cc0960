#include "tca/json_io.hpp"

#include "tca/errors.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <sstream>

namespace tca {

namespace {

using nlohmann::json;

[[noreturn]] void bail(const std::string& where, const std::string& what) {
    throw ParseError(where + ": " + what);
}

std::string element(const std::string& where, const std::string& key) {
    return where.empty() ? key : where + "." + key;
}

std::string item(const std::string& where, std::size_t i) {
    return where + "[" + std::to_string(i) + "]";
}

const json& field(const json& obj, const std::string& where, const std::string& key) {
    if (!obj.is_object()) bail(where, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) bail(where, "missing field '" + key + "'");
    return *it;
}

std::string string_field(const json& obj, const std::string& where, const std::string& key) {
    const json& v = field(obj, where, key);
    if (!v.is_string()) bail(element(where, key), "expected a string");
    return v.get<std::string>();
}

Rational rational_from(const json& v, const std::string& where) {
    try {
        if (v.is_string()) return Rational::parse(v.get<std::string>());
        if (v.is_number_integer()) return Rational(v.get<long long>());
    } catch (const std::invalid_argument& e) {
        bail(where, e.what());
    }
    bail(where, "constants must be decimal strings (or plain integers)");
}

Constraint constraint_from(const json& triple, const std::string& where) {
    if (!triple.is_array() || triple.size() != 3) {
        bail(where, "a constraint is a triple [clocks, comparator, constant]");
    }
    if (!triple[0].is_string() || !triple[1].is_string()) {
        bail(where, "constraint clocks and comparator must be strings");
    }
    Constraint c;
    const std::string lhs = triple[0].get<std::string>();
    const auto dash = lhs.find('-');
    if (dash == std::string::npos) {
        c.left = lhs;
    } else {
        c.left = lhs.substr(0, dash);
        c.right = lhs.substr(dash + 1);
        if (c.left.empty() || c.right.empty()) {
            bail(where, "malformed clock difference '" + lhs + "'");
        }
    }
    const auto op = comparator_from(triple[1].get<std::string>());
    if (!op) bail(where, "unknown comparator '" + triple[1].get<std::string>() + "'");
    c.op = *op;
    c.constant = rational_from(triple[2], where);
    return c;
}

Guard guard_from(const json& v, const std::vector<std::string>& clocks,
                 const std::string& where) {
    if (v.is_null()) return Guard::true_guard(clocks);
    if (!v.is_array()) bail(where, "a guard is a list of zones");
    std::vector<ConvexZone> zones;
    for (std::size_t zi = 0; zi < v.size(); ++zi) {
        const json& zj = v[zi];
        const std::string zwhere = item(where, zi);
        if (!zj.is_array()) bail(zwhere, "a zone is a list of constraint triples");
        std::vector<Constraint> constraints;
        for (std::size_t ci = 0; ci < zj.size(); ++ci) {
            constraints.push_back(constraint_from(zj[ci], item(zwhere, ci)));
        }
        try {
            zones.push_back(ConvexZone::from_constraints(clocks, constraints));
        } catch (const ModelError& e) {
            bail(zwhere, e.what());
        }
    }
    return Guard::of_zones(clocks, std::move(zones));
}

Modality modality_from(const std::string& text, const std::string& where) {
    if (text == "obligation") return Modality::Obligation;
    if (text == "permission") return Modality::Permission;
    if (text == "prohibition") return Modality::Prohibition;
    bail(where, "unknown modality '" + text + "' (obligation|permission|prohibition)");
}

Norm norm_from(const json& v, const std::vector<std::string>& clocks, const std::string& where) {
    Norm n;
    n.modality = modality_from(string_field(v, where, "modality"), element(where, "modality"));
    n.party = string_field(v, where, "party");
    n.action = string_field(v, where, "action");
    n.guard = guard_from(v.contains("guard") ? v["guard"] : json(nullptr), clocks,
                         element(where, "guard"));
    if (v.contains("id")) {
        if (!v["id"].is_string()) bail(element(where, "id"), "expected a string");
        n.id = v["id"].get<std::string>();
    }
    return n;
}

std::vector<std::string> string_list(const json& v, const std::string& where) {
    if (!v.is_array()) bail(where, "expected a list of strings");
    std::vector<std::string> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!v[i].is_string()) bail(item(where, i), "expected a string");
        out.push_back(v[i].get<std::string>());
    }
    return out;
}

json guard_to_json(const Guard& g) {
    json zones = json::array();
    for (const ConvexZone& z : g.zones()) {
        json zone = json::array();
        for (const Constraint& c : z.constraints()) {
            const std::string lhs = c.right.empty() ? c.left : c.left + "-" + c.right;
            zone.push_back(json::array({lhs, to_string(c.op), c.constant.str()}));
        }
        zones.push_back(std::move(zone));
    }
    return zones;
}

json norm_to_json(const Norm& n) {
    json out;
    out["id"] = n.id;
    out["modality"] = to_string(n.modality);
    out["party"] = n.party;
    out["action"] = n.action;
    out["guard"] = guard_to_json(n.guard);
    return out;
}

}  // namespace

TimedContractAutomaton parse_automaton(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ParseError("document root must be an object");
    if (doc.contains("version") && doc["version"] != 1) {
        throw ParseError("version: only format version 1 is supported");
    }

    TimedContractAutomaton::Definition def;
    def.clocks = doc.contains("clocks") ? string_list(doc["clocks"], "clocks")
                                        : std::vector<std::string>{};
    for (const std::string& c : def.clocks) {
        if (c == kGlobalClock) {
            bail("clocks", "'" + kGlobalClock + "' is implicit and may not be declared");
        }
    }
    def.parties = string_list(field(doc, "", "parties"), "parties");
    def.actions = string_list(field(doc, "", "actions"), "actions");

    std::vector<std::string> full_clocks = {kGlobalClock};
    full_clocks.insert(full_clocks.end(), def.clocks.begin(), def.clocks.end());

    const json& states = field(doc, "", "states");
    if (!states.is_array()) bail("states", "expected a list");
    for (std::size_t i = 0; i < states.size(); ++i) {
        const std::string where = item("states", i);
        TimedContractAutomaton::Definition::StateDef st;
        st.id = string_field(states[i], where, "id");
        if (states[i].contains("pers")) {
            const json& pers = states[i]["pers"];
            if (!pers.is_array()) bail(element(where, "pers"), "expected a list of norms");
            for (std::size_t k = 0; k < pers.size(); ++k) {
                st.pers.push_back(norm_from(pers[k], full_clocks, item(element(where, "pers"), k)));
            }
        }
        if (states[i].contains("eph")) {
            const json& eph = states[i]["eph"];
            if (!eph.is_array()) bail(element(where, "eph"), "expected a list of norms");
            for (std::size_t k = 0; k < eph.size(); ++k) {
                st.eph.push_back(norm_from(eph[k], full_clocks, item(element(where, "eph"), k)));
            }
        }
        def.states.push_back(std::move(st));
    }
    def.initial = string_field(doc, "", "initial");

    if (doc.contains("transitions")) {
        const json& transitions = doc["transitions"];
        if (!transitions.is_array()) bail("transitions", "expected a list");
        for (std::size_t i = 0; i < transitions.size(); ++i) {
            const std::string where = item("transitions", i);
            const json& tj = transitions[i];
            TimedContractAutomaton::Definition::TransitionDef td;
            td.from = string_field(tj, where, "from");
            td.to = string_field(tj, where, "to");
            td.label.party = string_field(tj, where, "party");
            td.label.action = string_field(tj, where, "action");
            if (tj.contains("attempted")) {
                if (!tj["attempted"].is_boolean()) {
                    bail(element(where, "attempted"), "expected a boolean");
                }
                td.label.attempted = tj["attempted"].get<bool>();
            }
            td.guard = guard_from(tj.contains("guard") ? tj["guard"] : json(nullptr), full_clocks,
                                  element(where, "guard"));
            if (tj.contains("reset")) {
                for (const std::string& clock :
                     string_list(tj["reset"], element(where, "reset"))) {
                    td.reset[clock] = Rational(0);
                }
            }
            def.transitions.push_back(std::move(td));
        }
    }
    return TimedContractAutomaton(std::move(def));
}

TimedContractAutomaton load_automaton(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    try {
        return parse_automaton(buffer.str());
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    } catch (const ModelError& e) {
        throw ModelError(path + ": " + e.what());
    }
}

std::string serialize_automaton(const TimedContractAutomaton& m) {
    json doc;
    doc["version"] = 1;
    json clocks = json::array();
    for (std::size_t i = 1; i < m.clocks().size(); ++i) clocks.push_back(m.clocks()[i]);
    doc["clocks"] = std::move(clocks);
    doc["parties"] = m.parties();
    doc["actions"] = m.actions();
    doc["initial"] = m.state(m.initial_index()).id;

    json states = json::array();
    for (const State& st : m.states()) {
        json sj;
        sj["id"] = st.id;
        json pers = json::array();
        for (NormIndex n : st.pers) pers.push_back(norm_to_json(m.norm(n)));
        json eph = json::array();
        for (NormIndex n : st.eph) eph.push_back(norm_to_json(m.norm(n)));
        sj["pers"] = std::move(pers);
        sj["eph"] = std::move(eph);
        states.push_back(std::move(sj));
    }
    doc["states"] = std::move(states);

    json transitions = json::array();
    for (const Transition& tr : m.transitions()) {
        json tj;
        tj["from"] = m.state(tr.from).id;
        tj["party"] = tr.label.party;
        tj["action"] = tr.label.action;
        if (tr.label.attempted) tj["attempted"] = true;
        tj["guard"] = guard_to_json(tr.guard);
        json reset = json::array();
        for (const auto& [clock, value] : tr.reset) reset.push_back(clock);
        tj["reset"] = std::move(reset);
        tj["to"] = m.state(tr.to).id;
        transitions.push_back(std::move(tj));
    }
    doc["transitions"] = std::move(transitions);
    return doc.dump(2) + "\n";
}

TimedTrace parse_trace(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_array()) throw ParseError("a trace is a JSON array of events");
    TimedTrace trace;
    for (std::size_t i = 0; i < doc.size(); ++i) {
        const std::string where = item("", i);
        const json& ej = doc[i];
        TimedEvent e;
        e.label.party = string_field(ej, where, "party");
        e.label.action = string_field(ej, where, "action");
        if (ej.contains("attempted")) {
            if (!ej["attempted"].is_boolean()) {
                bail(element(where, "attempted"), "expected a boolean");
            }
            e.label.attempted = ej["attempted"].get<bool>();
        }
        e.at = rational_from(field(ej, where, "at"), element(where, "at"));
        trace.events.push_back(std::move(e));
    }
    validate_trace(trace);
    return trace;
}

TimedTrace load_trace(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    try {
        return parse_trace(buffer.str());
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    } catch (const ModelError& e) {
        throw ModelError(path + ": " + e.what());
    }
}

std::string serialize_trace(const TimedTrace& trace) {
    json doc = json::array();
    for (const TimedEvent& e : trace.events) {
        json ej;
        ej["party"] = e.label.party;
        ej["action"] = e.label.action;
        if (e.label.attempted) ej["attempted"] = true;
        ej["at"] = e.at.str();
        doc.push_back(std::move(ej));
    }
    return doc.dump(2) + "\n";
}

}  // namespace tca
