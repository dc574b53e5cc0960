#include "tca/dot.hpp"

#include <sstream>

namespace tca {

namespace {

std::string escaped(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

std::string norm_line(const Norm& n, const char* kind) {
    return escaped(n.str()) + " [" + kind + "]";
}

}  // namespace

std::string export_dot(const TimedContractAutomaton& m) {
    std::ostringstream os;
    os << "digraph contract {\n";
    os << "  rankdir=LR;\n";
    os << "  node [shape=box, style=rounded];\n";
    os << "  __init [shape=point];\n";

    for (std::size_t i = 0; i < m.states().size(); ++i) {
        const State& st = m.states()[i];
        std::string label = escaped(st.id);
        for (NormIndex n : st.pers) label += "\\n" + norm_line(m.norm(n), "pers");
        for (NormIndex n : st.eph) label += "\\n" + norm_line(m.norm(n), "eph");
        os << "  s" << i << " [label=\"" << label << "\"];\n";
    }
    os << "  __init -> s" << m.initial_index() << ";\n";

    for (const Transition& tr : m.transitions()) {
        std::string label = tr.label.str() + " | " + tr.guard.str();
        if (!tr.reset.empty()) {
            label += " -> reset(";
            bool first = true;
            for (const auto& [clock, value] : tr.reset) {
                if (!first) label += ",";
                label += clock;
                first = false;
            }
            label += ")";
        }
        os << "  s" << tr.from << " -> s" << tr.to << " [label=\"" << escaped(label) << "\"];\n";
    }
    os << "}\n";
    return os.str();
}

}  // namespace tca
