// Command-line front end: validation, flattening, conflict analysis,
// simulation, DOT export, and the seeded property suites.
//
// Exit codes: 0 success / conflict-free / clean run, 1 potential conflicts or
// failed property suite, 2 invalid input, 3 internal error, 4 violation.

#include "tca/analysis.hpp"
#include "tca/dot.hpp"
#include "tca/errors.hpp"
#include "tca/flatten.hpp"
#include "tca/json_io.hpp"
#include "tca/oracle.hpp"
#include "tca/semantics.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <unistd.h>

namespace {

constexpr int kOk = 0;
constexpr int kFindings = 1;
constexpr int kInvalid = 2;
constexpr int kInternal = 3;
constexpr int kViolation = 4;

bool color_enabled() {
    const char* mode = std::getenv("TCA_COLOR");
    if (mode != nullptr && std::string(mode) == "never") return false;
    return isatty(STDOUT_FILENO) != 0;
}

std::string paint(const std::string& text, const char* code) {
    if (!color_enabled()) return text;
    return std::string("\033[") + code + "m" + text + "\033[0m";
}

std::string red(const std::string& t) { return paint(t, "31"); }
std::string green(const std::string& t) { return paint(t, "32"); }
std::string yellow(const std::string& t) { return paint(t, "33"); }

tca::TimedContractAutomaton load_wellformed(const std::string& path) {
    tca::TimedContractAutomaton m = tca::load_automaton(path);
    const tca::ValidationReport report = tca::validate_wellformed(m);
    if (!report.ok()) {
        std::string message = path + " is not well-formed:";
        for (const std::string& p : report.problems) message += "\n  - " + p;
        throw tca::ModelError(message);
    }
    return m;
}

std::string describe_norm_set(const tca::TimedContractAutomaton& m, const tca::NormSet& set) {
    std::string out = "{";
    for (std::size_t i = 0; i < set.size(); ++i) {
        if (i > 0) out += ",";
        out += m.norm(set[i]).id;
    }
    return out + "}";
}

std::string describe_valuation(const tca::ClockValuation& v) {
    std::string out;
    for (const auto& [clock, value] : v) {
        if (!out.empty()) out += " ";
        out += clock + "=" + value.str();
    }
    return out;
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path);
    if (!out) throw tca::Error("cannot write '" + path + "'");
    out << content;
}

int cmd_validate(const std::string& path) {
    const tca::TimedContractAutomaton m = tca::load_automaton(path);
    const tca::ValidationReport report = tca::validate_wellformed(m);
    if (!report.ok()) {
        std::cout << red("not well-formed") << " (" << report.problems.size() << " problem"
                  << (report.problems.size() == 1 ? "" : "s") << "):\n";
        for (const std::string& p : report.problems) std::cout << "  - " << p << "\n";
        return kInvalid;
    }
    std::cout << green("well-formed") << ": " << m.states().size() << " states, "
              << m.transitions().size() << " transitions, " << m.norms().size() << " norms\n";
    return kOk;
}

int cmd_flatten(const std::string& path, bool prune, const std::string& out_path,
                const std::string& dot_path) {
    const tca::TimedContractAutomaton m = load_wellformed(path);
    tca::FlattenedAutomaton flat = tca::flatten(m);
    const std::size_t states_before = flat.automaton.states().size();
    const std::size_t transitions_before = flat.automaton.transitions().size();
    if (prune) flat = tca::prune_unsat(flat);

    std::cerr << "flat states:      " << states_before << " -> "
              << flat.automaton.states().size() << "\n";
    std::cerr << "flat transitions: " << transitions_before << " -> "
              << flat.automaton.transitions().size() << "\n";

    write_output(out_path, tca::serialize_automaton(flat.automaton));
    if (!dot_path.empty()) {
        write_output(dot_path, tca::export_dot(flat.automaton));
    }
    return kOk;
}

int cmd_analyze(const std::string& path, bool prune, bool as_json) {
    const tca::TimedContractAutomaton m = load_wellformed(path);
    const tca::AnalysisVerdict verdict = tca::analyze(m, tca::AnalyzeOptions{prune});

    if (as_json) {
        nlohmann::json doc;
        doc["verdict"] = verdict.conflict_free ? "conflict-free" : "potential-conflicts";
        doc["stats"] = {
            {"flatStatesBeforePrune", verdict.stats.flat_states_before},
            {"flatStatesAfterPrune", verdict.stats.flat_states_after},
            {"transitionsBeforePrune", verdict.stats.transitions_before},
            {"transitionsAfterPrune", verdict.stats.transitions_after},
            {"wallMs", verdict.stats.wall_ms},
        };
        nlohmann::json findings = nlohmann::json::array();
        for (const tca::ConflictFinding& f : verdict.findings) {
            nlohmann::json fj;
            fj["state"] = f.base_state;
            fj["flatStates"] = f.flat_states;
            fj["pair"] = {m.norm(f.left).id, m.norm(f.right).id};
            fj["modalities"] = {tca::to_string(m.norm(f.left).modality),
                                tca::to_string(m.norm(f.right).modality)};
            fj["party"] = m.norm(f.left).party;
            fj["action"] = m.norm(f.left).action;
            nlohmann::json witness = nlohmann::json::array();
            for (const tca::ConvexZone& z : f.witness.zones()) {
                nlohmann::json zone = nlohmann::json::array();
                for (const tca::Constraint& c : z.constraints()) {
                    const std::string lhs = c.right.empty() ? c.left : c.left + "-" + c.right;
                    zone.push_back({lhs, tca::to_string(c.op), c.constant.str()});
                }
                witness.push_back(std::move(zone));
            }
            fj["witness"] = std::move(witness);
            nlohmann::json sample;
            for (const auto& [clock, value] : f.sample) sample[clock] = value.str();
            fj["sample"] = std::move(sample);
            findings.push_back(std::move(fj));
        }
        doc["findings"] = std::move(findings);
        std::cout << doc.dump(2) << "\n";
        return verdict.conflict_free ? kOk : kFindings;
    }

    if (verdict.conflict_free) {
        std::cout << green("CONFLICT-FREE") << ": no state of the flattened automaton holds "
                  << "opposing norms with overlapping windows\n";
    } else {
        std::cout << yellow("POTENTIAL CONFLICTS") << ": " << verdict.findings.size()
                  << " finding" << (verdict.findings.size() == 1 ? "" : "s") << "\n";
        std::size_t index = 1;
        for (const tca::ConflictFinding& f : verdict.findings) {
            const tca::Norm& left = m.norm(f.left);
            const tca::Norm& right = m.norm(f.right);
            std::cout << "\nfinding " << index++ << ": state " << f.base_state << "\n";
            std::cout << "  " << tca::to_string(left.modality) << " " << left.id << ": "
                      << left.str() << "\n";
            std::cout << "  " << tca::to_string(right.modality) << " " << right.id << ": "
                      << right.str() << "\n";
            std::cout << "  both windows open when: " << f.witness.str() << "\n";
            std::cout << "  sample valuation: " << describe_valuation(f.sample) << "\n";
            std::cout << "  flattened states:";
            for (const std::string& fs : f.flat_states) std::cout << " " << fs;
            std::cout << "\n";
        }
    }
    std::cout << "\nstats: flat states " << verdict.stats.flat_states_before << " -> "
              << verdict.stats.flat_states_after << ", transitions "
              << verdict.stats.transitions_before << " -> " << verdict.stats.transitions_after
              << ", " << verdict.stats.wall_ms << " ms\n";
    return verdict.conflict_free ? kOk : kFindings;
}

int cmd_simulate(const std::string& automaton_path, const std::string& trace_path, bool verbose) {
    const tca::TimedContractAutomaton m = load_wellformed(automaton_path);
    const tca::TimedTrace trace = tca::load_trace(trace_path);
    const tca::RunReport report = tca::run_trace(m, trace);

    auto print_configuration = [&](const tca::Configuration& c) {
        std::cout << m.state(c.state).id << "  " << describe_valuation(c.valuation)
                  << "  P=" << describe_norm_set(m, c.persistent)
                  << " E=" << describe_norm_set(m, c.ephemeral) << "\n";
        if (verbose) {
            for (tca::NormIndex n : tca::set_union(c.persistent, c.ephemeral)) {
                std::cout << "    active: " << m.norm(n).str() << "\n";
            }
        }
    };

    std::cout << "initial: ";
    print_configuration(tca::initial_configuration(m));
    if (report.initial_conflict) {
        std::cout << "  " << yellow("CONFLICT") << ": "
                  << m.norm(report.initial_conflict->first).id << " vs "
                  << m.norm(report.initial_conflict->second).id << "\n";
    }

    for (const tca::RunStep& rs : report.steps) {
        std::cout << "event " << rs.event.label.str() << " @ " << rs.event.at.str() << ": ";
        if (rs.outcome.violated) {
            std::cout << red("VIOLATION") << " by";
            for (tca::NormIndex n : rs.outcome.violated->norms) {
                std::cout << " " << m.norm(n).str();
            }
            std::cout << "\n";
            break;
        }
        print_configuration(*rs.outcome.next);
        if (rs.outcome.conflict) {
            std::cout << "  " << yellow("CONFLICT") << ": " << m.norm(rs.outcome.conflict->first).id
                      << " vs " << m.norm(rs.outcome.conflict->second).id << "\n";
        }
    }

    if (report.violated) {
        std::cout << red("run violated the contract") << "\n";
        return kViolation;
    }
    if (report.any_conflict) {
        std::cout << yellow("run reached conflicting norms") << "\n";
        return kFindings;
    }
    std::cout << green("run clean") << "\n";
    return kOk;
}

int cmd_export_dot(const std::string& path, bool flattened, const std::string& out_path) {
    const tca::TimedContractAutomaton m = load_wellformed(path);
    if (flattened) {
        const tca::FlattenedAutomaton flat = tca::prune_unsat(tca::flatten(m));
        write_output(out_path, tca::export_dot(flat.automaton));
    } else {
        write_output(out_path, tca::export_dot(m));
    }
    return kOk;
}

int cmd_fuzz(const std::string& suite_token, std::uint64_t seed, int count) {
    const auto suite = tca::suite_from(suite_token);
    if (!suite) {
        std::cerr << "unknown suite '" << suite_token
                  << "' (lemma1|lemma2|lemma3|determinism|theorem1|soundness|zones)\n";
        return kInvalid;
    }
    const tca::SuiteResult result = tca::run_suite(*suite, seed, count);
    std::cout << "suite " << suite_token << ": " << result.passed << " passed, " << result.failed
              << " failed (seeds " << seed << ".." << (seed + static_cast<std::uint64_t>(count) - 1)
              << ")\n";
    if (!result.ok()) {
        std::cout << red("first failure") << " at seed " << result.first_failing_seed << ": "
                  << result.message << "\n";
        return kFindings;
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"timed contract automata: flattening, conflict analysis, simulation"};
    app.require_subcommand(1);

    std::string path;
    std::string trace_path;
    std::string out_path;
    std::string dot_path;
    std::string suite;
    bool no_prune = false;
    bool as_json = false;
    bool verbose = false;
    bool flattened = false;
    std::uint64_t seed = 1;
    int count = 100;

    auto* validate = app.add_subcommand("validate", "check a contract automaton document");
    validate->add_option("file", path)->required();

    auto* flatten_cmd =
        app.add_subcommand("flatten", "reduce persistent norms to ephemeral ones");
    flatten_cmd->add_option("file", path)->required();
    flatten_cmd->add_flag("--no-prune", no_prune, "keep transitions that can never fire");
    flatten_cmd->add_option("--out", out_path, "write the flattened document here (default stdout)");
    flatten_cmd->add_option("--dot", dot_path, "also write a DOT rendering here");

    auto* analyze = app.add_subcommand("analyze", "report potentially conflicting norm pairs");
    analyze->add_option("file", path)->required();
    analyze->add_flag("--json", as_json, "machine-readable report");
    analyze->add_flag("--no-prune", no_prune, "analyze the unpruned flattening");

    auto* simulate = app.add_subcommand("simulate", "run a timed trace against a contract");
    simulate->add_option("automaton", path)->required();
    simulate->add_option("trace", trace_path)->required();
    simulate->add_flag("--verbose,-v", verbose, "print active norms after each event");

    auto* export_dot = app.add_subcommand("export-dot", "render the automaton as Graphviz DOT");
    export_dot->add_option("file", path)->required();
    export_dot->add_flag("--flattened", flattened, "render the pruned flattening instead");
    export_dot->add_option("--out", out_path, "write DOT here (default stdout)");

    auto* fuzz = app.add_subcommand("fuzz", "run a seeded property suite");
    fuzz->add_option("--suite", suite, "lemma1|lemma2|lemma3|determinism|theorem1|soundness|zones")
        ->required();
    fuzz->add_option("--seed", seed, "first seed (default 1)");
    fuzz->add_option("--count", count, "number of instances (default 100)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kInvalid;
    }

    try {
        if (validate->parsed()) return cmd_validate(path);
        if (flatten_cmd->parsed()) return cmd_flatten(path, !no_prune, out_path, dot_path);
        if (analyze->parsed()) return cmd_analyze(path, !no_prune, as_json);
        if (simulate->parsed()) return cmd_simulate(path, trace_path, verbose);
        if (export_dot->parsed()) return cmd_export_dot(path, flattened, out_path);
        if (fuzz->parsed()) return cmd_fuzz(suite, seed, count);
    } catch (const tca::ParseError& e) {
        std::cerr << red("error") << ": " << e.what() << "\n";
        return kInvalid;
    } catch (const tca::ModelError& e) {
        std::cerr << red("error") << ": " << e.what() << "\n";
        return kInvalid;
    } catch (const std::exception& e) {
        std::cerr << red("internal error") << ": " << e.what() << "\n";
        return kInternal;
    }
    return kInternal;
}
