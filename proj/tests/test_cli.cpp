// End-to-end checks of the command-line tool. The binary path arrives via
// TCA_BIN and the working directory is the repository root, so the bundled
// fixtures resolve as examples/<name>.json.

#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

namespace {

struct CmdResult {
    int code = -1;
    std::string out;
};

CmdResult run(const std::string& args) {
    const char* bin = std::getenv("TCA_BIN");
    REQUIRE_MESSAGE(bin != nullptr, "TCA_BIN must point at the CLI binary");
    const std::string cmd = "TCA_COLOR=never " + std::string(bin) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    CmdResult result;
    char buffer[4096];
    while (std::size_t n = fread(buffer, 1, sizeof buffer, pipe)) {
        result.out.append(buffer, n);
    }
    const int status = pclose(pipe);
    result.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    REQUIRE(out.good());
    out << content;
}

int count_occurrences(const std::string& text, const std::string& needle) {
    int count = 0;
    for (std::size_t pos = text.find(needle); pos != std::string::npos;
         pos = text.find(needle, pos + needle.size())) {
        ++count;
    }
    return count;
}

}  // namespace

TEST_CASE("validate") {
    CHECK(run("validate examples/resource.json").code == 0);
    CHECK(run("validate examples/resource-fixed.json").code == 0);

    SUBCASE("a reset of the global clock is rejected") {
        write_file("/tmp/tca_gamma_reset.json", R"({
          "clocks": ["t"], "parties": ["A"], "actions": ["a"], "initial": "q0",
          "states": [ { "id": "q0" } ],
          "transitions": [ { "from": "q0", "party": "A", "action": "a",
                             "reset": ["gamma"], "to": "q0" } ]
        })");
        const CmdResult r = run("validate /tmp/tca_gamma_reset.json");
        CHECK(r.code == 2);
        CHECK(r.out.find("global clock") != std::string::npos);
    }
    SUBCASE("overlapping guards to different targets are rejected") {
        write_file("/tmp/tca_nondet.json", R"({
          "clocks": ["t"], "parties": ["A"], "actions": ["a"], "initial": "q0",
          "states": [ { "id": "q0" }, { "id": "q1" } ],
          "transitions": [
            { "from": "q0", "party": "A", "action": "a", "guard": [[["t", "<=", "5"]]], "to": "q0" },
            { "from": "q0", "party": "A", "action": "a", "guard": [[["t", "<=", "3"]]], "to": "q1" }
          ]
        })");
        CHECK(run("validate /tmp/tca_nondet.json").code == 2);
    }
    SUBCASE("missing and malformed files") {
        CHECK(run("validate /tmp/tca_no_such_file.json").code == 2);
        write_file("/tmp/tca_garbage.json", "{ not json");
        CHECK(run("validate /tmp/tca_garbage.json").code == 2);
    }
}

TEST_CASE("analyze") {
    SUBCASE("the resource contract reports its one finding") {
        const CmdResult r = run("analyze examples/resource.json");
        CHECK(r.code == 1);
        CHECK(r.out.find("POTENTIAL CONFLICTS") != std::string::npos);
        CHECK(r.out.find("state q4") != std::string::npos);
        CHECK(r.out.find("o_release") != std::string::npos);
        CHECK(r.out.find("f_release") != std::string::npos);
        CHECK(r.out.find("t <= 15") != std::string::npos);
    }
    SUBCASE("machine-readable report") {
        const CmdResult r = run("analyze examples/resource.json --json");
        CHECK(r.code == 1);
        CHECK(r.out.find("\"verdict\": \"potential-conflicts\"") != std::string::npos);
        CHECK(r.out.find("\"state\": \"q4\"") != std::string::npos);
    }
    SUBCASE("pruning removes the unreachable diagnosis from the fixed contract") {
        CHECK(run("analyze examples/resource-fixed.json").code == 0);
        CHECK(run("analyze examples/resource-fixed.json --no-prune").code == 1);
    }
    SUBCASE("a norm-free contract is conflict-free") {
        write_file("/tmp/tca_no_norms.json", R"({
          "clocks": [], "parties": ["A"], "actions": ["a"], "initial": "q0",
          "states": [ { "id": "q0" } ], "transitions": []
        })");
        const CmdResult r = run("analyze /tmp/tca_no_norms.json");
        CHECK(r.code == 0);
        CHECK(r.out.find("CONFLICT-FREE") != std::string::npos);
    }
}

TEST_CASE("simulate") {
    SUBCASE("the transaction scenario flags the conflict") {
        const CmdResult r = run("simulate examples/resource.json examples/resource-trace.json");
        CHECK(r.code == 1);
        CHECK(r.out.find("CONFLICT") != std::string::npos);
        CHECK(r.out.find("q4") != std::string::npos);
    }
    SUBCASE("the empty trace is clean") {
        write_file("/tmp/tca_empty_trace.json", "[]");
        CHECK(run("simulate examples/resource.json /tmp/tca_empty_trace.json").code == 0);
    }
    SUBCASE("verbose mode prints the active norms") {
        const CmdResult r =
            run("simulate examples/resource.json examples/resource-trace.json --verbose");
        CHECK(r.code == 1);
        CHECK(r.out.find("active: O(A:release | t <= 15)") != std::string::npos);
    }
    SUBCASE("a late release violates the obligation") {
        write_file("/tmp/tca_late.json", R"([
          { "party": "A", "action": "get", "at": "1" },
          { "party": "B", "action": "request", "at": "2" },
          { "party": "A", "action": "release", "at": "20" }
        ])");
        const CmdResult r = run("simulate examples/resource.json /tmp/tca_late.json");
        CHECK(r.code == 4);
        CHECK(r.out.find("VIOLATION") != std::string::npos);
    }
    SUBCASE("the fixed contract stops the transaction with a violation") {
        write_file("/tmp/tca_start.json", R"([
          { "party": "A", "action": "get", "at": "1" },
          { "party": "B", "action": "request", "at": "2" },
          { "party": "A", "action": "start", "at": "3" }
        ])");
        const CmdResult r = run("simulate examples/resource-fixed.json /tmp/tca_start.json");
        CHECK(r.code == 4);
        CHECK(r.out.find("VIOLATION") != std::string::npos);
        CHECK(r.out.find("A:start") != std::string::npos);
    }
}

TEST_CASE("flatten") {
    const CmdResult r = run(
        "flatten examples/resource.json --out /tmp/tca_flat.json --dot /tmp/tca_flat.dot");
    CHECK(r.code == 0);
    CHECK(r.out.find("flat states:") != std::string::npos);
    CHECK(r.out.find("16 -> 5") != std::string::npos);
    // The emitted document is itself a valid, analyzable contract.
    CHECK(run("validate /tmp/tca_flat.json").code == 0);
    CHECK(run("analyze /tmp/tca_flat.json").code == 1);
    std::ifstream dot("/tmp/tca_flat.dot");
    std::string dot_text((std::istreambuf_iterator<char>(dot)),
                         std::istreambuf_iterator<char>());
    CHECK(dot_text.find("digraph") != std::string::npos);

    const CmdResult unpruned =
        run("flatten examples/stress6.json --no-prune --out /dev/null");
    CHECK(unpruned.code == 0);
    CHECK(unpruned.out.find("64") != std::string::npos);
}

TEST_CASE("export-dot") {
    SUBCASE("the source automaton renders with all its parts") {
        const CmdResult r = run("export-dot examples/resource.json");
        CHECK(r.code == 0);
        CHECK(r.out.find("digraph") != std::string::npos);
        CHECK(count_occurrences(r.out, "[label=\"q") == 5);   // five state nodes
        CHECK(count_occurrences(r.out, " -> s") == 9);        // eight edges plus the initial marker
        CHECK(r.out.find("B:request | true -> reset(t)") != std::string::npos);
    }
    SUBCASE("the flattened rendering keeps the conflicting variant of q4") {
        const CmdResult r = run("export-dot examples/resource.json --flattened");
        CHECK(r.code == 0);
        CHECK(r.out.find("q4|E={f_release,f_request}|P={o_release}") != std::string::npos);
    }
    SUBCASE("a single-state contract renders one node") {
        write_file("/tmp/tca_single.json", R"({
          "clocks": [], "parties": ["A"], "actions": ["a"], "initial": "q0",
          "states": [ { "id": "q0" } ], "transitions": []
        })");
        const CmdResult r = run("export-dot /tmp/tca_single.json");
        CHECK(r.code == 0);
        CHECK(count_occurrences(r.out, "[label=\"q") == 1);
    }
    SUBCASE("--out writes the rendering to a file") {
        CHECK(run("export-dot examples/resource.json --out /tmp/tca_resource.dot").code == 0);
        std::ifstream dot("/tmp/tca_resource.dot");
        std::string text((std::istreambuf_iterator<char>(dot)), std::istreambuf_iterator<char>());
        CHECK(text.find("digraph") != std::string::npos);
        CHECK(count_occurrences(text, "[label=\"q") == 5);
    }
}

TEST_CASE("fuzz") {
    for (const char* suite :
         {"lemma1", "lemma2", "lemma3", "determinism", "theorem1", "soundness", "zones"}) {
        const CmdResult r = run(std::string("fuzz --suite ") + suite + " --seed 7 --count 5");
        CHECK_MESSAGE(r.code == 0, suite, ": ", r.out);
        CHECK(r.out.find("5 passed, 0 failed") != std::string::npos);
    }
    CHECK(run("fuzz --suite nonsense --count 1").code == 2);
}

TEST_CASE("usage errors exit with the invalid-input code") {
    CHECK(run("").code == 2);
    CHECK(run("frobnicate").code == 2);
    CHECK(run("analyze").code == 2);
}
