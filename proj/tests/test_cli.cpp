// end-to-end checks of the installed binary: exit codes are the contract
// scripts rely on, artifacts must re-verify in a fresh process
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "json.hpp"

namespace {

int failures = 0;

void expect(bool ok, const std::string& what) {
    if (!ok) {
        ++failures;
        std::cerr << "FAIL: " << what << "\n";
    }
}

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run(const std::string& args) {
    std::string cmd = std::string(PEF_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    RunResult res{-1, {}};
    if (!pipe) return res;
    char buf[4096];
    while (size_t got = fread(buf, 1, sizeof buf, pipe)) res.out.append(buf, got);
    int status = pclose(pipe);
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

void write_file(const std::string& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary);
    out << body;
}

std::string tmp(const std::string& name) { return "/tmp/pef_cli_" + name; }

}  // namespace

int main() {
    write_file(tmp("c5.g"), "p edge 5 5\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 5 1\n");
    write_file(tmp("c6.g"), "p edge 6 6\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 5 6\ne 6 1\n");
    write_file(tmp("bad.g"), "p edge 2 1\ne 1 1\n");

    expect(run("recognize " + tmp("c5.g")).exit_code == 0, "C5 recognized free (exit 0)");
    expect(run("recognize " + tmp("c6.g")).exit_code == 1, "C6 recognized forbidden (exit 1)");
    expect(run("recognize " + tmp("bad.g")).exit_code == 2, "malformed input (exit 2)");
    expect(run("recognize " + tmp("c6.g") + " --witness --verify --format json").exit_code == 1,
           "witness emission with self-check");

    // artifacts round-trip through a fresh process
    auto rep = run("recognize " + tmp("c5.g") + " --certificate --format json");
    expect(rep.out.find("\"certificate\"") != std::string::npos,
           "certificate embedded in the json report");
    {
        auto report = nlohmann::json::parse(rep.out);
        write_file(tmp("c5_cert.json"), report.at("certificate").dump());
        expect(run("verify " + tmp("c5.g") + " " + tmp("c5_cert.json")).exit_code == 0,
               "certificate re-verifies in a fresh process");
        expect(run("verify " + tmp("c6.g") + " " + tmp("c5_cert.json")).exit_code == 1,
               "certificate rejected against the wrong graph");
        auto wrep = run("recognize " + tmp("c6.g") + " --witness --format json");
        auto wreport = nlohmann::json::parse(wrep.out);
        write_file(tmp("c6_wit.json"), wreport.at("witness").dump());
        expect(run("verify " + tmp("c6.g") + " " + tmp("c6_wit.json")).exit_code == 0,
               "witness re-verifies in a fresh process");
        expect(run("verify " + tmp("c5.g") + " " + tmp("c6_wit.json")).exit_code == 1,
               "witness rejected against the wrong graph");
        write_file(tmp("junk.json"), "{\"type\":\"nonsense\"}");
        expect(run("verify " + tmp("c5.g") + " " + tmp("junk.json")).exit_code == 2,
               "schema mismatch gives exit 2");
    }

    // use gen + color + treewidth + arcs + oracle end to end
    expect(run("gen free --n 12 --seed 7 --out " + tmp("free.g")).exit_code == 0, "gen free");
    expect(run("recognize " + tmp("free.g")).exit_code == 0, "generated graph is free");
    expect(run("color " + tmp("free.g")).exit_code == 0, "color free graph");
    expect(run("treewidth " + tmp("free.g")).exit_code == 0, "treewidth free graph");
    expect(run("arcs " + tmp("free.g")).exit_code == 0, "arcs free graph");
    expect(run("color " + tmp("c6.g")).exit_code == 1, "color rejects forbidden input");
    expect(run("treewidth " + tmp("c6.g")).exit_code == 1, "treewidth rejects forbidden input");
    expect(run("oracle pan " + tmp("c6.g")).exit_code == 0, "oracle: C6 has no pan");
    expect(run("oracle even-hole " + tmp("c6.g")).exit_code == 1, "oracle: C6 has an even hole");
    expect(run("oracle chromatic " + tmp("c5.g")).out.find("chi=3") != std::string::npos,
           "oracle chromatic value");

    // deterministic generation
    auto g1 = run("gen free --n 14 --seed 42");
    auto g2 = run("gen free --n 14 --seed 42");
    expect(g1.out == g2.out && !g1.out.empty(), "gen is deterministic");
    auto g3 = run("gen free --n 14 --seed 43");
    expect(g1.out != g3.out, "seed changes the instance");

    // PEF_SEED environment fallback
    {
        std::string cmd = std::string("PEF_SEED=42 ") + PEF_CLI_PATH + " gen free --n 14";
        FILE* pipe = popen(cmd.c_str(), "r");
        std::string out;
        char buf[4096];
        while (size_t got = fread(buf, 1, sizeof buf, pipe)) out.append(buf, got);
        pclose(pipe);
        expect(out == g1.out, "PEF_SEED env provides the seed");
    }

    // remaining artifact kinds re-verify in fresh processes
    {
        auto crep = run("color " + tmp("free.g") + " --format json");
        auto creport = nlohmann::json::parse(crep.out);
        write_file(tmp("free_col.json"), creport.at("coloring").dump());
        expect(run("verify " + tmp("free.g") + " " + tmp("free_col.json")).exit_code == 0,
               "coloring artifact re-verifies");
        auto trep = run("treewidth " + tmp("free.g") + " --format json");
        auto treport = nlohmann::json::parse(trep.out);
        write_file(tmp("free_td.json"), treport.at("tree_decomposition").dump());
        expect(run("verify " + tmp("free.g") + " " + tmp("free_td.json")).exit_code == 0,
               "tree decomposition artifact re-verifies");
        auto arep = run("arcs " + tmp("free.g") + " --format json");
        auto areport = nlohmann::json::parse(arep.out);
        write_file(tmp("free_arcs.json"), areport.at("arcs").dump());
        expect(run("verify " + tmp("free.g") + " " + tmp("free_arcs.json")).exit_code == 0,
               "arc bundle artifact re-verifies");
    }

    // dot / svg formats
    expect(run("treewidth " + tmp("c5.g") + " --format dot").out.find("graph") != std::string::npos,
           "treewidth dot output");
    expect(run("arcs " + tmp("c5.g") + " --format svg").out.find("<svg") != std::string::npos,
           "arcs svg output");

    if (failures) {
        std::cerr << failures << " cli check(s) failed\n";
        return 1;
    }
    std::cout << "cli checks passed\n";
    return 0;
}
