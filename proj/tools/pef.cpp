#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "pef/oracle.hpp"
#include "pef/serialize.hpp"

using namespace pef;
using nlohmann::json;

namespace {

constexpr int exit_free = 0;
constexpr int exit_forbidden = 1;
constexpr int exit_input_error = 2;
constexpr int exit_internal = 4;

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

Graph load_graph(const std::string& path) { return parse_graph(slurp(path)); }

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    }
};

json base_report(const std::string& command, const std::string& path, const Graph& g) {
    json r;
    r["command"] = command;
    r["input"] = {{"path", path}, {"digest", io::graph_digest(g)}, {"n", g.vertex_count()},
                  {"m", g.edge_count()}};
    return r;
}

void emit(const json& report, const std::string& format, const std::string& text_line) {
    if (format == "json")
        std::cout << report.dump(2) << "\n";
    else
        std::cout << text_line << "\n";
}

uint64_t pick_seed(CLI::Option* seed_opt, uint64_t seed_flag) {
    if (seed_opt->count()) return seed_flag;
    if (const char* env = std::getenv("PEF_SEED")) return std::strtoull(env, nullptr, 10);
    return 1;
}

int run_recognize(const std::string& path, bool want_witness, bool want_cert, bool recheck,
                  const std::string& format) {
    Graph g = load_graph(path);
    Timer t;
    Verdict verdict = recognize(g);
    json report = base_report("recognize", path, g);
    report["timings"] = {{"recognize_ms", t.ms()}};
    report["verdict"] = verdict.free() ? "free" : "forbidden";
    if (!verdict.free() && want_witness) report["witness"] = io::witness_to_json(verdict.witness);
    if (verdict.free() && want_cert)
        report["certificate"] = io::certificate_to_json(verdict.certificate);
    if (recheck) {
        bool ok = verdict.free() ? verify_certificate(g, verdict.certificate)
                                 : verdict.witness.verify(g);
        if (!ok) {
            std::cerr << "error: emitted payload failed re-verification\n";
            return exit_internal;
        }
        report["verified"] = true;
    }
    if (format == "dot" && verdict.free()) {
        std::cout << io::decomposition_to_dot(verdict.certificate);
        return exit_free;
    }
    std::string kind = !verdict.free()
                           ? (verdict.witness.kind == Witness::Kind::pan ? " (pan)" : " (even hole)")
                           : "";
    emit(report, format, path + ": " + report["verdict"].get<std::string>() + kind);
    return verdict.free() ? exit_free : exit_forbidden;
}

int run_color(const std::string& path, const std::string& format) {
    Graph g = load_graph(path);
    Timer t;
    Verdict verdict = recognize(g);
    json report = base_report("color", path, g);
    if (!verdict.free()) {
        report["verdict"] = "forbidden";
        report["witness"] = io::witness_to_json(verdict.witness);
        emit(report, format, path + ": forbidden, not colorable by this tool");
        return exit_forbidden;
    }
    Coloring coloring = color_free_graph(g, verdict.certificate);
    int omega = certificate_clique_number(g, verdict.certificate);
    report["verdict"] = "free";
    report["coloring"] = io::coloring_to_json(coloring);
    report["chromatic_number"] = coloring.palette;
    report["clique_number"] = omega;
    report["within_3w_over_2"] = 2 * coloring.palette <= 3 * omega;
    report["timings"] = {{"total_ms", t.ms()}};
    emit(report, format,
         path + ": chi=" + std::to_string(coloring.palette) + " omega=" + std::to_string(omega));
    return exit_free;
}

int run_treewidth(const std::string& path, const std::string& format) {
    Graph g = load_graph(path);
    Timer t;
    Verdict verdict = recognize(g);
    json report = base_report("treewidth", path, g);
    if (!verdict.free()) {
        report["verdict"] = "forbidden";
        report["witness"] = io::witness_to_json(verdict.witness);
        emit(report, format, path + ": forbidden");
        return exit_forbidden;
    }
    TreeDecomposition td = tree_decomposition_free_graph(g, verdict.certificate);
    auto val = validate_tree_decomposition(g, td);
    if (!val.ok) {
        std::cerr << "error: produced decomposition failed validation: " << val.message << "\n";
        return exit_internal;
    }
    int omega = certificate_clique_number(g, verdict.certificate);
    report["verdict"] = "free";
    report["tree_decomposition"] = io::tree_decomposition_to_json(td);
    report["width"] = val.width;
    report["clique_number"] = omega;
    report["within_3w_over_2"] = 2 * (val.width + 1) <= 3 * omega;
    report["timings"] = {{"total_ms", t.ms()}};
    if (format == "dot") {
        std::cout << io::tree_decomposition_to_dot(td);
        return exit_free;
    }
    emit(report, format,
         path + ": width=" + std::to_string(val.width) + " omega=" + std::to_string(omega));
    return exit_free;
}

int run_arcs(const std::string& path, const std::string& format) {
    Graph g = load_graph(path);
    Verdict verdict = recognize(g);
    json report = base_report("arcs", path, g);
    if (!verdict.free()) {
        report["verdict"] = "forbidden";
        report["witness"] = io::witness_to_json(verdict.witness);
        emit(report, format, path + ": forbidden");
        return exit_forbidden;
    }
    json bundle;
    bundle["type"] = "arc_bundle";
    bundle["representations"] = json::array();
    std::string svg;
    for (int leaf : verdict.certificate.leaves) {
        const auto& node = verdict.certificate.nodes[leaf];
        if (node.atom.kind != AtomCertificate::Kind::structured) continue;
        auto res = buoy_to_unit_arcs(g, node.atom.buoy);
        if (std::holds_alternative<UnitArcError>(res)) {
            std::cerr << "error: unit-arc construction failed on a certified buoy\n";
            return exit_internal;
        }
        const auto& rep = std::get<ArcRepresentation>(res);
        bundle["representations"].push_back(io::arcs_to_json(rep));
        svg += arcs_to_svg(rep);
    }
    report["verdict"] = "free";
    report["arcs"] = bundle;
    if (format == "svg") {
        std::cout << svg;
        return exit_free;
    }
    emit(report, format,
         path + ": " + std::to_string(bundle["representations"].size()) + " unit representation(s)");
    return exit_free;
}

int run_verify(const std::string& graph_path, const std::string& artifact_path,
               const std::string& format) {
    Graph g = load_graph(graph_path);
    json artifact = json::parse(slurp(artifact_path));
    auto check = io::verify_artifact(g, artifact);
    json report = base_report("verify", graph_path, g);
    report["artifact"] = artifact_path;
    report["valid"] = check.ok;
    if (!check.ok) report["first_discrepancy"] = check.message;
    emit(report, format,
         artifact_path + ": " + (check.ok ? "valid" : ("invalid: " + check.message)));
    return check.ok ? exit_free : exit_forbidden;
}

int run_oracle(const std::string& sub, const std::string& path, const std::string& format) {
    Graph g = load_graph(path);
    json report = base_report("oracle " + sub, path, g);
    if (sub == "even-hole") {
        auto h = oracle::brute_even_hole(g);
        report["found"] = h.has_value();
        if (h) report["witness"] = io::witness_to_json(Witness::make_even_hole(*h));
        emit(report, format, path + ": even hole " + (h ? "found" : "absent"));
        return h ? exit_forbidden : exit_free;
    }
    if (sub == "pan") {
        auto p = oracle::brute_pan(g);
        report["found"] = p.has_value();
        if (p) report["witness"] = io::witness_to_json(Witness::make_pan(*p));
        emit(report, format, path + ": pan " + (p ? "found" : "absent"));
        return p ? exit_forbidden : exit_free;
    }
    if (sub == "chromatic") {
        auto res = oracle::brute_chromatic(g);
        report["chromatic_number"] = res.chi;
        Coloring c{res.colors, res.chi};
        report["coloring"] = io::coloring_to_json(c);
        emit(report, format, path + ": chi=" + std::to_string(res.chi));
        return exit_free;
    }
    if (sub == "clique-number") {
        int omega = oracle::brute_clique_number(g);
        report["clique_number"] = omega;
        emit(report, format, path + ": omega=" + std::to_string(omega));
        return exit_free;
    }
    std::cerr << "unknown oracle subcommand: " << sub << "\n";
    return exit_input_error;
}

int run_gen(const std::string& family, int n, int atoms, int max_bag, uint64_t seed,
            const std::string& out_path) {
    oracle::GeneratorSpec spec;
    spec.target_n = n;
    spec.max_atoms = atoms;
    spec.max_bag = max_bag;
    spec.seed = seed;
    if (family == "free")
        spec.family = oracle::Family::free_graph;
    else if (family == "near-miss")
        spec.family = oracle::Family::near_miss;
    else if (family == "random")
        spec.family = oracle::Family::random_graph;
    else if (family == "buoy")
        spec.family = oracle::Family::random_buoy;
    else {
        std::cerr << "unknown generator family: " << family << "\n";
        return exit_input_error;
    }
    Graph g = oracle::generate(spec);
    std::string body = "c family " + family + " seed " + std::to_string(seed) + "\n" +
                       serialize_graph(g);
    if (out_path.empty()) {
        std::cout << body;
    } else {
        std::ofstream out(out_path, std::ios::binary);
        out << body;
    }
    return exit_free;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"certifying recognition, coloring, tree decompositions and unit circular-arc "
                 "representations for (pan, even hole)-free graphs"};
    app.require_subcommand(1);
    std::string format = "text";

    std::string path, artifact, family = "free", oracle_sub, out_path;
    bool want_witness = false, want_cert = false, recheck = false;
    int gen_n = 12, gen_atoms = 3, gen_bag = 3;
    uint64_t seed_flag = 1;

    auto add_format = [&](CLI::App* cmd) {
        cmd->add_option("--format", format, "output format: json, text, dot or svg");
    };

    auto* rec = app.add_subcommand("recognize", "decide (pan, even hole)-freeness");
    rec->add_option("graph", path, "graph file")->required();
    rec->add_flag("--witness", want_witness, "emit the pan / even-hole witness");
    rec->add_flag("--certificate", want_cert, "emit the structure certificate");
    rec->add_flag("--verify", recheck, "re-check the payload before printing");
    add_format(rec);

    auto* col = app.add_subcommand("color", "minimum coloring of a free graph");
    col->add_option("graph", path)->required();
    add_format(col);

    auto* tw = app.add_subcommand("treewidth", "tree decomposition within 1.5w - 1");
    tw->add_option("graph", path)->required();
    add_format(tw);

    auto* arcs = app.add_subcommand("arcs", "unit circular-arc representations of the buoy atoms");
    arcs->add_option("graph", path)->required();
    add_format(arcs);

    auto* ver = app.add_subcommand("verify", "re-check an emitted artifact against a graph");
    ver->add_option("graph", path)->required();
    ver->add_option("artifact", artifact, "artifact json")->required();
    add_format(ver);

    auto* orc = app.add_subcommand("oracle", "brute-force ground truth (size-guarded)");
    orc->add_option("sub", oracle_sub, "even-hole | pan | chromatic | clique-number")->required();
    orc->add_option("graph", path)->required();
    add_format(orc);

    auto* gen = app.add_subcommand("gen", "seeded instance generators");
    gen->add_option("family", family, "free | near-miss | random | buoy")->required();
    gen->add_option("--n", gen_n, "target vertex count");
    gen->add_option("--atoms", gen_atoms, "atoms to glue (free family)");
    gen->add_option("--max-bag", gen_bag, "largest buoy bag");
    auto* seed_opt = gen->add_option("--seed", seed_flag, "generator seed (PEF_SEED otherwise)");
    gen->add_option("--out", out_path, "write to a file instead of stdout");

    CLI11_PARSE(app, argc, argv);

    try {
        if (rec->parsed()) return run_recognize(path, want_witness, want_cert, recheck, format);
        if (col->parsed()) return run_color(path, format);
        if (tw->parsed()) return run_treewidth(path, format);
        if (arcs->parsed()) return run_arcs(path, format);
        if (ver->parsed()) return run_verify(path, artifact, format);
        if (orc->parsed()) return run_oracle(oracle_sub, path, format);
        if (gen->parsed())
            return run_gen(family, gen_n, gen_atoms, gen_bag, pick_seed(seed_opt, seed_flag),
                           out_path);
    } catch (const parse_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return exit_input_error;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return exit_input_error;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return exit_input_error;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_internal;
    }
    return exit_input_error;
}
