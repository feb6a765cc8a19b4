#include "doctest.h"
#include "pef/oracle.hpp"
#include "pef/serialize.hpp"
#include "test_util.hpp"

using namespace pef;
using namespace pef::testutil;
namespace orc = pef::oracle;
using nlohmann::json;

TEST_CASE("witness json round trip and verification") {
    Graph g = cycle_with_pendant(5);
    Witness w = Witness::make_pan({Hole{{0, 1, 2, 3, 4}}, 5, 0});
    auto j = io::witness_to_json(w);
    CHECK(j["type"] == "witness");
    CHECK(j["handle_vertex"] == 6);  // 1-based outside
    auto back = io::witness_from_json(j);
    CHECK(back.verify(g));
    CHECK(io::verify_artifact(g, j).ok);
    // wrong graph: C5 witness against C6 fails
    Witness h = Witness::make_even_hole(Hole{{0, 1, 2, 3, 4, 5}});
    CHECK(io::verify_artifact(cycle(6), io::witness_to_json(h)).ok);
    CHECK(!io::verify_artifact(cycle_with_pendant(5), io::witness_to_json(h)).ok);
}

TEST_CASE("certificate json round trip preserves validity") {
    for (const Graph& g : {cycle(5), wheel(5), orc::complete_buoy_graph(5, 2), path(5)}) {
        auto v = recognize(g);
        REQUIRE(v.free());
        auto j = io::certificate_to_json(v.certificate);
        auto back = io::certificate_from_json(j);
        CHECK(verify_certificate(g, back));
        CHECK(io::verify_artifact(g, j).ok);
    }
}

TEST_CASE("tampered certificate json is rejected") {
    auto v = recognize(cycle(5));
    auto j = io::certificate_to_json(v.certificate);
    // drop a vertex from the buoy bag
    for (auto& node : j["nodes"])
        if (node.contains("atom") && node["atom"]["kind"] == "structured")
            node["atom"]["bags"][0] = json::array({});
    CHECK(!io::verify_artifact(cycle(5), j).ok);
}

TEST_CASE("coloring and tree decomposition artifacts") {
    Graph g = orc::complete_buoy_graph(5, 2);
    auto v = recognize(g);
    auto coloring = color_free_graph(g, v.certificate);
    auto cj = io::coloring_to_json(coloring);
    CHECK(io::verify_artifact(g, cj).ok);
    cj["colors"][0] = cj["colors"][1];
    CHECK(!io::verify_artifact(g, cj).ok);

    auto td = tree_decomposition_free_graph(g, v.certificate);
    auto tj = io::tree_decomposition_to_json(td);
    CHECK(io::verify_artifact(g, tj).ok);
    // erase vertex 1 from every bag: it ends up uncovered
    for (auto& bag : tj["bags"]) {
        json kept = json::array();
        for (auto& v : bag)
            if (v != 1) kept.push_back(v);
        bag = kept;
    }
    CHECK(!io::verify_artifact(g, tj).ok);
}

TEST_CASE("arcs artifact round trip") {
    Graph g = orc::complete_buoy_graph(5, 2);
    Buoy b{{{0, 1}, {2, 3}, {4, 5}, {6, 7}, {8, 9}}};
    auto rep = std::get<ArcRepresentation>(buoy_to_unit_arcs(g, b));
    auto j = io::arcs_to_json(rep);
    CHECK(io::verify_artifact(g, j).ok);
    j["arcs"][0]["end"] = j["arcs"][0]["start"];
    CHECK(!io::verify_artifact(g, j).ok);
}

TEST_CASE("dot emitters") {
    auto v = recognize(cycle_with_pendant(6));  // C6 forbidden... use free graph
    Graph g = path(5);
    auto vf = recognize(g);
    REQUIRE(vf.free());
    auto dot = io::decomposition_to_dot(vf.certificate);
    CHECK(dot.find("digraph") != std::string::npos);
    auto td = tree_decomposition_free_graph(g, vf.certificate);
    auto tdot = io::tree_decomposition_to_dot(td);
    CHECK(tdot.find("graph") != std::string::npos);
}

TEST_CASE("buoy json carries sorted bags and the host digest") {
    Graph g = orc::complete_buoy_graph(5, 2);
    Buoy b{{{1, 0}, {2, 3}, {4, 5}, {6, 7}, {9, 8}}};
    auto j = io::buoy_to_json(g, b);
    CHECK(j["type"] == "buoy");
    CHECK(j["bags"][0] == std::vector<int>{1, 2});  // sorted, 1-based
    CHECK(j["bags"][4] == std::vector<int>{9, 10});
    CHECK(j["host_digest"] == io::graph_digest(g));
}

TEST_CASE("graph digest is stable and input sensitive") {
    CHECK(io::graph_digest(cycle(5)) == io::graph_digest(cycle(5)));
    CHECK(io::graph_digest(cycle(5)) != io::graph_digest(cycle(6)));
}
