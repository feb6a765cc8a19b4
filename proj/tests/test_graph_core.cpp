#include <algorithm>

#include "doctest.h"
#include "pef/graph.hpp"
#include "pef/oracle.hpp"
#include "test_util.hpp"

using namespace pef;
using namespace pef::testutil;

TEST_CASE("parse_graph basics") {
    Graph p3 = parse_graph("p edge 3 2\ne 1 2\ne 1 3\n");
    CHECK(p3.vertex_count() == 3);
    CHECK(p3.edge_count() == 2);
    CHECK(p3.adjacent(0, 1));
    CHECK(p3.adjacent(0, 2));
    CHECK(!p3.adjacent(1, 2));

    Graph c5 = parse_graph("c a five-cycle\np edge 5 5\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 5 1\n");
    CHECK(c5.vertex_count() == 5);
    for (int i = 0; i < 5; ++i) CHECK(c5.adjacent(i, (i + 1) % 5));
}

TEST_CASE("parse_graph errors carry line numbers") {
    CHECK_THROWS_AS(parse_graph("p edge 2 1\ne 1 1\n"), parse_error);
    try {
        parse_graph("p edge 2 1\ne 1 1\n");
    } catch (const parse_error& e) {
        CHECK(e.line() == 2);
    }
    CHECK_THROWS_AS(parse_graph("p edge 2 2\ne 1 2\ne 2 1\n"), parse_error);   // duplicate
    CHECK_THROWS_AS(parse_graph("p edge 2 1\ne 1 3\n"), parse_error);          // out of range
    CHECK_THROWS_AS(parse_graph("p graph 2 1\ne 1 2\n"), parse_error);         // malformed header
    CHECK_THROWS_AS(parse_graph("e 1 2\n"), parse_error);                      // edge before header
    CHECK_THROWS_AS(parse_graph("p edge 3 2\ne 1 2\n"), parse_error);          // count mismatch
}

TEST_CASE("parse then serialize is the identity on canonical files") {
    std::string canonical = "p edge 5 5\ne 1 2\ne 1 5\ne 2 3\ne 3 4\ne 4 5\n";
    CHECK(serialize_graph(parse_graph(canonical)) == canonical);
    // property over generated graphs
    for (uint64_t seed = 0; seed < 25; ++seed) {
        Graph g = oracle::gen_random_graph(9, seed);
        std::string s = serialize_graph(g);
        CHECK(serialize_graph(parse_graph(s)) == s);
    }
}

TEST_CASE("induced_subgraph") {
    Graph c5 = cycle(5);
    auto all = induced_subgraph(c5, {0, 1, 2, 3, 4});
    CHECK(all.graph.edge_count() == 5);
    auto p3 = induced_subgraph(c5, {0, 1, 2});
    CHECK(p3.graph.vertex_count() == 3);
    CHECK(p3.graph.edge_count() == 2);
    auto k3 = induced_subgraph(complete(4), {1, 2, 3});
    CHECK(k3.graph.edge_count() == 3);
    CHECK(induced_subgraph(c5, {}).graph.vertex_count() == 0);
}

TEST_CASE("is_clique") {
    Graph k4 = complete(4);
    CHECK(is_clique(k4, {0, 1, 2, 3}));
    Graph c5 = cycle(5);
    CHECK(!is_clique(c5, {0, 2}));
    CHECK(is_clique(c5, {}));
    CHECK(is_clique(c5, {3}));
}

TEST_CASE("is_clique matches induced edge count") {
    for (uint64_t seed = 0; seed < 30; ++seed) {
        Graph g = oracle::gen_random_graph(8, seed);
        std::vector<int> s;
        for (int v = 0; v < 8; ++v)
            if ((seed * 31 + v * 7) % 3 == 0) s.push_back(v);
        int k = static_cast<int>(s.size());
        bool expect = induced_subgraph(g, s).graph.edge_count() == k * (k - 1) / 2;
        CHECK(is_clique(g, s) == expect);
    }
}

TEST_CASE("verify_hole") {
    Graph c5 = cycle(5);
    CHECK(verify_hole(c5, Hole{{0, 1, 2, 3, 4}}));
    CHECK(!verify_hole(complete(4), Hole{{0, 1, 2, 3}}));
    Hole c6{{0, 1, 2, 3, 4, 5}};
    CHECK(verify_hole(cycle(6), c6));
    CHECK(c6.even());
    CHECK(!verify_hole(c5, Hole{{0, 1, 2}}));         // too short
    CHECK(!verify_hole(c5, Hole{{0, 1, 2, 2, 4}}));   // repeated vertex
    CHECK(!verify_hole(c5, Hole{{0, 1, 3, 2, 4}}));   // wrong order
}

TEST_CASE("verify_hole sound and complete against brute force on n <= 7") {
    int agreements = 0;
    for (uint64_t seed = 0; seed < 60; ++seed) {
        Graph g = oracle::gen_random_graph(7, seed);
        auto hole = oracle::brute_any_hole(g);
        if (hole) {
            CHECK(verify_hole(g, *hole));
            ++agreements;
        } else {
            // chordal: no 4-subset cycle should verify; spot-check a few
            Hole probe{{0, 1, 2, 3}};
            CHECK(!verify_hole(g, probe));
        }
    }
    CHECK(agreements > 10);  // the sample actually exercises both branches
}

TEST_CASE("verify_pan") {
    // C5 + x adjacent only to v0
    Graph g = cycle_with_pendant(5);
    Pan pan{Hole{{0, 1, 2, 3, 4}}, 5, 0};
    CHECK(verify_pan(g, pan));
    // x adjacent to v0 and v1 is not a pan
    Graph g2 = make(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}, {5, 0}, {5, 1}});
    CHECK(!verify_pan(g2, Pan{Hole{{0, 1, 2, 3, 4}}, 5, 0}));
    // claw has no hole at all
    Graph claw = make(4, {{0, 1}, {0, 2}, {0, 3}});
    CHECK(!verify_pan(claw, Pan{Hole{{0, 1, 2, 3}}, 0, 1}));
}

TEST_CASE("universal_vertices") {
    CHECK(universal_vertices(complete(4)) == std::vector<int>{0, 1, 2, 3});
    CHECK(universal_vertices(cycle(5)).empty());
    CHECK(universal_vertices(wheel(5)) == std::vector<int>{5});
}

TEST_CASE("witness mapping and verification") {
    Graph g = cycle_with_pendant(5);
    Witness w = Witness::make_pan({Hole{{0, 1, 2, 3, 4}}, 5, 0});
    CHECK(w.verify(g));
    Witness h = Witness::make_even_hole(Hole{{0, 1, 2, 3, 4}});
    CHECK(!h.verify(g));  // odd hole is not an even-hole witness
}
