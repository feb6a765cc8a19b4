#include <algorithm>

#include "doctest.h"
#include "pef/chromatic.hpp"
#include "pef/oracle.hpp"
#include "test_util.hpp"

using namespace pef;
using namespace pef::testutil;
namespace orc = pef::oracle;

TEST_CASE("validate_tree_decomposition") {
    // single global bag is always valid, width n-1
    Graph g = cycle(5);
    TreeDecomposition one;
    one.bags.push_back({0, 1, 2, 3, 4});
    auto v = validate_tree_decomposition(g, one);
    CHECK(v.ok);
    CHECK(v.width == 4);
    // uncovered edge
    TreeDecomposition bad;
    bad.bags = {{0, 1}, {1, 2}, {2, 3}, {3, 4}};
    bad.edges = {{0, 1}, {1, 2}, {2, 3}};
    auto vb = validate_tree_decomposition(g, bad);
    CHECK(!vb.ok);  // edge 4-0 not covered
    // broken subtree
    TreeDecomposition sub;
    sub.bags = {{0, 1}, {1, 2}, {0, 2}};
    sub.edges = {{0, 1}, {1, 2}};
    Graph tri = complete(3);
    auto vs = validate_tree_decomposition(tri, sub);
    CHECK(!vs.ok);  // vertex 0 appears in bags 0 and 2, not connected
}

TEST_CASE("buoy_tree_decomposition: C5 has width 2") {
    Buoy b;
    for (int i = 0; i < 5; ++i) b.bags.push_back({i});
    auto td = buoy_tree_decomposition(cycle(5), b);
    auto val = validate_tree_decomposition(cycle(5), td);
    CAPTURE(val.message);
    REQUIRE(val.ok);
    CHECK(val.width == 2);
}

TEST_CASE("buoy_tree_decomposition: complete 5-buoy family hits width 3k-1") {
    for (int k = 1; k <= 3; ++k) {
        Graph g = orc::complete_buoy_graph(5, k);
        Buoy b;
        for (int i = 0; i < 5; ++i) {
            std::vector<int> bag;
            for (int j = 0; j < k; ++j) bag.push_back(i * k + j);
            b.bags.push_back(bag);
        }
        auto td = buoy_tree_decomposition(g, b);
        auto val = validate_tree_decomposition(g, td);
        CAPTURE(k);
        CAPTURE(val.message);
        REQUIRE(val.ok);
        CHECK(val.width == 3 * k - 1);
        if (g.vertex_count() <= 20) CHECK(orc::brute_clique_number(g) == 2 * k);
    }
}

TEST_CASE("buoy_clique_number matches brute force") {
    for (uint64_t seed = 0; seed < 60; ++seed) {
        orc::GeneratorSpec spec;
        spec.target_n = 15;
        spec.max_bag = 3;
        spec.seed = seed * 3 + 2;
        auto [g, bags] = orc::gen_free_buoy(spec);
        if (g.vertex_count() > 20) continue;
        Buoy b{bags};
        auto d = std::get<DominationOrders>(domination_orders(g, b));
        CAPTURE(seed);
        CHECK(buoy_clique_number(g, b, d) == orc::brute_clique_number(g));
    }
}

TEST_CASE("color_atom: cliques, C5, W5") {
    auto kcert = std::get<AtomCertificate>(test_atom(complete(4)));
    auto kc = color_atom(complete(4), kcert);
    CHECK(kc.palette == 4);
    CHECK(kc.proper(complete(4)));

    auto c5cert = std::get<AtomCertificate>(test_atom(cycle(5)));
    auto c5c = color_atom(cycle(5), c5cert);
    CHECK(c5c.palette == 3);
    CHECK(c5c.proper(cycle(5)));

    Graph w5 = wheel(5);
    auto wcert = std::get<AtomCertificate>(test_atom(w5));
    auto wc = color_atom(w5, wcert);
    CHECK(wc.palette == 4);  // |K| + chi(C5) = 1 + 3
    CHECK(wc.proper(w5));
    CHECK(orc::brute_chromatic(w5).chi == 4);
}

TEST_CASE("merge_colorings") {
    // two triangles sharing edge {0,1}
    Graph g = make(4, {{0, 1}, {0, 2}, {1, 2}, {0, 3}, {1, 3}});
    Coloring c1{{1, 2, 3, 0}, 3};
    Coloring c2{{2, 3, 0, 1}, 3};
    auto merged = merge_colorings(c1, c2, {0, 1});
    CHECK(merged.palette == 3);
    CHECK(merged.colors[0] == 1);
    CHECK(merged.colors[1] == 2);
    CHECK(merged.colors[3] != 1);
    CHECK(merged.colors[3] != 2);
    CHECK(merged.proper(g));
    // empty cutset: palette max
    Coloring a{{1, 0}, 1}, b{{0, 1}, 1};
    auto m2 = merge_colorings(a, b, {});
    CHECK(m2.palette == 1);
    CHECK(m2.colors[1] == 1);
}

TEST_CASE("color_free_graph: spec values") {
    auto c5 = recognize(cycle(5));
    auto col5 = color_free_graph(cycle(5), c5.certificate);
    CHECK(col5.palette == 3);
    CHECK(col5.proper(cycle(5)));

    Graph w5 = wheel(5);
    auto vw = recognize(w5);
    auto colw = color_free_graph(w5, vw.certificate);
    CHECK(colw.palette == 4);
    CHECK(colw.proper(w5));

    Graph fig = orc::complete_buoy_graph(5, 2);
    auto vf = recognize(fig);
    auto colf = color_free_graph(fig, vf.certificate);
    CHECK(colf.palette == 5);  // brute chromatic oracle agrees below
    CHECK(colf.proper(fig));
    CHECK(orc::brute_chromatic(fig).chi == 5);
    CHECK(orc::brute_clique_number(fig) == 4);
    CHECK(colf.palette <= 6);  // 1.5 * omega
}

TEST_CASE("color_free_graph is exact on generated free graphs") {
    for (uint64_t seed = 0; seed < 60; ++seed) {
        orc::GeneratorSpec spec;
        spec.target_n = 13;
        spec.max_bag = 3;
        spec.max_atoms = 3;
        spec.seed = seed * 31 + 7;
        Graph g = orc::gen_free_graph(spec);
        if (g.vertex_count() > 15) continue;
        CAPTURE(seed);
        auto verdict = recognize(g);
        REQUIRE(verdict.free());
        auto coloring = color_free_graph(g, verdict.certificate);
        CHECK(coloring.proper(g));
        CHECK(coloring.palette == orc::brute_chromatic(g).chi);
        int omega = certificate_clique_number(g, verdict.certificate);
        CHECK(omega == orc::brute_clique_number(g));
        CHECK(coloring.palette * 2 <= 3 * omega);  // chi <= 1.5 omega
    }
}

TEST_CASE("color_free_graph rejects invalid certificates") {
    auto v = recognize(cycle(5));
    auto broken = v.certificate;
    broken.nodes[broken.leaves[0]].atom.buoy.bags[0].clear();
    CHECK_THROWS_AS(color_free_graph(cycle(5), broken), std::invalid_argument);
}

TEST_CASE("tree_decomposition_free_graph: widths and the 1.5 omega bound") {
    // two triangles sharing an edge: chordal pieces, width 2
    Graph diamond = make(4, {{0, 1}, {0, 2}, {1, 2}, {0, 3}, {1, 3}});
    auto vd = recognize(diamond);
    REQUIRE(vd.free());
    auto tdd = tree_decomposition_free_graph(diamond, vd.certificate);
    auto vald = validate_tree_decomposition(diamond, tdd);
    REQUIRE(vald.ok);
    CHECK(vald.width == 2);

    Graph w5 = wheel(5);
    auto vw = recognize(w5);
    auto tdw = tree_decomposition_free_graph(w5, vw.certificate);
    auto valw = validate_tree_decomposition(w5, tdw);
    REQUIRE(valw.ok);
    CHECK(valw.width == 3);  // buoy width 2 plus one universal vertex

    Graph fig = orc::complete_buoy_graph(5, 2);
    auto vf = recognize(fig);
    auto tdf = tree_decomposition_free_graph(fig, vf.certificate);
    auto valf = validate_tree_decomposition(fig, tdf);
    REQUIRE(valf.ok);
    CHECK(valf.width == 5);
    CHECK((valf.width + 1) * 2 <= 3 * orc::brute_clique_number(fig));  // tight: 6 = 6
}

TEST_CASE("tree decompositions of generated free graphs validate within bound") {
    for (uint64_t seed = 0; seed < 50; ++seed) {
        orc::GeneratorSpec spec;
        spec.target_n = 14;
        spec.max_bag = 3;
        spec.max_atoms = 3;
        spec.seed = seed * 101 + 3;
        Graph g = orc::gen_free_graph(spec);
        CAPTURE(seed);
        auto verdict = recognize(g);
        REQUIRE(verdict.free());
        auto td = tree_decomposition_free_graph(g, verdict.certificate);
        auto val = validate_tree_decomposition(g, td);
        CAPTURE(val.message);
        REQUIRE(val.ok);
        int omega = certificate_clique_number(g, verdict.certificate);
        CHECK((val.width + 1) * 2 <= 3 * omega);
        // chromatic number is at most width + 1
        auto coloring = color_free_graph(g, verdict.certificate);
        CHECK(coloring.palette <= val.width + 1);
    }
}

TEST_CASE("odd cycles: width two, chi three") {
    for (int n : {5, 7, 9, 11}) {
        Graph g = cycle(n);
        auto verdict = recognize(g);
        REQUIRE(verdict.free());
        auto td = tree_decomposition_free_graph(g, verdict.certificate);
        auto val = validate_tree_decomposition(g, td);
        REQUIRE(val.ok);
        CHECK(val.width == 2);
        auto coloring = color_free_graph(g, verdict.certificate);
        CHECK(coloring.palette == 3);
    }
}
