#include <algorithm>

#include "doctest.h"
#include "pef/buoy.hpp"
#include "pef/oracle.hpp"
#include "test_util.hpp"

using namespace pef;
using namespace pef::testutil;
namespace orc = pef::oracle;

namespace {

Buoy singleton_buoy(int ell) {
    Buoy b;
    for (int i = 0; i < ell; ++i) b.bags.push_back({i});
    return b;
}

Buoy bags_of(std::vector<std::vector<int>> bags) { return Buoy{std::move(bags)}; }

// ten-vertex buoy whose bag-0 pair is incomparable across the two sides:
// x reaches bag 1 only through a, y reaches bag 4 only through b
struct IncomparableInstance {
    Graph g;
    Buoy b;
    int x = 0, y = 1;
};
IncomparableInstance incomparable_instance() {
    // 0=x 1=y | 2=a 3=a2 | 4=c 5=c2 | 6=d 7=d2 | 8=b 9=b2
    Graph g = make(10, {{0, 1}, {2, 3}, {4, 5}, {6, 7}, {8, 9},
                        {0, 2},                                    // x-a
                        {1, 3},                                    // y-a2
                        {2, 4}, {3, 4}, {2, 5}, {3, 5},            // bag1-bag2 complete
                        {4, 6}, {5, 6}, {4, 7}, {5, 7},            // bag2-bag3 complete
                        {6, 8}, {7, 8}, {6, 9}, {7, 9},            // bag3-bag4 complete
                        {8, 1},                                    // b-y
                        {9, 0}});                                  // b2-x
    Buoy b = bags_of({{0, 1}, {2, 3}, {4, 5}, {6, 7}, {8, 9}});
    return {std::move(g), std::move(b)};
}

// 5-buoy where both unions around bag 1 fail to be cliques (pan configuration):
// bag1 = {a, bv}; a complete to bags 0 and 2, bv missing one vertex in each
struct ViolationInstance {
    Graph g;
    Buoy b;
};
ViolationInstance violation_instance() {
    // 0,1 = bag0 {p,q}; 2,3 = bag1 {a,bv}; 4,5 = bag2 {r,s}; 6 = bag3; 7 = bag4
    Graph g = make(8, {{0, 1}, {2, 3}, {4, 5},
                       {2, 0}, {2, 1}, {3, 0},   // a-p a-q bv-p; bv misses q
                       {2, 4}, {2, 5}, {3, 4},   // a-r a-s bv-r; bv misses s
                       {4, 6}, {5, 6},
                       {6, 7},
                       {7, 0}, {7, 1}});
    Buoy b = bags_of({{0, 1}, {2, 3}, {4, 5}, {6}, {7}});
    return {std::move(g), std::move(b)};
}

}  // namespace

TEST_CASE("validate_buoy accepts C5 singleton bags and the complete 5-buoy") {
    CHECK(!validate_buoy(cycle(5), singleton_buoy(5)).has_value());
    Graph fig = orc::complete_buoy_graph(5, 2);
    Buoy b = bags_of({{0, 1}, {2, 3}, {4, 5}, {6, 7}, {8, 9}});
    CHECK(!validate_buoy(fig, b).has_value());
}

TEST_CASE("validate_buoy reports structural damage") {
    CHECK(validate_buoy(cycle(5), bags_of({{0, 1}, {2}, {3}, {4}})).has_value());  // 4 bags
    CHECK(validate_buoy(cycle(5), bags_of({{0, 2}, {1}, {3}, {4}, {}})).has_value());
    CHECK(validate_buoy(cycle(5), bags_of({{0, 2}, {1}, {3}, {4}, {0}})).has_value());
    // moving a vertex to the wrong bag kills a side neighbor
    CHECK(validate_buoy(cycle(5), bags_of({{0}, {2}, {1}, {3}, {4}})).has_value());
}

TEST_CASE("validate_buoy accepts even buoys") {
    CHECK(!validate_buoy(cycle(6), singleton_buoy(6)).has_value());
}

TEST_CASE("generated free buoys validate") {
    for (uint64_t seed = 0; seed < 40; ++seed) {
        orc::GeneratorSpec spec;
        spec.target_n = 14;
        spec.max_bag = 3;
        spec.seed = seed;
        auto [g, bags] = orc::gen_free_buoy(spec);
        CAPTURE(seed);
        CHECK(!validate_buoy(g, Buoy{bags}).has_value());
    }
}

TEST_CASE("domination_orders: singleton bags and twin bags") {
    auto r1 = domination_orders(cycle(5), singleton_buoy(5));
    REQUIRE(std::holds_alternative<DominationOrders>(r1));
    Graph fig = orc::complete_buoy_graph(5, 2);
    Buoy b = bags_of({{0, 1}, {2, 3}, {4, 5}, {6, 7}, {8, 9}});
    auto r2 = domination_orders(fig, b);
    REQUIRE(std::holds_alternative<DominationOrders>(r2));
    auto& d = std::get<DominationOrders>(r2);
    CHECK(d.order[0] == std::vector<int>{0, 1});  // twins keep index order
}

TEST_CASE("domination_orders flags the incomparable instance at bag 0") {
    auto inst = incomparable_instance();
    REQUIRE(!validate_buoy(inst.g, inst.b).has_value());
    auto r = domination_orders(inst.g, inst.b);
    REQUIRE(std::holds_alternative<IncomparablePair>(r));
    auto p = std::get<IncomparablePair>(r);
    CHECK(p.bag == 0);
    CHECK(std::min(p.x, p.y) == 0);
    CHECK(std::max(p.x, p.y) == 1);
}

TEST_CASE("incomparable_even_hole produces a verified even hole") {
    auto inst = incomparable_instance();
    Witness w = incomparable_even_hole(inst.g, inst.b, inst.x, inst.y, 0);
    CHECK(w.kind == Witness::Kind::even_hole);
    CHECK(w.verify(inst.g));
    Graph fig = orc::complete_buoy_graph(5, 2);
    Buoy b = bags_of({{0, 1}, {2, 3}, {4, 5}, {6, 7}, {8, 9}});
    CHECK_THROWS_AS(incomparable_even_hole(fig, b, 0, 1, 0), std::invalid_argument);
}

TEST_CASE("incomparable_even_hole: same-side C4 configuration") {
    // x, y in bag 0 with crossed private neighbors in bag 1
    Graph g = make(7, {{0, 1}, {2, 3},
                       {0, 2}, {1, 3},                // crossed
                       {2, 4}, {3, 4}, {4, 5}, {5, 6}, {6, 0}, {6, 1}});
    Buoy b = bags_of({{0, 1}, {2, 3}, {4}, {5}, {6}});
    REQUIRE(!validate_buoy(g, b).has_value());
    Witness w = incomparable_even_hole(g, b, 0, 1, 0);
    CHECK(w.verify(g));
    CHECK(w.hole.length() == 4);
}

TEST_CASE("skeleton_through_path: C5 and the complete 5-buoy") {
    auto r = skeleton_through_path(cycle(5), singleton_buoy(5), 0, {0});
    REQUIRE(std::holds_alternative<Hole>(r));
    CHECK(verify_hole(cycle(5), std::get<Hole>(r)));

    Graph fig = orc::complete_buoy_graph(5, 2);
    Buoy b = bags_of({{0, 1}, {2, 3}, {4, 5}, {6, 7}, {8, 9}});
    auto r2 = skeleton_through_path(fig, b, 0, {1, 3});
    REQUIRE(std::holds_alternative<Hole>(r2));
    const Hole& sk = std::get<Hole>(r2);
    CHECK(verify_hole(fig, sk));
    CHECK(sk.cycle[0] == 1);
    CHECK(sk.cycle[1] == 3);
    auto bag_of = b.bag_of_map(fig.vertex_count());
    std::vector<char> seen(5, 0);
    for (int v : sk.cycle) seen[bag_of[v]] ^= 1;
    CHECK(std::count(seen.begin(), seen.end(), 1) == 5);
}

TEST_CASE("skeleton_through_path finds the forced even hole") {
    // bag0 {0,1} bag1 {2} bag2 {3} bag3 {4,5} bag4 {6=w,7=y}: vertex 0 reaches
    // bag 4 only through y, and y misses the walk's bag-3 pick
    Graph g = make(8, {{0, 1}, {6, 7}, {4, 5},
                       {0, 2}, {1, 2},
                       {2, 3},
                       {3, 4}, {3, 5},
                       {4, 6},    // bag3 first vertex - w
                       {5, 7},    // bag3 second vertex - y
                       {6, 1},    // w - 1 only
                       {7, 0}});  // y - 0
    Buoy b = bags_of({{0, 1}, {2}, {3}, {4, 5}, {6, 7}});
    REQUIRE(!validate_buoy(g, b).has_value());
    auto r = skeleton_through_path(g, b, 0, {0});
    REQUIRE(std::holds_alternative<Witness>(r));
    const Witness& w = std::get<Witness>(r);
    CHECK(w.kind == Witness::Kind::even_hole);
    CHECK(w.verify(g));
    CHECK(w.hole.length() == 6);
}

TEST_CASE("skeleton_through_path rejects even buoys and bad paths") {
    CHECK_THROWS_AS(skeleton_through_path(cycle(6), singleton_buoy(6), 0, {0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(skeleton_through_path(cycle(5), singleton_buoy(5), 0, {1}),
                    std::invalid_argument);
}

TEST_CASE("domination_violation_witness yields a verified pan") {
    auto inst = violation_instance();
    REQUIRE(!validate_buoy(inst.g, inst.b).has_value());
    auto orders = domination_orders(inst.g, inst.b);
    REQUIRE(std::holds_alternative<DominationOrders>(orders));
    auto& d = std::get<DominationOrders>(orders);
    CHECK(d.dominant(1) == 2);
    Witness w = domination_violation_witness(inst.g, inst.b, d, 2, 3, 1);
    CHECK(w.verify(inst.g));
    CHECK(w.kind == Witness::Kind::pan);
    CHECK(orc::brute_pan(inst.g).has_value());
    Graph fig = orc::complete_buoy_graph(5, 2);
    Buoy fb = bags_of({{0, 1}, {2, 3}, {4, 5}, {6, 7}, {8, 9}});
    auto fd = std::get<DominationOrders>(domination_orders(fig, fb));
    CHECK_THROWS_AS(domination_violation_witness(fig, fb, fd, 0, 1, 0), std::invalid_argument);
}

TEST_CASE("clique_pattern") {
    auto p1 = clique_pattern(cycle(5), singleton_buoy(5));
    CHECK(std::count(p1.pair_is_clique.begin(), p1.pair_is_clique.end(), true) == 5);
    CHECK(p1.disjunction_violations.empty());

    Graph fig = orc::complete_buoy_graph(5, 2);
    auto p2 = clique_pattern(fig, bags_of({{0, 1}, {2, 3}, {4, 5}, {6, 7}, {8, 9}}));
    CHECK(std::count(p2.pair_is_clique.begin(), p2.pair_is_clique.end(), true) == 5);

    auto inst = violation_instance();
    auto p3 = clique_pattern(inst.g, inst.b);
    CHECK(!p3.pair_is_clique[0]);
    CHECK(!p3.pair_is_clique[1]);
    CHECK(p3.disjunction_violations == std::vector<int>{1});
}

TEST_CASE("pan_in_buoy") {
    auto d5 = std::get<DominationOrders>(domination_orders(cycle(5), singleton_buoy(5)));
    CHECK(!pan_in_buoy(cycle(5), singleton_buoy(5), d5).has_value());

    Graph fig = orc::complete_buoy_graph(5, 2);
    Buoy fb = bags_of({{0, 1}, {2, 3}, {4, 5}, {6, 7}, {8, 9}});
    auto fd = std::get<DominationOrders>(domination_orders(fig, fb));
    CHECK(!pan_in_buoy(fig, fb, fd).has_value());

    auto inst = violation_instance();
    auto id = std::get<DominationOrders>(domination_orders(inst.g, inst.b));
    auto pan = pan_in_buoy(inst.g, inst.b, id);
    REQUIRE(pan.has_value());
    CHECK(verify_pan(inst.g, *pan));
}

TEST_CASE("classify_outside on C5 hosts") {
    auto classify = [](std::initializer_list<int> nbrs) {
        std::vector<std::pair<int, int>> edges;
        for (int i = 0; i < 5; ++i) edges.emplace_back(i, (i + 1) % 5);
        for (int u : nbrs) edges.emplace_back(5, u);
        Graph g(6, edges);
        return std::pair{g, classify_outside(g, singleton_buoy(5), 5)};
    };
    {
        auto [g, r] = classify({4, 0, 1});
        REQUIRE(std::holds_alternative<OutsideClass>(r));
        auto c = std::get<OutsideClass>(r);
        CHECK(c.kind == OutsideClass::Kind::type3);
        CHECK(c.bag == 0);
    }
    {
        auto [g, r] = classify({0, 1});
        REQUIRE(std::holds_alternative<OutsideClass>(r));
        auto c = std::get<OutsideClass>(r);
        CHECK(c.kind == OutsideClass::Kind::type2);
        CHECK(c.bag == 0);
    }
    {
        auto [g, r] = classify({0});
        REQUIRE(std::holds_alternative<Witness>(r));
        const auto& w = std::get<Witness>(r);
        CHECK(w.kind == Witness::Kind::pan);
        CHECK(w.verify(g));
    }
    {
        auto [g, r] = classify({0, 1, 2, 3, 4});
        REQUIRE(std::holds_alternative<OutsideClass>(r));
        CHECK(std::get<OutsideClass>(r).kind == OutsideClass::Kind::full);
    }
    {
        auto [g, r] = classify({0, 1, 2, 3});  // four attachments: even hole
        REQUIRE(std::holds_alternative<Witness>(r));
        CHECK(std::get<Witness>(r).verify(g));
        CHECK(std::get<Witness>(r).kind == Witness::Kind::even_hole);
    }
    {
        auto [g, r] = classify({0, 2});  // two non-consecutive bags
        REQUIRE(std::holds_alternative<Witness>(r));
        CHECK(std::get<Witness>(r).verify(g));
    }
    {
        auto [g, r] = classify({0, 1, 3});  // three bags, not consecutive
        REQUIRE(std::holds_alternative<Witness>(r));
        CHECK(std::get<Witness>(r).verify(g));
    }
}

TEST_CASE("classify_outside witnesses verify on generated odd buoys") {
    for (uint64_t seed = 0; seed < 80; ++seed) {
        orc::GeneratorSpec spec;
        spec.target_n = 14;
        spec.max_bag = 2;
        spec.seed = seed + 1000;
        auto [g0, bags] = orc::gen_free_buoy(spec);
        std::vector<std::pair<int, int>> edges = g0.edges();
        int x = g0.vertex_count();
        uint64_t h = seed * 0x9e3779b97f4a7c15ULL + 123;
        int attached = 0;
        for (int v = 0; v < g0.vertex_count(); ++v) {
            h = h * 6364136223846793005ULL + 1442695040888963407ULL;
            if ((h >> 33) % 3 == 0) {
                edges.emplace_back(x, v);
                ++attached;
            }
        }
        if (attached == 0) continue;
        Graph g(x + 1, edges);
        CAPTURE(seed);
        auto r = classify_outside(g, Buoy{bags}, x);
        if (std::holds_alternative<Witness>(r)) {
            CHECK(std::get<Witness>(r).verify(g));
        } else {
            auto c = std::get<OutsideClass>(r);
            if (c.kind == OutsideClass::Kind::type2) {
                Buoy b{bags};
                std::vector<int> blob = b.bags[c.bag];
                for (int v : b.bags[(c.bag + 1) % b.length()]) blob.push_back(v);
                blob.push_back(x);
                CHECK(is_clique(g, blob));
            }
            if (c.kind == OutsideClass::Kind::full) {
                for (auto& bag : bags)
                    for (int v : bag) CHECK(g.adjacent(x, v));
            }
        }
    }
}

TEST_CASE("enlarge absorbs a type-3 vertex into its middle bag") {
    Graph g = make(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}, {5, 4}, {5, 0}, {5, 1}});
    auto r = enlarge(g, singleton_buoy(5));
    REQUIRE(std::holds_alternative<Buoy>(r));
    const Buoy& grown = std::get<Buoy>(r);
    CHECK(grown.bags[0] == std::vector<int>{0, 5});
    CHECK(!validate_buoy(g, grown).has_value());
}

TEST_CASE("enlarge returns a pan for a pendant") {
    Graph g = cycle_with_pendant(5);
    auto r = enlarge(g, singleton_buoy(5));
    REQUIRE(std::holds_alternative<Witness>(r));
    const auto& w = std::get<Witness>(r);
    CHECK(w.kind == Witness::Kind::pan);
    CHECK(w.verify(g));
}

TEST_CASE("enlarge is monotone and reaches a fixed point on free hosts") {
    for (uint64_t seed = 0; seed < 40; ++seed) {
        orc::GeneratorSpec spec;
        spec.target_n = 13;
        spec.max_bag = 3;
        spec.seed = seed + 7;
        auto [g, bags] = orc::gen_free_buoy(spec);
        Buoy full{bags};
        auto orders = domination_orders(g, full);
        REQUIRE(std::holds_alternative<DominationOrders>(orders));
        auto sk = skeleton_through_path(g, full, 0, {bags[0].front()});
        REQUIRE(std::holds_alternative<Hole>(sk));
        Buoy seed_buoy;
        for (int v : std::get<Hole>(sk).cycle) seed_buoy.bags.push_back({v});
        CAPTURE(seed);
        auto r1 = enlarge(g, seed_buoy);
        REQUIRE(std::holds_alternative<Buoy>(r1));
        auto b1 = std::get<Buoy>(r1);
        auto r2 = enlarge(g, b1);
        REQUIRE(std::holds_alternative<Buoy>(r2));
        auto b2 = std::get<Buoy>(r2);
        auto r3 = enlarge(g, b2);
        REQUIRE(std::holds_alternative<Buoy>(r3));
        auto b3 = std::get<Buoy>(r3);
        int ell = seed_buoy.length();
        for (int i = 0; i < ell; ++i) {
            for (int v : seed_buoy.bags[i])
                CHECK(std::find(b1.bags[i].begin(), b1.bags[i].end(), v) != b1.bags[i].end());
            CHECK(b1.bags[i].size() <= b2.bags[i].size());
            CHECK(b2.bags[i] == b3.bags[i]);
        }
        CHECK(!validate_buoy(g, b2).has_value());
    }
}

TEST_CASE("domination-ordered buoys only contain holes of length ell") {
    for (uint64_t seed = 0; seed < 40; ++seed) {
        orc::GeneratorSpec spec;
        spec.target_n = 13;
        spec.max_bag = 3;
        spec.seed = seed * 17 + 3;
        auto [g, bags] = orc::gen_free_buoy(spec);
        if (g.vertex_count() > 15) continue;
        Buoy b{bags};
        REQUIRE(std::holds_alternative<DominationOrders>(domination_orders(g, b)));
        CAPTURE(seed);
        auto hole = orc::brute_any_hole(g);
        REQUIRE(hole.has_value());
        CHECK(hole->length() == b.length());
        CHECK(!orc::brute_even_hole(g).has_value());
    }
}

TEST_CASE("hole_vertex_witness covers the attachment taxonomy") {
    Graph c7 = cycle(7);
    Hole h{{0, 1, 2, 3, 4, 5, 6}};
    auto with_x = [&](std::initializer_list<int> nbrs) {
        auto edges = c7.edges();
        for (int u : nbrs) edges.emplace_back(7, u);
        return Graph(8, edges);
    };
    {
        Graph g = with_x({3});
        auto w = hole_vertex_witness(g, h, 7);
        REQUIRE(w.has_value());
        CHECK(w->kind == Witness::Kind::pan);
        CHECK(w->verify(g));
    }
    CHECK(!hole_vertex_witness(with_x({2, 3}), h, 7).has_value());
    CHECK(!hole_vertex_witness(with_x({2, 3, 4}), h, 7).has_value());
    CHECK(!hole_vertex_witness(with_x({0, 1, 2, 3, 4, 5, 6}), h, 7).has_value());
    {
        Graph g = with_x({0, 3});  // isolated attachments
        auto w = hole_vertex_witness(g, h, 7);
        REQUIRE(w.has_value());
        CHECK(w->verify(g));
    }
    {
        Graph g = with_x({1, 2, 3, 4});  // four in a row
        auto w = hole_vertex_witness(g, h, 7);
        REQUIRE(w.has_value());
        CHECK(w->kind == Witness::Kind::even_hole);
        CHECK(w->verify(g));
    }
    {
        Graph g = with_x({0, 1, 3, 4});  // two disjoint edges
        auto w = hole_vertex_witness(g, h, 7);
        REQUIRE(w.has_value());
        CHECK(w->kind == Witness::Kind::even_hole);
        CHECK(w->verify(g));
    }
    {
        Graph g = with_x({0, 1, 2, 3, 4});  // five attachments, not complete
        auto w = hole_vertex_witness(g, h, 7);
        REQUIRE(w.has_value());
        CHECK(w->verify(g));
    }
}

TEST_CASE("hole_vertex_witness fuzz: every answer verifies") {
    for (uint64_t seed = 0; seed < 200; ++seed) {
        int ell = 5 + static_cast<int>(seed % 3) * 2;  // 5, 7, 9
        std::vector<std::pair<int, int>> edges;
        for (int i = 0; i < ell; ++i) edges.emplace_back(i, (i + 1) % ell);
        uint64_t h = seed * 0x2545f4914f6cdd1dULL + 99;
        int attached = 0;
        for (int v = 0; v < ell; ++v) {
            h = h * 6364136223846793005ULL + 1442695040888963407ULL;
            if ((h >> 30) % 2 == 0) {
                edges.emplace_back(ell, v);
                ++attached;
            }
        }
        if (!attached) continue;
        Graph g(ell + 1, edges);
        Hole hole;
        for (int i = 0; i < ell; ++i) hole.cycle.push_back(i);
        CAPTURE(seed);
        auto w = hole_vertex_witness(g, hole, ell);
        if (w) CHECK(w->verify(g));
    }
}

TEST_CASE("local witness search finds planted structures") {
    auto w1 = detail::local_even_hole_or_pan(cycle(6), {0, 1, 2, 3, 4, 5});
    REQUIRE(w1.has_value());
    CHECK(w1->verify(cycle(6)));
    Graph g = cycle_with_pendant(5);
    auto w2 = detail::local_even_hole_or_pan(g, {0, 1, 2, 3, 4, 5});
    REQUIRE(w2.has_value());
    CHECK(w2->verify(g));
    CHECK(!detail::local_even_hole_or_pan(cycle(5), {0, 1, 2, 3, 4}).has_value());
}
