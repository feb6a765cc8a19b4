#ifndef PEF_ORACLE_HPP
#define PEF_ORACLE_HPP

#include <cstdint>
#include <optional>

#include "pef/graph.hpp"

// Brute-force ground truth and seeded instance generators. Nothing in here
// shares code with the recognition pipeline; these functions are the oracles
// the rest of the project is tested against.
namespace pef::oracle {

/// Exhaustive chordless-cycle search; returns an even hole iff one exists.
/// Guard: n <= 16.
std::optional<Hole> brute_even_hole(const Graph& g);

/// Any hole at all (used to cross-check chordality). Guard: n <= 16.
std::optional<Hole> brute_any_hole(const Graph& g);

/// A pan iff one exists. Guard: n <= 16.
std::optional<Pan> brute_pan(const Graph& g);

struct BruteColoring {
    int chi = 0;
    std::vector<int> colors;  // 1-based colors, one per vertex
};
/// Exact chromatic number via branch and bound. Guard: n <= 16.
BruteColoring brute_chromatic(const Graph& g);

/// Exact clique number. Guard: n <= 20.
int brute_clique_number(const Graph& g);

enum class Family { random_graph, random_buoy, free_graph, near_miss };

struct GeneratorSpec {
    Family family = Family::free_graph;
    int target_n = 12;   // size the instance aims for (soft bound)
    int max_bag = 2;     // largest bag a generated buoy may use
    int min_bag = 1;     // smallest bag (staircase sides still force >= 2)
    int ell = 0;         // fixed odd bag count, 0 = seed-chosen
    int max_atoms = 3;   // free-graph family: how many atoms to glue
    uint64_t seed = 0;
};

/// Deterministic: identical spec => identical graph.
Graph generate(const GeneratorSpec& spec);

struct GeneratedBuoy {
    Graph graph;
    std::vector<std::vector<int>> bags;  // a valid odd buoy covering the graph
};
/// A (pan, even hole)-free buoy built to satisfy the per-bag domination
/// discipline and the consecutive-union clique rule.
GeneratedBuoy gen_free_buoy(const GeneratorSpec& spec);

/// Free-by-construction graph: buoy atoms (optionally joined with cliques)
/// glued to clique atoms along clique cutsets whose attachment classes keep
/// every outside vertex universal to a consecutive bag pair.
Graph gen_free_graph(const GeneratorSpec& spec);

/// A free graph with one random edge toggled.
Graph gen_near_miss(const GeneratorSpec& spec);

/// Seeded Erdos-Renyi-style graph with seed-derived density.
Graph gen_random_graph(int n, uint64_t seed);

/// The odd buoy with `ell` bags of `k` vertices each and every consecutive
/// bag union complete. With ell = 5, k = 2 this is the classic claw-free,
/// even-hole-free graph whose tree-width is 3k-1 with clique number 2k.
Graph complete_buoy_graph(int ell, int k);

}  // namespace pef::oracle

#endif
