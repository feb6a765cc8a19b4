#ifndef PEF_DECOMPOSITION_HPP
#define PEF_DECOMPOSITION_HPP

#include <optional>
#include <variant>

#include "pef/graph.hpp"

namespace pef {

/// Binary clique-cutset decomposition tree over a connected graph. Vertex ids
/// are the decomposed graph's own ids. Internal nodes carry the cutset; at
/// each one the cutset is a clique whose removal disconnects the node's
/// subgraph, and the children partition it with the cutset shared.
struct DecompositionTree {
    struct Node {
        std::vector<int> vertices;  // sorted
        std::vector<int> cutset;    // empty for leaves
        int left = -1;
        int right = -1;
        bool leaf() const { return left < 0; }
    };
    std::vector<Node> nodes;
    int root = -1;
    std::vector<int> leaves;  // node indices in creation order
};

/// Tarjan-style search: minimal elimination ordering (MCS-M), then the
/// higher fill-neighborhoods are tested for clique-ness and separation with
/// two full components, which keeps every returned set a clique minimal
/// separator. Returns the first hit in elimination order.
std::optional<std::vector<int>> find_clique_cutset(const Graph& g);

/// Splits off one component at a time; throws std::invalid_argument on
/// disconnected input. Leaves are the maximal atoms, at most n-1 of them.
DecompositionTree decompose(const Graph& g);

struct ChordalityCertificate {
    // exactly one is meaningful: a perfect elimination ordering (each
    // vertex's later neighbors form a clique), or a hole
    std::optional<std::vector<int>> peo;
    std::optional<Hole> hole;
    bool chordal() const { return peo.has_value(); }
};
/// Maximum-cardinality-search ordering plus the standard simpliciality test;
/// on failure a hole is extracted from a failing triple.
ChordalityCertificate chordality_certificate(const Graph& g);

/// In an atom, every vertex is universal or lies on a hole. Returns nullopt
/// when the vertex is universal; throws std::invalid_argument if a clique
/// cutset shows up (precondition violation, detected lazily).
std::optional<Hole> hole_through_vertex(const Graph& atom, int v);

/// Hole through v in an arbitrary graph, via the decomposition tree of v's
/// component; nullopt when no hole of g contains v.
std::optional<Hole> find_hole_through(const Graph& g, int v);

/// Pan search via per-edge hole probes (the handle-enumeration route).
std::optional<Pan> find_pan_global(const Graph& g);

}  // namespace pef

#endif
