#ifndef PEF_BUOY_HPP
#define PEF_BUOY_HPP

#include <optional>
#include <variant>

#include "pef/graph.hpp"

namespace pef {

/// Cyclic sequence of ell >= 5 disjoint non-empty cliques (bags) where each
/// vertex has neighbors in both adjacent bags and non-consecutive bags carry
/// no edges. Vertex ids refer to the host graph, passed to every operation.
struct Buoy {
    std::vector<std::vector<int>> bags;
    int length() const { return static_cast<int>(bags.size()); }
    bool odd() const { return length() % 2 == 1; }
    int bag_after(int i) const { return (i + 1) % length(); }
    int bag_before(int i) const { return (i + length() - 1) % length(); }
    std::vector<int> all_vertices() const;
    std::vector<int> bag_of_map(int n) const;  // vertex -> bag index or -1
};

/// ok == nullopt; otherwise a description of the first violated axiom.
std::optional<std::string> validate_buoy(const Graph& g, const Buoy& b);

/// Per-bag orderings by neighborhood inclusion within the buoy; the last
/// vertex of each order dominates its whole bag.
struct DominationOrders {
    std::vector<std::vector<int>> order;
    int dominant(int bag) const { return order[bag].back(); }
    int most_dominated(int bag) const { return order[bag].front(); }
};

struct IncomparablePair {
    int x = -1, y = -1, bag = -1;
};

std::variant<DominationOrders, IncomparablePair> domination_orders(const Graph& g, const Buoy& b);

/// Extends a bag-consecutive path (path[j] in bag start_bag + j) to a hole
/// with one vertex per bag, or finds an even hole along the way. Requires
/// odd length; the first min(k-1, ell-2) path vertices always survive.
std::variant<Hole, Witness> skeleton_through_path(const Graph& g, const Buoy& b, int start_bag,
                                                  const std::vector<int>& path);

/// Even hole from a pair of same-bag vertices that are incomparable within
/// the buoy (odd length only). Throws std::invalid_argument on a comparable pair.
Witness incomparable_even_hole(const Graph& g, const Buoy& b, int x, int y, int bag);

/// Pan or even hole from a one-sided domination violation: a strictly
/// dominates bvtx toward one neighbor bag while bvtx fails to dominate a
/// toward the other. Throws std::invalid_argument when no violation holds.
Witness domination_violation_witness(const Graph& g, const Buoy& b, const DominationOrders& d,
                                     int a, int bvtx, int bag);

struct CliquePattern {
    std::vector<bool> pair_is_clique;        // bag i with bag i+1
    std::vector<int> disjunction_violations;  // bags i where neither side union is a clique
};
CliquePattern clique_pattern(const Graph& g, const Buoy& b);

/// Pan iff the consecutive-union clique disjunction fails somewhere (odd
/// buoys whose bags admit domination orders have no other pan source).
std::optional<Pan> pan_in_buoy(const Graph& g, const Buoy& b, const DominationOrders& d);

struct OutsideClass {
    enum class Kind { type2, type3, full };
    Kind kind = Kind::full;
    int bag = -1;  // type2: lower bag of its pair; type3: middle bag
};

/// Classifies a vertex outside an odd buoy: verified Type2 / Type3 / full,
/// or a witness extracted from whichever adjacency rule it breaks.
std::variant<OutsideClass, Witness> classify_outside(const Graph& g, const Buoy& b,
                                                     const DominationOrders& d, int x);
/// Convenience overload computing domination orders first; an incomparable
/// bag pair already yields an even-hole witness.
std::variant<OutsideClass, Witness> classify_outside(const Graph& g, const Buoy& b, int x);

/// One pass of the absorption algorithm: labels are computed once against the
/// input bags, type-3 vertices complete to their middle bag get absorbed, and
/// any rule violation ends the call with a witness instead.
std::variant<Buoy, Witness> enlarge(const Graph& g, const Buoy& b, const DominationOrders& d);
std::variant<Buoy, Witness> enlarge(const Graph& g, const Buoy& b);

/// Structural check of a vertex against a hole (not buoy-specific): returns a
/// witness whenever x's attachment to the hole is not an adjacent pair, a
/// consecutive triple, or the whole hole. Used by most extraction paths.
std::optional<Witness> hole_vertex_witness(const Graph& g, const Hole& hole, int x);

namespace detail {
/// Bounded exhaustive pan / even-hole search inside g[subset]; used where a
/// witness is known to exist in a small neighborhood of a broken structure.
std::optional<Witness> local_even_hole_or_pan(const Graph& g, const std::vector<int>& subset);
}  // namespace detail

}  // namespace pef

#endif
