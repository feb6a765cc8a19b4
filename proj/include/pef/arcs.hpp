#ifndef PEF_ARCS_HPP
#define PEF_ARCS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <variant>

#include "pef/buoy.hpp"
#include "pef/graph.hpp"

namespace pef {

/// Exact rational, always normalized with positive denominator. Arc-length
/// equality must be testable without tolerance, so no floating point here.
struct Rational {
    long long num = 0;
    long long den = 1;

    Rational() = default;
    Rational(long long n) : num(n) {}
    Rational(long long n, long long d);
    Rational operator+(const Rational& o) const;
    Rational operator-(const Rational& o) const;
    Rational operator*(const Rational& o) const;
    Rational operator/(const Rational& o) const;
    auto operator<=>(const Rational& o) const {
        return (__int128)num * o.den <=> (__int128)o.num * den;
    }
    bool operator==(const Rational& o) const = default;
};

/// Per-bag partition into classes of equal neighborhood toward the next bag,
/// strictly increasing by inclusion, plus the mirrored classes toward the
/// previous bag.
struct BagPartition {
    // forward[i][j] = class j of bag i w.r.t. bag i+1 (inclusion-increasing)
    std::vector<std::vector<std::vector<int>>> forward;
    // backward[i][j] = class j of bag i w.r.t. bag i-1
    std::vector<std::vector<std::vector<int>>> backward;
};

/// Error payload when a bag has side-incomparable vertices: the C4 they form.
struct PartitionError {
    Hole c4;
};

std::variant<BagPartition, PartitionError> bag_partition(const Graph& g, const Buoy& b);

struct Arc {
    int vertex = -1;
    Rational start;  // positions on [0, circumference), arcs run clockwise
    Rational end;    // closed at both endpoints; may wrap past zero
};

struct ArcRepresentation {
    Rational circumference;
    std::vector<Arc> arcs;  // one per vertex of the represented subgraph
    bool unit = false;
    Rational length_of(const Arc& a) const;
};

/// Circular-arc representation of a buoy whose bags are side-comparable;
/// throws PartitionError wrapped in std::invalid_argument-free variant form.
std::variant<ArcRepresentation, PartitionError> buoy_to_arcs(const Graph& g, const Buoy& b);

/// Unit representation: all arcs have length exactly 2 + epsilon with
/// epsilon = 1/2. Requires the bag partition to exist and the consecutive
/// union clique disjunction to hold; the failing bag index is reported
/// otherwise.
struct UnitArcError {
    std::optional<PartitionError> incomparable;
    std::optional<int> disjunction_bag;  // both side unions are non-cliques here
};
std::variant<ArcRepresentation, UnitArcError> buoy_to_unit_arcs(const Graph& g, const Buoy& b);

struct ArcValidation {
    bool ok = false;
    int mismatch_u = -1, mismatch_v = -1;  // first pair whose relation is wrong
    std::string message;
};
/// Intersection relation (closed arcs on the circle) must equal adjacency on
/// exactly the represented vertex set.
ArcValidation validate_arcs(const Graph& g, const ArcRepresentation& rep);

std::string arcs_to_svg(const ArcRepresentation& rep);

}  // namespace pef

#endif
