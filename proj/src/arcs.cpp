#include "pef/arcs.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

namespace pef {

Rational::Rational(long long n, long long d) : num(n), den(d) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
}

Rational Rational::operator+(const Rational& o) const {
    return Rational(num * o.den + o.num * den, den * o.den);
}
Rational Rational::operator-(const Rational& o) const {
    return Rational(num * o.den - o.num * den, den * o.den);
}
Rational Rational::operator*(const Rational& o) const { return Rational(num * o.num, den * o.den); }
Rational Rational::operator/(const Rational& o) const { return Rational(num * o.den, den * o.num); }

Rational ArcRepresentation::length_of(const Arc& a) const {
    if (a.start <= a.end) return a.end - a.start;
    return circumference - a.start + a.end;
}

namespace {

// groups a bag by neighborhood within a side bag and orders the classes by
// strict inclusion; an incomparable pair surfaces the C4 it induces
std::variant<std::vector<std::vector<int>>, PartitionError> side_classes(
    const Graph& g, const std::vector<int>& bag, const std::vector<int>& side) {
    std::map<std::vector<int>, std::vector<int>> groups;
    for (int v : bag) {
        std::vector<int> nb;
        for (int u : side)
            if (g.adjacent(v, u)) nb.push_back(u);
        std::sort(nb.begin(), nb.end());
        groups[nb].push_back(v);
    }
    std::vector<std::pair<std::vector<int>, std::vector<int>>> ordered(groups.begin(), groups.end());
    std::sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& c) {
        return a.first.size() != c.first.size() ? a.first.size() < c.first.size()
                                                : a.first < c.first;
    });
    for (size_t i = 0; i + 1 < ordered.size(); ++i) {
        const auto& small = ordered[i].first;
        const auto& big = ordered[i + 1].first;
        if (!std::includes(big.begin(), big.end(), small.begin(), small.end())) {
            int a = ordered[i].second.front(), b = ordered[i + 1].second.front();
            std::vector<int> only_a, only_b;
            std::set_difference(small.begin(), small.end(), big.begin(), big.end(),
                                std::back_inserter(only_a));
            std::set_difference(big.begin(), big.end(), small.begin(), small.end(),
                                std::back_inserter(only_b));
            return PartitionError{Hole{{a, only_a.front(), only_b.front(), b}}};
        }
    }
    std::vector<std::vector<int>> classes;
    for (auto& [nb, members] : ordered) {
        std::sort(members.begin(), members.end());
        classes.push_back(members);
    }
    return classes;
}

}  // namespace

std::variant<BagPartition, PartitionError> bag_partition(const Graph& g, const Buoy& b) {
    if (auto bad = validate_buoy(g, b)) throw std::invalid_argument("bag_partition: " + *bad);
    int ell = b.length();
    BagPartition out;
    out.forward.resize(ell);
    out.backward.resize(ell);
    for (int i = 0; i < ell; ++i) {
        auto fwd = side_classes(g, b.bags[i], b.bags[b.bag_after(i)]);
        if (std::holds_alternative<PartitionError>(fwd)) return std::get<PartitionError>(fwd);
        out.forward[i] = std::get<std::vector<std::vector<int>>>(std::move(fwd));
        auto bwd = side_classes(g, b.bags[i], b.bags[b.bag_before(i)]);
        if (std::holds_alternative<PartitionError>(bwd)) return std::get<PartitionError>(bwd);
        // mirrored classes follow the previous bag's forward indexing: class
        // j means "first reached by forward class j", i.e. decreasing
        // neighborhoods along increasing j
        auto bwd_classes = std::get<std::vector<std::vector<int>>>(std::move(bwd));
        std::reverse(bwd_classes.begin(), bwd_classes.end());
        out.backward[i] = std::move(bwd_classes);
    }
    return out;
}

namespace {

// thresholds: for v in bag i, the smallest forward class of bag i-1 whose
// neighborhood reaches v; classes are inclusion-increasing so v is adjacent
// to every later class representative
std::vector<int> thresholds_into(const Graph& g, const std::vector<std::vector<int>>& prev_forward,
                                 const std::vector<int>& bag) {
    std::vector<int> theta(bag.size(), -1);
    for (size_t p = 0; p < bag.size(); ++p) {
        for (size_t j = 0; j < prev_forward.size(); ++j) {
            if (g.adjacent(prev_forward[j].front(), bag[p])) {
                theta[p] = static_cast<int>(j) + 1;  // 1-based class index
                break;
            }
        }
        if (theta[p] < 0) throw internal_error("thresholds_into: vertex unreachable from previous bag");
    }
    return theta;
}

int forward_class_of(const std::vector<std::vector<int>>& classes, int v) {
    for (size_t j = 0; j < classes.size(); ++j)
        if (std::binary_search(classes[j].begin(), classes[j].end(), v))
            return static_cast<int>(j) + 1;
    throw internal_error("forward_class_of: vertex missing from its partition");
}

}  // namespace

std::variant<ArcRepresentation, PartitionError> buoy_to_arcs(const Graph& g, const Buoy& b) {
    auto part = bag_partition(g, b);
    if (std::holds_alternative<PartitionError>(part)) return std::get<PartitionError>(part);
    const auto& classes = std::get<BagPartition>(part);
    int ell = b.length();
    ArcRepresentation rep;
    rep.circumference = Rational(ell);
    rep.unit = false;
    // sector i spans [i, i+1); interior points (i, j) equally spaced
    for (int i = 0; i < ell; ++i) {
        int prev = b.bag_before(i);
        int t_prev = static_cast<int>(classes.forward[prev].size());
        auto theta = thresholds_into(g, classes.forward[prev], b.bags[i]);
        int t_here = static_cast<int>(classes.forward[i].size());
        for (size_t p = 0; p < b.bags[i].size(); ++p) {
            int v = b.bags[i][p];
            int j = forward_class_of(classes.forward[i], v);
            Arc arc;
            arc.vertex = v;
            arc.start = Rational(prev) + Rational(theta[p], t_prev + 1);
            arc.end = Rational(i) + Rational(j, t_here + 1);
            rep.arcs.push_back(arc);
        }
    }
    return rep;
}

std::variant<ArcRepresentation, UnitArcError> buoy_to_unit_arcs(const Graph& g, const Buoy& b) {
    auto part = bag_partition(g, b);
    if (std::holds_alternative<PartitionError>(part))
        return UnitArcError{std::get<PartitionError>(part), std::nullopt};
    const auto& classes = std::get<BagPartition>(part);
    int ell = b.length();
    auto pattern = clique_pattern(g, b);
    for (int i = 0; i < ell; ++i)
        if (!pattern.pair_is_clique[b.bag_before(i)] && !pattern.pair_is_clique[i])
            return UnitArcError{std::nullopt, i};
    const Rational eps(1, 2);
    // segments around the circle: sector A_i (length eps), connector A_i+
    // (length 2 when the union with the next bag is a clique, else 1)
    std::vector<Rational> sector_start(ell), connector_start(ell), connector_len(ell);
    Rational at(0);
    for (int i = 0; i < ell; ++i) {
        sector_start[i] = at;
        at = at + eps;
        connector_start[i] = at;
        connector_len[i] = Rational(pattern.pair_is_clique[i] ? 2 : 1);
        at = at + connector_len[i];
    }
    ArcRepresentation rep;
    rep.circumference = at;
    rep.unit = true;
    // original points (i, j) inside connector i: for a non-clique connector
    // the t_i points span its whole unit length; a clique connector has the
    // single class point at its midpoint
    auto original_point = [&](int i, int j) {
        int t = static_cast<int>(classes.forward[i].size());
        if (pattern.pair_is_clique[i]) return connector_start[i] + Rational(1);
        return connector_start[i] + Rational(j - 1, t - 1);
    };
    for (int i = 0; i < ell; ++i) {
        int prev = b.bag_before(i);
        bool left_clique = pattern.pair_is_clique[prev];
        bool right_clique = pattern.pair_is_clique[i];
        int t_here = static_cast<int>(classes.forward[i].size());
        int t_prev = static_cast<int>(classes.forward[prev].size());
        auto theta = thresholds_into(g, classes.forward[prev], b.bags[i]);
        for (size_t p = 0; p < b.bags[i].size(); ++p) {
            int v = b.bags[i][p];
            Arc arc;
            arc.vertex = v;
            if (left_clique && right_clique) {
                arc.start = connector_start[prev] + Rational(1);  // midpoint of A_{i-1}+
                arc.end = connector_start[i] + Rational(1);       // midpoint of A_i+
            } else if (!right_clique) {
                // copies of connector i's points fill the first half of the
                // clique connector before bag i, same spacing
                int j = forward_class_of(classes.forward[i], v);
                arc.start = connector_start[prev] + Rational(j - 1, t_here - 1);
                arc.end = original_point(i, j);
            } else {
                // copies of connector i-1's points fill the second half of
                // the clique connector after bag i
                int j = theta[p];
                arc.start = original_point(prev, j);
                arc.end = connector_start[i] + Rational(1) + Rational(j - 1, t_prev - 1);
            }
            rep.arcs.push_back(arc);
        }
    }
    // every arc has length exactly 2 + eps by construction; check anyway
    Rational want = Rational(2) + eps;
    for (const auto& arc : rep.arcs)
        if (rep.length_of(arc) != want) throw internal_error("unit arc with wrong length");
    return rep;
}

namespace {

bool arc_contains(const ArcRepresentation& rep, const Arc& a, const Rational& p) {
    (void)rep;
    if (a.start <= a.end) return a.start <= p && p <= a.end;
    return p >= a.start || p <= a.end;
}

bool arcs_intersect(const ArcRepresentation& rep, const Arc& a, const Arc& b) {
    return arc_contains(rep, a, b.start) || arc_contains(rep, a, b.end) ||
           arc_contains(rep, b, a.start) || arc_contains(rep, b, a.end);
}

}  // namespace

ArcValidation validate_arcs(const Graph& g, const ArcRepresentation& rep) {
    ArcValidation out;
    std::vector<char> seen(g.vertex_count(), 0);
    for (const auto& arc : rep.arcs) {
        if (arc.vertex < 0 || arc.vertex >= g.vertex_count()) {
            out.message = "arc vertex out of range";
            return out;
        }
        if (seen[arc.vertex]++) {
            out.message = "vertex represented twice";
            return out;
        }
    }
    if (static_cast<int>(rep.arcs.size()) != g.vertex_count()) {
        out.message = "representation does not cover the vertex set";
        return out;
    }
    if (rep.unit && !rep.arcs.empty()) {
        Rational len = rep.length_of(rep.arcs.front());
        for (const auto& arc : rep.arcs)
            if (rep.length_of(arc) != len) {
                out.message = "unit flag set but lengths differ";
                out.mismatch_u = rep.arcs.front().vertex;
                out.mismatch_v = arc.vertex;
                return out;
            }
    }
    for (size_t i = 0; i < rep.arcs.size(); ++i)
        for (size_t j = i + 1; j < rep.arcs.size(); ++j) {
            bool meet = arcs_intersect(rep, rep.arcs[i], rep.arcs[j]);
            bool adj = g.adjacent(rep.arcs[i].vertex, rep.arcs[j].vertex);
            if (meet != adj) {
                out.mismatch_u = rep.arcs[i].vertex;
                out.mismatch_v = rep.arcs[j].vertex;
                out.message = meet ? "arcs intersect for a non-edge" : "arcs miss for an edge";
                return out;
            }
        }
    out.ok = true;
    return out;
}

std::string arcs_to_svg(const ArcRepresentation& rep) {
    std::ostringstream svg;
    double C = static_cast<double>(rep.circumference.num) / rep.circumference.den;
    const double cx = 300, cy = 300, base_r = 180;
    svg << "<svg xmlns='http://www.w3.org/2000/svg' width='600' height='600'>\n";
    svg << "<circle cx='" << cx << "' cy='" << cy << "' r='" << base_r
        << "' fill='none' stroke='#ccc'/>\n";
    for (size_t i = 0; i < rep.arcs.size(); ++i) {
        const Arc& a = rep.arcs[i];
        double s = 2 * 3.14159265358979 * (static_cast<double>(a.start.num) / a.start.den) / C;
        double span = static_cast<double>(rep.length_of(a).num) / rep.length_of(a).den / C;
        double e = s + 2 * 3.14159265358979 * span;
        double r = base_r - 8.0 * static_cast<double>(i % 12 + 1);
        double x1 = cx + r * std::cos(s), y1 = cy + r * std::sin(s);
        double x2 = cx + r * std::cos(e), y2 = cy + r * std::sin(e);
        int large = span > 0.5 ? 1 : 0;
        svg << "<path d='M " << x1 << " " << y1 << " A " << r << " " << r << " 0 " << large
            << " 1 " << x2 << " " << y2 << "' fill='none' stroke='hsl("
            << (i * 47) % 360 << ",70%,45%)' stroke-width='3'/>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace pef
