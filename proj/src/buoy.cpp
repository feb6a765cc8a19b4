#include "pef/buoy.hpp"

#include <algorithm>
#include <functional>

namespace pef {

std::vector<int> Buoy::all_vertices() const {
    std::vector<int> out;
    for (const auto& bag : bags) out.insert(out.end(), bag.begin(), bag.end());
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<int> Buoy::bag_of_map(int n) const {
    std::vector<int> bag_of(n, -1);
    for (int i = 0; i < length(); ++i)
        for (int v : bags[i]) bag_of[v] = i;
    return bag_of;
}

std::optional<std::string> validate_buoy(const Graph& g, const Buoy& b) {
    int ell = b.length();
    if (ell < 5) return "fewer than five bags";
    std::vector<int> seen(g.vertex_count(), 0);
    for (int i = 0; i < ell; ++i) {
        if (b.bags[i].empty()) return "bag " + std::to_string(i) + " is empty";
        for (int v : b.bags[i]) {
            if (v < 0 || v >= g.vertex_count()) return "vertex out of range";
            if (seen[v]++) return "vertex " + std::to_string(v) + " in two bags";
        }
    }
    for (int i = 0; i < ell; ++i) {
        const auto& bag = b.bags[i];
        for (size_t a = 0; a < bag.size(); ++a)
            for (size_t c = a + 1; c < bag.size(); ++c)
                if (!g.adjacent(bag[a], bag[c]))
                    return "bag " + std::to_string(i) + " is not a clique (" +
                           std::to_string(bag[a]) + "," + std::to_string(bag[c]) + ")";
        for (int v : bag)
            for (int side : {b.bag_before(i), b.bag_after(i)}) {
                bool any = false;
                for (int u : b.bags[side])
                    if (g.adjacent(v, u)) {
                        any = true;
                        break;
                    }
                if (!any)
                    return "vertex " + std::to_string(v) + " has no neighbor in bag " +
                           std::to_string(side);
            }
    }
    for (int i = 0; i < ell; ++i)
        for (int j = i + 2; j < ell; ++j) {
            if (i == 0 && j == ell - 1) continue;  // cyclically consecutive
            for (int v : b.bags[i])
                for (int u : b.bags[j])
                    if (g.adjacent(v, u))
                        return "edge between non-consecutive bags " + std::to_string(i) + " and " +
                               std::to_string(j) + " (" + std::to_string(v) + "," +
                               std::to_string(u) + ")";
        }
    return std::nullopt;
}

namespace {

std::vector<int> buoy_neighborhood(const Graph& g, const std::vector<int>& bag_of, int v) {
    std::vector<int> out;
    for (int u : g.neighbors(v))
        if (bag_of[u] >= 0) out.push_back(u);
    return out;
}

// is (a - {drop}) contained in c? inputs sorted
bool subset_minus(const std::vector<int>& a, int drop, const std::vector<int>& c) {
    size_t j = 0;
    for (int v : a) {
        if (v == drop) continue;
        while (j < c.size() && c[j] < v) ++j;
        if (j == c.size() || c[j] != v) return false;
    }
    return true;
}

int smallest_neighbor_in(const Graph& g, int v, const std::vector<int>& bag) {
    int best = -1;
    for (int u : bag)
        if (u != v && g.adjacent(v, u) && (best < 0 || u < best)) best = u;
    return best;
}

}  // namespace

std::variant<DominationOrders, IncomparablePair> domination_orders(const Graph& g, const Buoy& b) {
    if (auto bad = validate_buoy(g, b)) throw std::invalid_argument("domination_orders: " + *bad);
    auto bag_of = b.bag_of_map(g.vertex_count());
    DominationOrders out;
    out.order.resize(b.length());
    for (int i = 0; i < b.length(); ++i) {
        std::vector<int> order = b.bags[i];
        std::vector<std::vector<int>> bn(order.size());
        std::sort(order.begin(), order.end());
        for (size_t j = 0; j < order.size(); ++j) bn[j] = buoy_neighborhood(g, bag_of, order[j]);
        std::vector<int> idx(order.size());
        for (size_t j = 0; j < idx.size(); ++j) idx[j] = static_cast<int>(j);
        std::sort(idx.begin(), idx.end(), [&](int u, int w) {
            return bn[u].size() != bn[w].size() ? bn[u].size() < bn[w].size() : order[u] < order[w];
        });
        // consecutive inclusion suffices: with degrees sorted, a failed pair is
        // genuinely incomparable, and a passing chain is transitively total
        for (size_t j = 0; j + 1 < idx.size(); ++j)
            if (!subset_minus(bn[idx[j]], order[idx[j + 1]], bn[idx[j + 1]]))
                return IncomparablePair{order[idx[j]], order[idx[j + 1]], i};
        std::vector<int> sorted_order(order.size());
        for (size_t j = 0; j < idx.size(); ++j) sorted_order[j] = order[idx[j]];
        out.order[i] = std::move(sorted_order);
    }
    return out;
}

std::variant<Hole, Witness> skeleton_through_path(const Graph& g, const Buoy& b, int start_bag,
                                                  const std::vector<int>& path) {
    int ell = b.length();
    if (!b.odd()) throw std::invalid_argument("skeleton_through_path: buoy length must be odd");
    int k = static_cast<int>(path.size());
    if (k < 1 || k > ell) throw std::invalid_argument("skeleton_through_path: bad path size");
    auto bag_of = b.bag_of_map(g.vertex_count());
    for (int j = 0; j < k; ++j) {
        if (path[j] < 0 || bag_of[path[j]] != (start_bag + j) % ell)
            throw std::invalid_argument("skeleton_through_path: path vertex in wrong bag");
        if (j && !g.adjacent(path[j - 1], path[j]))
            throw std::invalid_argument("skeleton_through_path: path not connected");
    }
    std::vector<int> walk = path;
    for (int j = k; j < ell; ++j) {
        int next = smallest_neighbor_in(g, walk.back(), b.bags[(start_bag + j) % ell]);
        if (next < 0) throw std::invalid_argument("skeleton_through_path: buoy axiom broken");
        walk.push_back(next);
    }
    if (g.adjacent(walk[0], walk[ell - 1])) return Hole{walk};
    int y = smallest_neighbor_in(g, walk[0], b.bags[(start_bag + ell - 1) % ell]);
    if (y < 0) throw std::invalid_argument("skeleton_through_path: buoy axiom broken");
    if (!g.adjacent(y, walk[ell - 2])) {
        std::vector<int> cyc = walk;
        cyc.push_back(y);  // length ell + 1, even
        return Witness::make_even_hole(Hole{cyc});
    }
    walk[ell - 1] = y;
    return Hole{walk};
}

namespace {

struct SkeletonOrWitness {
    std::optional<Hole> hole;
    std::optional<Witness> witness;
};

SkeletonOrWitness build_skeleton(const Graph& g, const Buoy& b, int start_bag,
                                 const std::vector<int>& path) {
    auto res = skeleton_through_path(g, b, start_bag, path);
    if (std::holds_alternative<Witness>(res)) return {std::nullopt, std::get<Witness>(res)};
    return {std::get<Hole>(res), std::nullopt};
}

Buoy reversed_buoy(const Buoy& b, int pivot_bag) {
    // bags'[j] = bags[pivot - j]: the same buoy traversed the other way round
    Buoy r;
    int ell = b.length();
    r.bags.resize(ell);
    for (int j = 0; j < ell; ++j) r.bags[j] = b.bags[((pivot_bag - j) % ell + ell) % ell];
    return r;
}

}  // namespace

std::optional<Witness> hole_vertex_witness(const Graph& g, const Hole& hole, int x) {
    int ell = hole.length();
    const auto& on = hole.cycle;
    std::vector<char> w(ell, 0);
    int count = 0;
    for (int i = 0; i < ell; ++i)
        if (g.adjacent(x, on[i])) {
            w[i] = 1;
            ++count;
        }
    if (count == 0) return std::nullopt;
    if (ell % 2 == 0) return Witness::make_even_hole(hole);
    auto prev = [&](int i) { return (i + ell - 1) % ell; };
    auto next = [&](int i) { return (i + 1) % ell; };
    if (count == 1) {
        int at = 0;
        while (!w[at]) ++at;
        return Witness::make_pan({hole, x, on[at]});
    }
    // isolated attachment: both cycle-neighbors unattached
    for (int i = 0; i < ell; ++i) {
        if (!w[i] || w[prev(i)] || w[next(i)]) continue;
        auto at = [&](int j) { return on[(i + j) % ell]; };
        int k = 2;
        while (!w[(i + k) % ell]) ++k;
        if (k == ell - 2) {
            Hole h{{at(0), at(ell - 1), at(ell - 2), x}};
            return Witness::make_pan({h, at(1), at(0)});
        }
        std::vector<int> cyc{x};
        for (int j = 0; j <= k; ++j) cyc.push_back(at(j));
        return Witness::make_pan({Hole{cyc}, at(ell - 1), at(0)});
    }
    if (count == 2 || count == 3 || count == ell) return std::nullopt;  // consistent shapes
    if (count == 4) {
        for (int i = 0; i < ell; ++i) {
            if (!w[i] || w[prev(i)]) continue;
            int run = 1;
            while (w[(i + run) % ell]) ++run;
            if (run != 4) continue;
            // drop the middle two attachments: x plus the long way around
            std::vector<int> cyc{x};
            for (int j = 3; j <= ell; ++j) cyc.push_back(on[(i + j) % ell]);
            return Witness::make_even_hole(Hole{cyc});
        }
        // two disjoint edges; one of the two x-closed cycles is even
        int i = -1, t = -1;
        for (int p = 0; p < ell; ++p)
            if (w[p] && w[next(p)]) {
                if (i < 0)
                    i = p;
                else
                    t = p;
            }
        for (auto [from, to] : {std::pair{next(i), t}, std::pair{next(t), i}}) {
            std::vector<int> cyc{x};
            for (int p = from;; p = next(p)) {
                cyc.push_back(on[p]);
                if (p == to) break;
            }
            if (cyc.size() % 2 == 0) return Witness::make_even_hole(Hole{cyc});
        }
        throw internal_error("hole_vertex_witness: both two-edge closures odd");
    }
    // 5 <= count < ell: find attached v0 with unattached successor, then the
    // short x-closed cycle plus a later attachment as the pan handle
    for (int i = 0; i < ell; ++i) {
        if (!(w[i] && !w[next(i)])) continue;
        auto at = [&](int j) { return on[(i + j) % ell]; };
        auto wat = [&](int j) { return w[(i + j) % ell]; };
        int k = 2;
        while (!wat(k)) ++k;
        int t = -1;
        for (int j = k + 2; j < ell - 1; ++j)
            if (wat(j)) {
                t = j;
                break;
            }
        if (t < 0) continue;
        std::vector<int> cyc{x};
        for (int j = 0; j <= k; ++j) cyc.push_back(at(j));
        std::reverse(cyc.begin(), cyc.end());
        return Witness::make_pan({Hole{cyc}, at(t), x});
    }
    throw internal_error("hole_vertex_witness: five-plus attachments without extraction");
}

Witness incomparable_even_hole(const Graph& g, const Buoy& b, int x, int y, int bag) {
    if (!b.odd()) throw std::invalid_argument("incomparable_even_hole: odd buoy required");
    int ell = b.length();
    auto bag_of = b.bag_of_map(g.vertex_count());
    if (x == y || bag_of[x] != bag || bag_of[y] != bag)
        throw std::invalid_argument("incomparable_even_hole: vertices not in the stated bag");
    int up = b.bag_after(bag), down = b.bag_before(bag);
    auto side = [&](int v, int sbag) {
        std::vector<int> out;
        for (int u : b.bags[sbag])
            if (g.adjacent(v, u)) out.push_back(u);
        std::sort(out.begin(), out.end());
        return out;
    };
    auto sx_up = side(x, up), sy_up = side(y, up), sx_dn = side(x, down), sy_dn = side(y, down);
    auto minus = [](const std::vector<int>& a, const std::vector<int>& c) {
        std::vector<int> out;
        std::set_difference(a.begin(), a.end(), c.begin(), c.end(), std::back_inserter(out));
        return out;
    };
    auto xu = minus(sx_up, sy_up), yu = minus(sy_up, sx_up);
    auto xd = minus(sx_dn, sy_dn), yd = minus(sy_dn, sx_dn);
    if (!xu.empty() && !yu.empty())
        return Witness::make_even_hole(Hole{{x, xu.front(), yu.front(), y}});
    if (!xd.empty() && !yd.empty())
        return Witness::make_even_hole(Hole{{x, xd.front(), yd.front(), y}});
    if (xu.empty()) {
        std::swap(x, y);
        std::swap(xu, yu);
        std::swap(xd, yd);
    }
    if (xu.empty() || yd.empty())
        throw std::invalid_argument("incomparable_even_hole: pair is comparable");
    int a = xu.front(), bb = yd.front();
    auto s1 = build_skeleton(g, b, bag, {x, a});
    if (s1.witness) return *s1.witness;
    auto s2 = build_skeleton(g, reversed_buoy(b, bag), 0, {y, bb});
    if (s2.witness) return *s2.witness;
    // offsets from `bag`: av[j], bv[j] live in bag + j
    std::vector<int> av(ell), bv(ell);
    for (int j = 0; j < ell; ++j) av[j] = s1.hole->cycle[j];
    bv[0] = s2.hole->cycle[0];
    for (int j = 1; j < ell; ++j) bv[j] = s2.hole->cycle[ell - j];
    for (int j = 1; j <= ell - 2; ++j)
        if (g.adjacent(av[j], bv[j + 1]) ) {
            std::vector<int> cyc{y, x};
            for (int p = 1; p <= j; ++p) cyc.push_back(av[p]);
            for (int p = j + 1; p <= ell - 1; ++p) cyc.push_back(bv[p]);
            return Witness::make_even_hole(Hole{cyc});
        }
    for (int j = 1; j <= ell - 2; ++j)
        if (!g.adjacent(bv[j], av[j + 1]))
            return Witness::make_even_hole(Hole{{av[j], av[j + 1], bv[j + 1], bv[j]}});
    std::vector<int> cyc{x, av[1], av[2]};
    for (int p = 2; p <= ell - 2; ++p) cyc.push_back(bv[p]);
    cyc.push_back(av[ell - 1]);
    return Witness::make_even_hole(Hole{cyc});
}

Witness domination_violation_witness(const Graph& g, const Buoy& b, const DominationOrders&,
                                     int a, int bvtx, int bag) {
    if (!b.odd()) throw std::invalid_argument("domination_violation_witness: odd buoy required");
    int up = b.bag_after(bag), down = b.bag_before(bag);
    int c = -1, dd = -1;
    for (int u : b.bags[up])
        if (g.adjacent(a, u) && !g.adjacent(bvtx, u)) {
            c = u;
            break;
        }
    for (int u : b.bags[down])
        if (g.adjacent(a, u) && !g.adjacent(bvtx, u)) {
            dd = u;
            break;
        }
    if (c < 0 || dd < 0)
        throw std::invalid_argument("domination_violation_witness: stated violation does not hold");
    auto sk = build_skeleton(g, b, down, {dd, a, c});
    if (sk.witness) return *sk.witness;
    return Witness::make_pan({*sk.hole, bvtx, a});
}

CliquePattern clique_pattern(const Graph& g, const Buoy& b) {
    if (auto bad = validate_buoy(g, b)) throw std::invalid_argument("clique_pattern: " + *bad);
    CliquePattern out;
    int ell = b.length();
    out.pair_is_clique.resize(ell);
    for (int i = 0; i < ell; ++i) {
        bool clique = true;
        for (int u : b.bags[i]) {
            for (int v : b.bags[b.bag_after(i)])
                if (!g.adjacent(u, v)) {
                    clique = false;
                    break;
                }
            if (!clique) break;
        }
        out.pair_is_clique[i] = clique;
    }
    for (int i = 0; i < ell; ++i)
        if (!out.pair_is_clique[b.bag_before(i)] && !out.pair_is_clique[i])
            out.disjunction_violations.push_back(i);
    return out;
}

std::optional<Pan> pan_in_buoy(const Graph& g, const Buoy& b, const DominationOrders& d) {
    if (!b.odd()) throw std::invalid_argument("pan_in_buoy: odd buoy required");
    auto pattern = clique_pattern(g, b);
    if (pattern.disjunction_violations.empty()) return std::nullopt;
    int bag = pattern.disjunction_violations.front();
    Witness w = domination_violation_witness(g, b, d, d.dominant(bag), d.most_dominated(bag), bag);
    if (w.kind == Witness::Kind::pan) return w.pan;
    throw internal_error("pan_in_buoy: even hole inside a domination-ordered buoy");
}

// ---------------------------------------------------------------------------
// outside-vertex machinery
// ---------------------------------------------------------------------------

namespace {

struct OutsideCtx {
    const Graph& g;
    const Buoy& b;
    const DominationOrders& d;
    std::vector<int> bag_of;
    int ell;

    int norm(int i) const { return ((i % ell) + ell) % ell; }
    int dominant(int bag) const { return d.dominant(norm(bag)); }
    const std::vector<int>& bag(int i) const { return b.bags[norm(i)]; }
};

struct Labels {
    std::vector<int> bags;      // sorted labeled bag indices
    std::vector<int> attach;    // per buoy bag: smallest neighbor or -1
    std::vector<char> labeled;  // per buoy bag
};

Labels collect_labels(const OutsideCtx& ctx, int x) {
    Labels out;
    out.attach.assign(ctx.ell, -1);
    out.labeled.assign(ctx.ell, 0);
    for (int u : ctx.g.neighbors(x)) {
        int bg = ctx.bag_of[u];
        if (bg < 0) continue;
        if (out.attach[bg] < 0 || u < out.attach[bg]) out.attach[bg] = u;
        out.labeled[bg] = 1;
    }
    for (int i = 0; i < ctx.ell; ++i)
        if (out.labeled[i]) out.bags.push_back(i);
    return out;
}

// (i) failure: x attaches to bag i but to neither adjacent bag
Witness isolated_label_witness(const OutsideCtx& ctx, int x, const Labels& lab, int i) {
    int bi = lab.attach[i];
    int w_prev = smallest_neighbor_in(ctx.g, bi, ctx.bag(i - 1));
    int w_next = smallest_neighbor_in(ctx.g, bi, ctx.bag(i + 1));
    auto sk = build_skeleton(ctx.g, ctx.b, ctx.norm(i - 1), {w_prev, bi, w_next});
    if (sk.witness) return *sk.witness;
    auto w = hole_vertex_witness(ctx.g, *sk.hole, x);
    if (!w) throw internal_error("isolated label: extraction did not fire");
    return *w;
}

// (ii) failure: odd unlabeled gap strictly between labels lo and lo + span
Witness odd_gap_witness(const OutsideCtx& ctx, int x, const Labels& lab, int lo, int span) {
    std::vector<int> cyc{x, lab.attach[ctx.norm(lo)]};
    for (int k = 1; k < span; ++k) cyc.push_back(ctx.dominant(lo + k));
    cyc.push_back(lab.attach[ctx.norm(lo + span)]);
    return Witness::make_even_hole(Hole{cyc});
}

// (iii): x has neighbors in bags m-1 and m+1 of `view`; checks completeness
// to bag m. `view` may carry one freshly absorbed vertex in bag m; dominants
// are looked up through `vdominant` so callers can keep using the verified
// base orders. Returns nullopt when complete.
std::optional<Witness> completeness_witness_on(const Graph& g, const Buoy& view,
                                               const std::function<int(int)>& vdominant, int x,
                                               int m) {
    int ell = view.length();
    auto norm = [&](int i) { return ((i % ell) + ell) % ell; };
    auto bag = [&](int i) -> const std::vector<int>& { return view.bags[norm(i)]; };
    m = norm(m);
    std::vector<int> missing;
    for (int v : bag(m))
        if (v != x && !g.adjacent(x, v)) missing.push_back(v);
    if (missing.empty()) return std::nullopt;
    int up_nbr = smallest_neighbor_in(g, x, bag(m + 1));
    int dn_nbr = smallest_neighbor_in(g, x, bag(m - 1));
    if (up_nbr < 0 || dn_nbr < 0)
        throw std::invalid_argument("completeness check requires side attachments");
    int dm = vdominant(m);
    if (!g.adjacent(x, dm) && dm != x)
        return Witness::make_even_hole(Hole{{x, dn_nbr, dm, up_nbr}});
    int bm = missing.front();
    std::vector<int> cdn, cup;
    for (int u : bag(m - 1))
        if (g.adjacent(x, u) && g.adjacent(bm, u)) cdn.push_back(u);
    for (int u : bag(m + 1))
        if (g.adjacent(x, u) && g.adjacent(bm, u)) cup.push_back(u);
    if (!cdn.empty() && !cup.empty())
        return Witness::make_even_hole(Hole{{x, cdn.front(), bm, cup.front()}});
    if (cdn.empty() && cup.empty()) {
        int b_dn = smallest_neighbor_in(g, bm, bag(m - 1));
        int b_up = smallest_neighbor_in(g, bm, bag(m + 1));
        return Witness::make_even_hole(Hole{{x, dn_nbr, b_dn, bm, b_up, up_nbr}});
    }
    // one-sided commons: mirror so the common side is m-1
    bool mirrored = cdn.empty();
    Buoy oriented = mirrored ? reversed_buoy(view, 0) : view;
    auto odominant = [&](int i) {
        int j = ((i % ell) + ell) % ell;
        return vdominant(mirrored ? norm(-j) : j);
    };
    int mv = mirrored ? norm(-m) : m;
    auto obag = [&](int i) -> const std::vector<int>& {
        return oriented.bags[((i % ell) + ell) % ell];
    };
    int c_common = (mirrored ? cup : cdn).front();
    int a_up = mirrored ? dn_nbr : up_nbr;  // x's attachment on the common-free side
    int d_m2 = odominant(mv - 2);
    if (!g.adjacent(x, d_m2)) {
        auto sk = build_skeleton(g, oriented, norm(mv - 2), {d_m2, c_common, bm});
        if (sk.witness) return *sk.witness;
        auto w = hole_vertex_witness(g, *sk.hole, x);
        if (!w) throw internal_error("completeness: isolated common attachment did not fire");
        return *w;
    }
    int d_m = odominant(mv);
    int w_up = smallest_neighbor_in(g, bm, obag(mv + 1));
    auto sk = build_skeleton(g, oriented, norm(mv - 2), {d_m2, c_common, d_m, w_up});
    if (sk.witness) return *sk.witness;
    Hole C = *sk.hole;
    C.cycle[4] = odominant(mv + 2);  // skeleton position of bag mv+2
    if (auto w = hole_vertex_witness(g, C, x)) return *w;
    Hole C2 = C;
    C2.cycle[3] = a_up;  // consistent triple: swap in x's own bag-(m+1) attachment
    auto w = hole_vertex_witness(g, C2, x);
    if (!w) throw internal_error("completeness: four-run extraction did not fire");
    return *w;
}

std::optional<Witness> completeness_witness(const OutsideCtx& ctx, int x, int m) {
    return completeness_witness_on(ctx.g, ctx.b, [&](int i) { return ctx.dominant(i); }, x, m);
}

// (vi): x labeled exactly on consecutive bags {i, i+1}
std::variant<OutsideClass, Witness> pair_class_witness(const OutsideCtx& ctx, int x, int i) {
    std::vector<int> si, sj;
    for (int u : ctx.bag(i))
        if (ctx.g.adjacent(x, u)) si.push_back(u);
    for (int u : ctx.bag(i + 1))
        if (ctx.g.adjacent(x, u)) sj.push_back(u);
    for (int a : si)
        for (int c : sj)
            if (!ctx.g.adjacent(a, c)) {
                std::vector<int> cyc{a, x, c};
                for (int k = 2; k <= ctx.ell - 1; ++k) cyc.push_back(ctx.dominant(i + k));
                return Witness::make_even_hole(Hole{cyc});
            }
    auto skeleton_pan = [&](int on_i, int on_j, int attach) -> Witness {
        std::vector<int> cyc{on_i, on_j};
        for (int k = 2; k <= ctx.ell - 1; ++k) cyc.push_back(ctx.dominant(i + k));
        return Witness::make_pan({Hole{cyc}, x, attach});
    };
    for (int a : si)
        for (int w : ctx.bag(i + 1))
            if (ctx.g.adjacent(a, w) && !ctx.g.adjacent(x, w)) return skeleton_pan(a, w, a);
    for (int c : sj)
        for (int w : ctx.bag(i))
            if (ctx.g.adjacent(c, w) && !ctx.g.adjacent(x, w)) return skeleton_pan(w, c, c);
    if (si.size() != ctx.bag(i).size() || sj.size() != ctx.bag(i + 1).size())
        throw internal_error("pair classification: closure passed yet bag incomplete");
    return OutsideClass{OutsideClass::Kind::type2, ctx.norm(i)};
}

// (iv): t >= 3 labels, no isolated label, every gap even
Witness multi_gap_witness(const OutsideCtx& ctx, int x, const Labels& lab, int lo, int gap_len) {
    int hi = lo + gap_len + 1;  // next label after the gap
    for (int k = hi + 2; k <= lo + ctx.ell - 2; ++k) {
        int dk = ctx.dominant(k);
        if (ctx.g.adjacent(x, dk)) {
            std::vector<int> cyc{x, lab.attach[ctx.norm(lo)]};
            for (int p = lo + 1; p <= hi - 1; ++p) cyc.push_back(ctx.dominant(p));
            cyc.push_back(lab.attach[ctx.norm(hi)]);
            return Witness::make_pan({Hole{cyc}, dk, x});
        }
    }
    std::vector<int> cyc{x, lab.attach[ctx.norm(hi + 1)]};
    for (int p = hi + 2; p <= lo + ctx.ell - 2; ++p) cyc.push_back(ctx.dominant(p));
    cyc.push_back(lab.attach[ctx.norm(lo - 1)]);
    return Witness::make_even_hole(Hole{cyc});
}

std::variant<OutsideClass, Witness> classify_impl(const OutsideCtx& ctx, int x) {
    Labels lab = collect_labels(ctx, x);
    int t = static_cast<int>(lab.bags.size());
    if (t == 0) throw std::invalid_argument("classify_outside: vertex has no buoy neighbors");
    if (t == 1) {
        int i = lab.bags[0];
        auto sk = build_skeleton(ctx.g, ctx.b, i, {lab.attach[i]});
        if (sk.witness) return *sk.witness;
        return Witness::make_pan({*sk.hole, x, lab.attach[i]});
    }
    if (t == 2) {
        int i = lab.bags[0], j = lab.bags[1];
        if (j == i + 1) return pair_class_witness(ctx, x, i);
        if (i == 0 && j == ctx.ell - 1) return pair_class_witness(ctx, x, j);
    }
    for (int i : lab.bags)
        if (!lab.labeled[ctx.norm(i - 1)] && !lab.labeled[ctx.norm(i + 1)])
            return isolated_label_witness(ctx, x, lab, i);
    int first_odd_lo = -1, first_odd_len = 0, first_any_lo = -1, first_any_len = 0;
    for (int idx = 0; idx < t; ++idx) {
        int lo = lab.bags[idx];
        int hi = lab.bags[(idx + 1) % t] + (idx + 1 == t ? ctx.ell : 0);
        int gap = hi - lo - 1;
        if (gap <= 0) continue;
        if (first_any_lo < 0) {
            first_any_lo = lo;
            first_any_len = gap;
        }
        if (gap % 2 == 1 && first_odd_lo < 0) {
            first_odd_lo = lo;
            first_odd_len = gap;
        }
    }
    if (first_odd_lo >= 0) return odd_gap_witness(ctx, x, lab, first_odd_lo, first_odd_len + 1);
    if (t == ctx.ell) {
        for (int m = 0; m < ctx.ell; ++m)
            if (auto w = completeness_witness(ctx, x, m)) return *w;
        return OutsideClass{OutsideClass::Kind::full, -1};
    }
    if (t == 3) {
        int lo = lab.bags[0], mid = lab.bags[1], hi = lab.bags[2];
        int middle = -1;
        if (mid == lo + 1 && hi == lo + 2) middle = mid;
        else if (lo == 0 && mid == 1 && hi == ctx.ell - 1) middle = 0;
        else if (lo == 0 && mid == ctx.ell - 2 && hi == ctx.ell - 1) middle = ctx.ell - 1;
        if (middle >= 0) {
            if (auto w = completeness_witness(ctx, x, middle)) return *w;
            return OutsideClass{OutsideClass::Kind::type3, ctx.norm(middle)};
        }
    }
    return multi_gap_witness(ctx, x, lab, first_any_lo, first_any_len);
}

}  // namespace

std::variant<OutsideClass, Witness> classify_outside(const Graph& g, const Buoy& b,
                                                     const DominationOrders& d, int x) {
    if (!b.odd()) throw std::invalid_argument("classify_outside: odd buoy required");
    OutsideCtx ctx{g, b, d, b.bag_of_map(g.vertex_count()), b.length()};
    if (ctx.bag_of[x] >= 0) throw std::invalid_argument("classify_outside: vertex inside the buoy");
    return classify_impl(ctx, x);
}

std::variant<OutsideClass, Witness> classify_outside(const Graph& g, const Buoy& b, int x) {
    auto orders = domination_orders(g, b);
    if (std::holds_alternative<IncomparablePair>(orders)) {
        auto p = std::get<IncomparablePair>(orders);
        return incomparable_even_hole(g, b, p.x, p.y, p.bag);
    }
    return classify_outside(g, b, std::get<DominationOrders>(orders), x);
}

// ---------------------------------------------------------------------------
// local exhaustive fallback and enlarge
// ---------------------------------------------------------------------------

namespace detail {

std::optional<Witness> local_even_hole_or_pan(const Graph& g, const std::vector<int>& subset) {
    auto [sub, to_parent] = induced_subgraph(g, subset);
    int n = sub.vertex_count();
    std::vector<int> path;
    std::vector<char> in_path(n, 0);
    std::optional<Witness> found;
    long steps = 0;
    auto emit = [&](const std::vector<int>& cyc) -> bool {
        Hole h{cyc};
        if (h.length() % 2 == 0) {
            for (int& v : h.cycle) v = to_parent[v];
            found = Witness::make_even_hole(h);
            return true;
        }
        for (int p = 0; p < n; ++p) {
            if (std::find(cyc.begin(), cyc.end(), p) != cyc.end()) continue;
            int hits = 0, at = -1;
            for (int v : cyc)
                if (sub.adjacent(p, v)) {
                    ++hits;
                    at = v;
                }
            if (hits == 1) {
                Pan pan{h, p, at};
                for (int& v : pan.hole.cycle) v = to_parent[v];
                pan.handle_vertex = to_parent[pan.handle_vertex];
                pan.attach_vertex = to_parent[pan.attach_vertex];
                found = Witness::make_pan(pan);
                return true;
            }
        }
        return false;
    };
    std::function<bool(int)> dfs = [&](int root) -> bool {
        if (++steps > 5'000'000) throw internal_error("local witness search exceeded step budget");
        int v = path.back();
        for (int u : sub.neighbors(v)) {
            if (u <= root && !(u == root && path.size() >= 3)) continue;
            if (in_path[u]) continue;
            bool chord = false;
            for (size_t p = 1; p + 1 < path.size(); ++p)
                if (sub.adjacent(u, path[p])) {
                    chord = true;
                    break;
                }
            if (chord) continue;
            bool sees_root = sub.adjacent(u, root);
            if (sees_root && path.size() >= 2) {
                if (path.size() >= 3 && path[1] < u) {
                    auto cyc = path;
                    cyc.push_back(u);
                    if (emit(cyc)) return true;
                }
                continue;
            }
            path.push_back(u);
            in_path[u] = 1;
            if (dfs(root)) return true;
            in_path[u] = 0;
            path.pop_back();
        }
        return false;
    };
    for (int root = 0; root < n && !found; ++root) {
        path = {root};
        std::fill(in_path.begin(), in_path.end(), 0);
        in_path[root] = 1;
        dfs(root);
    }
    return found;
}

}  // namespace detail

std::variant<Buoy, Witness> enlarge(const Graph& g, const Buoy& b, const DominationOrders& d) {
    if (!b.odd()) throw std::invalid_argument("enlarge: odd buoy required");
    OutsideCtx ctx{g, b, d, b.bag_of_map(g.vertex_count()), b.length()};
    Buoy working = b;
    std::vector<std::vector<int>> absorbed(ctx.ell);
    for (int x = 0; x < g.vertex_count(); ++x) {
        if (ctx.bag_of[x] >= 0) continue;
        Labels lab = collect_labels(ctx, x);
        int t = static_cast<int>(lab.bags.size());
        if (t == 0 || t == 2 || t == ctx.ell) continue;  // untouched this pass
        if (t != 3) {
            auto res = classify_impl(ctx, x);
            if (std::holds_alternative<Witness>(res)) return std::get<Witness>(res);
            throw internal_error("enlarge: classification accepted an impossible type");
        }
        int lo = lab.bags[0], mid = lab.bags[1], hi = lab.bags[2];
        int middle = -1;
        if (mid == lo + 1 && hi == lo + 2) middle = mid;
        else if (lo == 0 && mid == 1 && hi == ctx.ell - 1) middle = 0;
        else if (lo == 0 && mid == ctx.ell - 2 && hi == ctx.ell - 1) middle = ctx.ell - 1;
        if (middle < 0) {
            auto res = classify_impl(ctx, x);
            if (std::holds_alternative<Witness>(res)) return std::get<Witness>(res);
            throw internal_error("enlarge: non-consecutive triple not rejected");
        }
        if (auto w = completeness_witness(ctx, x, middle)) return *w;
        int conflict = -1;
        for (int s : absorbed[middle])
            if (!g.adjacent(x, s)) {
                conflict = s;
                break;
            }
        if (conflict >= 0) {
            Buoy grown = b;
            grown.bags[middle].push_back(conflict);
            std::sort(grown.bags[middle].begin(), grown.bags[middle].end());
            auto w = completeness_witness_on(g, grown, [&](int i) { return ctx.dominant(i); }, x,
                                             middle);
            if (w) return *w;
            throw internal_error("enlarge: sibling conflict extraction did not fire");
        }
        absorbed[middle].push_back(x);
        working.bags[middle].push_back(x);
    }
    // same-call absorbees landing in far bags must not be adjacent
    for (int p = 0; p < ctx.ell; ++p)
        for (int q = p + 2; q < ctx.ell; ++q) {
            if (p == 0 && q == ctx.ell - 1) continue;
            for (int x : absorbed[p])
                for (int y : absorbed[q]) {
                    if (!g.adjacent(x, y)) continue;
                    std::vector<int> subset;
                    for (int i = 0; i < ctx.ell; ++i) subset.push_back(ctx.dominant(i));
                    subset.push_back(x);
                    subset.push_back(y);
                    for (int side : {p - 1, p + 1})
                        subset.push_back(smallest_neighbor_in(g, x, ctx.bag(side)));
                    for (int side : {q - 1, q + 1})
                        subset.push_back(smallest_neighbor_in(g, y, ctx.bag(side)));
                    std::sort(subset.begin(), subset.end());
                    subset.erase(std::unique(subset.begin(), subset.end()), subset.end());
                    auto w = detail::local_even_hole_or_pan(g, subset);
                    if (w) return *w;
                    throw internal_error("enlarge: far-bag pair without local witness");
                }
        }
    for (auto& bag : working.bags) std::sort(bag.begin(), bag.end());
    return working;
}

std::variant<Buoy, Witness> enlarge(const Graph& g, const Buoy& b) {
    auto orders = domination_orders(g, b);
    if (std::holds_alternative<IncomparablePair>(orders)) {
        auto p = std::get<IncomparablePair>(orders);
        return incomparable_even_hole(g, b, p.x, p.y, p.bag);
    }
    return enlarge(g, b, std::get<DominationOrders>(orders));
}

}  // namespace pef
