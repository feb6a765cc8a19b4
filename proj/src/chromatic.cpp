#include "pef/chromatic.hpp"

#include <algorithm>
#include <map>

namespace pef {

bool Coloring::proper(const Graph& g) const {
    for (auto [u, v] : g.edges())
        if (colors[u] != 0 && colors[u] == colors[v]) return false;
    return true;
}

int TreeDecomposition::width() const {
    size_t biggest = 0;
    for (const auto& bag : bags) biggest = std::max(biggest, bag.size());
    return static_cast<int>(biggest) - 1;
}

TdValidation validate_tree_decomposition(const Graph& g, const TreeDecomposition& td) {
    TdValidation out;
    int m = static_cast<int>(td.bags.size());
    if (m == 0) {
        out.message = "no bags";
        return out;
    }
    // the bag graph is a tree
    if (static_cast<int>(td.edges.size()) != m - 1) {
        out.message = "bag graph is not a tree (edge count)";
        return out;
    }
    std::vector<std::vector<int>> adj(m);
    for (auto [a, b] : td.edges) {
        if (a < 0 || b < 0 || a >= m || b >= m) {
            out.message = "bad bag edge";
            return out;
        }
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    std::vector<char> seen(m, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int reached = 0;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        ++reached;
        for (int u : adj[v])
            if (!seen[u]) {
                seen[u] = 1;
                stack.push_back(u);
            }
    }
    if (reached != m) {
        out.message = "bag graph is not connected";
        return out;
    }
    // every vertex appears and induces a subtree; every edge is covered
    std::vector<std::vector<int>> holder(g.vertex_count());
    for (int b = 0; b < m; ++b)
        for (int v : td.bags[b]) {
            if (v < 0 || v >= g.vertex_count()) {
                out.message = "bag vertex out of range";
                return out;
            }
            holder[v].push_back(b);
        }
    for (int v = 0; v < g.vertex_count(); ++v) {
        if (holder[v].empty()) {
            out.message = "vertex " + std::to_string(v) + " in no bag";
            return out;
        }
        // connectivity of holder[v] within the tree
        std::vector<char> in_set(m, 0);
        for (int b : holder[v]) in_set[b] = 1;
        std::vector<int> st{holder[v].front()};
        std::vector<char> vis(m, 0);
        vis[holder[v].front()] = 1;
        int cnt = 0;
        while (!st.empty()) {
            int b = st.back();
            st.pop_back();
            ++cnt;
            for (int u : adj[b])
                if (in_set[u] && !vis[u]) {
                    vis[u] = 1;
                    st.push_back(u);
                }
        }
        if (cnt != static_cast<int>(holder[v].size())) {
            out.message = "vertex " + std::to_string(v) + " does not induce a subtree";
            return out;
        }
    }
    for (auto [u, v] : g.edges()) {
        bool covered = false;
        for (int b = 0; b < m && !covered; ++b) {
            bool has_u = std::find(td.bags[b].begin(), td.bags[b].end(), u) != td.bags[b].end();
            bool has_v = std::find(td.bags[b].begin(), td.bags[b].end(), v) != td.bags[b].end();
            covered = has_u && has_v;
        }
        if (!covered) {
            out.message = "edge not covered by any bag";
            return out;
        }
    }
    out.ok = true;
    out.width = td.width();
    return out;
}

int buoy_clique_number(const Graph& g, const Buoy& b, const DominationOrders& d) {
    int ell = b.length();
    int best = 0;
    for (int i = 0; i < ell; ++i) {
        best = std::max(best, static_cast<int>(b.bags[i].size()));
        const auto& order = d.order[i];
        const auto& next = b.bags[b.bag_after(i)];
        for (size_t p = 0; p < order.size(); ++p) {
            // the order suffix from p is a clique, and every suffix member
            // sees all of order[p]'s neighbors in the next bag
            int reach = 0;
            for (int u : next)
                if (g.adjacent(order[p], u)) ++reach;
            best = std::max(best, static_cast<int>(order.size() - p) + reach);
        }
    }
    return best;
}

int certificate_clique_number(const Graph& g, const CertificateTree& cert) {
    int best = 0;
    for (int leaf : cert.leaves) {
        const auto& atom = cert.nodes[leaf].atom;
        if (atom.kind == AtomCertificate::Kind::clique)
            best = std::max(best, static_cast<int>(atom.clique.size()));
        else
            best = std::max(best, static_cast<int>(atom.universal_clique.size()) +
                                      buoy_clique_number(g, atom.buoy, atom.orders));
    }
    return best;
}

TreeDecomposition buoy_tree_decomposition(const Graph& g, const Buoy& b) {
    auto arcs_res = buoy_to_unit_arcs(g, b);
    if (std::holds_alternative<UnitArcError>(arcs_res))
        throw std::invalid_argument("buoy_tree_decomposition: unit-arc preconditions fail");
    const auto& rep = std::get<ArcRepresentation>(arcs_res);
    // smallest bag, ties to the lowest index; its sector midpoint is the cut
    int split = 0;
    for (int i = 1; i < b.length(); ++i)
        if (b.bags[i].size() < b.bags[split].size()) split = i;
    const Rational eps(1, 2);
    Rational split_point;
    {
        // sector i starts at sum of (eps + connector length) over previous
        Rational at(0);
        auto pattern = clique_pattern(g, b);
        for (int i = 0; i < split; ++i)
            at = at + eps + Rational(pattern.pair_is_clique[i] ? 2 : 1);
        split_point = at + eps / Rational(2);
    }
    // unrolled offsets: distance clockwise from the split point
    auto offset = [&](const Rational& p) {
        Rational d = p - split_point;
        if (d < Rational(0)) d = d + rep.circumference;
        return d;
    };
    std::vector<Rational> points;
    for (const auto& arc : rep.arcs) {
        points.push_back(offset(arc.start));
        points.push_back(offset(arc.end));
    }
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    TreeDecomposition td;
    const auto& split_bag = b.bags[split];
    for (const auto& p_off : points) {
        std::vector<int> bag(split_bag.begin(), split_bag.end());
        for (const auto& arc : rep.arcs) {
            Rational s = offset(arc.start), e = offset(arc.end);
            bool covers = s <= e ? (s <= p_off && p_off <= e) : (p_off >= s || p_off <= e);
            if (covers) bag.push_back(arc.vertex);
        }
        std::sort(bag.begin(), bag.end());
        bag.erase(std::unique(bag.begin(), bag.end()), bag.end());
        td.bags.push_back(std::move(bag));
    }
    for (size_t i = 0; i + 1 < td.bags.size(); ++i)
        td.edges.emplace_back(static_cast<int>(i), static_cast<int>(i + 1));
    return td;
}

namespace {

int find_bag_containing(const TreeDecomposition& td, const std::vector<int>& clique) {
    for (size_t i = 0; i < td.bags.size(); ++i) {
        bool all = true;
        for (int v : clique)
            if (!std::binary_search(td.bags[i].begin(), td.bags[i].end(), v)) {
                all = false;
                break;
            }
        if (all) return static_cast<int>(i);
    }
    throw internal_error("tree decomposition: cutset clique not inside any bag");
}

// appends `piece` to `into`, connecting pieces via a fresh bag that carries
// the shared cutset clique
void graft(TreeDecomposition& into, const TreeDecomposition& piece, const std::vector<int>& cutset) {
    int base = static_cast<int>(into.bags.size());
    if (into.bags.empty()) {
        into = piece;
        return;
    }
    int a = find_bag_containing(into, cutset);
    int b = find_bag_containing(piece, cutset) + base;
    for (const auto& bag : piece.bags) into.bags.push_back(bag);
    for (auto [x, y] : piece.edges) into.edges.emplace_back(x + base, y + base);
    int middle = static_cast<int>(into.bags.size());
    into.bags.push_back(cutset);
    into.edges.emplace_back(a, middle);
    into.edges.emplace_back(middle, b);
}

TreeDecomposition atom_tree_decomposition(const Graph& g, const AtomCertificate& atom,
                                          const std::vector<int>& leaf_vertices) {
    TreeDecomposition td;
    if (atom.kind == AtomCertificate::Kind::clique) {
        td.bags.push_back(leaf_vertices);
        return td;
    }
    td = buoy_tree_decomposition(g, atom.buoy);
    for (auto& bag : td.bags) {
        bag.insert(bag.end(), atom.universal_clique.begin(), atom.universal_clique.end());
        std::sort(bag.begin(), bag.end());
    }
    return td;
}

}  // namespace

TreeDecomposition tree_decomposition_free_graph(const Graph& g, const CertificateTree& cert) {
    if (!verify_certificate(g, cert))
        throw std::invalid_argument("tree_decomposition_free_graph: invalid certificate");
    TreeDecomposition td;
    if (cert.nodes.empty()) {
        td.bags.push_back({});
        return td;
    }
    // children first: nodes were appended parent-before-children
    std::vector<std::optional<TreeDecomposition>> partial(cert.nodes.size());
    for (int idx = static_cast<int>(cert.nodes.size()) - 1; idx >= 0; --idx) {
        const auto& node = cert.nodes[idx];
        if (node.leaf()) {
            partial[idx] = atom_tree_decomposition(g, node.atom, node.vertices);
            continue;
        }
        TreeDecomposition merged = *partial[node.left];
        graft(merged, *partial[node.right], node.cutset);
        partial[idx] = std::move(merged);
        partial[node.left].reset();
        partial[node.right].reset();
    }
    TreeDecomposition out;
    for (int root : cert.roots) {
        const auto& piece = *partial[root];
        int base = static_cast<int>(out.bags.size());
        for (const auto& bag : piece.bags) out.bags.push_back(bag);
        for (auto [x, y] : piece.edges) out.edges.emplace_back(x + base, y + base);
        if (base > 0) out.edges.emplace_back(0, base);  // link components
    }
    return out;
}

namespace {

// exact coloring of the buoy subgraph: feasibility DP along the unrolled
// path decomposition, palette grown from the clique number upward; the split
// bag is pinned to colors 1..|split| to kill the symmetry
Coloring color_buoy(const Graph& g, const Buoy& b, const DominationOrders& d) {
    Coloring out;
    out.colors.assign(g.vertex_count(), 0);
    auto td = buoy_tree_decomposition(g, b);
    int lower = buoy_clique_number(g, b, d);
    int split = 0;
    for (int i = 1; i < b.length(); ++i)
        if (b.bags[i].size() < b.bags[split].size()) split = i;
    std::vector<int> pinned = b.bags[split];
    std::sort(pinned.begin(), pinned.end());
    std::vector<int> pin_color(g.vertex_count(), 0);
    for (size_t i = 0; i < pinned.size(); ++i) pin_color[pinned[i]] = static_cast<int>(i) + 1;
    int p = static_cast<int>(td.bags.size());
    for (int k = lower;; ++k) {
        // states per bag: proper colorings respecting the pins, collapsed to
        // their projection on the next intersection
        struct State {
            std::vector<int> full;  // colors aligned with the bag
            int parent = -1;
        };
        std::vector<std::vector<State>> layers(p);
        bool dead = false;
        for (int j = 0; j < p && !dead; ++j) {
            const auto& bag = td.bags[j];
            std::vector<int> shared_prev;  // indices into bag of vertices shared with bag j-1
            std::vector<int> prev_pos;     // positions of those vertices in bag j-1
            if (j > 0) {
                const auto& prev = td.bags[j - 1];
                for (size_t q = 0; q < bag.size(); ++q) {
                    auto it = std::lower_bound(prev.begin(), prev.end(), bag[q]);
                    if (it != prev.end() && *it == bag[q]) {
                        shared_prev.push_back(static_cast<int>(q));
                        prev_pos.push_back(static_cast<int>(it - prev.begin()));
                    }
                }
            }
            // adjacency inside the bag
            std::vector<std::vector<int>> conflicts(bag.size());
            for (size_t a = 0; a < bag.size(); ++a)
                for (size_t c = a + 1; c < bag.size(); ++c)
                    if (g.adjacent(bag[a], bag[c])) {
                        conflicts[c].push_back(static_cast<int>(a));
                        conflicts[a].push_back(static_cast<int>(c));
                    }
            auto enumerate = [&](int parent_idx, const std::vector<int>* parent_full) {
                std::vector<int> assign(bag.size(), 0);
                // pre-assign shared and pinned vertices
                for (size_t t = 0; t < shared_prev.size(); ++t)
                    assign[shared_prev[t]] = (*parent_full)[prev_pos[t]];
                for (size_t q = 0; q < bag.size(); ++q)
                    if (pin_color[bag[q]]) {
                        if (assign[q] && assign[q] != pin_color[bag[q]]) return;  // clash
                        assign[q] = pin_color[bag[q]];
                    }
                // verify the pre-assignment is proper, then fill the rest
                for (size_t q = 0; q < bag.size(); ++q)
                    if (assign[q])
                        for (int c : conflicts[q])
                            if (assign[c] == assign[q]) return;
                std::vector<int> free_idx;
                for (size_t q = 0; q < bag.size(); ++q)
                    if (!assign[q]) free_idx.push_back(static_cast<int>(q));
                std::vector<size_t> counter(free_idx.size(), 0);
                std::function<void(size_t)> rec = [&](size_t at) {
                    if (at == free_idx.size()) {
                        layers[j].push_back({assign, parent_idx});
                        return;
                    }
                    int q = free_idx[at];
                    for (int col = 1; col <= k; ++col) {
                        bool ok = true;
                        for (int c : conflicts[q])
                            if (assign[c] == col) {
                                ok = false;
                                break;
                            }
                        if (!ok) continue;
                        assign[q] = col;
                        rec(at + 1);
                        assign[q] = 0;
                    }
                };
                rec(0);
            };
            if (j == 0) {
                std::vector<int> no_parent;
                enumerate(-1, &no_parent);
            } else {
                for (size_t s = 0; s < layers[j - 1].size(); ++s)
                    enumerate(static_cast<int>(s), &layers[j - 1][s].full);
            }
            // collapse states equal on the next intersection
            if (j + 1 < p) {
                const auto& next = td.bags[j + 1];
                std::vector<int> proj_idx;
                for (size_t q = 0; q < bag.size(); ++q)
                    if (std::binary_search(next.begin(), next.end(), bag[q]))
                        proj_idx.push_back(static_cast<int>(q));
                std::map<std::vector<int>, int> kept;
                std::vector<State> dedup;
                for (auto& st : layers[j]) {
                    std::vector<int> key;
                    for (int q : proj_idx) key.push_back(st.full[q]);
                    if (kept.emplace(std::move(key), 1).second) dedup.push_back(std::move(st));
                }
                layers[j] = std::move(dedup);
            }
            if (layers[j].empty()) dead = true;
        }
        if (dead) continue;
        // backtrack a witness coloring
        int pick = 0;
        for (int j = p - 1; j >= 0; --j) {
            const auto& st = layers[j][pick];
            const auto& bag = td.bags[j];
            for (size_t q = 0; q < bag.size(); ++q) out.colors[bag[q]] = st.full[q];
            pick = st.parent < 0 ? 0 : st.parent;
        }
        out.palette = 0;
        for (int c : out.colors) out.palette = std::max(out.palette, c);
        return out;
    }
}

}  // namespace

Coloring color_atom(const Graph& g, const AtomCertificate& cert) {
    Coloring out;
    out.colors.assign(g.vertex_count(), 0);
    if (cert.kind == AtomCertificate::Kind::clique) {
        int next = 0;
        for (int v : cert.clique) out.colors[v] = ++next;
        out.palette = next;
        return out;
    }
    out = color_buoy(g, cert.buoy, cert.orders);
    int next = out.palette;
    for (int v : cert.universal_clique) out.colors[v] = ++next;
    out.palette = next;
    return out;
}

Coloring merge_colorings(const Coloring& c1, const Coloring& c2, const std::vector<int>& cutset) {
    int target = std::max(c1.palette, c2.palette);
    std::vector<int> image(c2.palette + 1, 0);
    std::vector<char> used(target + 1, 0);
    for (int v : cutset) {
        int from = c2.colors[v], to = c1.colors[v];
        if (from == 0 || to == 0) throw std::invalid_argument("merge: cutset vertex uncolored");
        if (image[from] == 0) {
            if (used[to]) throw std::invalid_argument("merge: cutset colors not injective");
            image[from] = to;
            used[to] = 1;
        } else if (image[from] != to) {
            throw std::invalid_argument("merge: cutset colors not injective");
        }
    }
    int probe = 1;
    for (int c = 1; c <= c2.palette; ++c) {
        if (image[c]) continue;
        while (probe <= target && used[probe]) ++probe;
        image[c] = probe;
        used[probe] = 1;
    }
    Coloring out = c1;
    out.palette = target;
    for (size_t v = 0; v < c2.colors.size(); ++v) {
        if (c2.colors[v] == 0) continue;
        int mapped = image[c2.colors[v]];
        if (out.colors[v] == 0) out.colors[v] = mapped;
    }
    return out;
}

Coloring color_free_graph(const Graph& g, const CertificateTree& cert) {
    if (!verify_certificate(g, cert))
        throw std::invalid_argument("color_free_graph: invalid certificate");
    std::vector<std::optional<Coloring>> partial(cert.nodes.size());
    for (int idx = static_cast<int>(cert.nodes.size()) - 1; idx >= 0; --idx) {
        const auto& node = cert.nodes[idx];
        if (node.leaf()) {
            partial[idx] = color_atom(g, node.atom);
            continue;
        }
        partial[idx] = merge_colorings(*partial[node.left], *partial[node.right], node.cutset);
        partial[node.left].reset();
        partial[node.right].reset();
    }
    Coloring out;
    out.colors.assign(g.vertex_count(), 0);
    for (int root : cert.roots) {
        const auto& piece = *partial[root];
        for (size_t v = 0; v < piece.colors.size(); ++v)
            if (piece.colors[v]) out.colors[v] = piece.colors[v];
        out.palette = std::max(out.palette, piece.palette);
    }
    return out;
}

}  // namespace pef
