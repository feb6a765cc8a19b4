#include "pef/decomposition.hpp"

#include <algorithm>
#include <limits>
#include <queue>

namespace pef {

namespace {

struct McsM {
    std::vector<int> elimination;          // position 0 eliminated first
    std::vector<std::vector<int>> madj;    // higher fill-neighborhood per vertex
};

// MCS-M (Berry, Blair, Heggernes, Peyton): computes a minimal elimination
// ordering together with the fill it induces. A vertex u gains weight when
// the visited vertex v reaches it through unnumbered interiors of strictly
// smaller weight; such pairs are exactly the fill/graph edges of the minimal
// triangulation.
McsM mcs_m(const Graph& g) {
    int n = g.vertex_count();
    constexpr int inf = std::numeric_limits<int>::max();
    std::vector<int> weight(n, 0), number(n, -1);
    McsM out;
    out.elimination.assign(n, -1);
    out.madj.assign(n, {});
    std::vector<int> reach_limit(n);  // min over v-u paths of max interior weight
    for (int step = n - 1; step >= 0; --step) {
        int v = -1;
        for (int u = 0; u < n; ++u)
            if (number[u] < 0 && (v < 0 || weight[u] > weight[v])) v = u;
        number[v] = step;
        out.elimination[step] = v;
        // bucket-based min-max Dijkstra over the unnumbered part; bucket b
        // holds limit value b-1 so direct neighbors (limit -1, no interior)
        // land in bucket 0
        std::fill(reach_limit.begin(), reach_limit.end(), inf);
        std::vector<std::vector<int>> buckets(static_cast<size_t>(n) + 2);
        for (int u : g.neighbors(v))
            if (number[u] < 0) {
                reach_limit[u] = -1;
                buckets[0].push_back(u);
            }
        for (size_t b = 0; b < buckets.size(); ++b) {
            for (size_t idx = 0; idx < buckets[b].size(); ++idx) {
                int u = buckets[b][idx];
                int lim = static_cast<int>(b) - 1;
                if (lim != reach_limit[u]) continue;  // stale entry
                int through = std::max(lim, weight[u]);
                for (int w : g.neighbors(u)) {
                    if (number[w] >= 0) continue;
                    if (through < reach_limit[w]) {
                        reach_limit[w] = through;
                        buckets[through + 1].push_back(w);
                    }
                }
            }
        }
        for (int u = 0; u < n; ++u)
            if (number[u] < 0 && reach_limit[u] < weight[u]) {
                weight[u] += 1;
                out.madj[u].push_back(v);  // u is eliminated before v
            }
    }
    return out;
}

std::vector<std::vector<int>> components_without(const Graph& g, const std::vector<char>& removed) {
    int n = g.vertex_count();
    std::vector<std::vector<int>> comps;
    std::vector<char> seen(n, 0);
    for (int s = 0; s < n; ++s) {
        if (removed[s] || seen[s]) continue;
        std::vector<int> stack{s}, members;
        seen[s] = 1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            members.push_back(v);
            for (int u : g.neighbors(v))
                if (!removed[u] && !seen[u]) {
                    seen[u] = 1;
                    stack.push_back(u);
                }
        }
        std::sort(members.begin(), members.end());
        comps.push_back(std::move(members));
    }
    std::sort(comps.begin(), comps.end());
    return comps;
}

// minimal separator test: at least two components whose neighborhood is all of s
bool separates_with_full_components(const Graph& g, const std::vector<int>& s) {
    std::vector<char> removed(g.vertex_count(), 0);
    for (int v : s) removed[v] = 1;
    auto comps = components_without(g, removed);
    if (comps.size() < 2) return false;
    int full = 0;
    for (const auto& comp : comps) {
        std::vector<char> sees(g.vertex_count(), 0);
        for (int v : comp)
            for (int u : g.neighbors(v)) sees[u] = 1;
        bool all = true;
        for (int v : s)
            if (!sees[v]) {
                all = false;
                break;
            }
        if (all && ++full >= 2) return true;
    }
    return false;
}

}  // namespace

std::optional<std::vector<int>> find_clique_cutset(const Graph& g) {
    int n = g.vertex_count();
    if (n <= 2) return std::nullopt;
    McsM order = mcs_m(g);
    for (int i = 0; i < n; ++i) {
        int v = order.elimination[i];
        std::vector<int> cand = order.madj[v];
        std::sort(cand.begin(), cand.end());
        if (cand.empty() || static_cast<int>(cand.size()) >= n - 1) continue;
        if (!is_clique(g, cand)) continue;
        if (separates_with_full_components(g, cand)) return cand;
    }
    return std::nullopt;
}

DecompositionTree decompose(const Graph& g) {
    if (connected_components(g).size() > 1)
        throw std::invalid_argument("decompose: input disconnected, split components first");
    DecompositionTree tree;
    std::vector<int> all(g.vertex_count());
    for (int v = 0; v < g.vertex_count(); ++v) all[v] = v;
    tree.nodes.push_back({all, {}, -1, -1});
    tree.root = 0;
    std::vector<int> pending{0};
    while (!pending.empty()) {
        int idx = pending.back();
        pending.pop_back();
        auto [sub, to_parent] = induced_subgraph(g, tree.nodes[idx].vertices);
        auto cut = find_clique_cutset(sub);
        if (!cut) {
            tree.leaves.push_back(idx);
            continue;
        }
        std::vector<char> removed(sub.vertex_count(), 0);
        for (int v : *cut) removed[v] = 1;
        auto comps = components_without(sub, removed);
        // peel a FULL component (its neighborhood is the whole separator);
        // the other full component survives in the remainder, which keeps the
        // leaves exactly the maximal atoms
        const std::vector<int>* peel = nullptr;
        for (const auto& comp : comps) {
            std::vector<char> sees(sub.vertex_count(), 0);
            for (int v : comp)
                for (int u : sub.neighbors(v)) sees[u] = 1;
            bool full = true;
            for (int v : *cut)
                if (!sees[v]) {
                    full = false;
                    break;
                }
            if (full) {
                peel = &comp;
                break;
            }
        }
        if (!peel) throw internal_error("decompose: separator without a full component");
        std::vector<char> in_peel(sub.vertex_count(), 0);
        for (int v : *peel) in_peel[v] = 1;
        std::vector<int> v1 = *peel, v2;
        for (int v = 0; v < sub.vertex_count(); ++v)
            if (!in_peel[v]) v2.push_back(v);
        for (int v : *cut) v1.push_back(v);
        auto globalize = [&](std::vector<int> local) {
            for (int& v : local) v = to_parent[v];
            std::sort(local.begin(), local.end());
            return local;
        };
        std::vector<int> cut_global = globalize(*cut);
        int left = static_cast<int>(tree.nodes.size());
        tree.nodes.push_back({globalize(std::move(v1)), {}, -1, -1});
        int right = static_cast<int>(tree.nodes.size());
        tree.nodes.push_back({globalize(std::move(v2)), {}, -1, -1});
        tree.nodes[idx].cutset = std::move(cut_global);
        tree.nodes[idx].left = left;
        tree.nodes[idx].right = right;
        pending.push_back(right);
        pending.push_back(left);
    }
    // recover creation order of leaves discovered depth-first
    std::sort(tree.leaves.begin(), tree.leaves.end());
    return tree;
}

namespace {

std::vector<int> mcs_order(const Graph& g) {
    int n = g.vertex_count();
    std::vector<int> weight(n, 0), number(n, -1), elimination(n, -1);
    for (int step = n - 1; step >= 0; --step) {
        int v = -1;
        for (int u = 0; u < n; ++u)
            if (number[u] < 0 && (v < 0 || weight[u] > weight[v])) v = u;
        number[v] = step;
        elimination[step] = v;
        for (int u : g.neighbors(v))
            if (number[u] < 0) ++weight[u];
    }
    return elimination;
}

// shortest x-y path whose interior avoids forbidden; returns the whole path
std::optional<std::vector<int>> shortest_path_avoiding(const Graph& g, int x, int y,
                                                       const std::vector<char>& forbidden) {
    std::vector<int> parent(g.vertex_count(), -2);
    std::queue<int> q;
    parent[x] = -1;
    q.push(x);
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (int u : g.neighbors(v)) {
            if (parent[u] != -2) continue;
            if (u == y) {
                std::vector<int> path{y};
                for (int w = v; w != -1; w = parent[w]) path.push_back(w);
                std::reverse(path.begin(), path.end());
                return path;
            }
            if (forbidden[u]) continue;
            parent[u] = v;
            q.push(u);
        }
    }
    return std::nullopt;
}

// hole through v given non-adjacent x, y in N(v): v + shortest chordless x-y
// path avoiding N[v]
std::optional<Hole> hole_from_failure(const Graph& g, int v, int x, int y) {
    std::vector<char> forbidden(g.vertex_count(), 0);
    forbidden[v] = 1;
    for (int u : g.neighbors(v)) forbidden[u] = 1;
    auto path = shortest_path_avoiding(g, x, y, forbidden);
    if (!path) return std::nullopt;
    Hole h;
    h.cycle.push_back(v);
    h.cycle.insert(h.cycle.end(), path->begin(), path->end());
    return h;
}

}  // namespace

ChordalityCertificate chordality_certificate(const Graph& g) {
    int n = g.vertex_count();
    auto elimination = mcs_order(g);
    std::vector<int> pos(n);
    for (int i = 0; i < n; ++i) pos[elimination[i]] = i;
    std::vector<std::tuple<int, int, int>> failures;  // (v, f, u) with f,u non-adjacent
    for (int i = 0; i < n; ++i) {
        int v = elimination[i];
        int f = -1;
        for (int u : g.neighbors(v))
            if (pos[u] > i && (f < 0 || pos[u] < pos[f])) f = u;
        if (f < 0) continue;
        for (int u : g.neighbors(v))
            if (pos[u] > i && u != f && !g.adjacent(u, f)) failures.emplace_back(v, f, u);
    }
    if (failures.empty()) return {elimination, std::nullopt};
    size_t attempts = std::min(failures.size(), size_t{64});
    for (size_t i = 0; i < attempts; ++i) {
        auto [v, f, u] = failures[i];
        if (auto hole = hole_from_failure(g, v, f, u)) return {std::nullopt, hole};
    }
    // fallback: any hole can be written as v + a chordless path between two
    // non-adjacent neighbors of v avoiding N[v]
    for (int v = 0; v < n; ++v) {
        const auto& nb = g.neighbors(v);
        for (size_t a = 0; a < nb.size(); ++a)
            for (size_t b = a + 1; b < nb.size(); ++b) {
                if (g.adjacent(nb[a], nb[b])) continue;
                if (auto hole = hole_from_failure(g, v, nb[a], nb[b])) return {std::nullopt, hole};
            }
    }
    throw internal_error("chordality: simpliciality failed but no hole extracted");
}

std::optional<Hole> hole_through_vertex(const Graph& atom, int v) {
    int n = atom.vertex_count();
    std::vector<char> in_n(n, 0);
    for (int u : atom.neighbors(v)) in_n[u] = 1;
    std::vector<char> removed(n, 0);
    removed[v] = 1;
    for (int u : atom.neighbors(v)) removed[u] = 1;
    auto comps = components_without(atom, removed);
    if (comps.empty()) return std::nullopt;  // universal
    for (const auto& comp : comps) {
        std::vector<char> in_comp(n, 0);
        for (int c : comp) in_comp[c] = 1;
        std::vector<int> attach;
        for (int u : atom.neighbors(v))
            for (int w : atom.neighbors(u))
                if (in_comp[w]) {
                    attach.push_back(u);
                    break;
                }
        std::sort(attach.begin(), attach.end());
        if (is_clique(atom, attach))
            throw std::invalid_argument("hole_through_vertex: clique cutset found, input is not an atom");
        // first non-adjacent pair in index order
        for (size_t a = 0; a < attach.size(); ++a)
            for (size_t b = a + 1; b < attach.size(); ++b) {
                if (atom.adjacent(attach[a], attach[b])) continue;
                // chordless path through this component only
                std::vector<char> forbidden(n, 1);
                for (int c : comp) forbidden[c] = 0;
                auto path = shortest_path_avoiding(atom, attach[a], attach[b], forbidden);
                if (!path) continue;
                Hole h;
                h.cycle.push_back(v);
                h.cycle.insert(h.cycle.end(), path->begin(), path->end());
                return h;
            }
    }
    throw internal_error("hole_through_vertex: no usable attachment pair");
}

std::optional<Hole> find_hole_through(const Graph& g, int v) {
    // restrict to v's component, then walk the decomposition's leaves
    auto comps = connected_components(g);
    const std::vector<int>* comp = nullptr;
    for (const auto& c : comps)
        if (std::binary_search(c.begin(), c.end(), v)) {
            comp = &c;
            break;
        }
    auto [sub, to_parent] = induced_subgraph(g, *comp);
    int local_v = static_cast<int>(std::lower_bound(to_parent.begin(), to_parent.end(), v) - to_parent.begin());
    auto tree = decompose(sub);
    for (int leaf : tree.leaves) {
        const auto& verts = tree.nodes[leaf].vertices;
        if (!std::binary_search(verts.begin(), verts.end(), local_v)) continue;
        auto [atom, atom_map] = induced_subgraph(sub, verts);
        int av = static_cast<int>(std::lower_bound(atom_map.begin(), atom_map.end(), local_v) - atom_map.begin());
        auto hole = hole_through_vertex(atom, av);
        if (hole) {
            for (int& x : hole->cycle) x = to_parent[atom_map[x]];
            return hole;
        }
    }
    return std::nullopt;
}

std::optional<Pan> find_pan_global(const Graph& g) {
    for (auto [a, b] : g.edges()) {
        for (auto [pendant, attach] : {std::pair{b, a}, std::pair{a, b}}) {
            // hole through `attach` avoiding the pendant and its other neighbors
            std::vector<int> keep;
            std::vector<char> drop(g.vertex_count(), 0);
            drop[pendant] = 1;
            for (int u : g.neighbors(pendant))
                if (u != attach) drop[u] = 1;
            for (int v = 0; v < g.vertex_count(); ++v)
                if (!drop[v]) keep.push_back(v);
            auto [sub, to_parent] = induced_subgraph(g, keep);
            int local = static_cast<int>(std::lower_bound(to_parent.begin(), to_parent.end(), attach) -
                                         to_parent.begin());
            auto hole = find_hole_through(sub, local);
            if (!hole) continue;
            Pan pan;
            pan.hole = *hole;
            for (int& x : pan.hole.cycle) x = to_parent[x];
            pan.handle_vertex = pendant;
            pan.attach_vertex = attach;
            return pan;
        }
    }
    return std::nullopt;
}

}  // namespace pef
