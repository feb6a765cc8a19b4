#include "pef/oracle.hpp"

#include <algorithm>
#include <bit>
#include <random>

namespace pef::oracle {

namespace {

void check_guard(const Graph& g, int limit, const char* what) {
    if (g.vertex_count() > limit)
        throw std::invalid_argument(std::string(what) + ": size guard exceeded");
}

uint32_t adj_mask(const Graph& g, int v) {
    uint32_t mask = 0;
    for (int u : g.neighbors(v)) mask |= uint32_t{1} << u;
    return mask;
}

// Enumerates chordless cycles (length >= 4) in canonical form: the smallest
// vertex first, its smaller cycle-neighbor second. Visitor returns true to
// stop the enumeration.
template <typename Visit>
bool for_each_hole(const Graph& g, Visit visit) {
    int n = g.vertex_count();
    std::vector<uint32_t> adj(n);
    for (int v = 0; v < n; ++v) adj[v] = adj_mask(g, v);
    std::vector<int> path;
    struct Frame {
        int v;
        uint32_t cands;
    };
    std::vector<Frame> stack;
    for (int root = 0; root < n; ++root) {
        path = {root};
        uint32_t path_mask = uint32_t{1} << root;
        uint32_t above_root = (n >= 32 ? ~uint32_t{0} : (uint32_t{1} << n) - 1) & (~uint32_t{0} << (root + 1));
        stack = {{root, adj[root] & above_root}};
        while (!stack.empty()) {
            Frame& fr = stack.back();
            if (fr.cands == 0) {
                path_mask &= ~(uint32_t{1} << path.back());
                path.pop_back();
                stack.pop_back();
                continue;
            }
            int next = std::countr_zero(fr.cands);
            fr.cands &= fr.cands - 1;
            // next may not see any path vertex except the last (and the root,
            // which either starts the path or closes a cycle)
            uint32_t middle = path_mask & ~(uint32_t{1} << path.back()) & ~(uint32_t{1} << root);
            if (adj[next] & middle) continue;
            if ((adj[next] >> root) & 1) {
                if (path.size() == 1) {
                    // depth one: next is simply the first step away from root
                    path_mask |= uint32_t{1} << next;
                    path.push_back(next);
                    stack.push_back({next, adj[next] & above_root & ~path_mask});
                    continue;
                }
                if (path.size() >= 3 && path[1] < next) {
                    std::vector<int> cyc = path;
                    cyc.push_back(next);
                    if (visit(cyc)) return true;
                }
                continue;  // a root chord forbids extending through next
            }
            path_mask |= uint32_t{1} << next;
            path.push_back(next);
            stack.push_back({next, adj[next] & above_root & ~path_mask});
        }
    }
    return false;
}

}  // namespace

std::optional<Hole> brute_even_hole(const Graph& g) {
    check_guard(g, 16, "brute_even_hole");
    std::optional<Hole> found;
    for_each_hole(g, [&](const std::vector<int>& cyc) {
        if (cyc.size() % 2 == 0) {
            found = Hole{cyc};
            return true;
        }
        return false;
    });
    return found;
}

std::optional<Hole> brute_any_hole(const Graph& g) {
    check_guard(g, 16, "brute_any_hole");
    std::optional<Hole> found;
    for_each_hole(g, [&](const std::vector<int>& cyc) {
        found = Hole{cyc};
        return true;
    });
    return found;
}

std::optional<Pan> brute_pan(const Graph& g) {
    check_guard(g, 16, "brute_pan");
    int n = g.vertex_count();
    std::vector<uint32_t> adj(n);
    for (int v = 0; v < n; ++v) adj[v] = adj_mask(g, v);
    std::optional<Pan> found;
    for_each_hole(g, [&](const std::vector<int>& cyc) {
        uint32_t cyc_mask = 0;
        for (int v : cyc) cyc_mask |= uint32_t{1} << v;
        for (int x = 0; x < n; ++x) {
            if ((cyc_mask >> x) & 1) continue;
            uint32_t hits = adj[x] & cyc_mask;
            if (std::popcount(hits) == 1) {
                found = Pan{Hole{cyc}, x, std::countr_zero(hits)};
                return true;
            }
        }
        return false;
    });
    return found;
}

namespace {

struct ColorSearch {
    const Graph& g;
    std::vector<int> order;
    std::vector<int> colors;  // 1-based, 0 = unassigned
    std::vector<int> best;
    int best_k;

    void extend(int idx, int used) {
        if (used >= best_k) return;
        if (idx == static_cast<int>(order.size())) {
            best = colors;
            best_k = used;
            return;
        }
        int v = order[idx];
        for (int c = 1; c <= std::min(used + 1, best_k - 1); ++c) {
            bool ok = true;
            for (int u : g.neighbors(v))
                if (colors[u] == c) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            colors[v] = c;
            extend(idx + 1, std::max(used, c));
            colors[v] = 0;
        }
    }
};

}  // namespace

BruteColoring brute_chromatic(const Graph& g) {
    check_guard(g, 16, "brute_chromatic");
    int n = g.vertex_count();
    if (n == 0) return {0, {}};
    ColorSearch search{g, {}, std::vector<int>(n, 0), {}, n + 1};
    search.order.resize(n);
    for (int v = 0; v < n; ++v) search.order[v] = v;
    std::sort(search.order.begin(), search.order.end(),
              [&](int a, int b) { return g.degree(a) != g.degree(b) ? g.degree(a) > g.degree(b) : a < b; });
    search.extend(0, 0);
    return {search.best_k, search.best};
}

int brute_clique_number(const Graph& g) {
    check_guard(g, 20, "brute_clique_number");
    int n = g.vertex_count();
    if (n == 0) return 0;
    std::vector<uint32_t> adj(n);
    for (int v = 0; v < n; ++v) adj[v] = adj_mask(g, v);
    int best = 0;
    struct Frame {
        uint32_t cand;
        int size;
    };
    uint32_t all = n >= 32 ? ~uint32_t{0} : (uint32_t{1} << n) - 1;
    std::vector<Frame> stack{{all, 0}};
    while (!stack.empty()) {
        auto [cand, size] = stack.back();
        stack.pop_back();
        best = std::max(best, size);
        if (size + std::popcount(cand) <= best) continue;
        if (cand == 0) continue;
        int v = std::countr_zero(cand);
        uint32_t rest = cand & (cand - 1);
        stack.push_back({rest, size});
        stack.push_back({rest & adj[v], size + 1});
    }
    return best;
}

namespace {

struct Rng {
    std::mt19937_64 engine;
    explicit Rng(uint64_t seed) : engine(seed) {}
    uint64_t next() { return engine(); }
    // own bounded draw: uniform_int_distribution is not bit-for-bit portable
    int below(int k) { return k <= 1 ? 0 : static_cast<int>(next() % static_cast<uint64_t>(k)); }
    int in(int lo, int hi) { return lo + below(hi - lo + 1); }
    bool chance(int num, int den) { return below(den) < num; }
};

struct Builder {
    int n = 0;
    std::vector<std::pair<int, int>> edges;
    int fresh() { return n++; }
    void add(int u, int v) {
        if (u > v) std::swap(u, v);
        edges.emplace_back(u, v);
    }
    void complete_among(const std::vector<int>& vs) {
        for (size_t i = 0; i < vs.size(); ++i)
            for (size_t j = i + 1; j < vs.size(); ++j) add(vs[i], vs[j]);
    }
    void complete_between(const std::vector<int>& a, const std::vector<int>& b) {
        for (int u : a)
            for (int v : b) add(u, v);
    }
    Graph build() {
        std::sort(edges.begin(), edges.end());
        edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
        return Graph(n, edges);
    }
};

struct PlannedBuoy {
    std::vector<std::vector<int>> bags;
    std::vector<bool> pair_complete;  // bag i union bag i+1 is a clique
};

// Builds a free-by-construction odd buoy into `b`: bag cliques, staircase or
// complete connectors, each bag totally ordered by neighborhood inclusion
// (listed order, later dominates earlier), no two consecutive staircases.
PlannedBuoy emit_free_buoy(Builder& b, Rng& rng, int target_n, int max_bag, int min_bag = 1,
                           int fixed_ell = 0) {
    int budget = std::max(5, target_n);
    int ell;
    if (fixed_ell) {
        if (fixed_ell < 5 || fixed_ell % 2 == 0)
            throw std::invalid_argument("generator: fixed bag count must be odd and >= 5");
        ell = fixed_ell;
    } else {
        int max_ell = std::max(5, budget % 2 ? budget : budget - 1);
        ell = 5 + 2 * rng.below((max_ell - 5) / 2 + 1);
    }
    std::vector<bool> staircase(ell, false);
    for (int i = 0; i < ell; ++i) {
        bool prev = staircase[(i + ell - 1) % ell];
        bool next = staircase[(i + 1) % ell];
        if (!prev && !next && rng.chance(1, 3)) staircase[i] = true;
    }
    std::vector<int> sizes(ell);
    int extra = std::max(0, (budget - ell) / ell);
    for (int i = 0; i < ell; ++i) {
        int lo = (staircase[i] || staircase[(i + ell - 1) % ell]) ? 2 : 1;
        lo = std::max(lo, std::min(min_bag, std::max(1, max_bag)));
        sizes[i] = std::max(lo, std::min(std::max(lo, max_bag), lo + rng.below(extra + 1)));
    }
    PlannedBuoy plan;
    plan.bags.resize(ell);
    for (int i = 0; i < ell; ++i)
        for (int j = 0; j < sizes[i]; ++j) plan.bags[i].push_back(b.fresh());
    for (auto& bag : plan.bags) b.complete_among(bag);
    plan.pair_complete.resize(ell);
    for (int i = 0; i < ell; ++i) {
        int j = (i + 1) % ell;
        const auto& left = plan.bags[i];
        const auto& right = plan.bags[j];
        plan.pair_complete[i] = !staircase[i];
        if (!staircase[i]) {
            b.complete_between(left, right);
            continue;
        }
        // thresholds into the left order, non-increasing along the right order
        int a = static_cast<int>(left.size());
        int k = static_cast<int>(right.size());
        std::vector<int> theta(k);
        theta[0] = rng.in(2, a);
        for (int t = 1; t < k; ++t) theta[t] = rng.in(1, theta[t - 1]);
        theta[k - 1] = 1;
        for (int t = 0; t < k; ++t)
            for (int p = theta[t] - 1; p < a; ++p) b.add(right[t], left[p]);
    }
    return plan;
}

}  // namespace

Graph complete_buoy_graph(int ell, int k) {
    if (ell < 5 || ell % 2 == 0 || k < 1)
        throw std::invalid_argument("complete_buoy_graph: need odd ell >= 5, k >= 1");
    Builder b;
    std::vector<std::vector<int>> bags(ell);
    for (int i = 0; i < ell; ++i)
        for (int j = 0; j < k; ++j) bags[i].push_back(b.fresh());
    for (int i = 0; i < ell; ++i) {
        b.complete_among(bags[i]);
        b.complete_between(bags[i], bags[(i + 1) % ell]);
    }
    return b.build();
}

GeneratedBuoy gen_free_buoy(const GeneratorSpec& spec) {
    Rng rng(spec.seed * 0x9e3779b97f4a7c15ULL + 0x2545f4914f6cdd1dULL);
    Builder b;
    auto plan = emit_free_buoy(b, rng, spec.target_n, std::max(1, spec.max_bag),
                               std::max(1, spec.min_bag), spec.ell);
    return {b.build(), plan.bags};
}

Graph gen_free_graph(const GeneratorSpec& spec) {
    Rng rng(spec.seed * 0xbf58476d1ce4e5b9ULL + 0x94d049bb133111ebULL);
    Builder b;
    // cliques future atoms may glue onto without breaking the attachment
    // discipline: complete bag pairs plus universal vertices, or cliques with
    // no buoy vertices at all
    std::vector<std::vector<int>> glue_points;

    auto add_buoy_atom = [&](int target, const std::vector<int>& join_clique) {
        auto plan = emit_free_buoy(b, rng, target, std::max(1, spec.max_bag));
        std::vector<int> all;
        for (auto& bag : plan.bags) all.insert(all.end(), bag.begin(), bag.end());
        std::vector<int> universal = join_clique;
        int extra_universal = rng.chance(1, 3) ? rng.in(1, 2) : 0;
        for (int t = 0; t < extra_universal; ++t) universal.push_back(b.fresh());
        b.complete_among(universal);
        b.complete_between(universal, all);
        if (!universal.empty()) glue_points.push_back(universal);
        int ell = static_cast<int>(plan.bags.size());
        for (int i = 0; i < ell; ++i)
            if (plan.pair_complete[i]) {
                std::vector<int> point = plan.bags[i];
                const auto& nxt = plan.bags[(i + 1) % ell];
                point.insert(point.end(), nxt.begin(), nxt.end());
                point.insert(point.end(), universal.begin(), universal.end());
                glue_points.push_back(std::move(point));
            }
    };

    auto add_clique_atom = [&](const std::vector<int>& base, int extra) {
        std::vector<int> fresh;
        for (int t = 0; t < extra; ++t) fresh.push_back(b.fresh());
        b.complete_among(fresh);
        b.complete_between(fresh, base);
        glue_points.push_back(fresh);
    };

    int atoms = spec.max_atoms <= 1 ? 1 : rng.in(1, spec.max_atoms);
    int per_atom = std::max(5, spec.target_n / std::max(1, atoms));
    for (int a = 0; a < atoms; ++a) {
        if (a > 0 && b.n >= spec.target_n) break;
        if (a == 0) {
            if (rng.chance(5, 6))
                add_buoy_atom(per_atom, {});
            else
                add_clique_atom({}, rng.in(1, std::max(1, per_atom)));
            continue;
        }
        const auto& base = glue_points[rng.below(static_cast<int>(glue_points.size()))];
        std::vector<int> cutset = base;
        if (rng.chance(1, 2) && b.n + 5 <= spec.target_n + 5)
            add_buoy_atom(per_atom, cutset);  // child buoy joined over the cutset
        else
            add_clique_atom(cutset, rng.in(1, std::max(1, per_atom / 2)));
    }
    if (b.n == 0) add_clique_atom({}, 1);
    return b.build();
}

Graph gen_near_miss(const GeneratorSpec& spec) {
    Graph g = gen_free_graph(spec);
    Rng rng(spec.seed ^ 0xdeadbeefcafef00dULL);
    int n = g.vertex_count();
    if (n < 2) return g;
    auto edges = g.edges();
    int u = rng.below(n), v = rng.below(n);
    while (u == v) v = rng.below(n);
    if (u > v) std::swap(u, v);
    std::pair<int, int> toggle{u, v};
    auto it = std::find(edges.begin(), edges.end(), toggle);
    if (it != edges.end())
        edges.erase(it);
    else
        edges.push_back(toggle);
    return Graph(n, edges);
}

Graph gen_random_graph(int n, uint64_t seed) {
    Rng rng(seed * 0xd6e8feb86659fd93ULL + 1);
    int density_pct = 10 + rng.below(81);
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (rng.chance(density_pct, 100)) edges.emplace_back(u, v);
    return Graph(n, edges);
}

Graph generate(const GeneratorSpec& spec) {
    switch (spec.family) {
        case Family::random_graph:
            return gen_random_graph(spec.target_n, spec.seed);
        case Family::random_buoy:
            return gen_free_buoy(spec).graph;
        case Family::free_graph:
            return gen_free_graph(spec);
        case Family::near_miss:
            return gen_near_miss(spec);
    }
    throw std::invalid_argument("unknown generator family");
}

}  // namespace pef::oracle
