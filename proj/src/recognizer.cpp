#include "pef/recognizer.hpp"

#include <algorithm>
#include <queue>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace pef {

namespace {

AtomCertificate remap_certificate(AtomCertificate cert, const std::vector<int>& to_parent) {
    auto remap = [&](std::vector<int>& vs) {
        for (int& v : vs) v = to_parent[v];
    };
    remap(cert.clique);
    for (auto& bag : cert.buoy.bags) remap(bag);
    remap(cert.universal_clique);
    for (auto& ord : cert.orders.order) remap(ord);
    return cert;
}

// even hole closing a shortest outside path between two attachment classes
// through the buoy's dominant vertices, picking the direction whose parity
// makes the whole cycle even
Witness close_outside_path(const Graph& g, const Buoy& b, const DominationOrders& d,
                           const std::vector<int>& path, int bag_i, int bag_j) {
    (void)g;
    int ell = b.length();
    auto norm = [&](int k) { return ((k % ell) + ell) % ell; };
    auto build = [&](bool down) {
        std::vector<int> cyc = path;  // a_i ... a_j
        if (down) {
            for (int k = bag_j + 1;; ++k) {
                cyc.push_back(d.dominant(norm(k)));
                if (norm(k) == bag_i) break;
            }
        } else {
            for (int k = bag_j;; --k) {
                cyc.push_back(d.dominant(norm(k)));
                if (norm(k) == norm(bag_i + 1)) break;
            }
        }
        return cyc;
    };
    auto down_cycle = build(true);
    if (down_cycle.size() % 2 == 0) return Witness::make_even_hole(Hole{down_cycle});
    auto up_cycle = build(false);
    if (up_cycle.size() % 2 == 0) return Witness::make_even_hole(Hole{up_cycle});
    throw internal_error("close_outside_path: both closures odd");
}

}  // namespace

std::variant<AtomCertificate, Witness> test_atom(const Graph& atom) {
    int n = atom.vertex_count();
    if (n == 0) return AtomCertificate{};
    auto chord = chordality_certificate(atom);
    if (chord.chordal()) {
        std::vector<int> all(n);
        for (int v = 0; v < n; ++v) all[v] = v;
        if (!is_clique(atom, all))
            throw internal_error("test_atom: chordal atom is not a clique (bad decomposition?)");
        AtomCertificate cert;
        cert.kind = AtomCertificate::Kind::clique;
        cert.clique = all;
        return cert;
    }
    Hole seed = *chord.hole;
    if (seed.even()) return Witness::make_even_hole(seed);
    // strip universal vertices; they sit on no hole and in no pan
    std::vector<int> universal = universal_vertices(atom);
    std::vector<char> is_universal(n, 0);
    for (int v : universal) is_universal[v] = 1;
    std::vector<int> rest;
    for (int v = 0; v < n; ++v)
        if (!is_universal[v]) rest.push_back(v);
    auto [core, to_atom] = induced_subgraph(atom, rest);
    std::vector<int> to_core(n, -1);
    for (size_t i = 0; i < to_atom.size(); ++i) to_core[to_atom[i]] = static_cast<int>(i);
    Buoy buoy;
    for (int v : seed.cycle) buoy.bags.push_back({to_core[v]});
    for (int round = 0; round < 2; ++round) {
        auto grown = enlarge(core, buoy);
        if (std::holds_alternative<Witness>(grown))
            return std::get<Witness>(grown).mapped(to_atom);
        buoy = std::get<Buoy>(grown);
    }
    auto ord = domination_orders(core, buoy);
    if (std::holds_alternative<IncomparablePair>(ord)) {
        auto p = std::get<IncomparablePair>(ord);
        return incomparable_even_hole(core, buoy, p.x, p.y, p.bag).mapped(to_atom);
    }
    DominationOrders orders = std::get<DominationOrders>(ord);
    int ell = buoy.length();
    auto bag_of = buoy.bag_of_map(core.vertex_count());
    std::vector<std::vector<int>> attach_class(ell);
    std::vector<int> b_complete, b_null;
    for (int x = 0; x < core.vertex_count(); ++x) {
        if (bag_of[x] >= 0) continue;
        bool touches = false;
        for (int u : core.neighbors(x))
            if (bag_of[u] >= 0) {
                touches = true;
                break;
            }
        if (!touches) {
            b_null.push_back(x);
            continue;
        }
        auto cls = classify_outside(core, buoy, orders, x);
        if (std::holds_alternative<Witness>(cls))
            return std::get<Witness>(cls).mapped(to_atom);
        auto c = std::get<OutsideClass>(cls);
        switch (c.kind) {
            case OutsideClass::Kind::type2:
                attach_class[c.bag].push_back(x);
                break;
            case OutsideClass::Kind::full:
                b_complete.push_back(x);
                break;
            case OutsideClass::Kind::type3: {
                // two absorption rounds leave no clean type-3 vertex unless
                // the grown buoy loses the domination property
                Buoy grown = buoy;
                grown.bags[c.bag].push_back(x);
                std::sort(grown.bags[c.bag].begin(), grown.bags[c.bag].end());
                auto o3 = domination_orders(core, grown);
                if (std::holds_alternative<IncomparablePair>(o3)) {
                    auto p = std::get<IncomparablePair>(o3);
                    return incomparable_even_hole(core, grown, p.x, p.y, p.bag).mapped(to_atom);
                }
                throw internal_error("test_atom: type-3 vertex survived both absorption rounds");
            }
        }
    }
    for (size_t i = 0; i < b_complete.size(); ++i)
        for (size_t j = i + 1; j < b_complete.size(); ++j)
            if (!core.adjacent(b_complete[i], b_complete[j])) {
                Hole c4{{b_complete[i], orders.dominant(0), b_complete[j], orders.dominant(2)}};
                return Witness::make_even_hole(c4).mapped(to_atom);
            }
    bool any_class = false;
    for (auto& cls : attach_class) any_class |= !cls.empty();
    if (any_class || !b_null.empty() || !b_complete.empty()) {
        if (!any_class) {
            if (b_null.empty())
                throw internal_error("test_atom: buoy-complete leftovers despite universal strip");
            throw std::invalid_argument("test_atom: input has a clique cutset (not an atom)");
        }
        // an atom must connect a non-empty attachment class to a second class
        // outside its bag-pair clique; the connection closes an even hole
        std::vector<char> in_null(core.vertex_count(), 0), target(core.vertex_count(), 0);
        for (int v : b_null) in_null[v] = 1;
        for (int i = 0; i < ell; ++i) {
            if (attach_class[i].empty()) continue;
            std::fill(target.begin(), target.end(), 0);
            int target_any = 0;
            std::vector<int> target_bag(core.vertex_count(), -1);
            for (int j = 0; j < ell; ++j) {
                if (j == i) continue;
                for (int v : attach_class[j]) {
                    target[v] = 1;
                    target_bag[v] = j;
                    ++target_any;
                }
            }
            if (!target_any) continue;
            std::vector<int> parent(core.vertex_count(), -2);
            std::queue<int> q;
            for (int s : attach_class[i]) {
                parent[s] = -1;
                q.push(s);
            }
            int hit = -1;
            while (!q.empty() && hit < 0) {
                int v = q.front();
                q.pop();
                for (int u : core.neighbors(v)) {
                    if (parent[u] != -2) continue;
                    if (target[u]) {
                        parent[u] = v;
                        hit = u;
                        break;
                    }
                    if (in_null[u]) {
                        parent[u] = v;
                        q.push(u);
                    }
                }
            }
            if (hit < 0) continue;
            std::vector<int> path;
            for (int v = hit; v != -1; v = parent[v]) path.push_back(v);
            std::reverse(path.begin(), path.end());
            return close_outside_path(core, buoy, orders, path, i, target_bag[hit]).mapped(to_atom);
        }
        throw std::invalid_argument("test_atom: input has a clique cutset (not an atom)");
    }
    // full buoy over the stripped graph
    auto pan = pan_in_buoy(core, buoy, orders);
    if (pan) return Witness::make_pan(*pan).mapped(to_atom);
    AtomCertificate cert;
    cert.kind = AtomCertificate::Kind::structured;
    cert.buoy = buoy;
    cert.orders = orders;
    cert.pattern = clique_pattern(core, buoy);
    cert = remap_certificate(std::move(cert), to_atom);
    cert.universal_clique = universal;  // already in atom ids
    return cert;
}

std::variant<std::vector<std::vector<int>>, Witness> straddling_pan_check(
    const Graph& g, const std::vector<int>& atom_vertices, const AtomCertificate& cert) {
    if (cert.kind == AtomCertificate::Kind::clique) return std::vector<std::vector<int>>{};
    int ell = cert.buoy.length();
    std::vector<std::vector<int>> classes(ell);
    std::vector<char> in_atom(g.vertex_count(), 0);
    for (int v : atom_vertices) in_atom[v] = 1;
    std::vector<int> q;
    std::vector<char> queued(g.vertex_count(), 0);
    for (const auto& bag : cert.buoy.bags)
        for (int v : bag)
            for (int u : g.neighbors(v))
                if (!in_atom[u] && !queued[u]) {
                    queued[u] = 1;
                    q.push_back(u);
                }
    std::sort(q.begin(), q.end());
    for (int x : q) {
        auto cls = classify_outside(g, cert.buoy, cert.orders, x);
        if (std::holds_alternative<Witness>(cls)) return std::get<Witness>(cls);
        auto c = std::get<OutsideClass>(cls);
        if (c.kind != OutsideClass::Kind::type2)
            throw internal_error(
                "straddling check: outside vertex not of type 1 or 2 (atom maximality violated)");
        classes[c.bag].push_back(x);
    }
    return classes;
}

Verdict recognize(const Graph& g, const RecognizeOptions& opts) {
    CertificateTree cert;
    auto comps = connected_components(g);
    for (const auto& comp : comps) {
        auto [sub, to_parent] = induced_subgraph(g, comp);
        auto tree = decompose(sub);
        int base = static_cast<int>(cert.nodes.size());
        for (const auto& node : tree.nodes) {
            CertificateTree::Node out;
            out.vertices = node.vertices;
            for (int& v : out.vertices) v = to_parent[v];
            out.cutset = node.cutset;
            for (int& v : out.cutset) v = to_parent[v];
            out.left = node.left < 0 ? -1 : node.left + base;
            out.right = node.right < 0 ? -1 : node.right + base;
            cert.nodes.push_back(std::move(out));
        }
        cert.roots.push_back(tree.root + base);
        for (int leaf : tree.leaves) cert.leaves.push_back(leaf + base);
    }
    int leaf_count = static_cast<int>(cert.leaves.size());
    std::vector<std::variant<AtomCertificate, Witness>> results(leaf_count);
    std::vector<std::exception_ptr> errors(leaf_count);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (opts.parallel)
#endif
    for (int idx = 0; idx < leaf_count; ++idx) {
        try {
            const auto& verts = cert.nodes[cert.leaves[idx]].vertices;
            auto [atom, to_parent] = induced_subgraph(g, verts);
            auto res = test_atom(atom);
            if (std::holds_alternative<Witness>(res))
                results[idx] = std::get<Witness>(res).mapped(to_parent);
            else
                results[idx] =
                    remap_certificate(std::get<AtomCertificate>(std::move(res)), to_parent);
        } catch (...) {
            errors[idx] = std::current_exception();
        }
    }
    for (int idx = 0; idx < leaf_count; ++idx)
        if (errors[idx]) std::rethrow_exception(errors[idx]);
    for (int idx = 0; idx < leaf_count; ++idx)
        if (std::holds_alternative<Witness>(results[idx])) {
            Verdict v;
            v.kind = Verdict::Kind::forbidden;
            v.witness = std::get<Witness>(results[idx]);
            if (!v.witness.verify(g)) throw internal_error("recognize: unsound atom witness");
            return v;
        }
    for (int idx = 0; idx < leaf_count; ++idx) {
        auto& node = cert.nodes[cert.leaves[idx]];
        node.atom = std::get<AtomCertificate>(std::move(results[idx]));
        if (node.atom.kind == AtomCertificate::Kind::structured) {
            auto res = straddling_pan_check(g, node.vertices, node.atom);
            if (std::holds_alternative<Witness>(res)) {
                Verdict v;
                v.kind = Verdict::Kind::forbidden;
                v.witness = std::get<Witness>(res);
                if (!v.witness.verify(g))
                    throw internal_error("recognize: unsound straddle witness");
                return v;
            }
            node.outside_classes = std::get<std::vector<std::vector<int>>>(std::move(res));
        }
    }
    Verdict v;
    v.kind = Verdict::Kind::free;
    v.certificate = std::move(cert);
    std::string why;
    if (!verify_certificate(g, v.certificate, &why))
        throw internal_error("recognize: emitted certificate fails verification: " + why);
    return v;
}

size_t CertificateTree::payload_entries() const {
    size_t total = 0;
    for (const auto& node : nodes) {
        total += node.vertices.size() + node.cutset.size() + 2;
        if (!node.leaf()) continue;
        total += node.atom.clique.size() + node.atom.universal_clique.size();
        for (const auto& bag : node.atom.buoy.bags) total += bag.size();
        for (const auto& ord : node.atom.orders.order) total += ord.size();
        for (const auto& cls : node.outside_classes) total += cls.size() + 1;
    }
    return total;
}

namespace {

bool fail(std::string* why, const std::string& message) {
    if (why) *why = message;
    return false;
}

}  // namespace

bool verify_certificate(const Graph& g, const CertificateTree& cert, std::string* why) {
    int n = g.vertex_count();
    {
        auto comps = connected_components(g);
        if (comps.size() != cert.roots.size()) return fail(why, "component count mismatch");
        std::vector<std::vector<int>> root_sets;
        for (int r : cert.roots) {
            if (r < 0 || r >= static_cast<int>(cert.nodes.size()))
                return fail(why, "bad root index");
            root_sets.push_back(cert.nodes[r].vertices);
        }
        std::sort(root_sets.begin(), root_sets.end());
        std::sort(comps.begin(), comps.end());
        if (root_sets != comps) return fail(why, "roots do not match the components");
    }
    int leaf_total = 0;
    for (size_t idx = 0; idx < cert.nodes.size(); ++idx) {
        const auto& node = cert.nodes[idx];
        if (!std::is_sorted(node.vertices.begin(), node.vertices.end()))
            return fail(why, "node vertex list not sorted");
        if (node.leaf()) {
            ++leaf_total;
            continue;
        }
        if (node.right < 0 || node.left >= static_cast<int>(cert.nodes.size()) ||
            node.right >= static_cast<int>(cert.nodes.size()))
            return fail(why, "bad child index");
        const auto& l = cert.nodes[node.left].vertices;
        const auto& r = cert.nodes[node.right].vertices;
        if (node.cutset.empty()) return fail(why, "empty cutset at internal node");
        if (!is_clique(g, node.cutset)) return fail(why, "cutset is not a clique");
        std::vector<int> inter, uni;
        std::set_intersection(l.begin(), l.end(), r.begin(), r.end(), std::back_inserter(inter));
        std::set_union(l.begin(), l.end(), r.begin(), r.end(), std::back_inserter(uni));
        if (inter != node.cutset) return fail(why, "children do not intersect in the cutset");
        if (uni != node.vertices) return fail(why, "children do not cover the node");
        if (l.size() >= node.vertices.size() || r.size() >= node.vertices.size())
            return fail(why, "degenerate split");
        std::vector<char> cut(n, 0), right_side(n, 0);
        for (int v : node.cutset) cut[v] = 1;
        for (int v : r) right_side[v] = 1;
        for (int u : l) {
            if (cut[u]) continue;
            for (int w : g.neighbors(u))
                if (right_side[w] && !cut[w]) return fail(why, "edge across a cutset split");
        }
    }
    if (leaf_total != static_cast<int>(cert.leaves.size()))
        return fail(why, "leaf list does not match the tree");
    // at most n_c - 1 atoms per component of size n_c >= 2
    for (int root : cert.roots) {
        int count = 0;
        std::vector<int> stack{root};
        while (!stack.empty()) {
            int at = stack.back();
            stack.pop_back();
            if (cert.nodes[at].leaf()) {
                ++count;
                continue;
            }
            stack.push_back(cert.nodes[at].left);
            stack.push_back(cert.nodes[at].right);
        }
        int nc = static_cast<int>(cert.nodes[root].vertices.size());
        if (nc >= 2 && count > nc - 1) return fail(why, "more than n-1 atoms in a component");
    }
    for (int leaf : cert.leaves) {
        if (leaf < 0 || leaf >= static_cast<int>(cert.nodes.size()) || !cert.nodes[leaf].leaf())
            return fail(why, "bad leaf index");
        const auto& node = cert.nodes[leaf];
        const auto& atom = node.atom;
        if (atom.kind == AtomCertificate::Kind::clique) {
            if (atom.clique != node.vertices) return fail(why, "clique leaf vertex mismatch");
            if (!is_clique(g, atom.clique)) return fail(why, "clique leaf is not a clique");
            continue;
        }
        const Buoy& b = atom.buoy;
        int ell = b.length();
        if (ell < 5 || ell % 2 == 0) return fail(why, "structured leaf without odd buoy");
        std::vector<int> with_k = b.all_vertices();
        with_k.insert(with_k.end(), atom.universal_clique.begin(), atom.universal_clique.end());
        std::sort(with_k.begin(), with_k.end());
        if (with_k != node.vertices)
            return fail(why, "buoy plus universal clique must cover the leaf");
        if (!is_clique(g, atom.universal_clique)) return fail(why, "universal set is not a clique");
        for (int u : atom.universal_clique)
            for (int v : node.vertices)
                if (u != v && !g.adjacent(u, v)) return fail(why, "universal vertex misses the leaf");
        std::vector<int> bag_of(n, -1);
        for (int i = 0; i < ell; ++i) {
            if (b.bags[i].empty()) return fail(why, "empty bag");
            for (int v : b.bags[i]) {
                if (bag_of[v] >= 0) return fail(why, "bags overlap");
                bag_of[v] = i;
            }
            if (!is_clique(g, b.bags[i])) return fail(why, "bag is not a clique");
        }
        for (int i = 0; i < ell; ++i)
            for (int v : b.bags[i]) {
                bool up = false, down = false;
                for (int u : g.neighbors(v)) {
                    if (bag_of[u] == (i + 1) % ell) up = true;
                    if (bag_of[u] == (i + ell - 1) % ell) down = true;
                    int db = bag_of[u];
                    if (db >= 0 && db != i && db != (i + 1) % ell && db != (i + ell - 1) % ell)
                        return fail(why, "edge between non-consecutive bags");
                }
                if (!up || !down) return fail(why, "bag vertex missing a side neighbor");
            }
        if (static_cast<int>(atom.orders.order.size()) != ell)
            return fail(why, "ordering count mismatch");
        for (int i = 0; i < ell; ++i) {
            const auto& chain = atom.orders.order[i];
            auto sorted_chain = chain;
            std::sort(sorted_chain.begin(), sorted_chain.end());
            auto bag_sorted = b.bags[i];
            std::sort(bag_sorted.begin(), bag_sorted.end());
            if (sorted_chain != bag_sorted) return fail(why, "ordering is not a bag permutation");
            for (size_t p = 0; p + 1 < chain.size(); ++p) {
                int u = chain[p], w = chain[p + 1];
                for (int z : g.neighbors(u)) {
                    if (bag_of[z] < 0 || z == w) continue;
                    if (!g.adjacent(w, z))
                        return fail(why, "ordering violates neighborhood inclusion");
                }
            }
        }
        std::vector<char> pair_clique(ell, 0);
        for (int i = 0; i < ell; ++i) {
            std::vector<int> both = b.bags[i];
            both.insert(both.end(), b.bags[(i + 1) % ell].begin(), b.bags[(i + 1) % ell].end());
            pair_clique[i] = is_clique(g, both);
        }
        for (int i = 0; i < ell; ++i)
            if (!pair_clique[(i + ell - 1) % ell] && !pair_clique[i])
                return fail(why, "consecutive-union clique disjunction fails");
        if (static_cast<int>(atom.pattern.pair_is_clique.size()) == ell)
            for (int i = 0; i < ell; ++i)
                if (atom.pattern.pair_is_clique[i] != static_cast<bool>(pair_clique[i]))
                    return fail(why, "stored clique pattern is wrong");
        if (static_cast<int>(node.outside_classes.size()) != ell)
            return fail(why, "attachment class count mismatch");
        std::vector<char> in_leaf(n, 0), assigned(n, 0);
        for (int v : node.vertices) in_leaf[v] = 1;
        for (int i = 0; i < ell; ++i)
            for (int x : node.outside_classes[i]) {
                if (in_leaf[x]) return fail(why, "attachment class contains a leaf vertex");
                if (assigned[x]++) return fail(why, "attachment classes overlap");
                for (int v : b.bags[i])
                    if (!g.adjacent(x, v)) return fail(why, "class vertex misses its lower bag");
                for (int v : b.bags[(i + 1) % ell])
                    if (!g.adjacent(x, v)) return fail(why, "class vertex misses its upper bag");
                for (int u : g.neighbors(x)) {
                    int db = bag_of[u];
                    if (db >= 0 && db != i && db != (i + 1) % ell)
                        return fail(why, "class vertex touches a third bag");
                }
            }
        for (int v = 0; v < n; ++v) {
            if (in_leaf[v] || assigned[v]) continue;
            for (int u : g.neighbors(v))
                if (bag_of[u] >= 0) return fail(why, "outside buoy-neighbor not classified");
        }
    }
    return true;
}

bool verify_certificate(const Graph& g, const CertificateTree& cert) {
    return verify_certificate(g, cert, nullptr);
}

}  // namespace pef
