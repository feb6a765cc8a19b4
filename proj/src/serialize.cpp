#include "pef/serialize.hpp"

#include <algorithm>
#include <sstream>

namespace pef::io {

namespace {

json up(const std::vector<int>& vs) {
    json arr = json::array();
    for (int v : vs) arr.push_back(v + 1);
    return arr;
}

std::vector<int> down(const json& arr) {
    std::vector<int> out;
    for (const auto& v : arr) out.push_back(v.get<int>() - 1);
    return out;
}

json rational_to_json(const Rational& r) { return json::array({r.num, r.den}); }

Rational rational_from_json(const json& j) {
    return Rational(j.at(0).get<long long>(), j.at(1).get<long long>());
}

}  // namespace

std::string graph_digest(const Graph& g) {
    std::string canonical = serialize_graph(g);
    uint64_t h = 1469598103934665603ull;
    for (unsigned char ch : canonical) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    std::ostringstream out;
    out << std::hex << h;
    return out.str();
}

json witness_to_json(const Witness& w) {
    json j;
    j["type"] = "witness";
    if (w.kind == Witness::Kind::pan) {
        j["kind"] = "pan";
        j["hole"] = up(w.pan.hole.cycle);
        j["handle_vertex"] = w.pan.handle_vertex + 1;
        j["attach_vertex"] = w.pan.attach_vertex + 1;
    } else {
        j["kind"] = "even_hole";
        j["hole"] = up(w.hole.cycle);
    }
    return j;
}

Witness witness_from_json(const json& j) {
    if (j.at("kind") == "pan") {
        Pan p;
        p.hole.cycle = down(j.at("hole"));
        p.handle_vertex = j.at("handle_vertex").get<int>() - 1;
        p.attach_vertex = j.at("attach_vertex").get<int>() - 1;
        return Witness::make_pan(p);
    }
    if (j.at("kind") == "even_hole") return Witness::make_even_hole(Hole{down(j.at("hole"))});
    throw std::invalid_argument("witness: unknown kind");
}

json certificate_to_json(const CertificateTree& cert) {
    json j;
    j["type"] = "certificate";
    json nodes = json::array();
    for (const auto& node : cert.nodes) {
        json nj;
        nj["vertices"] = up(node.vertices);
        if (!node.leaf()) {
            nj["cutset"] = up(node.cutset);
            nj["children"] = json::array({node.left, node.right});
        } else {
            json atom;
            if (node.atom.kind == AtomCertificate::Kind::clique) {
                atom["kind"] = "clique";
                atom["vertices"] = up(node.atom.clique);
            } else {
                atom["kind"] = "structured";
                json bags = json::array();
                for (const auto& bag : node.atom.buoy.bags) bags.push_back(up(bag));
                atom["bags"] = bags;
                atom["universal_clique"] = up(node.atom.universal_clique);
                json orders = json::array();
                for (const auto& ord : node.atom.orders.order) orders.push_back(up(ord));
                atom["domination_orders"] = orders;
                json pattern = json::array();
                for (bool f : node.atom.pattern.pair_is_clique) pattern.push_back(f);
                atom["pair_is_clique"] = pattern;
                json classes = json::array();
                for (const auto& cls : node.outside_classes) classes.push_back(up(cls));
                atom["outside_classes"] = classes;
            }
            nj["atom"] = atom;
        }
        nodes.push_back(nj);
    }
    j["nodes"] = nodes;
    j["roots"] = cert.roots;
    j["leaves"] = cert.leaves;
    return j;
}

CertificateTree certificate_from_json(const json& j) {
    CertificateTree cert;
    for (const auto& nj : j.at("nodes")) {
        CertificateTree::Node node;
        node.vertices = down(nj.at("vertices"));
        if (nj.contains("children")) {
            node.cutset = down(nj.at("cutset"));
            node.left = nj.at("children").at(0).get<int>();
            node.right = nj.at("children").at(1).get<int>();
        } else {
            const auto& atom = nj.at("atom");
            if (atom.at("kind") == "clique") {
                node.atom.kind = AtomCertificate::Kind::clique;
                node.atom.clique = down(atom.at("vertices"));
            } else {
                node.atom.kind = AtomCertificate::Kind::structured;
                for (const auto& bag : atom.at("bags")) node.atom.buoy.bags.push_back(down(bag));
                node.atom.universal_clique = down(atom.at("universal_clique"));
                for (const auto& ord : atom.at("domination_orders"))
                    node.atom.orders.order.push_back(down(ord));
                for (const auto& f : atom.at("pair_is_clique"))
                    node.atom.pattern.pair_is_clique.push_back(f.get<bool>());
                for (const auto& cls : atom.at("outside_classes"))
                    node.outside_classes.push_back(down(cls));
            }
        }
        cert.nodes.push_back(std::move(node));
    }
    for (const auto& r : j.at("roots")) cert.roots.push_back(r.get<int>());
    for (const auto& l : j.at("leaves")) cert.leaves.push_back(l.get<int>());
    return cert;
}

json coloring_to_json(const Coloring& c) {
    json j;
    j["type"] = "coloring";
    j["palette"] = c.palette;
    j["colors"] = c.colors;  // vertex v+1 gets colors[v]
    return j;
}

Coloring coloring_from_json(const json& j) {
    Coloring c;
    c.palette = j.at("palette").get<int>();
    for (const auto& col : j.at("colors")) c.colors.push_back(col.get<int>());
    return c;
}

json tree_decomposition_to_json(const TreeDecomposition& td) {
    json j;
    j["type"] = "tree_decomposition";
    json bags = json::array();
    for (const auto& bag : td.bags) bags.push_back(up(bag));
    j["bags"] = bags;
    json edges = json::array();
    for (auto [a, b] : td.edges) edges.push_back(json::array({a, b}));
    j["edges"] = edges;
    j["width"] = td.width();
    return j;
}

TreeDecomposition tree_decomposition_from_json(const json& j) {
    TreeDecomposition td;
    for (const auto& bag : j.at("bags")) td.bags.push_back(down(bag));
    for (const auto& e : j.at("edges")) td.edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
    return td;
}

json arcs_to_json(const ArcRepresentation& rep) {
    json j;
    j["type"] = "arcs";
    j["unit"] = rep.unit;
    j["circumference"] = rational_to_json(rep.circumference);
    json arcs = json::array();
    for (const auto& a : rep.arcs) {
        json aj;
        aj["vertex"] = a.vertex + 1;
        aj["start"] = rational_to_json(a.start);
        aj["end"] = rational_to_json(a.end);
        arcs.push_back(aj);
    }
    j["arcs"] = arcs;
    return j;
}

ArcRepresentation arcs_from_json(const json& j) {
    ArcRepresentation rep;
    rep.unit = j.at("unit").get<bool>();
    rep.circumference = rational_from_json(j.at("circumference"));
    for (const auto& aj : j.at("arcs")) {
        Arc a;
        a.vertex = aj.at("vertex").get<int>() - 1;
        a.start = rational_from_json(aj.at("start"));
        a.end = rational_from_json(aj.at("end"));
        rep.arcs.push_back(a);
    }
    return rep;
}

json buoy_to_json(const Graph& g, const Buoy& b) {
    json j;
    j["type"] = "buoy";
    json bags = json::array();
    for (auto bag : b.bags) {
        std::sort(bag.begin(), bag.end());
        bags.push_back(up(bag));
    }
    j["bags"] = bags;
    j["host_digest"] = graph_digest(g);
    return j;
}

std::string decomposition_to_dot(const CertificateTree& cert) {
    std::ostringstream dot;
    dot << "digraph decomposition {\n  node [shape=box];\n";
    for (size_t i = 0; i < cert.nodes.size(); ++i) {
        const auto& node = cert.nodes[i];
        dot << "  n" << i << " [label=\"";
        if (node.leaf()) {
            dot << (node.atom.kind == AtomCertificate::Kind::clique ? "clique " : "buoy atom ");
            dot << "{";
            for (size_t k = 0; k < node.vertices.size(); ++k)
                dot << (k ? "," : "") << node.vertices[k] + 1;
            dot << "}";
        } else {
            dot << "cut {";
            for (size_t k = 0; k < node.cutset.size(); ++k)
                dot << (k ? "," : "") << node.cutset[k] + 1;
            dot << "}";
        }
        dot << "\"];\n";
        if (!node.leaf()) {
            dot << "  n" << i << " -> n" << node.left << ";\n";
            dot << "  n" << i << " -> n" << node.right << ";\n";
        }
    }
    dot << "}\n";
    return dot.str();
}

std::string tree_decomposition_to_dot(const TreeDecomposition& td) {
    std::ostringstream dot;
    dot << "graph tree_decomposition {\n  node [shape=box];\n";
    for (size_t i = 0; i < td.bags.size(); ++i) {
        dot << "  b" << i << " [label=\"{";
        for (size_t k = 0; k < td.bags[i].size(); ++k) dot << (k ? "," : "") << td.bags[i][k] + 1;
        dot << "}\"];\n";
    }
    for (auto [a, b] : td.edges) dot << "  b" << a << " -- b" << b << ";\n";
    dot << "}\n";
    return dot.str();
}

ArtifactCheck verify_artifact(const Graph& g, const json& artifact) {
    ArtifactCheck out;
    std::string type = artifact.at("type").get<std::string>();
    if (type == "witness") {
        Witness w = witness_from_json(artifact);
        out.ok = w.verify(g);
        if (!out.ok) out.message = "witness does not verify";
        return out;
    }
    if (type == "certificate") {
        CertificateTree cert = certificate_from_json(artifact);
        std::string why;
        out.ok = verify_certificate(g, cert, &why);
        out.message = why;
        return out;
    }
    if (type == "coloring") {
        Coloring c = coloring_from_json(artifact);
        if (static_cast<int>(c.colors.size()) != g.vertex_count()) {
            out.message = "coloring size mismatch";
            return out;
        }
        int maxc = 0;
        for (int v = 0; v < g.vertex_count(); ++v) {
            if (c.colors[v] <= 0) {
                out.message = "uncolored vertex";
                return out;
            }
            maxc = std::max(maxc, c.colors[v]);
        }
        if (maxc != c.palette) {
            out.message = "palette does not match the colors used";
            return out;
        }
        if (!c.proper(g)) {
            out.message = "coloring is not proper";
            return out;
        }
        out.ok = true;
        return out;
    }
    if (type == "tree_decomposition") {
        TreeDecomposition td = tree_decomposition_from_json(artifact);
        auto val = validate_tree_decomposition(g, td);
        out.ok = val.ok;
        out.message = val.message;
        if (out.ok && artifact.contains("width") && artifact.at("width").get<int>() != val.width) {
            out.ok = false;
            out.message = "declared width is wrong";
        }
        return out;
    }
    if (type == "arcs") {
        ArcRepresentation rep = arcs_from_json(artifact);
        // the representation may cover a subset (one buoy); validate against
        // the induced subgraph on the covered vertices
        std::vector<int> covered;
        for (const auto& a : rep.arcs) covered.push_back(a.vertex);
        std::sort(covered.begin(), covered.end());
        if (std::adjacent_find(covered.begin(), covered.end()) != covered.end()) {
            out.message = "vertex represented twice";
            return out;
        }
        for (int v : covered)
            if (v < 0 || v >= g.vertex_count()) {
                out.message = "arc vertex out of range";
                return out;
            }
        auto [sub, map] = induced_subgraph(g, covered);
        std::vector<int> to_local(g.vertex_count(), -1);
        for (size_t i = 0; i < map.size(); ++i) to_local[map[i]] = static_cast<int>(i);
        ArcRepresentation local = rep;
        for (auto& a : local.arcs) a.vertex = to_local[a.vertex];
        auto val = validate_arcs(sub, local);
        out.ok = val.ok;
        out.message = val.message;
        return out;
    }
    if (type == "arc_bundle") {
        for (const auto& sub : artifact.at("representations")) {
            auto check = verify_artifact(g, sub);
            if (!check.ok) return check;
        }
        out.ok = true;
        return out;
    }
    throw std::invalid_argument("unknown artifact type: " + type);
}

}  // namespace pef::io
