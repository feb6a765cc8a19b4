#include "pef/graph.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>
#include <unordered_set>

namespace pef {

Graph::Graph(int n, const std::vector<std::pair<int, int>>& edge_list) : n_(n) {
    if (n < 0) throw std::invalid_argument("negative vertex count");
    adj_.assign(n_, {});
    if (n_ > 0 && n_ <= matrix_limit) {
        words_ = (n_ + 63) / 64;
        matrix_.assign(static_cast<size_t>(n_) * words_, 0);
    }
    for (auto [u, v] : edge_list) {
        if (u < 0 || v < 0 || u >= n_ || v >= n_) throw std::invalid_argument("vertex out of range");
        if (u == v) throw std::invalid_argument("self-loop");
        adj_[u].push_back(v);
        adj_[v].push_back(u);
        if (!matrix_.empty()) {
            matrix_[static_cast<size_t>(u) * words_ + v / 64] |= uint64_t{1} << (v % 64);
            matrix_[static_cast<size_t>(v) * words_ + u / 64] |= uint64_t{1} << (u % 64);
        }
    }
    for (auto& list : adj_) {
        std::sort(list.begin(), list.end());
        if (std::adjacent_find(list.begin(), list.end()) != list.end())
            throw std::invalid_argument("parallel edge");
    }
    m_ = static_cast<int>(edge_list.size());
}

bool Graph::adjacent(int u, int v) const {
    if (u == v) return false;
    if (!matrix_.empty())
        return (matrix_[static_cast<size_t>(u) * words_ + v / 64] >> (v % 64)) & 1;
    const auto& list = adj_[u].size() <= adj_[v].size() ? adj_[u] : adj_[v];
    int w = adj_[u].size() <= adj_[v].size() ? v : u;
    return std::binary_search(list.begin(), list.end(), w);
}

std::vector<std::pair<int, int>> Graph::edges() const {
    std::vector<std::pair<int, int>> out;
    out.reserve(m_);
    for (int u = 0; u < n_; ++u)
        for (int v : adj_[u])
            if (u < v) out.emplace_back(u, v);
    return out;
}

namespace {

bool parse_int(std::string_view tok, long& out) {
    auto res = std::from_chars(tok.data(), tok.data() + tok.size(), out);
    return res.ec == std::errc{} && res.ptr == tok.data() + tok.size();
}

std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> toks;
    size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
        if (j > i) toks.push_back(line.substr(i, j - i));
        i = j;
    }
    return toks;
}

}  // namespace

Graph parse_graph(std::string_view text) {
    long n = -1, m = -1;
    std::vector<std::pair<int, int>> edge_list;
    std::unordered_set<uint64_t> seen;
    int lineno = 0;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t eol = text.find('\n', pos);
        std::string_view line = text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++lineno;
        auto toks = split_ws(line);
        if (toks.empty()) continue;
        if (toks[0] == "c") continue;
        if (toks[0] == "p") {
            if (n >= 0) throw parse_error(lineno, "duplicate problem line");
            if (toks.size() != 4 || toks[1] != "edge")
                throw parse_error(lineno, "malformed header, expected 'p edge <n> <m>'");
            if (!parse_int(toks[2], n) || !parse_int(toks[3], m) || n < 0 || m < 0)
                throw parse_error(lineno, "malformed header counts");
            continue;
        }
        if (toks[0] == "e") {
            if (n < 0) throw parse_error(lineno, "edge before problem line");
            if (toks.size() != 3) throw parse_error(lineno, "malformed edge line");
            long u, v;
            if (!parse_int(toks[1], u) || !parse_int(toks[2], v))
                throw parse_error(lineno, "malformed edge endpoints");
            if (u < 1 || v < 1 || u > n || v > n)
                throw parse_error(lineno, "vertex index out of range");
            if (u == v) throw parse_error(lineno, "self-loop");
            uint64_t key = (static_cast<uint64_t>(std::min(u, v)) << 32) | static_cast<uint64_t>(std::max(u, v));
            if (!seen.insert(key).second) throw parse_error(lineno, "duplicate edge");
            edge_list.emplace_back(static_cast<int>(u - 1), static_cast<int>(v - 1));
            continue;
        }
        throw parse_error(lineno, "unknown line type");
    }
    if (n < 0) throw parse_error(lineno, "missing problem line");
    if (static_cast<long>(edge_list.size()) != m)
        throw parse_error(lineno, "edge count does not match header");
    return Graph(static_cast<int>(n), edge_list);
}

std::string serialize_graph(const Graph& g) {
    std::ostringstream out;
    out << "p edge " << g.vertex_count() << " " << g.edge_count() << "\n";
    for (auto [u, v] : g.edges()) out << "e " << u + 1 << " " << v + 1 << "\n";
    return out.str();
}

InducedSubgraph induced_subgraph(const Graph& g, const std::vector<int>& vertices) {
    std::vector<int> sorted = vertices;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<int> to_local(g.vertex_count(), -1);
    for (size_t i = 0; i < sorted.size(); ++i) to_local[sorted[i]] = static_cast<int>(i);
    std::vector<std::pair<int, int>> edge_list;
    for (int u : sorted)
        for (int v : g.neighbors(u))
            if (u < v && to_local[v] >= 0) edge_list.emplace_back(to_local[u], to_local[v]);
    return {Graph(static_cast<int>(sorted.size()), edge_list), sorted};
}

bool is_clique(const Graph& g, const std::vector<int>& vertices) {
    for (size_t i = 0; i < vertices.size(); ++i)
        for (size_t j = i + 1; j < vertices.size(); ++j)
            if (vertices[i] == vertices[j] || !g.adjacent(vertices[i], vertices[j])) return false;
    return true;
}

bool verify_hole(const Graph& g, const Hole& h) {
    int k = h.length();
    if (k < 4) return false;
    std::unordered_set<int> distinct;
    for (int v : h.cycle) {
        if (v < 0 || v >= g.vertex_count()) return false;
        if (!distinct.insert(v).second) return false;
    }
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) {
            bool consecutive = (j == i + 1) || (i == 0 && j == k - 1);
            if (g.adjacent(h.cycle[i], h.cycle[j]) != consecutive) return false;
        }
    return true;
}

bool verify_pan(const Graph& g, const Pan& p) {
    if (!verify_hole(g, p.hole)) return false;
    int x = p.handle_vertex, y = p.attach_vertex;
    if (x < 0 || x >= g.vertex_count()) return false;
    bool attach_on_hole = false;
    for (int v : p.hole.cycle) {
        if (v == x) return false;
        if (v == y) attach_on_hole = true;
        if (g.adjacent(x, v) != (v == y)) return false;
    }
    return attach_on_hole;
}

std::vector<int> universal_vertices(const Graph& g) {
    std::vector<int> out;
    for (int v = 0; v < g.vertex_count(); ++v)
        if (g.degree(v) == g.vertex_count() - 1) out.push_back(v);
    return out;
}

std::vector<std::vector<int>> connected_components(const Graph& g) {
    std::vector<std::vector<int>> comps;
    std::vector<int> comp_of(g.vertex_count(), -1);
    for (int s = 0; s < g.vertex_count(); ++s) {
        if (comp_of[s] >= 0) continue;
        std::vector<int> stack{s}, members;
        comp_of[s] = static_cast<int>(comps.size());
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            members.push_back(v);
            for (int u : g.neighbors(v))
                if (comp_of[u] < 0) {
                    comp_of[u] = comp_of[s];
                    stack.push_back(u);
                }
        }
        std::sort(members.begin(), members.end());
        comps.push_back(std::move(members));
    }
    return comps;
}

bool Witness::verify(const Graph& g) const {
    if (kind == Kind::pan) return verify_pan(g, pan);
    return hole.even() && verify_hole(g, hole);
}

Witness Witness::mapped(const std::vector<int>& to_parent) const {
    Witness w = *this;
    auto remap = [&](std::vector<int>& cyc) {
        for (int& v : cyc) v = to_parent[v];
    };
    if (kind == Kind::pan) {
        remap(w.pan.hole.cycle);
        w.pan.handle_vertex = to_parent[pan.handle_vertex];
        w.pan.attach_vertex = to_parent[pan.attach_vertex];
    } else {
        remap(w.hole.cycle);
    }
    return w;
}

}  // namespace pef
