#ifndef PEF_GRAPH_HPP
#define PEF_GRAPH_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace pef {

/// Thrown by parse_graph; line() is 1-based.
class parse_error : public std::runtime_error {
public:
    parse_error(int line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

/// Signals a broken internal invariant (a bug), never a property of the input.
class internal_error : public std::logic_error {
public:
    explicit internal_error(const std::string& what) : std::logic_error(what) {}
};

/// Immutable undirected simple graph. Vertices are dense 0-based ints.
/// Neighbor lists are sorted; a bit adjacency matrix backs adjacent() for
/// n <= matrix_limit since O(1) adjacency tests dominate witness extraction.
class Graph {
public:
    static constexpr int matrix_limit = 4096;

    Graph() = default;
    Graph(int n, const std::vector<std::pair<int, int>>& edge_list);

    int vertex_count() const { return n_; }
    int edge_count() const { return m_; }
    const std::vector<int>& neighbors(int v) const { return adj_[v]; }
    int degree(int v) const { return static_cast<int>(adj_[v].size()); }
    bool adjacent(int u, int v) const;
    std::vector<std::pair<int, int>> edges() const;  // lexicographically sorted

private:
    int n_ = 0;
    int m_ = 0;
    std::vector<std::vector<int>> adj_;
    std::vector<uint64_t> matrix_;  // n_ rows of words_ words, empty when n_ > matrix_limit
    int words_ = 0;
};

/// Chordless cycle, listed in cyclic order. Valid holes have length >= 4.
struct Hole {
    std::vector<int> cycle;
    int length() const { return static_cast<int>(cycle.size()); }
    bool even() const { return length() % 2 == 0; }
};

/// A hole plus a vertex with exactly one neighbor on it; handle_vertex is the
/// pendant vertex, attach_vertex the hole vertex it sees.
struct Pan {
    Hole hole;
    int handle_vertex = -1;
    int attach_vertex = -1;
};

struct Witness {
    enum class Kind { pan, even_hole };
    Kind kind = Kind::even_hole;
    Pan pan;    // meaningful when kind == pan
    Hole hole;  // meaningful when kind == even_hole

    static Witness make_pan(Pan p) {
        Witness w;
        w.kind = Kind::pan;
        w.pan = std::move(p);
        return w;
    }
    static Witness make_even_hole(Hole h) {
        Witness w;
        w.kind = Kind::even_hole;
        w.hole = std::move(h);
        return w;
    }
    bool verify(const Graph& g) const;
    /// Remaps vertex ids through `to_parent`.
    Witness mapped(const std::vector<int>& to_parent) const;
};

Graph parse_graph(std::string_view text);
std::string serialize_graph(const Graph& g);

struct InducedSubgraph {
    Graph graph;
    std::vector<int> to_parent;  // local index -> parent index
};
InducedSubgraph induced_subgraph(const Graph& g, const std::vector<int>& vertices);

bool is_clique(const Graph& g, const std::vector<int>& vertices);
bool verify_hole(const Graph& g, const Hole& h);
bool verify_pan(const Graph& g, const Pan& p);
std::vector<int> universal_vertices(const Graph& g);

std::vector<std::vector<int>> connected_components(const Graph& g);

}  // namespace pef

#endif
