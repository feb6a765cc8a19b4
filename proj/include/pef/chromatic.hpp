#ifndef PEF_CHROMATIC_HPP
#define PEF_CHROMATIC_HPP

#include "pef/arcs.hpp"
#include "pef/buoy.hpp"
#include "pef/graph.hpp"
#include "pef/recognizer.hpp"

namespace pef {

/// Proper coloring; colors are 1-based, 0 marks vertices outside its domain.
struct Coloring {
    std::vector<int> colors;
    int palette = 0;
    bool proper(const Graph& g) const;
};

struct TreeDecomposition {
    std::vector<std::vector<int>> bags;
    std::vector<std::pair<int, int>> edges;  // tree edges between bag indices
    int width() const;
};

struct TdValidation {
    bool ok = false;
    int width = -1;
    std::string message;
};
TdValidation validate_tree_decomposition(const Graph& g, const TreeDecomposition& td);

/// Largest clique of a buoy; every clique lives inside one consecutive bag
/// pair and the domination order turns the search into a linear scan.
int buoy_clique_number(const Graph& g, const Buoy& b, const DominationOrders& d);

/// Clique number read off a certificate: max over atoms of the clique size
/// or |K| + omega(buoy).
int certificate_clique_number(const Graph& g, const CertificateTree& cert);

/// Path-shaped decomposition from the unit-arc representation, split at the
/// smallest bag and unrolled, with that bag added everywhere. The width obeys
/// width + 1 <= 1.5 * omega(buoy).
TreeDecomposition buoy_tree_decomposition(const Graph& g, const Buoy& b);

TreeDecomposition tree_decomposition_free_graph(const Graph& g, const CertificateTree& cert);

/// Exact minimum coloring of one atom: clique colors count themselves; a
/// structured atom colors its buoy by feasibility DP over the path
/// decomposition and stacks the universal clique on top.
Coloring color_atom(const Graph& g, const AtomCertificate& cert);

/// Identifies the colorings across a clique cutset: c2 is renamed by the
/// unique injection matching c1 on the cutset, extended greedily.
Coloring merge_colorings(const Coloring& c1, const Coloring& c2, const std::vector<int>& cutset);

/// Minimum coloring of a verified (pan, even hole)-free graph.
Coloring color_free_graph(const Graph& g, const CertificateTree& cert);

}  // namespace pef

#endif
