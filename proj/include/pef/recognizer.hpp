#ifndef PEF_RECOGNIZER_HPP
#define PEF_RECOGNIZER_HPP

#include <variant>

#include "pef/buoy.hpp"
#include "pef/decomposition.hpp"
#include "pef/graph.hpp"

namespace pef {

/// Per-atom certificate: the atom is a clique, or a full odd buoy joined with
/// a (possibly empty) universal clique, carrying the orderings and clique
/// flags that make the freeness check mechanical.
struct AtomCertificate {
    enum class Kind { clique, structured };
    Kind kind = Kind::clique;
    std::vector<int> clique;          // kind == clique
    Buoy buoy;                        // kind == structured (host-graph ids)
    std::vector<int> universal_clique;
    DominationOrders orders;
    CliquePattern pattern;
};

/// Decomposition forest plus per-leaf atom certificates and, for structured
/// leaves, the partition of their outside buoy-neighbors into classes that
/// are universal to one consecutive bag pair each.
struct CertificateTree {
    struct Node {
        std::vector<int> vertices;  // global ids, sorted
        std::vector<int> cutset;
        int left = -1, right = -1;
        bool leaf() const { return left < 0; }
        // leaf payload
        AtomCertificate atom;
        std::vector<std::vector<int>> outside_classes;  // size ell for structured leaves
    };
    std::vector<Node> nodes;
    std::vector<int> roots;   // one per connected component
    std::vector<int> leaves;  // node indices
    size_t payload_entries() const;
};

struct Verdict {
    enum class Kind { free, forbidden };
    Kind kind = Kind::free;
    CertificateTree certificate;  // kind == free
    Witness witness;              // kind == forbidden
    bool free() const { return kind == Kind::free; }
};

struct RecognizeOptions {
    bool parallel = true;  // OpenMP across atoms; the serial path is the reference
};

/// The per-atom test: chordality, odd-hole seed, universal-clique strip, two
/// absorption passes, domination checks, leftover classification, and the
/// final clique-disjunction pan check. Input must be a connected atom.
std::variant<AtomCertificate, Witness> test_atom(const Graph& atom);

/// For a structured maximal atom: either every outside buoy-neighbor is
/// universal to a consecutive bag pair (returning the classes), or some
/// vertex hangs a straddling pan / even hole off the buoy.
std::variant<std::vector<std::vector<int>>, Witness> straddling_pan_check(
    const Graph& g, const std::vector<int>& atom_vertices, const AtomCertificate& cert);

Verdict recognize(const Graph& g, const RecognizeOptions& opts = {});

/// Independent checker written against the certificate conditions only; it
/// shares no code with certificate construction.
bool verify_certificate(const Graph& g, const CertificateTree& cert);
bool verify_certificate(const Graph& g, const CertificateTree& cert, std::string* why);

}  // namespace pef

#endif
