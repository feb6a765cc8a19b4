#ifndef PEF_SERIALIZE_HPP
#define PEF_SERIALIZE_HPP

#include <string>

#include "json.hpp"
#include "pef/arcs.hpp"
#include "pef/chromatic.hpp"
#include "pef/graph.hpp"
#include "pef/recognizer.hpp"

// JSON artifact schemas (all vertex ids 1-based, matching the graph file
// format) plus DOT emitters. Every to_json carries a "type" tag so verify can
// dispatch on arbitrary artifacts.
namespace pef::io {

using nlohmann::json;

std::string graph_digest(const Graph& g);  // FNV-1a over the canonical file

json witness_to_json(const Witness& w);
Witness witness_from_json(const json& j);

json certificate_to_json(const CertificateTree& cert);
CertificateTree certificate_from_json(const json& j);

json coloring_to_json(const Coloring& c);
Coloring coloring_from_json(const json& j);

json tree_decomposition_to_json(const TreeDecomposition& td);
TreeDecomposition tree_decomposition_from_json(const json& j);

json arcs_to_json(const ArcRepresentation& rep);
ArcRepresentation arcs_from_json(const json& j);

json buoy_to_json(const Graph& g, const Buoy& b);

std::string decomposition_to_dot(const CertificateTree& cert);
std::string tree_decomposition_to_dot(const TreeDecomposition& td);

/// Re-checks any typed artifact against the graph. Returns an explanation on
/// failure; unknown/ill-formed artifacts throw std::invalid_argument.
struct ArtifactCheck {
    bool ok = false;
    std::string message;
};
ArtifactCheck verify_artifact(const Graph& g, const json& artifact);

}  // namespace pef::io

#endif
