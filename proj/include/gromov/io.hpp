#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "gromov/chaos.hpp"
#include "gromov/equivalence.hpp"
#include "gromov/graph.hpp"
#include "gromov/symmetry.hpp"

namespace gromov::io {

using nlohmann::json;

/// Malformed input document; the message starts with the JSON pointer of the
/// offending value.
class FormatError : public std::runtime_error {
public:
    FormatError(const std::string& pointer, const std::string& what)
        : std::runtime_error((pointer.empty() ? "/" : pointer) + ": " + what), pointer_(pointer) {}
    const std::string& pointer() const { return pointer_; }

private:
    std::string pointer_;
};

// Graphs -------------------------------------------------------------------

json graph_to_json(const FiniteColoredGraph& g);
FiniteColoredGraph graph_from_json(const json& doc);

/// Stable vertex order, colors as labels, basepoint drawn as a double circle.
std::string export_dot(const FiniteColoredGraph& g, const std::string& name = "G");

// Distances and equivalences -----------------------------------------------

json distance_to_json(const DyadicDistance& d);
json truncated_distance_to_json(const TruncatedDistance& d);

json equivalence_to_json(const REquivalence& h);
REquivalence equivalence_from_json(const json& doc, const std::string& pointer = "");

json automorphisms_to_json(const FiniteColoredGraph& g, const AutomorphismReport& report);
json classes_to_json(const ClassPartition& p, const std::vector<VertexKey>& window);

// Certificates ---------------------------------------------------------------

json certificate_to_json(const AlmostChaoticCertificate& cert);
AlmostChaoticCertificate certificate_from_json(const json& doc);

json certificate_report_to_json(const CertificateReport& report);
json aperiodicity_to_json(const AperiodicityReport& report);
json verdict_to_json(const ChaosVerdict& verdict);

// Graph specifications ---------------------------------------------------------

/// Either an inline finite graph document or a named construction:
///   {"construction": "champernowne", "order": "listed"|"standard"}
///   {"construction": "line", "color": bits}
///   {"construction": "half-line", "color": bits}
///   {"construction": "word-line", "alphabet": k}
///   {"construction": "free-edge", "source": spec}
///   {"construction": "comb"}
///   {"construction": "K", "source": spec, "n": n, "spine_color": bits, "degree_override": d}
///   {"construction": "dense", "budget": w}
///   {"construction": "sparse", "budget": w}
///   {"construction": "H", "n": n, "budget": w}
///   {"construction": "Z", "n": n, "budget": w}
/// Every form accepts an optional "point" overriding the basepoint.
ChaosSource realize(const json& spec, const std::string& pointer = "");

/// Reads a spec argument: a path to a JSON file, a JSON literal, or a bare
/// construction name with default parameters.
json load_spec(const std::string& argument);

/// Default weight budget for the lazily enumerated constructions.
constexpr std::size_t default_budget = 6;

}  // namespace gromov::io
