#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "gromov/expander.hpp"
#include "gromov/graph.hpp"

namespace gromov {

/// Closed disk D(x, r) as an induced finite subgraph.
///
/// Vertices are in breadth-first order from the center (neighbors visited in
/// sorted key order), so the basepoint is vertex 0 and depths are
/// nondecreasing along the vertex order.
struct PointedBall {
    FiniteColoredGraph graph;
    std::size_t radius = 0;
    std::vector<std::size_t> depth;

    std::size_t center() const { return 0; }
    const VertexKey& center_key() const { return graph.key(0); }

    /// The sub-ball D(x, r) for r <= radius.
    PointedBall restricted(std::size_t r) const;
};

PointedBall ball(const GraphExpander& g, const VertexKey& center, std::size_t radius);
inline PointedBall ball(const Pointed& p, std::size_t radius) { return ball(p.graph, p.point, radius); }

/// Vertices at distance exactly r, in ball order.
std::vector<VertexKey> sphere(const GraphExpander& g, const VertexKey& center, std::size_t radius);

/// Breadth-first path distance; empty when v is farther than `horizon`.
/// Throws UnknownVertex for keys the graph does not contain.
std::optional<std::size_t> graph_distance(const GraphExpander& g, const VertexKey& u, const VertexKey& v,
                                          std::size_t horizon);

/// Exact distance in a finite graph; empty when disconnected.
std::optional<std::size_t> graph_distance(const FiniteColoredGraph& g, std::size_t u, std::size_t v);

/// All-pairs distance row from `source`; unreachable entries are SIZE_MAX.
std::vector<std::size_t> bfs_depths(const FiniteColoredGraph& g, std::size_t source);

}  // namespace gromov
