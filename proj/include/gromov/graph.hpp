#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "gromov/color.hpp"

namespace gromov {

/// Printable vertex identifier. Constructions use structured keys such as
/// "s-3" (spine vertex -3) or "c2.5" (copy 2, local vertex 5).
using VertexKey = std::string;

/// Invalid graph data: loops, dangling edges, missing colors and the like.
class GraphError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class UnknownVertex : public GraphError {
public:
    explicit UnknownVertex(const VertexKey& key) : GraphError("unknown vertex '" + key + "'") {}
};

/// Finite simple graph with a total vertex coloring and optional basepoint.
///
/// Vertices are addressed by dense indices 0..size()-1 in insertion order;
/// keys are kept for reporting. Adjacency lists are sorted by index.
class FiniteColoredGraph {
public:
    FiniteColoredGraph() = default;

    /// Validating constructor. Throws GraphError on a loop, a repeated edge,
    /// an edge endpoint that is not a vertex, a vertex without color, a
    /// repeated vertex key, or a basepoint that is not a vertex.
    FiniteColoredGraph(std::vector<VertexKey> vertices,
                       const std::vector<std::pair<VertexKey, VertexKey>>& edges,
                       const std::map<VertexKey, Color>& coloring,
                       std::optional<VertexKey> basepoint = std::nullopt);

    /// Index-based constructor with the same validation.
    static FiniteColoredGraph from_adjacency(std::vector<VertexKey> keys, std::vector<Color> colors,
                                             std::vector<std::vector<std::size_t>> adjacency,
                                             std::optional<std::size_t> basepoint = std::nullopt);

    std::size_t size() const { return keys_.size(); }
    bool empty() const { return keys_.empty(); }

    const VertexKey& key(std::size_t v) const { return keys_.at(v); }
    const std::vector<VertexKey>& keys() const { return keys_; }
    std::optional<std::size_t> index_of(const VertexKey& key) const;
    /// Like index_of but throws UnknownVertex.
    std::size_t require(const VertexKey& key) const;

    const std::vector<std::size_t>& neighbors(std::size_t v) const { return adjacency_.at(v); }
    const std::vector<std::vector<std::size_t>>& adjacency() const { return adjacency_; }
    std::size_t degree(std::size_t v) const { return adjacency_.at(v).size(); }
    std::size_t max_degree() const;
    bool adjacent(std::size_t u, std::size_t v) const;

    const Color& color(std::size_t v) const { return colors_.at(v); }
    const std::vector<Color>& colors() const { return colors_; }

    std::optional<std::size_t> basepoint() const { return basepoint_; }
    bool connected() const { return connected_; }

    std::size_t edge_count() const { return edge_count_; }
    /// Edges as (u, v) with u < v, sorted.
    std::vector<std::pair<std::size_t, std::size_t>> edges() const;

    FiniteColoredGraph with_basepoint(std::optional<std::size_t> basepoint) const;
    FiniteColoredGraph with_colors(std::vector<Color> colors) const;
    /// Same graph with vertices reordered: new vertex i is old vertex order[i].
    FiniteColoredGraph permuted(const std::vector<std::size_t>& order) const;
    /// Induced subgraph on `vertices` (kept in the given order).
    FiniteColoredGraph induced(const std::vector<std::size_t>& vertices,
                               std::optional<std::size_t> basepoint = std::nullopt) const;

private:
    void validate_and_index();

    std::vector<VertexKey> keys_;
    std::vector<Color> colors_;
    std::vector<std::vector<std::size_t>> adjacency_;
    std::optional<std::size_t> basepoint_;
    std::unordered_map<VertexKey, std::size_t> index_;
    std::size_t edge_count_ = 0;
    bool connected_ = true;
};

inline FiniteColoredGraph make_finite_graph(std::vector<VertexKey> vertices,
                                            const std::vector<std::pair<VertexKey, VertexKey>>& edges,
                                            const std::map<VertexKey, Color>& coloring,
                                            std::optional<VertexKey> basepoint = std::nullopt) {
    return FiniteColoredGraph(std::move(vertices), edges, coloring, std::move(basepoint));
}

}  // namespace gromov
