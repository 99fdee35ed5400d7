#include "gromov/graph.hpp"

#include <algorithm>
#include <queue>

namespace gromov {

FiniteColoredGraph::FiniteColoredGraph(std::vector<VertexKey> vertices,
                                       const std::vector<std::pair<VertexKey, VertexKey>>& edges,
                                       const std::map<VertexKey, Color>& coloring,
                                       std::optional<VertexKey> basepoint) {
    keys_ = std::move(vertices);
    index_.reserve(keys_.size());
    for (std::size_t i = 0; i < keys_.size(); ++i)
        if (!index_.emplace(keys_[i], i).second)
            throw GraphError("duplicate vertex '" + keys_[i] + "'");

    colors_.reserve(keys_.size());
    for (const auto& key : keys_) {
        auto it = coloring.find(key);
        if (it == coloring.end())
            throw GraphError("vertex '" + key + "' has no color");
        colors_.push_back(it->second);
    }

    adjacency_.assign(keys_.size(), {});
    for (const auto& [a, b] : edges) {
        if (a == b)
            throw GraphError("loop edge at '" + a + "'");
        auto ia = index_.find(a);
        auto ib = index_.find(b);
        if (ia == index_.end())
            throw GraphError("edge endpoint '" + a + "' is not a vertex");
        if (ib == index_.end())
            throw GraphError("edge endpoint '" + b + "' is not a vertex");
        adjacency_[ia->second].push_back(ib->second);
        adjacency_[ib->second].push_back(ia->second);
    }

    if (basepoint) {
        auto it = index_.find(*basepoint);
        if (it == index_.end())
            throw GraphError("basepoint '" + *basepoint + "' is not a vertex");
        basepoint_ = it->second;
    }
    validate_and_index();
}

FiniteColoredGraph FiniteColoredGraph::from_adjacency(std::vector<VertexKey> keys, std::vector<Color> colors,
                                                      std::vector<std::vector<std::size_t>> adjacency,
                                                      std::optional<std::size_t> basepoint) {
    if (colors.size() != keys.size() || adjacency.size() != keys.size())
        throw GraphError("vertex, color and adjacency counts differ");
    FiniteColoredGraph g;
    g.keys_ = std::move(keys);
    g.colors_ = std::move(colors);
    g.adjacency_ = std::move(adjacency);
    for (std::size_t i = 0; i < g.keys_.size(); ++i) {
        if (!g.index_.emplace(g.keys_[i], i).second)
            throw GraphError("duplicate vertex '" + g.keys_[i] + "'");
        for (auto j : g.adjacency_[i]) {
            if (j >= g.keys_.size())
                throw GraphError("edge endpoint out of range at '" + g.keys_[i] + "'");
            if (j == i)
                throw GraphError("loop edge at '" + g.keys_[i] + "'");
        }
    }
    // adjacency must be symmetric
    for (std::size_t i = 0; i < g.adjacency_.size(); ++i)
        for (auto j : g.adjacency_[i])
            if (std::count(g.adjacency_[j].begin(), g.adjacency_[j].end(), i) !=
                std::count(g.adjacency_[i].begin(), g.adjacency_[i].end(), j))
                throw GraphError("asymmetric adjacency between '" + g.keys_[i] + "' and '" + g.keys_[j] + "'");
    if (basepoint && *basepoint >= g.keys_.size())
        throw GraphError("basepoint index out of range");
    g.basepoint_ = basepoint;
    g.validate_and_index();
    return g;
}

void FiniteColoredGraph::validate_and_index() {
    edge_count_ = 0;
    for (std::size_t v = 0; v < adjacency_.size(); ++v) {
        auto& list = adjacency_[v];
        std::sort(list.begin(), list.end());
        if (std::adjacent_find(list.begin(), list.end()) != list.end())
            throw GraphError("repeated edge at '" + keys_[v] + "'");
        edge_count_ += list.size();
    }
    edge_count_ /= 2;

    if (index_.size() != keys_.size()) {
        index_.clear();
        for (std::size_t i = 0; i < keys_.size(); ++i)
            index_.emplace(keys_[i], i);
    }

    connected_ = true;
    if (keys_.empty())
        return;
    std::vector<char> seen(keys_.size(), 0);
    std::queue<std::size_t> queue;
    queue.push(0);
    seen[0] = 1;
    std::size_t reached = 1;
    while (!queue.empty()) {
        auto u = queue.front();
        queue.pop();
        for (auto w : adjacency_[u])
            if (!seen[w]) {
                seen[w] = 1;
                ++reached;
                queue.push(w);
            }
    }
    connected_ = reached == keys_.size();
}

std::optional<std::size_t> FiniteColoredGraph::index_of(const VertexKey& key) const {
    auto it = index_.find(key);
    if (it == index_.end())
        return std::nullopt;
    return it->second;
}

std::size_t FiniteColoredGraph::require(const VertexKey& key) const {
    auto idx = index_of(key);
    if (!idx)
        throw UnknownVertex(key);
    return *idx;
}

std::size_t FiniteColoredGraph::max_degree() const {
    std::size_t d = 0;
    for (const auto& list : adjacency_)
        d = std::max(d, list.size());
    return d;
}

bool FiniteColoredGraph::adjacent(std::size_t u, std::size_t v) const {
    const auto& list = adjacency_.at(u);
    return std::binary_search(list.begin(), list.end(), v);
}

std::vector<std::pair<std::size_t, std::size_t>> FiniteColoredGraph::edges() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    out.reserve(edge_count_);
    for (std::size_t u = 0; u < adjacency_.size(); ++u)
        for (auto v : adjacency_[u])
            if (u < v)
                out.emplace_back(u, v);
    return out;
}

FiniteColoredGraph FiniteColoredGraph::with_basepoint(std::optional<std::size_t> basepoint) const {
    if (basepoint && *basepoint >= size())
        throw GraphError("basepoint index out of range");
    FiniteColoredGraph g = *this;
    g.basepoint_ = basepoint;
    return g;
}

FiniteColoredGraph FiniteColoredGraph::with_colors(std::vector<Color> colors) const {
    if (colors.size() != size())
        throw GraphError("coloring size does not match vertex count");
    FiniteColoredGraph g = *this;
    g.colors_ = std::move(colors);
    return g;
}

FiniteColoredGraph FiniteColoredGraph::permuted(const std::vector<std::size_t>& order) const {
    if (order.size() != size())
        throw GraphError("permutation size does not match vertex count");
    std::vector<std::size_t> position(size(), size());
    for (std::size_t i = 0; i < order.size(); ++i)
        position.at(order[i]) = i;
    return induced(order, basepoint_ ? std::optional(position[*basepoint_]) : std::nullopt);
}

FiniteColoredGraph FiniteColoredGraph::induced(const std::vector<std::size_t>& vertices,
                                               std::optional<std::size_t> basepoint) const {
    std::vector<std::size_t> position(size(), size());
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        if (position.at(vertices[i]) != size())
            throw GraphError("vertex listed twice in induced subgraph");
        position[vertices[i]] = i;
    }
    std::vector<VertexKey> keys;
    std::vector<Color> colors;
    std::vector<std::vector<std::size_t>> adjacency(vertices.size());
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        keys.push_back(keys_[vertices[i]]);
        colors.push_back(colors_[vertices[i]]);
        for (auto w : adjacency_[vertices[i]])
            if (position[w] != size())
                adjacency[i].push_back(position[w]);
    }
    return from_adjacency(std::move(keys), std::move(colors), std::move(adjacency), basepoint);
}

}  // namespace gromov
