#include "gromov/ball.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <unordered_map>

namespace gromov {

PointedBall ball(const GraphExpander& g, const VertexKey& center, std::size_t radius) {
    std::vector<VertexKey> keys{center};
    std::vector<Expansion> expansions{g.expand(center)};
    std::vector<std::size_t> depth{0};
    std::unordered_map<VertexKey, std::size_t> index{{center, 0}};

    for (std::size_t head = 0; head < keys.size(); ++head) {
        if (depth[head] == radius)
            continue;
        // copy: expansions may reallocate while we append
        const auto neighbors = expansions[head].neighbors;
        for (const auto& w : neighbors) {
            if (index.contains(w))
                continue;
            index.emplace(w, keys.size());
            keys.push_back(w);
            expansions.push_back(g.expand(w));
            depth.push_back(depth[head] + 1);
        }
    }

    std::vector<std::vector<std::size_t>> adjacency(keys.size());
    std::vector<Color> colors;
    colors.reserve(keys.size());
    for (std::size_t i = 0; i < keys.size(); ++i) {
        colors.push_back(expansions[i].color);
        for (const auto& w : expansions[i].neighbors) {
            auto it = index.find(w);
            if (it != index.end())
                adjacency[i].push_back(it->second);
        }
    }
    PointedBall out;
    out.graph = FiniteColoredGraph::from_adjacency(std::move(keys), std::move(colors), std::move(adjacency), 0);
    out.radius = radius;
    out.depth = std::move(depth);
    return out;
}

PointedBall PointedBall::restricted(std::size_t r) const {
    if (r >= radius)
        return *this;
    std::vector<std::size_t> keep;
    for (std::size_t v = 0; v < graph.size(); ++v)
        if (depth[v] <= r)
            keep.push_back(v);
    PointedBall out;
    out.graph = graph.induced(keep, 0);
    out.radius = r;
    out.depth.reserve(keep.size());
    for (auto v : keep)
        out.depth.push_back(depth[v]);
    return out;
}

std::vector<VertexKey> sphere(const GraphExpander& g, const VertexKey& center, std::size_t radius) {
    const PointedBall b = ball(g, center, radius);
    std::vector<VertexKey> out;
    for (std::size_t v = 0; v < b.graph.size(); ++v)
        if (b.depth[v] == radius)
            out.push_back(b.graph.key(v));
    return out;
}

std::optional<std::size_t> graph_distance(const GraphExpander& g, const VertexKey& u, const VertexKey& v,
                                          std::size_t horizon) {
    g.expand(v);  // validates the key
    if (u == v) {
        g.expand(u);
        return 0;
    }
    std::unordered_map<VertexKey, std::size_t> seen{{u, 0}};
    std::queue<VertexKey> queue;
    queue.push(u);
    while (!queue.empty()) {
        const VertexKey current = queue.front();
        queue.pop();
        const auto d = seen[current];
        if (d == horizon)
            continue;
        for (const auto& w : g.expand(current).neighbors) {
            if (seen.contains(w))
                continue;
            if (w == v)
                return d + 1;
            seen.emplace(w, d + 1);
            queue.push(w);
        }
    }
    return std::nullopt;
}

std::vector<std::size_t> bfs_depths(const FiniteColoredGraph& g, std::size_t source) {
    std::vector<std::size_t> depth(g.size(), std::numeric_limits<std::size_t>::max());
    std::queue<std::size_t> queue;
    depth.at(source) = 0;
    queue.push(source);
    while (!queue.empty()) {
        auto u = queue.front();
        queue.pop();
        for (auto w : g.neighbors(u))
            if (depth[w] == std::numeric_limits<std::size_t>::max()) {
                depth[w] = depth[u] + 1;
                queue.push(w);
            }
    }
    return depth;
}

std::optional<std::size_t> graph_distance(const FiniteColoredGraph& g, std::size_t u, std::size_t v) {
    const auto d = bfs_depths(g, u).at(v);
    if (d == std::numeric_limits<std::size_t>::max())
        return std::nullopt;
    return d;
}

}  // namespace gromov
