#include "gromov/expander.hpp"

#include <algorithm>
#include <unordered_map>

#include "gromov/ball.hpp"

namespace gromov {

GraphExpander::GraphExpander(std::string name, ExpandFn expand, VertexKey root, DegreeBound degree_sup,
                             bool infinite) {
    auto state = std::make_shared<State>();
    state->name = std::move(name);
    state->expand = std::move(expand);
    state->root = std::move(root);
    state->degree_sup = degree_sup;
    state->infinite = infinite;
    state_ = std::move(state);
}

GraphExpander GraphExpander::from_finite(FiniteColoredGraph graph, std::string name) {
    if (graph.empty())
        throw GraphError("cannot wrap an empty graph");
    auto shared = std::make_shared<const FiniteColoredGraph>(std::move(graph));
    VertexKey root = shared->key(shared->basepoint().value_or(0));
    ExpandFn fn = [shared](const VertexKey& key) {
        const auto v = shared->require(key);
        Expansion e;
        e.color = shared->color(v);
        for (auto w : shared->neighbors(v))
            e.neighbors.push_back(shared->key(w));
        std::sort(e.neighbors.begin(), e.neighbors.end());
        return e;
    };
    GraphExpander g(std::move(name), std::move(fn), std::move(root), shared->max_degree(), false);
    auto state = std::make_shared<State>(*g.state_);
    state->finite = *shared;
    g.state_ = std::move(state);
    return g;
}

Expansion GraphExpander::expand(const VertexKey& key) const { return state_->expand(key); }

GraphExpander GraphExpander::with_root(VertexKey root) const {
    expand(root);
    auto state = std::make_shared<State>(*state_);
    state->root = std::move(root);
    GraphExpander g = *this;
    g.state_ = std::move(state);
    return g;
}

std::optional<std::string> check_expander_window(const GraphExpander& g, const VertexKey& center,
                                                 std::size_t radius) {
    const PointedBall window = ball(g, center, radius);
    std::unordered_map<VertexKey, Expansion> cache;
    auto get = [&](const VertexKey& key) -> const Expansion& {
        auto it = cache.find(key);
        if (it == cache.end())
            it = cache.emplace(key, g.expand(key)).first;
        return it->second;
    };
    for (const auto& key : window.graph.keys()) {
        const auto& e = get(key);
        if (!std::is_sorted(e.neighbors.begin(), e.neighbors.end()))
            return "neighbors of '" + key + "' are not sorted";
        if (std::adjacent_find(e.neighbors.begin(), e.neighbors.end()) != e.neighbors.end())
            return "'" + key + "' lists a neighbor twice";
        if (g.degree_sup() && e.neighbors.size() > *g.degree_sup())
            return "'" + key + "' exceeds the declared degree bound";
        if (get(key).color != g.expand(key).color || get(key).neighbors != g.expand(key).neighbors)
            return "expansion of '" + key + "' is not deterministic";
        for (const auto& w : e.neighbors) {
            if (w == key)
                return "loop at '" + key + "'";
            const auto& back = get(w).neighbors;
            if (!std::binary_search(back.begin(), back.end(), key))
                return "'" + w + "' is a neighbor of '" + key + "' but not conversely";
        }
    }
    return std::nullopt;
}

}  // namespace gromov
