#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gromov/graph.hpp"

namespace gromov {

/// One step of a lazily described graph: sorted neighbor keys and the color.
struct Expansion {
    std::vector<VertexKey> neighbors;
    Color color;
};

/// Upper bound on vertex degrees; empty means unbounded (every vertex still
/// has finite degree).
using DegreeBound = std::optional<std::size_t>;

/// Deterministic lazy description of a connected, possibly infinite colored
/// graph. Copies are cheap and share the underlying expansion function,
/// which must be pure. Unknown keys make `expand` throw UnknownVertex.
class GraphExpander {
public:
    using ExpandFn = std::function<Expansion(const VertexKey&)>;

    GraphExpander(std::string name, ExpandFn expand, VertexKey root, DegreeBound degree_sup, bool infinite);

    /// Wraps a finite graph; the root is its basepoint, or its first vertex.
    static GraphExpander from_finite(FiniteColoredGraph graph, std::string name = "finite");

    Expansion expand(const VertexKey& key) const;

    const std::string& name() const { return state_->name; }
    const VertexKey& root() const { return state_->root; }
    DegreeBound degree_sup() const { return state_->degree_sup; }
    bool infinite() const { return state_->infinite; }

    /// Set for expanders created by from_finite.
    const FiniteColoredGraph* finite_graph() const { return state_->finite ? &*state_->finite : nullptr; }

    GraphExpander with_root(VertexKey root) const;

private:
    struct State {
        std::string name;
        ExpandFn expand;
        VertexKey root;
        DegreeBound degree_sup;
        bool infinite = false;
        std::optional<FiniteColoredGraph> finite;
    };
    std::shared_ptr<const State> state_;
};

/// A graph source together with a basepoint.
struct Pointed {
    GraphExpander graph;
    VertexKey point;

    static Pointed at_root(const GraphExpander& g) { return {g, g.root()}; }
};

/// Checks expander symmetry (u in N(v) <=> v in N(u)), sortedness, and the
/// declared degree bound on the radius-`radius` window around `center`.
/// Returns a description of the first violation, or empty.
std::optional<std::string> check_expander_window(const GraphExpander& g, const VertexKey& center, std::size_t radius);

}  // namespace gromov
