#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "gromov/expander.hpp"

namespace gromov {

/// A graph carrying a declared Z-action by translations.
///
/// `shift(key, s)` is the image of a vertex under translation by s copies
/// (s a multiple of `period`). Every vertex is a translate of one in
/// `fundamental_domain`, so the number of pointed classes is at most its size.
struct PeriodicExpander {
    GraphExpander graph;
    std::int64_t period = 1;
    std::function<VertexKey(const VertexKey&, std::int64_t)> shift;
    std::vector<VertexKey> fundamental_domain;

    const VertexKey& basepoint() const { return graph.root(); }
};

}  // namespace gromov
