#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <stdexcept>
#include <vector>

#include "gromov/color.hpp"
#include "gromov/execution.hpp"
#include "gromov/graph.hpp"

namespace gromov {

/// i-th canonical bit string, ordered by length then lexicographically:
/// "", "1", "01", "11", "001", "011", "101", "111", ...
Color pool_color(std::size_t index);

/// The first `count` canonical bit strings.
std::vector<Color> color_pool(std::size_t count);

enum class DegreeConstraint { none, one_or_three };

/// Bounds for enumerating finite pointed aperiodic colored graphs.
///
/// Weight is vertex count plus the total number of canonical color bits.
/// Without a pool size, every canonical color that fits the weight is used.
struct EnumerationSpec {
    std::size_t max_weight = 0;
    std::size_t max_vertices = 0;
    std::optional<std::size_t> pool_size;
    DegreeConstraint degrees = DegreeConstraint::none;
    bool basepoint_degree_one = false;
};

std::size_t weight(const FiniteColoredGraph& g);

/// Connected uncolored graphs on `vertices` vertices, one per isomorphism
/// class, in canonical order. Results are cached.
const std::vector<FiniteColoredGraph>& connected_shapes(std::size_t vertices);

/// All connected pointed colored graphs within the bounds whose unpointed
/// colored automorphism group is trivial, one canonical representative per
/// pointed isomorphism class, sorted by (weight, vertex count, canonical key).
std::vector<FiniteColoredGraph> enumerate_aperiodic(const EnumerationSpec& spec,
                                                    Execution execution = Execution::parallel);

class BudgetExhausted : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Lazily grown enumeration of every finite pointed aperiodic graph with
/// colors in the canonical pool, ordered by weight. Thread-safe; growth is
/// monotone and transparent to readers.
class AperiodicStream {
public:
    AperiodicStream(DegreeConstraint degrees, bool basepoint_degree_one, std::size_t weight_budget);

    /// Throws BudgetExhausted if reaching `index` needs a weight above budget.
    FiniteColoredGraph member(std::size_t index) const;

    std::size_t weight_budget() const { return budget_; }
    DegreeConstraint degrees() const { return degrees_; }
    bool basepoint_degree_one() const { return basepoint_degree_one_; }

private:
    struct Cache;

    DegreeConstraint degrees_;
    bool basepoint_degree_one_;
    std::size_t budget_;
    std::shared_ptr<Cache> cache_;
};

}  // namespace gromov
