#include "gromov/enumeration.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>
#include <tuple>

#include "gromov/symmetry.hpp"

namespace gromov {

Color pool_color(std::size_t index) {
    if (index == 0)
        return Color();
    // block of length L holds the 2^(L-1) strings ending in '1'
    std::size_t remaining = index - 1;
    std::size_t length = 1;
    while (remaining >= (std::size_t{1} << (length - 1))) {
        remaining -= std::size_t{1} << (length - 1);
        ++length;
    }
    std::string bits;
    for (std::size_t i = length - 1; i-- > 0;)
        bits.push_back(((remaining >> i) & 1U) ? '1' : '0');
    bits.push_back('1');
    return Color::from_bits(bits);
}

std::vector<Color> color_pool(std::size_t count) {
    std::vector<Color> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i)
        out.push_back(pool_color(i));
    return out;
}

std::size_t weight(const FiniteColoredGraph& g) {
    std::size_t w = g.size();
    for (const auto& c : g.colors())
        w += c.size();
    return w;
}

namespace {

FiniteColoredGraph uncolored(std::vector<std::vector<std::size_t>> adjacency) {
    std::vector<VertexKey> keys;
    for (std::size_t v = 0; v < adjacency.size(); ++v)
        keys.push_back(std::to_string(v));
    std::vector<Color> colors(adjacency.size());
    return FiniteColoredGraph::from_adjacency(std::move(keys), std::move(colors), std::move(adjacency));
}

std::mutex shapes_mutex;
std::map<std::size_t, std::vector<FiniteColoredGraph>> shapes_cache;

}  // namespace

const std::vector<FiniteColoredGraph>& connected_shapes(std::size_t vertices) {
    std::lock_guard lock(shapes_mutex);
    if (auto it = shapes_cache.find(vertices); it != shapes_cache.end())
        return it->second;
    if (vertices == 0)
        return shapes_cache[0];
    if (!shapes_cache.contains(1))
        shapes_cache[1] = {uncolored({{}})};

    // Every connected graph has a vertex whose removal leaves it connected,
    // so extending each (k-1)-shape by a vertex with a nonempty neighborhood
    // reaches every k-shape.
    std::size_t k = 2;
    while (shapes_cache.contains(k))
        ++k;
    for (; k <= vertices; ++k) {
        std::map<CanonicalKey, FiniteColoredGraph> found;
        for (const auto& smaller : shapes_cache.at(k - 1)) {
            for (std::size_t subset = 1; subset < (std::size_t{1} << (k - 1)); ++subset) {
                auto adjacency = smaller.adjacency();
                adjacency.emplace_back();
                for (std::size_t v = 0; v + 1 < k; ++v)
                    if ((subset >> v) & 1U) {
                        adjacency[v].push_back(k - 1);
                        adjacency[k - 1].push_back(v);
                    }
                FiniteColoredGraph g = uncolored(std::move(adjacency));
                auto key = canonical_form(g);
                if (!found.contains(key))
                    found.emplace(std::move(key), canonical_representative(g));
            }
        }
        auto& list = shapes_cache[k];
        for (auto& [key, g] : found)
            list.push_back(std::move(g));
    }
    return shapes_cache.at(vertices);
}

namespace {

struct Entry {
    std::size_t weight;
    std::size_t vertices;
    CanonicalKey key;
    FiniteColoredGraph graph;
};

bool shape_admissible(const FiniteColoredGraph& shape, const EnumerationSpec& spec) {
    if (spec.degrees == DegreeConstraint::one_or_three)
        for (std::size_t v = 0; v < shape.size(); ++v)
            if (shape.degree(v) != 1 && shape.degree(v) != 3)
                return false;
    return true;
}

std::vector<Color> candidate_colors(const EnumerationSpec& spec, std::size_t bit_budget) {
    std::vector<Color> out;
    if (spec.pool_size) {
        for (auto& c : color_pool(*spec.pool_size))
            if (c.size() <= bit_budget)
                out.push_back(std::move(c));
        return out;
    }
    for (std::size_t i = 0;; ++i) {
        Color c = pool_color(i);
        if (c.size() > bit_budget)
            break;
        out.push_back(std::move(c));
    }
    return out;
}

std::vector<Entry> expand_shape(const FiniteColoredGraph& shape, const EnumerationSpec& spec) {
    std::vector<Entry> out;
    if (shape.size() > spec.max_weight || !shape_admissible(shape, spec))
        return out;
    const std::size_t budget = spec.max_weight - shape.size();
    const std::vector<Color> colors = candidate_colors(spec, budget);
    const std::size_t k = shape.size();

    std::set<CanonicalKey> seen_colorings;
    std::vector<Color> assignment(k);
    auto visit = [&](auto&& self, std::size_t v, std::size_t remaining) -> void {
        if (v == k) {
            FiniteColoredGraph colored = shape.with_colors(assignment);
            if (!is_aperiodic(colored))
                return;
            if (!seen_colorings.insert(canonical_form(colored)).second)
                return;
            for (std::size_t b = 0; b < k; ++b) {
                if (spec.basepoint_degree_one && colored.degree(b) != 1)
                    continue;
                FiniteColoredGraph rep = canonical_representative(colored.with_basepoint(b));
                out.push_back({weight(rep), k, canonical_form(rep), std::move(rep)});
            }
            return;
        }
        for (const auto& c : colors) {
            if (c.size() > remaining)
                continue;
            assignment[v] = c;
            self(self, v + 1, remaining - c.size());
        }
    };
    visit(visit, 0, budget);
    return out;
}

}  // namespace

std::vector<FiniteColoredGraph> enumerate_aperiodic(const EnumerationSpec& spec, Execution execution) {
    std::vector<const FiniteColoredGraph*> shapes;
    const std::size_t top = std::min(spec.max_vertices, spec.max_weight);
    for (std::size_t k = 1; k <= top; ++k)
        for (const auto& s : connected_shapes(k))
            shapes.push_back(&s);

    std::vector<std::vector<Entry>> per_shape(shapes.size());
    if (execution == Execution::serial) {
        for (std::size_t i = 0; i < shapes.size(); ++i)
            per_shape[i] = expand_shape(*shapes[i], spec);
    } else {
        ExceptionSlot errors;
        const auto count = static_cast<std::int64_t>(shapes.size());
#pragma omp parallel for schedule(dynamic)
        for (std::int64_t i = 0; i < count; ++i)
            errors.run([&] { per_shape[i] = expand_shape(*shapes[i], spec); });
        errors.rethrow();
    }

    std::vector<Entry> all;
    for (auto& list : per_shape)
        for (auto& e : list)
            all.push_back(std::move(e));
    std::sort(all.begin(), all.end(), [](const Entry& a, const Entry& b) {
        return std::tie(a.weight, a.vertices, a.key) < std::tie(b.weight, b.vertices, b.key);
    });
    all.erase(std::unique(all.begin(), all.end(), [](const Entry& a, const Entry& b) { return a.key == b.key; }),
              all.end());

    std::vector<FiniteColoredGraph> out;
    out.reserve(all.size());
    for (auto& e : all)
        out.push_back(std::move(e.graph));
    return out;
}

struct AperiodicStream::Cache {
    std::mutex mutex;
    std::size_t weight = 0;
    std::vector<FiniteColoredGraph> members;
};

AperiodicStream::AperiodicStream(DegreeConstraint degrees, bool basepoint_degree_one, std::size_t weight_budget)
    : degrees_(degrees), basepoint_degree_one_(basepoint_degree_one), budget_(weight_budget),
      cache_(std::make_shared<Cache>()) {}

FiniteColoredGraph AperiodicStream::member(std::size_t index) const {
    std::lock_guard lock(cache_->mutex);
    while (index >= cache_->members.size()) {
        if (cache_->weight >= budget_)
            throw BudgetExhausted("aperiodic stream member " + std::to_string(index) + " needs weight above budget " +
                                  std::to_string(budget_));
        // Members are sorted by weight first, so the list for weight w
        // extends the list for w - 1.
        ++cache_->weight;
        EnumerationSpec spec;
        spec.max_weight = cache_->weight;
        spec.max_vertices = cache_->weight;
        spec.degrees = degrees_;
        spec.basepoint_degree_one = basepoint_degree_one_;
        cache_->members = enumerate_aperiodic(spec);
    }
    return cache_->members[index];
}

}  // namespace gromov
