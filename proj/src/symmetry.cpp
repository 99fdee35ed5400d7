#include "gromov/symmetry.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <unordered_set>

#include "gromov/ball.hpp"
#include "gromov/detail/refinement.hpp"
#include "gromov/equivalence.hpp"

namespace gromov {

namespace {

detail::Labels color_labels(const FiniteColoredGraph& g, bool respect_basepoint) {
    std::vector<std::pair<bool, std::string>> values;
    values.reserve(g.size());
    for (std::size_t v = 0; v < g.size(); ++v)
        values.emplace_back(respect_basepoint && g.basepoint() == v, g.color(v).bits());
    return detail::rank_labels(values);
}

std::vector<std::size_t> orbit_of(std::size_t start, const std::vector<Permutation>& generators) {
    std::vector<std::size_t> orbit{start};
    std::unordered_set<std::size_t> seen{start};
    for (std::size_t head = 0; head < orbit.size(); ++head)
        for (const auto& gamma : generators) {
            const auto image = gamma[orbit[head]];
            if (seen.insert(image).second)
                orbit.push_back(image);
        }
    return orbit;
}

}  // namespace

AutomorphismReport automorphisms(const FiniteColoredGraph& g, bool respect_basepoint) {
    AutomorphismReport report;
    report.pointed = respect_basepoint && g.basepoint().has_value();
    const auto& adjacency = g.adjacency();
    const detail::Labels initial = color_labels(g, report.pointed);

    while (true) {
        detail::Labels labels = initial;
        std::size_t fresh = g.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
        for (auto b : report.base)
            labels[b] = fresh++;
        labels = detail::refine(adjacency, std::move(labels));
        if (detail::cell_count(labels) == g.size())
            break;

        // first vertex of the smallest nontrivial cell
        std::vector<std::size_t> cell_size(g.size(), 0);
        for (auto l : labels)
            ++cell_size[l];
        std::size_t b = g.size();
        for (std::size_t v = 0; v < g.size(); ++v)
            if (cell_size[labels[v]] > 1 && (b == g.size() || cell_size[labels[v]] < cell_size[labels[b]]))
                b = v;

        std::vector<Permutation> level;
        std::vector<std::size_t> orbit{b};
        std::vector<std::pair<std::size_t, std::size_t>> forced;
        for (auto p : report.base)
            forced.emplace_back(p, p);
        forced.emplace_back(b, b);
        for (std::size_t w = 0; w < g.size(); ++w) {
            if (w == b || labels[w] != labels[b])
                continue;
            if (std::find(orbit.begin(), orbit.end(), w) != orbit.end())
                continue;
            forced.back() = {b, w};
            auto gamma = detail::find_isomorphism(adjacency, initial, adjacency, initial, forced);
            if (!gamma)
                continue;
            level.push_back(*gamma);
            orbit = orbit_of(b, level);
        }
        report.generators.insert(report.generators.end(), level.begin(), level.end());
        report.base.push_back(b);
        report.orbit_sizes.push_back(orbit.size());
    }

    report.order = 1;
    for (auto s : report.orbit_sizes) {
        if (report.order > UINT64_MAX / s)
            throw std::overflow_error("automorphism group order exceeds 64 bits");
        report.order *= s;
    }
    return report;
}

bool is_aperiodic(const FiniteColoredGraph& g) {
    const auto labels = detail::refine(g.adjacency(), color_labels(g, false));
    if (detail::cell_count(labels) == g.size())
        return true;
    return automorphisms(g, false).order == 1;
}

bool is_automorphism(const FiniteColoredGraph& g, const Permutation& perm, bool respect_basepoint) {
    if (perm.size() != g.size())
        return false;
    std::vector<char> hit(g.size(), 0);
    for (auto v : perm) {
        if (v >= g.size() || hit[v])
            return false;
        hit[v] = 1;
    }
    for (std::size_t v = 0; v < g.size(); ++v) {
        if (g.color(v) != g.color(perm[v]) || g.degree(v) != g.degree(perm[v]))
            return false;
        for (auto w : g.neighbors(v))
            if (!g.adjacent(perm[v], perm[w]))
                return false;
    }
    if (respect_basepoint && g.basepoint() && perm[*g.basepoint()] != *g.basepoint())
        return false;
    return true;
}

namespace {

detail::CanonicalLabeling labeling_of(const FiniteColoredGraph& g) {
    return detail::canonical_labeling(g.adjacency(), color_labels(g, true));
}

}  // namespace

CanonicalKey canonical_form(const FiniteColoredGraph& g) {
    const auto labeling = labeling_of(g);
    CanonicalKey key;
    key.bytes = g.basepoint() ? "P:" : "U:";
    key.bytes += labeling.certificate;
    key.bytes += '|';
    for (auto v : labeling.order) {
        key.bytes += g.color(v).bits();
        key.bytes += ',';
    }
    return key;
}

FiniteColoredGraph canonical_representative(const FiniteColoredGraph& g) {
    const auto labeling = labeling_of(g);
    FiniteColoredGraph relabeled = g.permuted(labeling.order);
    std::vector<VertexKey> keys;
    std::vector<std::vector<std::size_t>> adjacency;
    for (std::size_t v = 0; v < relabeled.size(); ++v) {
        keys.push_back(std::to_string(v));
        adjacency.push_back(relabeled.neighbors(v));
    }
    return FiniteColoredGraph::from_adjacency(std::move(keys), relabeled.colors(), std::move(adjacency),
                                              relabeled.basepoint());
}

ClassPartition pointed_class_count(const GraphExpander& g, const std::vector<VertexKey>& window, std::size_t radius,
                                   const Rational& eps, Execution execution) {
    const std::size_t n = window.size();
    std::vector<PointedBall> balls(n);
    std::vector<std::size_t> rep(n);

    if (execution == Execution::serial) {
        for (std::size_t i = 0; i < n; ++i)
            balls[i] = ball(g, window[i], radius);
        std::vector<std::size_t> reps;
        for (std::size_t i = 0; i < n; ++i) {
            rep[i] = i;
            for (auto r : reps)
                if (find_equivalence(balls[r], balls[i], radius, eps)) {
                    rep[i] = r;
                    break;
                }
            if (rep[i] == i)
                reps.push_back(i);
        }
    } else {
        ExceptionSlot errors;
        const auto count = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(dynamic)
        for (std::int64_t i = 0; i < count; ++i)
            errors.run([&] { balls[i] = ball(g, window[i], radius); });
        errors.rethrow();

        // Tolerance-closeness is an equivalence relation, so the class of j is
        // represented by the least i <= j equivalent to it.
        const std::int64_t pairs = count * (count - 1) / 2;
        std::vector<char> equivalent(static_cast<std::size_t>(pairs), 0);
#pragma omp parallel for schedule(dynamic, 4)
        for (std::int64_t p = 0; p < pairs; ++p)
            errors.run([&] {
                // decode p into (i, j) with i < j, row-major over j
                std::int64_t j = 1;
                while ((j + 1) * j / 2 <= p)
                    ++j;
                const std::int64_t i = p - j * (j - 1) / 2;
                equivalent[p] = find_equivalence(balls[i], balls[j], radius, eps).has_value();
            });
        errors.rethrow();
        for (std::int64_t j = 0; j < count; ++j) {
            rep[j] = static_cast<std::size_t>(j);
            for (std::int64_t i = 0; i < j; ++i)
                if (equivalent[j * (j - 1) / 2 + i]) {
                    rep[j] = static_cast<std::size_t>(i);
                    break;
                }
        }
    }

    ClassPartition out;
    out.class_of.resize(n);
    std::vector<std::size_t> class_index(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        if (rep[i] == i) {
            class_index[i] = out.representatives.size();
            out.representatives.push_back(window[i]);
        }
        out.class_of[i] = class_index[rep[i]];
    }
    return out;
}

bool shift_automorphism_check(const PeriodicExpander& p, std::size_t radius, std::int64_t s) {
    if (p.period <= 0 || s % p.period != 0)
        throw std::invalid_argument("shift " + std::to_string(s) + " is not a multiple of the period " +
                                    std::to_string(p.period));
    const PointedBall window = ball(p.graph, p.basepoint(), radius);
    std::set<VertexKey> images;
    for (const auto& key : window.graph.keys()) {
        const VertexKey image = p.shift(key, s);
        if (!images.insert(image).second)
            return false;
        const Expansion here = p.graph.expand(key);
        const Expansion there = p.graph.expand(image);
        if (here.color != there.color)
            return false;
        std::vector<VertexKey> shifted;
        shifted.reserve(here.neighbors.size());
        for (const auto& w : here.neighbors)
            shifted.push_back(p.shift(w, s));
        std::sort(shifted.begin(), shifted.end());
        if (shifted != there.neighbors)
            return false;
    }
    return true;
}

std::optional<std::pair<std::size_t, std::size_t>> twin_pattern(const FiniteColoredGraph& g) {
    for (std::size_t a = 0; a < g.size(); ++a)
        for (std::size_t b = a + 1; b < g.size(); ++b) {
            if (g.color(a) != g.color(b))
                continue;
            std::vector<std::size_t> na, nb;
            for (auto w : g.neighbors(a))
                if (w != b)
                    na.push_back(w);
            for (auto w : g.neighbors(b))
                if (w != a)
                    nb.push_back(w);
            if (na == nb)
                return std::pair{a, b};
        }
    return std::nullopt;
}

}  // namespace gromov
