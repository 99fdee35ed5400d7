#include "gromov/equivalence.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "gromov/detail/refinement.hpp"

namespace gromov {

std::optional<VertexKey> REquivalence::image(const VertexKey& from) const {
    for (const auto& m : mapping)
        if (m.from == from)
            return m.to;
    return std::nullopt;
}

namespace {

// Joint labels (depth, color class) for two balls.
std::pair<detail::Labels, detail::Labels> joint_labels(const PointedBall& a, const PointedBall& b,
                                                       const Tolerance& tolerance) {
    std::vector<std::pair<std::size_t, std::string>> values;
    values.reserve(a.graph.size() + b.graph.size());
    for (const auto* ball : {&a, &b})
        for (std::size_t v = 0; v < ball->graph.size(); ++v)
            values.emplace_back(ball->depth[v], tolerance.color_class(ball->graph.color(v)));
    auto ranked = detail::rank_labels(values);
    detail::Labels la(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(a.graph.size()));
    detail::Labels lb(ranked.begin() + static_cast<std::ptrdiff_t>(a.graph.size()), ranked.end());
    return {std::move(la), std::move(lb)};
}

}  // namespace

std::optional<REquivalence> find_equivalence(const PointedBall& a_full, const PointedBall& b_full,
                                             std::size_t radius, const Rational& eps) {
    if (a_full.radius < radius || b_full.radius < radius)
        throw std::invalid_argument("ball radius smaller than requested equivalence radius");
    const Tolerance tolerance = Tolerance::below(eps);
    const PointedBall a = a_full.restricted(radius);
    const PointedBall b = b_full.restricted(radius);
    if (a.graph.size() != b.graph.size() || a.graph.edge_count() != b.graph.edge_count())
        return std::nullopt;

    auto [la, lb] = joint_labels(a, b, tolerance);
    auto iso = detail::find_isomorphism(a.graph.adjacency(), la, b.graph.adjacency(), lb);
    if (!iso)
        return std::nullopt;

    REquivalence h;
    h.radius = radius;
    h.tolerance = eps;
    h.mapping.reserve(a.graph.size());
    for (std::size_t v = 0; v < a.graph.size(); ++v)
        h.mapping.push_back({a.graph.key(v), b.graph.key((*iso)[v]), a.depth[v]});
    return h;
}

std::optional<REquivalence> find_equivalence(const Pointed& a, const Pointed& b, std::size_t radius,
                                             const Rational& eps) {
    return find_equivalence(ball(a, radius), ball(b, radius), radius, eps);
}

EquivalenceCheck verify_equivalence(const REquivalence& h, const Pointed& a, const Pointed& b) {
    auto fail = [](std::string why) { return EquivalenceCheck{false, std::move(why)}; };
    if (!h.tolerance.is_positive())
        return fail("tolerance is not positive");
    const PointedBall da = ball(a, h.radius);
    const PointedBall db = ball(b, h.radius);
    if (h.mapping.empty())
        return fail("empty mapping");
    if (h.mapping.size() != da.graph.size())
        return fail("mapping does not cover the source ball");
    if (da.graph.size() != db.graph.size())
        return fail("balls have different sizes");

    std::vector<std::size_t> forward(da.graph.size(), da.graph.size());
    std::vector<char> hit(db.graph.size(), 0);
    for (const auto& m : h.mapping) {
        const auto u = da.graph.index_of(m.from);
        if (!u)
            return fail("'" + m.from + "' is not in the source ball");
        const auto v = db.graph.index_of(m.to);
        if (!v)
            return fail("'" + m.to + "' is not in the target ball");
        if (forward[*u] != da.graph.size())
            return fail("'" + m.from + "' is mapped twice");
        if (hit[*v])
            return fail("'" + m.to + "' is hit twice");
        forward[*u] = *v;
        hit[*v] = 1;
        if (m.depth != da.depth[*u] || da.depth[*u] != db.depth[*v])
            return fail("depth not preserved at '" + m.from + "'");
        if (!color_distance(da.graph.color(*u), db.graph.color(*v)).less_than(h.tolerance))
            return fail("color bound violated at '" + m.from + "'");
    }
    if (forward[da.center()] != db.center())
        return fail("basepoint not mapped to basepoint");
    if (da.graph.edge_count() != db.graph.edge_count())
        return fail("edge not preserved: edge counts differ");
    for (const auto& [u, v] : da.graph.edges())
        if (!db.graph.adjacent(forward[u], forward[v]))
            return fail("edge not preserved: '" + da.graph.key(u) + "'-'" + da.graph.key(v) + "'");
    return {};
}

REquivalence restrict(const REquivalence& h, std::size_t r) {
    if (r > h.radius)
        throw EquivalenceError("cannot restrict to a larger radius");
    REquivalence out;
    out.radius = r;
    out.tolerance = h.tolerance;
    for (const auto& m : h.mapping)
        if (m.depth <= r)
            out.mapping.push_back(m);
    return out;
}

REquivalence inverse(const REquivalence& h) {
    REquivalence out;
    out.radius = h.radius;
    out.tolerance = h.tolerance;
    out.mapping.reserve(h.mapping.size());
    for (const auto& m : h.mapping)
        out.mapping.push_back({m.to, m.from, m.depth});
    // keep the basepoint first and the rest in depth order
    std::stable_sort(out.mapping.begin(), out.mapping.end(),
                     [](const MappedVertex& x, const MappedVertex& y) { return x.depth < y.depth; });
    return out;
}

REquivalence compose(const REquivalence& f, const REquivalence& g) {
    if (f.mapping.empty() || g.mapping.empty())
        throw EquivalenceError("cannot compose empty equivalences");
    if (f.target_point() != g.source_point())
        throw EquivalenceError("middle basepoints differ: '" + f.target_point() + "' vs '" + g.source_point() + "'");
    const std::size_t r = std::min(f.radius, g.radius);
    std::unordered_map<VertexKey, const MappedVertex*> second;
    for (const auto& m : g.mapping)
        second.emplace(m.from, &m);

    REquivalence out;
    out.radius = r;
    out.tolerance = max(f.tolerance, g.tolerance);
    for (const auto& m : f.mapping) {
        if (m.depth > r)
            continue;
        auto it = second.find(m.to);
        if (it == second.end())
            throw EquivalenceError("'" + m.to + "' is not in the domain of the second equivalence");
        if (it->second->depth != m.depth)
            throw EquivalenceError("depth mismatch at middle vertex '" + m.to + "'");
        out.mapping.push_back({m.from, it->second->to, m.depth});
    }
    return out;
}

std::optional<std::size_t> TruncatedDistance::lower_bound_exponent() const {
    if (kind == Kind::at_most)
        return std::nullopt;
    return exponent;
}

std::string to_string(const TruncatedDistance& d) {
    switch (d.kind) {
    case TruncatedDistance::Kind::exact:
        return "Exact(2^-" + std::to_string(d.exponent) + ")";
    case TruncatedDistance::Kind::at_most:
        return "AtMost(2^-" + std::to_string(d.exponent) + ")";
    case TruncatedDistance::Kind::one:
        break;
    }
    return "One";
}

TruncatedDistance distance_truncated(const Pointed& a, const Pointed& b, std::size_t max_depth) {
    if (max_depth == 0)
        throw std::invalid_argument("truncation depth must be at least 1");
    const PointedBall ba = ball(a, max_depth);
    const PointedBall bb = ball(b, max_depth);
    for (std::size_t n = 1; n <= max_depth; ++n) {
        if (!find_equivalence(ba, bb, n, Rational(1, static_cast<std::int64_t>(n)))) {
            if (n == 1)
                return TruncatedDistance::one();
            return TruncatedDistance::exact(n - 1);
        }
    }
    return TruncatedDistance::at_most(max_depth);
}

namespace {

class EmbeddingSearch {
public:
    EmbeddingSearch(const FiniteColoredGraph& pattern, const FiniteColoredGraph& host, const Tolerance& tolerance,
                    bool induced)
        : pattern_(pattern), host_(host), induced_(induced) {
        pattern_class_.reserve(pattern.size());
        for (std::size_t v = 0; v < pattern.size(); ++v)
            pattern_class_.push_back(tolerance.color_class(pattern.color(v)));
        host_class_.reserve(host.size());
        for (std::size_t v = 0; v < host.size(); ++v)
            host_class_.push_back(tolerance.color_class(host.color(v)));
        order_vertices();
    }

    std::optional<std::vector<std::size_t>> run() {
        image_.assign(pattern_.size(), host_.size());
        used_.assign(host_.size(), 0);
        if (extend(0))
            return image_;
        return std::nullopt;
    }

private:
    // Breadth-first within each component, so every vertex after a
    // component's first has an earlier neighbor to anchor its candidates.
    void order_vertices() {
        std::vector<char> seen(pattern_.size(), 0);
        anchor_.assign(pattern_.size(), pattern_.size());
        for (std::size_t s = 0; s < pattern_.size(); ++s) {
            if (seen[s])
                continue;
            seen[s] = 1;
            std::size_t head = order_.size();
            order_.push_back(s);
            while (head < order_.size()) {
                auto u = order_[head++];
                for (auto w : pattern_.neighbors(u))
                    if (!seen[w]) {
                        seen[w] = 1;
                        anchor_[w] = u;
                        order_.push_back(w);
                    }
            }
        }
    }

    bool compatible(std::size_t u, std::size_t h) const {
        if (used_[h] || pattern_class_[u] != host_class_[h] || host_.degree(h) < pattern_.degree(u))
            return false;
        for (std::size_t w = 0; w < pattern_.size(); ++w) {
            if (image_[w] == host_.size())
                continue;
            const bool pattern_edge = pattern_.adjacent(u, w);
            const bool host_edge = host_.adjacent(h, image_[w]);
            if (pattern_edge && !host_edge)
                return false;
            if (induced_ && !pattern_edge && host_edge)
                return false;
        }
        return true;
    }

    bool extend(std::size_t step) {
        if (step == order_.size())
            return true;
        const auto u = order_[step];
        auto try_candidate = [&](std::size_t h) {
            if (!compatible(u, h))
                return false;
            image_[u] = h;
            used_[h] = 1;
            if (extend(step + 1))
                return true;
            image_[u] = host_.size();
            used_[h] = 0;
            return false;
        };
        if (anchor_[u] != pattern_.size()) {
            for (auto h : host_.neighbors(image_[anchor_[u]]))
                if (try_candidate(h))
                    return true;
            return false;
        }
        for (std::size_t h = 0; h < host_.size(); ++h)
            if (try_candidate(h))
                return true;
        return false;
    }

    const FiniteColoredGraph& pattern_;
    const FiniteColoredGraph& host_;
    bool induced_;
    std::vector<std::string> pattern_class_;
    std::vector<std::string> host_class_;
    std::vector<std::size_t> order_;
    std::vector<std::size_t> anchor_;
    std::vector<std::size_t> image_;
    std::vector<char> used_;
};

}  // namespace

std::optional<std::map<VertexKey, VertexKey>> embed_colored_subgraph(const FiniteColoredGraph& pattern,
                                                                     const FiniteColoredGraph& host,
                                                                     const Tolerance& tolerance, bool induced) {
    if (pattern.size() > host.size())
        return std::nullopt;
    auto image = EmbeddingSearch(pattern, host, tolerance, induced).run();
    if (!image)
        return std::nullopt;
    std::map<VertexKey, VertexKey> out;
    for (std::size_t v = 0; v < pattern.size(); ++v)
        out.emplace(pattern.key(v), host.key((*image)[v]));
    return out;
}

std::optional<std::map<VertexKey, VertexKey>> embed_colored_subgraph(const FiniteColoredGraph& pattern,
                                                                     const Pointed& host, std::size_t window,
                                                                     const Tolerance& tolerance, bool induced) {
    return embed_colored_subgraph(pattern, ball(host, window).graph, tolerance, induced);
}

}  // namespace gromov
