#include "gromov/constructions.hpp"

#include <algorithm>
#include <memory>
#include <mutex>
#include <queue>
#include <set>
#include <stdexcept>
#include <unordered_set>

#include "gromov/detail/keys.hpp"

namespace gromov {

using detail::copy_key;
using detail::parse_copy_key;
using detail::parse_integer;
using detail::parse_prefixed;
using detail::prefixed;

namespace {

Expansion sorted(Expansion e) {
    std::sort(e.neighbors.begin(), e.neighbors.end());
    return e;
}

}  // namespace

// ---------------------------------------------------------------------------

std::optional<ChampernowneOrder> parse_champernowne_order(const std::string& name) {
    if (name == "listed" || name == "paper")
        return ChampernowneOrder::listed;
    if (name == "standard")
        return ChampernowneOrder::standard;
    return std::nullopt;
}

Color champernowne_color(std::int64_t n, ChampernowneOrder order) {
    if (n <= 0)
        return Color();
    auto position = static_cast<std::uint64_t>(n - 1);
    for (unsigned length = 1; length < 63; ++length) {
        std::uint64_t words = std::uint64_t{1} << length;
        if (order == ChampernowneOrder::listed && length == 2)
            words = 3;  // 00, 01, 11
        const std::uint64_t block = words * length;
        if (position >= block) {
            position -= block;
            continue;
        }
        std::uint64_t word = position / length;
        const unsigned offset = static_cast<unsigned>(position % length);
        if (order == ChampernowneOrder::listed && length == 2 && word == 2)
            word = 3;
        const bool bit = (word >> (length - 1 - offset)) & 1U;
        return bit ? Color::from_bits("1") : Color();
    }
    throw std::overflow_error("champernowne position out of range");
}

GraphExpander integer_line(std::string name, std::function<Color(std::int64_t)> coloring) {
    auto fn = [coloring = std::move(coloring)](const VertexKey& key) {
        auto z = parse_integer(key);
        if (!z)
            throw UnknownVertex(key);
        return sorted({{std::to_string(*z - 1), std::to_string(*z + 1)}, coloring(*z)});
    };
    return GraphExpander(std::move(name), std::move(fn), "0", 2, true);
}

GraphExpander constant_line(const Color& color) {
    return integer_line("line", [color](std::int64_t) { return color; });
}

GraphExpander champernowne_line(ChampernowneOrder order) {
    return integer_line(order == ChampernowneOrder::listed ? "champernowne-paper" : "champernowne",
                        [order](std::int64_t z) { return champernowne_color(z, order); });
}

GraphExpander half_line(const Color& color) {
    auto fn = [color](const VertexKey& key) {
        auto z = parse_integer(key);
        if (!z || *z < 0)
            throw UnknownVertex(key);
        Expansion e;
        e.color = color;
        if (*z > 0)
            e.neighbors.push_back(std::to_string(*z - 1));
        e.neighbors.push_back(std::to_string(*z + 1));
        return sorted(std::move(e));
    };
    return GraphExpander("half-line", std::move(fn), "0", 2, true);
}

// ---------------------------------------------------------------------------

namespace {

class WordSequence {
public:
    explicit WordSequence(std::size_t alphabet) : alphabet_(alphabet) {}

    std::size_t letter(std::size_t position) {
        std::lock_guard lock(mutex_);
        while (symbols_.size() < position)
            append_next_key();
        return symbols_[position - 1];
    }

private:
    void append_next_key() {
        const std::size_t key = next_key_++;
        std::vector<std::vector<std::size_t>> words;
        for (std::size_t top = 0; top < alphabet_ && top < key; ++top) {
            const std::size_t length = key - top;
            double estimate = 1;
            for (std::size_t i = 0; i < length; ++i)
                estimate *= static_cast<double>(top + 1);
            if (estimate > 5e6)
                throw std::length_error("word line position too large to unfold");
            std::vector<std::size_t> word(length, 0);
            while (true) {
                if (std::find(word.begin(), word.end(), top) != word.end())
                    words.push_back(word);
                std::size_t i = length;
                while (i > 0 && word[i - 1] == top) {
                    word[i - 1] = 0;
                    --i;
                }
                if (i == 0)
                    break;
                ++word[i - 1];
            }
        }
        std::sort(words.begin(), words.end());
        for (const auto& w : words)
            symbols_.insert(symbols_.end(), w.begin(), w.end());
    }

    std::size_t alphabet_;
    std::size_t next_key_ = 1;
    std::vector<std::size_t> symbols_;
    std::mutex mutex_;
};

std::shared_ptr<WordSequence> word_sequence(std::size_t alphabet) {
    static std::mutex mutex;
    static std::map<std::size_t, std::shared_ptr<WordSequence>> cache;
    std::lock_guard lock(mutex);
    auto& slot = cache[alphabet];
    if (!slot)
        slot = std::make_shared<WordSequence>(alphabet);
    return slot;
}

}  // namespace

std::size_t word_line_letter(std::size_t alphabet_size, std::int64_t n) {
    if (alphabet_size < 2)
        throw std::invalid_argument("word line needs at least two letters");
    if (n <= 0)
        return 0;
    return word_sequence(alphabet_size)->letter(static_cast<std::size_t>(n));
}

GraphExpander word_line(std::size_t alphabet_size) {
    if (alphabet_size < 2)
        throw std::invalid_argument("word line needs at least two letters");
    auto sequence = word_sequence(alphabet_size);
    auto alphabet = color_pool(alphabet_size);
    return integer_line("word-line", [sequence, alphabet](std::int64_t z) {
        if (z <= 0)
            return alphabet[0];
        return alphabet[sequence->letter(static_cast<std::size_t>(z))];
    });
}

GraphExpander free_edge_lift(const GraphExpander& line) {
    const Color one = Color::from_bits("1");
    auto fn = [line, one](const VertexKey& key) {
        if (auto z = parse_prefixed(key, "p")) {
            const Expansion spine = line.expand(std::to_string(*z));
            if (spine.color != one)
                throw UnknownVertex(key);
            return Expansion{{std::to_string(*z)}, Color()};
        }
        Expansion e = line.expand(key);
        if (e.color != one && !e.color.is_zero())
            throw GraphError("free edge lift needs colors \"\" or \"1\"; '" + key + "' has " + e.color.bits());
        if (e.color == one)
            e.neighbors.push_back("p" + key);
        e.color = Color();
        return sorted(std::move(e));
    };
    return GraphExpander("free-edge-lift", std::move(fn), line.root(), 3, true);
}

PeriodicExpander translation_periodic(const GraphExpander& line) {
    auto shift = [](const VertexKey& key, std::int64_t s) -> VertexKey {
        if (auto z = parse_integer(key))
            return std::to_string(*z + s);
        if (auto z = parse_prefixed(key, "p"))
            return prefixed("p", *z + s);
        throw UnknownVertex(key);
    };
    return {line, 1, shift, {line.root()}};
}

Color spine_color(std::int64_t z) {
    std::string bits(1, z < 0 ? '1' : '0');
    auto magnitude = z < 0 ? -static_cast<std::uint64_t>(z) : static_cast<std::uint64_t>(z);
    for (; magnitude != 0; magnitude >>= 1)
        bits.push_back((magnitude & 1U) ? '1' : '0');
    bits.push_back('1');
    return Color::from_bits(bits);
}

std::size_t zigzag_index(std::int64_t z) {
    return z >= 0 ? 2 * static_cast<std::size_t>(z) : 2 * static_cast<std::size_t>(-(z + 1)) + 1;
}

// ---------------------------------------------------------------------------

std::size_t choose_attachment(const PointedBall& disk, std::size_t degree_sup) {
    std::optional<std::size_t> best;
    for (std::size_t v = 0; v < disk.graph.size(); ++v) {
        if (disk.depth[v] != disk.radius || disk.graph.degree(v) >= degree_sup)
            continue;
        if (!best || disk.graph.key(v) < disk.graph.key(*best))
            best = v;
    }
    if (!best)
        throw GraphError("no sphere vertex of radius " + std::to_string(disk.radius) +
                         " has disk degree below " + std::to_string(degree_sup));
    return *best;
}

PeriodicExpander build_K(const Pointed& source, std::size_t n, const Color& spine, std::optional<std::size_t> degree_override) {
    const DegreeBound declared = degree_override ? degree_override : source.graph.degree_sup();
    if (!declared)
        throw GraphError("build_K needs a finite degree bound for '" + source.graph.name() + "'");
    auto disk = std::make_shared<const PointedBall>(ball(source, n));
    const std::size_t attach = choose_attachment(*disk, *declared);

    std::size_t degree_sup = 3;
    for (std::size_t i = 0; i < disk->graph.size(); ++i)
        degree_sup = std::max(degree_sup, disk->graph.degree(i) + (i == attach ? 1 : 0));

    auto fn = [disk, attach, spine](const VertexKey& key) {
        if (auto z = parse_prefixed(key, "s"))
            return sorted({{prefixed("s", *z - 1), prefixed("s", *z + 1), copy_key("c", *z, attach)}, spine});
        auto copy = parse_copy_key(key, "c");
        if (!copy || copy->second >= disk->graph.size())
            throw UnknownVertex(key);
        const auto [z, i] = *copy;
        Expansion e;
        e.color = disk->graph.color(i);
        for (auto j : disk->graph.neighbors(i))
            e.neighbors.push_back(copy_key("c", z, j));
        if (i == attach)
            e.neighbors.push_back(prefixed("s", z));
        return sorted(std::move(e));
    };

    PeriodicExpander p{GraphExpander("K", std::move(fn), copy_key("c", 0, 0), degree_sup, true), 1, {}, {}};
    p.shift = [](const VertexKey& key, std::int64_t s) -> VertexKey {
        if (auto z = parse_prefixed(key, "s"))
            return prefixed("s", *z + s);
        if (auto copy = parse_copy_key(key, "c"))
            return copy_key("c", copy->first + s, copy->second);
        throw UnknownVertex(key);
    };
    p.fundamental_domain.push_back("s0");
    for (std::size_t i = 0; i < disk->graph.size(); ++i)
        p.fundamental_domain.push_back(copy_key("c", 0, i));
    return p;
}

REquivalence copy_zero_inclusion(const Pointed& source, std::size_t n) {
    const PointedBall disk = ball(source, n);
    REquivalence h;
    h.radius = n;
    h.tolerance = Rational(1, static_cast<std::int64_t>(std::max<std::size_t>(n, 1)));
    for (std::size_t i = 0; i < disk.graph.size(); ++i)
        h.mapping.push_back({disk.graph.key(i), copy_key("c", 0, i), disk.depth[i]});
    return h;
}

PeriodicExpander comb() {
    PeriodicExpander p = build_K(Pointed::at_root(constant_line(Color())), 0, Color());
    p.graph = GraphExpander("comb", [g = p.graph](const VertexKey& k) { return g.expand(k); }, p.graph.root(),
                            p.graph.degree_sup(), true);
    return p;
}

// ---------------------------------------------------------------------------

GraphExpander attach_stream_to_spine(std::string name, const AperiodicStream& stream, DegreeBound degree_sup) {
    auto fn = [stream](const VertexKey& key) {
        if (auto z = parse_prefixed(key, "s")) {
            const FiniteColoredGraph member = stream.member(zigzag_index(*z));
            return sorted({{prefixed("s", *z - 1), prefixed("s", *z + 1), copy_key("a", *z, *member.basepoint())},
                           spine_color(*z)});
        }
        auto copy = parse_copy_key(key, "a");
        if (!copy)
            throw UnknownVertex(key);
        const auto [z, j] = *copy;
        const FiniteColoredGraph member = stream.member(zigzag_index(z));
        if (j >= member.size())
            throw UnknownVertex(key);
        Expansion e;
        e.color = member.color(j);
        for (auto w : member.neighbors(j))
            e.neighbors.push_back(copy_key("a", z, w));
        if (j == *member.basepoint())
            e.neighbors.push_back(prefixed("s", z));
        return sorted(std::move(e));
    };
    return GraphExpander(std::move(name), std::move(fn), "s0", degree_sup, true);
}

GraphExpander universal_dense_graph(std::size_t weight_budget) {
    return attach_stream_to_spine("dense", AperiodicStream(DegreeConstraint::none, false, weight_budget),
                                  std::nullopt);
}

GraphExpander sparse_universal_graph(std::size_t weight_budget) {
    return attach_stream_to_spine("sparse", AperiodicStream(DegreeConstraint::one_or_three, true, weight_budget),
                                  3);
}

FiniteColoredGraph build_H(std::size_t n, std::size_t weight_budget) {
    if (n == 0)
        throw std::invalid_argument("H_n needs n >= 1");
    const GraphExpander x = sparse_universal_graph(weight_budget);
    const auto span = static_cast<std::int64_t>(n);
    std::vector<VertexKey> keys;
    std::unordered_set<VertexKey> inside;
    for (std::int64_t z = -span; z <= span; ++z) {
        keys.push_back(prefixed("s", z));
        inside.insert(keys.back());
    }
    for (std::int64_t z = -span + 1; z < span; ++z) {
        const std::string member_prefix = "a" + std::to_string(z) + ".";
        std::vector<VertexKey> frontier;
        for (const auto& w : x.expand(prefixed("s", z)).neighbors)
            if (w.starts_with(member_prefix))
                frontier.push_back(w);
        while (!frontier.empty()) {
            VertexKey v = frontier.back();
            frontier.pop_back();
            if (!inside.insert(v).second)
                continue;
            keys.push_back(v);
            for (const auto& w : x.expand(v).neighbors)
                if (w.starts_with(member_prefix) && !inside.contains(w))
                    frontier.push_back(w);
        }
    }
    std::vector<std::pair<VertexKey, VertexKey>> edges;
    std::map<VertexKey, Color> coloring;
    for (const auto& v : keys) {
        const Expansion e = x.expand(v);
        coloring.emplace(v, e.color);
        for (const auto& w : e.neighbors)
            if (v < w && inside.contains(w))
                edges.emplace_back(v, w);
    }
    return FiniteColoredGraph(std::move(keys), edges, coloring, prefixed("s", span));
}

PeriodicExpander build_Z(std::size_t n, std::size_t weight_budget) {
    auto h = std::make_shared<const FiniteColoredGraph>(build_H(n, weight_budget));
    const std::size_t anchor = *h->basepoint();
    const std::size_t origin = h->require("s0");

    std::size_t degree_sup = 2 + h->degree(anchor);
    for (std::size_t i = 0; i < h->size(); ++i)
        if (i != anchor)
            degree_sup = std::max(degree_sup, h->degree(i));

    auto fn = [h, anchor](const VertexKey& key) {
        if (auto z = parse_prefixed(key, "s")) {
            Expansion e{{prefixed("s", *z - 1), prefixed("s", *z + 1)}, h->color(anchor)};
            for (auto j : h->neighbors(anchor))
                e.neighbors.push_back(copy_key("h", *z, j));
            return sorted(std::move(e));
        }
        auto copy = parse_copy_key(key, "h");
        if (!copy || copy->second >= h->size() || copy->second == anchor)
            throw UnknownVertex(key);
        const auto [z, i] = *copy;
        Expansion e;
        e.color = h->color(i);
        for (auto j : h->neighbors(i))
            e.neighbors.push_back(j == anchor ? prefixed("s", z) : copy_key("h", z, j));
        return sorted(std::move(e));
    };

    PeriodicExpander p{GraphExpander("Z", std::move(fn), copy_key("h", 0, origin), degree_sup, true), 1, {}, {}};
    p.shift = [](const VertexKey& key, std::int64_t s) -> VertexKey {
        if (auto z = parse_prefixed(key, "s"))
            return prefixed("s", *z + s);
        if (auto copy = parse_copy_key(key, "h"))
            return copy_key("h", copy->first + s, copy->second);
        throw UnknownVertex(key);
    };
    p.fundamental_domain.push_back("s0");
    for (std::size_t i = 0; i < h->size(); ++i)
        if (i != anchor)
            p.fundamental_domain.push_back(copy_key("h", 0, i));
    return p;
}

std::map<std::size_t, std::size_t> degree_profile(const FiniteColoredGraph& g) {
    std::map<std::size_t, std::size_t> out;
    for (std::size_t v = 0; v < g.size(); ++v)
        ++out[g.degree(v)];
    return out;
}

// ---------------------------------------------------------------------------

PointedBall injective_perturbation(const PointedBall& disk, const Rational& eps) {
    std::size_t width = truncation_length(eps);
    for (const auto& c : disk.graph.colors())
        width = std::max(width, c.size());
    std::vector<Color> colors;
    colors.reserve(disk.graph.size());
    for (std::size_t v = 0; v < disk.graph.size(); ++v) {
        std::string bits = disk.graph.color(v).prefix(width);
        // tag: v + 1 in binary, least significant bit first; ends in 1
        for (std::size_t tag = v + 1; tag != 0; tag >>= 1)
            bits.push_back((tag & 1U) ? '1' : '0');
        colors.push_back(Color::from_bits(bits));
    }
    PointedBall out = disk;
    out.graph = disk.graph.with_colors(std::move(colors));
    return out;
}

}  // namespace gromov
