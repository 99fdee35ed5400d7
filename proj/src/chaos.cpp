#include "gromov/chaos.hpp"

#include <algorithm>
#include <set>
#include <unordered_set>

#include "gromov/constructions.hpp"
#include "gromov/enumeration.hpp"
#include "gromov/symmetry.hpp"

namespace gromov {

bool in_W(const PointedBall& disk) {
    std::set<Color> seen;
    for (const auto& c : disk.graph.colors())
        if (!seen.insert(c).second)
            return false;
    return true;
}

bool in_W(const Pointed& a, std::size_t n) { return in_W(ball(a, n)); }

Rational w_stability_radius(const PointedBall& disk) {
    if (!in_W(disk))
        throw NotInW("coloring of the radius-" + std::to_string(disk.radius) + " disk is not injective");
    // The minimum over pairs is attained by neighbors in sorted order: the
    // longest common prefix of a set of strings is maximized by adjacent ones.
    std::vector<Color> colors = disk.graph.colors();
    std::sort(colors.begin(), colors.end(), [](const Color& a, const Color& b) {
        const std::size_t width = std::max(a.size(), b.size());
        return a.prefix(width) < b.prefix(width);
    });
    std::optional<DyadicDistance> least;
    for (std::size_t i = 1; i < colors.size(); ++i) {
        const auto d = color_distance(colors[i - 1], colors[i]);
        if (!least || d < *least)
            least = d;
    }
    return least ? least->to_rational() : Rational(1);
}

Rational w_stability_radius(const Pointed& a, std::size_t n) { return w_stability_radius(ball(a, n)); }

// ---------------------------------------------------------------------------

namespace {

struct Candidates {
    std::vector<VertexKey> keys;
    std::vector<std::size_t> depth;
};

// Breadth-first layers up to `radius`; stops early where a lazily generated
// graph runs out of its construction budget.
Candidates bfs_candidates(const Pointed& source, std::size_t radius) {
    Candidates out;
    std::unordered_set<VertexKey> seen{source.point};
    std::vector<VertexKey> layer{source.point};
    for (std::size_t d = 0; !layer.empty(); ++d) {
        for (const auto& v : layer) {
            out.keys.push_back(v);
            out.depth.push_back(d);
        }
        if (d == radius)
            break;
        std::vector<VertexKey> next;
        try {
            for (const auto& v : layer)
                for (auto& w : source.graph.expand(v).neighbors)
                    if (seen.insert(w).second)
                        next.push_back(std::move(w));
        } catch (const BudgetExhausted&) {
            break;
        }
        layer = std::move(next);
    }
    return out;
}

enum class Probe : char { miss, hit, unknown };

}  // namespace

VSearchResult find_matching_vertex(const Pointed& source, const Pointed& target, std::size_t r, std::size_t m,
                                   std::size_t search_radius, Execution execution) {
    if (search_radius < r)
        throw std::invalid_argument("search radius below the distance bound r");
    if (m == 0)
        throw std::invalid_argument("equivalence depth m must be positive");
    const Rational eps(1, static_cast<std::int64_t>(m));
    const PointedBall target_ball = ball(target, m);

    const Candidates all = bfs_candidates(source, search_radius);
    std::vector<VertexKey> keys;
    for (std::size_t i = 0; i < all.keys.size(); ++i)
        if (all.depth[i] >= r)
            keys.push_back(all.keys[i]);

    std::vector<Probe> probes(keys.size(), Probe::miss);
    std::vector<std::optional<REquivalence>> found(keys.size());
    auto probe = [&](std::size_t i) {
        try {
            found[i] = find_equivalence(ball(source.graph, keys[i], m), target_ball, m, eps);
            probes[i] = found[i] ? Probe::hit : Probe::miss;
        } catch (const BudgetExhausted&) {
            probes[i] = Probe::unknown;
        }
    };

    VSearchResult result;
    result.search_radius = search_radius;
    auto settle = [&](std::size_t i) {
        if (probes[i] == Probe::hit) {
            result.witness = keys[i];
            result.equivalence = std::move(found[i]);
            return true;
        }
        return probes[i] == Probe::unknown;
    };

    constexpr std::size_t block = 64;
    for (std::size_t begin = 0; begin < keys.size(); begin += block) {
        const std::size_t end = std::min(keys.size(), begin + block);
        if (execution == Execution::serial) {
            for (std::size_t i = begin; i < end; ++i) {
                probe(i);
                if (settle(i))
                    return result;
            }
            continue;
        }
        ExceptionSlot errors;
        const auto lo = static_cast<std::int64_t>(begin), hi = static_cast<std::int64_t>(end);
#pragma omp parallel for schedule(dynamic)
        for (std::int64_t i = lo; i < hi; ++i)
            errors.run([&] { probe(static_cast<std::size_t>(i)); });
        errors.rethrow();
        for (std::size_t i = begin; i < end; ++i)
            if (settle(i))
                return result;
    }
    return result;
}

VSearchResult in_V(const ChaosSource& source, std::size_t n, std::size_t r, std::size_t m, std::size_t search_radius,
                   const Color& spine, Execution execution) {
    const PeriodicExpander k = build_K(source.pointed, n, spine, source.degree_override);
    return find_matching_vertex(source.pointed, Pointed::at_root(k.graph), r, m, search_radius, execution);
}

// ---------------------------------------------------------------------------

std::optional<std::size_t> AperiodicityReport::aperiodic_up_to() const {
    std::optional<std::size_t> out;
    for (std::size_t n = 0; n < in_w.size() && in_w[n]; ++n)
        out = n;
    return out;
}

AperiodicityReport aperiodicity_certificate(const Pointed& x, std::size_t depth) {
    AperiodicityReport report;
    report.depth = depth;
    const PointedBall outer = ball(x, depth);
    for (std::size_t n = 0; n <= depth; ++n)
        report.in_w.push_back(in_W(outer.restricted(n)));
    if (auto t = twin_pattern(outer.graph))
        report.twins = std::pair{outer.graph.key(t->first), outer.graph.key(t->second)};
    return report;
}

// ---------------------------------------------------------------------------

PeriodicExpander realize_witness(const ChaosSource& source, const WitnessSpec& spec) {
    if (spec.kind == WitnessSpec::Kind::self) {
        if (!source.periodic)
            throw CertificateError("self witness requested for a graph without declared translations");
        return *source.periodic;
    }
    return build_K(source.pointed, spec.n, spec.spine_color,
                   spec.degree_override ? spec.degree_override : source.degree_override);
}

namespace {

bool tolerance_within(const REquivalence& h, std::size_t depth) {
    return h.radius >= depth && h.tolerance <= Rational(1, static_cast<std::int64_t>(depth));
}

REquivalence identity_equivalence(const Pointed& x, std::size_t n) {
    const PointedBall disk = ball(x, n);
    REquivalence h;
    h.radius = n;
    h.tolerance = Rational(1, static_cast<std::int64_t>(n));
    for (std::size_t i = 0; i < disk.graph.size(); ++i)
        h.mapping.push_back({disk.graph.key(i), disk.graph.key(i), disk.depth[i]});
    return h;
}

}  // namespace

CertificateReport check_almost_chaotic(const ChaosSource& source, const AlmostChaoticCertificate& cert) {
    if (cert.point != source.pointed.point)
        throw CertificateError("certificate is for basepoint '" + cert.point + "', source is pointed at '" +
                               source.pointed.point + "'");
    if (cert.levels.size() != cert.N)
        throw CertificateError("expected " + std::to_string(cert.N) + " levels, found " +
                               std::to_string(cert.levels.size()));
    CertificateReport report;
    report.N = cert.N;
    report.M = cert.M;
    const Pointed& x = source.pointed;

    for (std::size_t li = 0; li < cert.levels.size(); ++li) {
        const CertificateLevel& level = cert.levels[li];
        const std::size_t n = li + 1;
        if (level.n != n)
            throw CertificateError("level " + std::to_string(li) + " has depth " + std::to_string(level.n));
        if (level.cells.size() != cert.M)
            throw CertificateError("level " + std::to_string(n) + " has " + std::to_string(level.cells.size()) +
                                   " cells, expected " + std::to_string(cert.M));
        for (std::size_t ci = 0; ci < level.cells.size(); ++ci)
            if (level.cells[ci].m != ci + 1)
                throw CertificateError("level " + std::to_string(n) + " cell " + std::to_string(ci) + " has depth " +
                                       std::to_string(level.cells[ci].m));

        auto level_fail = [&](std::string why) { report.failures.push_back({n, std::nullopt, std::move(why)}); };
        std::optional<PeriodicExpander> witness;
        try {
            witness = realize_witness(source, level.witness);
            witness->graph = witness->graph.with_root(level.witness_point);
            if (level.shift_radius < n)
                level_fail("translation window smaller than the level depth");
            else if (!shift_automorphism_check(*witness, level.shift_radius, witness->period))
                level_fail("translation is not an automorphism on the window");
        } catch (const CertificateError&) {
            throw;
        } catch (const std::exception& e) {
            level_fail(std::string("witness unavailable: ") + e.what());
            witness.reset();
        }
        if (!witness)
            continue;
        const Pointed y{witness->graph, level.witness_point};

        auto check = [&](const REquivalence& h, const Pointed& from, std::size_t depth) -> std::optional<std::string> {
            if (!tolerance_within(h, depth))
                return "equivalence is weaker than (" + std::to_string(depth) + ", 1/" + std::to_string(depth) + ")";
            if (h.mapping.empty() || h.source_point() != from.point || h.target_point() != y.point)
                return std::string("equivalence is not between the certified basepoints");
            try {
                if (auto v = verify_equivalence(h, from, y); !v)
                    return v.violation;
            } catch (const std::exception& e) {
                return std::string(e.what());
            }
            return std::nullopt;
        };

        if (auto why = check(level.equivalence, x, n))
            level_fail(*why);
        for (const auto& cell : level.cells) {
            try {
                if (auto why = check(cell.equivalence, Pointed{x.graph, cell.vertex}, cell.m))
                    report.failures.push_back({n, cell.m, *why});
            } catch (const std::exception& e) {
                report.failures.push_back({n, cell.m, e.what()});
            }
        }
    }
    return report;
}

GenerationResult generate_almost_chaotic(const ChaosSource& source, std::size_t N, std::size_t M,
                                         const CertifyOptions& options, Execution execution) {
    const Pointed& x = source.pointed;
    AlmostChaoticCertificate cert;
    cert.N = N;
    cert.M = M;
    cert.point = x.point;

    std::vector<PeriodicExpander> witnesses;
    for (std::size_t n = 1; n <= N; ++n) {
        CertificateLevel level;
        level.n = n;
        level.shift_radius = std::max(n, M) + 2;
        if (options.self_witness) {
            level.witness.kind = WitnessSpec::Kind::self;
            witnesses.push_back(realize_witness(source, level.witness));
            level.witness_point = x.point;
            level.equivalence = identity_equivalence(x, n);
        } else {
            level.witness = {WitnessSpec::Kind::k_construction, n, options.spine_color, std::nullopt};
            witnesses.push_back(realize_witness(source, level.witness));
            level.witness_point = witnesses.back().graph.root();
            level.equivalence = copy_zero_inclusion(x, n);
        }
        level.cells.resize(M);
        cert.levels.push_back(std::move(level));
    }

    // every (n, m) cell is an independent bounded search
    const std::size_t cells = N * M;
    std::vector<VSearchResult> results(cells);
    auto solve = [&](std::size_t c) {
        const std::size_t li = c / M, m = c % M + 1;
        const Pointed y{witnesses[li].graph, cert.levels[li].witness_point};
        results[c] = find_matching_vertex(x, y, 0, m, options.search_radius, Execution::serial);
    };
    if (execution == Execution::serial) {
        for (std::size_t c = 0; c < cells; ++c)
            solve(c);
    } else {
        ExceptionSlot errors;
        const auto count = static_cast<std::int64_t>(cells);
#pragma omp parallel for schedule(dynamic)
        for (std::int64_t c = 0; c < count; ++c)
            errors.run([&] { solve(static_cast<std::size_t>(c)); });
        errors.rethrow();
    }

    GenerationResult out;
    for (std::size_t c = 0; c < cells; ++c) {
        const std::size_t li = c / M, m = c % M + 1;
        if (!results[c].found()) {
            out.failed_at = std::pair{li + 1, m};
            return out;
        }
        cert.levels[li].cells[m - 1] = {m, *results[c].witness, std::move(*results[c].equivalence)};
    }
    out.certificate = std::move(cert);
    return out;
}

// ---------------------------------------------------------------------------

bool ChaosVerdict::class_growth() const {
    if (class_counts.size() < 2)
        return false;
    for (std::size_t i = 1; i < class_counts.size(); ++i)
        if (class_counts[i].second <= class_counts[i - 1].second)
            return false;
    return true;
}

bool ChaosVerdict::chaotic() const {
    return infinite && almost_chaotic.certificate && aperiodicity.passes() && class_growth();
}

ChaosVerdict chaotic_verdict(const ChaosSource& source, std::size_t N, std::size_t M, const CertifyOptions& options,
                             Execution execution) {
    ChaosVerdict v;
    v.N = N;
    v.M = M;
    v.infinite = source.pointed.graph.infinite();
    v.almost_chaotic = generate_almost_chaotic(source, N, M, options, execution);
    v.aperiodicity = aperiodicity_certificate(source.pointed, N);

    const std::size_t radius = std::max<std::size_t>(N, 1);
    const Rational eps(1, static_cast<std::int64_t>(radius));
    for (std::size_t w = 1; w <= N + 1; ++w) {
        const PointedBall window = ball(source.pointed, w);
        const ClassPartition classes =
            pointed_class_count(source.pointed.graph, window.graph.keys(), radius, eps, execution);
        v.class_counts.emplace_back(w, classes.count());
    }
    return v;
}

}  // namespace gromov
