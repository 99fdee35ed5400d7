// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>

#include "gromov/chaos.hpp"
#include "gromov/cli.hpp"
#include "gromov/constructions.hpp"
#include "gromov/enumeration.hpp"
#include "gromov/io.hpp"
#include "gromov/symmetry.hpp"
#include "oracles.hpp"

using namespace gromov;

namespace {

// Pinned limits.
constexpr double champernowne_seconds = 1.0;
constexpr double ultrametric_seconds = 60.0;
constexpr double suite_seconds = 300.0;
constexpr int ultrametric_triples = 200;
constexpr int ultrametric_max_vertices = 7;
constexpr std::size_t ultrametric_depth = 6;
constexpr int composition_instances = 100;
constexpr int k_samples = 20;
constexpr int k_equivalent_pairs = 10;
constexpr int w_balls = 50;
constexpr std::size_t enumeration_max_vertices = 6;
constexpr std::size_t enumeration_max_weight = 8;
constexpr std::size_t enumeration_sample = 30;
constexpr std::size_t v_search_radius = 10;
constexpr std::size_t certificate_depth = 2;
constexpr std::size_t dense_search_radius = 200;

const std::string paper_prefix = "01000111000001";
const std::vector<std::string> palette = {"", "1", "01", "11", "001"};

// Collects failures; the detail of the first few is printed.
struct Tally {
    int checks = 0;
    std::vector<std::string> failures;

    void expect(bool ok, const std::string& what) {
        ++checks;
        if (!ok)
            failures.push_back(what);
    }
};

Pointed pointed(const oracle::Plain& p) { return Pointed::at_root(GraphExpander::from_finite(oracle::to_graph(p))); }

// A relabeled copy with a few colors nudged in late bits, so distances vary.
oracle::Plain nudged(std::mt19937_64& rng, const oracle::Plain& a) {
    oracle::Plain b = oracle::shuffled(rng, a);
    for (auto& bits : b.bits)
        if (std::bernoulli_distribution(0.25)(rng))
            bits = Color::from_bits(bits + std::string(std::uniform_int_distribution<int>(0, 4)(rng), '0') + "1").bits();
    return b;
}

std::size_t closeness(const TruncatedDistance& d) { return d.upper_bound_exponent(); }

// 1 -----------------------------------------------------------------------
void champernowne(Tally& t) {
    std::ostringstream out, err;
    const int code = cli::run({"color", "champernowne", "-n", "1", "--to", "14", "--order", "paper"}, out, err);
    t.expect(code == 0, "exit code " + std::to_string(code));
    t.expect(out.str() == paper_prefix + "\n", "printed '" + out.str() + "'");
    t.expect(oracle::champernowne_prefix(14, true) == paper_prefix, "oracle prefix disagrees with the golden value");
}

// 2 -----------------------------------------------------------------------
void ultrametric(Tally& t) {
    std::mt19937_64 rng(1001);
    for (int trial = 0; trial < ultrametric_triples; ++trial) {
        const int n = std::uniform_int_distribution<int>(1, ultrametric_max_vertices)(rng);
        const auto a = oracle::random_graph(rng, n, palette);
        const auto b = std::bernoulli_distribution(0.8)(rng) ? nudged(rng, a) : oracle::random_graph(rng, n, palette);
        const auto c = std::bernoulli_distribution(0.8)(rng) ? nudged(rng, b) : oracle::random_graph(rng, n, palette);
        const auto pa = pointed(a), pb = pointed(b), pc = pointed(c);
        const auto ab = distance_truncated(pa, pb, ultrametric_depth);
        const auto bc = distance_truncated(pb, pc, ultrametric_depth);
        const auto ac = distance_truncated(pa, pc, ultrametric_depth);
        const std::string tag = "triple " + std::to_string(trial);
        t.expect(ab == distance_truncated(pb, pa, ultrametric_depth), tag + ": asymmetric");
        // d(a,c) <= max(d(a,b), d(b,c)) in exponent form
        t.expect(closeness(ac) >= std::min(closeness(ab), closeness(bc)), tag + ": ultrametric inequality");
        t.expect(closeness(ab) >= std::min(closeness(ac), closeness(bc)), tag + ": ultrametric inequality");
    }
}

// 3 -----------------------------------------------------------------------
void composition(Tally& t, int& instances) {
    std::mt19937_64 rng(1002);
    instances = 0;
    for (int trial = 0; instances < composition_instances && trial < 50 * composition_instances; ++trial) {
        const int size = std::uniform_int_distribution<int>(1, 7)(rng);
        const auto a = oracle::random_graph(rng, size, palette);
        const auto b = nudged(rng, a), c = nudged(rng, b);
        const auto n = std::uniform_int_distribution<std::size_t>(0, 4)(rng);
        const auto m = std::uniform_int_distribution<std::size_t>(0, 4)(rng);
        const Rational eps(1, std::uniform_int_distribution<std::int64_t>(1, 16)(rng));
        const Rational delta(1, std::uniform_int_distribution<std::int64_t>(1, 16)(rng));
        const auto f = find_equivalence(pointed(a), pointed(b), n, eps);
        const auto g = find_equivalence(pointed(b), pointed(c), m, delta);
        if (!f || !g)
            continue;
        ++instances;
        const auto gf = compose(*f, *g);
        const std::string tag = "instance " + std::to_string(instances);
        t.expect(gf.radius == std::min(n, m), tag + ": radius");
        t.expect(gf.tolerance == std::max(eps, delta), tag + ": tolerance");
        t.expect(static_cast<bool>(verify_equivalence(gf, pointed(a), pointed(c))), tag + ": does not verify");
    }
    t.expect(instances >= composition_instances, "only " + std::to_string(instances) + " instances");
}

// 4 -----------------------------------------------------------------------
void k_construction(Tally& t, int& pairs) {
    struct Source {
        Pointed x;
        std::optional<std::size_t> degree_override;
    };
    const std::vector<Source> sources = {
        {Pointed{champernowne_line(ChampernowneOrder::standard), "0"}, std::nullopt},
        {Pointed{champernowne_line(ChampernowneOrder::listed), "11"}, std::nullopt},
        {Pointed{word_line(3), "-4"}, std::nullopt},
        {Pointed::at_root(free_edge_lift(champernowne_line(ChampernowneOrder::listed))), std::nullopt},
        {Pointed{universal_dense_graph(5), "a2.0"}, 5},
    };
    std::mt19937_64 rng(1004);
    for (int sample = 0; sample < k_samples; ++sample) {
        const Source& s = sources[sample % sources.size()];
        const std::size_t n = std::uniform_int_distribution<std::size_t>(0, 3)(rng);
        const Color spine = Color::from_bits(sample % 2 ? "1" : "");
        const auto k = build_K(s.x, n, spine, s.degree_override);
        const std::string tag = s.x.graph.name() + "@" + s.x.point + " n=" + std::to_string(n);
        t.expect(shift_automorphism_check(k, n + 2, 1), tag + ": shift by 1");
        const PointedBall disk = ball(s.x, n);
        const auto copy =
            embed_colored_subgraph(disk.graph.with_basepoint(0), Pointed::at_root(k.graph), n, Tolerance::exact(), true);
        t.expect(copy.has_value(), tag + ": disk not embedded");
        // the copy is exact: an (n, any eps)-equivalence onto the root
        const auto h = find_equivalence(s.x, Pointed::at_root(k.graph), n, Rational(1, 1 << 20));
        t.expect(h.has_value(), tag + ": disk copy not exact");
    }

    // (m, 1/m)-equivalent basepoints give (m, 1/m)-equivalent constructions
    const std::vector<GraphExpander> lines = {champernowne_line(ChampernowneOrder::standard), word_line(2),
                                              champernowne_line(ChampernowneOrder::listed)};
    pairs = 0;
    for (std::size_t m = 1; m <= 3 && pairs < k_equivalent_pairs; ++m)
        for (const auto& x : lines) {
            const auto window = ball(x, x.root(), 30).graph.keys();
            int found_here = 0;
            for (std::size_t i = 0; i < window.size() && found_here < 2; i += 2)
                for (std::size_t j = i + 1; j < window.size(); ++j) {
                    const Pointed a{x, window[i]}, b{x, window[j]};
                    if (!find_equivalence(a, b, m, Rational(1, static_cast<std::int64_t>(m))))
                        continue;
                    const auto ka = build_K(a, m, Color()), kb = build_K(b, m, Color());
                    t.expect(find_equivalence(Pointed::at_root(ka.graph), Pointed::at_root(kb.graph), m,
                                              Rational(1, static_cast<std::int64_t>(m)))
                                 .has_value(),
                             x.name() + " " + window[i] + "~" + window[j] + " m=" + std::to_string(m));
                    ++pairs;
                    ++found_here;
                    break;
                }
        }
    t.expect(pairs >= k_equivalent_pairs, "only " + std::to_string(pairs) + " equivalent pairs");
}

// 5 -----------------------------------------------------------------------
void w_openness(Tally& t, int& neighbors) {
    std::mt19937_64 rng(1005);
    neighbors = 0;
    for (int trial = 0; trial < w_balls; ++trial) {
        const std::size_t n = std::uniform_int_distribution<std::size_t>(1, 3)(rng);
        PointedBall source = trial % 5 == 4
                                 ? ball(Pointed{universal_dense_graph(5), "s" + std::to_string(trial % 7 - 3)}, n)
                                 : ball(GraphExpander::from_finite(oracle::to_graph(oracle::random_graph(
                                            rng, std::uniform_int_distribution<int>(2, 7)(rng), {"", "1"}))),
                                        "v0", n);
        const PointedBall a = injective_perturbation(source, Rational(1, 2));
        const std::string tag = "ball " + std::to_string(trial);
        t.expect(in_W(a), tag + ": perturbation not injective");
        const Rational eps = w_stability_radius(a);
        const Pointed pa = Pointed::at_root(GraphExpander::from_finite(a.graph.with_basepoint(0)));
        t.expect(automorphisms(a.graph, false).order == 1, tag + ": nontrivial automorphism");

        // neighbors: recolorings at various depths, some within eps/3 and some not
        for (int variant = 0; variant < 4; ++variant) {
            const std::size_t keep = truncation_length(eps / 3) + static_cast<std::size_t>(variant) - 1;
            std::vector<Color> colors;
            for (const auto& c : a.graph.colors()) {
                std::string bits = c.prefix(keep + 1);
                if (std::bernoulli_distribution(0.7)(rng))
                    bits.back() = bits.back() == '1' ? '0' : '1';
                colors.push_back(Color::from_bits(bits + (std::bernoulli_distribution(0.5)(rng) ? "1" : "")));
            }
            const Pointed pb = Pointed::at_root(GraphExpander::from_finite(a.graph.with_colors(colors).with_basepoint(0)));
            const auto h = find_equivalence(pa, pb, n, eps / 3);
            if (!h || !verify_equivalence(*h, pa, pb))
                continue;
            ++neighbors;
            t.expect(in_W(pb, n), tag + ": equivalent neighbor left W");
        }
    }
    t.expect(neighbors >= w_balls, "only " + std::to_string(neighbors) + " verified neighbors");
}

// 6 -----------------------------------------------------------------------
void enumeration(Tally& t, std::size_t& emitted) {
    const EnumerationSpec spec{enumeration_max_weight, enumeration_max_vertices, std::nullopt, DegreeConstraint::none,
                               false};
    const auto members = enumerate_aperiodic(spec);
    emitted = members.size();
    for (std::size_t i = 0; i < members.size(); ++i) {
        const auto plain = oracle::from_graph(members[i]);
        t.expect(oracle::automorphism_count(plain, false) == 1, "member " + std::to_string(i) + " has symmetry");
        t.expect(members[i].size() <= enumeration_max_vertices && weight(members[i]) <= enumeration_max_weight,
                 "member " + std::to_string(i) + " out of bounds");
    }
    // spread the sample over the whole list, which is ordered by weight
    std::vector<FiniteColoredGraph> sample;
    for (std::size_t i = 0; i < enumeration_sample && !members.empty(); ++i)
        sample.push_back(members[i * (members.size() - 1) / (enumeration_sample - 1)]);
    const Rational exact(1, 1 << 20);
    for (std::size_t i = 0; i < sample.size(); ++i)
        for (std::size_t j = i + 1; j < sample.size(); ++j) {
            const auto a = Pointed::at_root(GraphExpander::from_finite(sample[i]));
            const auto b = Pointed::at_root(GraphExpander::from_finite(sample[j]));
            const std::size_t radius = std::max(sample[i].size(), sample[j].size());
            t.expect(!find_equivalence(a, b, radius, exact),
                     "sample " + std::to_string(i) + " and " + std::to_string(j) + " are isomorphic");
        }
}

// 7 -----------------------------------------------------------------------
// Exhaustive scan: every y with r <= |y| <= radius, compared by brute force.
std::vector<std::int64_t> scan_line(const PeriodicExpander& k, std::size_t r, std::size_t m) {
    const int span = static_cast<int>(v_search_radius + m);
    oracle::Plain line;
    for (int i = -span; i <= span; ++i) {
        line.bits.push_back("");
        line.adj.push_back({});
        if (i > -span) {
            line.adj[i + span].insert(i + span - 1);
            line.adj[i + span - 1].insert(i + span);
        }
    }
    const auto target = oracle::from_graph(ball(Pointed::at_root(k.graph), m + 1).graph);
    std::vector<std::int64_t> hits;
    for (int y = -static_cast<int>(v_search_radius); y <= static_cast<int>(v_search_radius); ++y)
        if (static_cast<std::size_t>(std::abs(y)) >= r &&
            oracle::equivalent(line, y + span, target, target.base, static_cast<int>(m), 1, static_cast<std::int64_t>(m)))
            hits.push_back(y);
    return hits;
}

void v_sanity(Tally& t) {
    const auto periodic = translation_periodic(constant_line(Color()));
    const ChaosSource source{Pointed::at_root(periodic.graph), periodic, std::nullopt};
    const auto k = build_K(source.pointed, 1, Color());

    const auto hit_oracle = scan_line(k, 1, 1);
    const auto hit = in_V(source, 1, 1, 1, v_search_radius);
    t.expect(!hit_oracle.empty(), "oracle finds no witness for m=1");
    t.expect(hit.found(), "no witness for m=1");
    if (hit.found()) {
        const std::int64_t y = std::stoll(*hit.witness);
        t.expect(std::find(hit_oracle.begin(), hit_oracle.end(), y) != hit_oracle.end(), "witness not in oracle set");
        std::int64_t nearest = v_search_radius;
        for (auto h : hit_oracle)
            nearest = std::min<std::int64_t>(nearest, std::abs(h));
        t.expect(std::abs(y) == nearest, "witness is not among the nearest");
        t.expect(static_cast<bool>(verify_equivalence(*hit.equivalence, Pointed{source.pointed.graph, *hit.witness},
                                                      Pointed::at_root(k.graph))),
                 "witness equivalence does not verify");
    }

    const auto miss_oracle = scan_line(k, 1, 2);
    const auto miss = in_V(source, 1, 1, 2, v_search_radius);
    t.expect(miss_oracle.empty(), "oracle finds a witness for m=2");
    t.expect(!miss.found() && miss.search_radius == v_search_radius, "m=2 should be not-found within 10");
}

// 8 -----------------------------------------------------------------------
void certificates(Tally& t) {
    const auto comb_p = comb();
    const ChaosSource comb_source{Pointed::at_root(comb_p.graph), comb_p, std::nullopt};
    const ChaosSource dense_source{Pointed{universal_dense_graph(io::default_budget), "a0.0"}, std::nullopt,
                                   std::max<std::size_t>(3, io::default_budget)};

    CertifyOptions self;
    self.self_witness = true;
    CertifyOptions wide;
    wide.search_radius = dense_search_radius;
    const std::vector<std::tuple<std::string, const ChaosSource*, CertifyOptions>> cases = {
        {"comb", &comb_source, self}, {"dense", &dense_source, wide}};

    for (const auto& [name, source, options] : cases) {
        const auto result = generate_almost_chaotic(*source, certificate_depth, certificate_depth, options);
        t.expect(result.certificate.has_value(), name + ": no certificate");
        if (!result.certificate)
            continue;
        const auto text = io::certificate_to_json(*result.certificate).dump();
        const auto reread = io::certificate_from_json(io::json::parse(text));
        t.expect(check_almost_chaotic(*source, reread).valid(), name + ": re-read certificate rejected");

        for (std::size_t n = 1; n <= certificate_depth; ++n)
            for (std::size_t m = 1; m <= certificate_depth; ++m) {
                auto broken = reread;
                auto& mapping = broken.levels[n - 1].cells[m - 1].equivalence.mapping;
                mapping.back().to = mapping.front().to;
                const auto report = check_almost_chaotic(*source, broken);
                const bool located = report.failures.size() == 1 && report.failures[0].n == n &&
                                     report.failures[0].m == std::optional<std::size_t>(m);
                t.expect(located, name + ": fault at (" + std::to_string(n) + "," + std::to_string(m) + ") misreported");
            }
        auto broken = reread;
        broken.levels.back().equivalence.tolerance = Rational(1);
        const auto report = check_almost_chaotic(*source, broken);
        t.expect(report.failures.size() == 1 && report.failures[0].n == certificate_depth && !report.failures[0].m,
                 name + ": level fault misreported");
    }
}

}  // namespace

int main() {
    using clock = std::chrono::steady_clock;
    const auto suite_start = clock::now();
    bool all = true;

    auto criterion = [&](int id, const std::string& title, double limit_seconds, const std::function<std::string(Tally&)>& body) {
        Tally t;
        const auto start = clock::now();
        std::string detail;
        try {
            detail = body(t);
        } catch (const std::exception& e) {
            t.failures.push_back(std::string("exception: ") + e.what());
        }
        const double seconds = std::chrono::duration<double>(clock::now() - start).count();
        if (limit_seconds > 0 && seconds >= limit_seconds)
            t.failures.push_back("took " + std::to_string(seconds) + " s");
        const bool pass = t.failures.empty();
        all = all && pass;
        std::printf("criterion %d: %s  %s  [%d checks, %zu failed, %.2f s%s%s]\n", id, pass ? "PASS" : "FAIL",
                    title.c_str(), t.checks, t.failures.size(), seconds, detail.empty() ? "" : ", ",
                    detail.c_str());
        for (std::size_t i = 0; i < t.failures.size() && i < 5; ++i)
            std::printf("    %s\n", t.failures[i].c_str());
        std::fflush(stdout);
    };

    criterion(1, "Champernowne prefix 01000111000001", champernowne_seconds, [](Tally& t) {
        champernowne(t);
        return std::string();
    });
    criterion(2, "ultrametric on random triples", ultrametric_seconds, [](Tally& t) {
        ultrametric(t);
        return std::to_string(ultrametric_triples) + " triples";
    });
    criterion(3, "composition of equivalences", 0, [](Tally& t) {
        int instances = 0;
        composition(t, instances);
        return std::to_string(instances) + " instances";
    });
    criterion(4, "K-construction periodicity, disk copy, equivalence transfer", 0, [](Tally& t) {
        int pairs = 0;
        k_construction(t, pairs);
        return std::to_string(k_samples) + " samples, " + std::to_string(pairs) + " pairs";
    });
    criterion(5, "injective disks stay injective within a third of the radius", 0, [](Tally& t) {
        int neighbors = 0;
        w_openness(t, neighbors);
        return std::to_string(w_balls) + " balls, " + std::to_string(neighbors) + " neighbors";
    });
    criterion(6, "enumerator soundness and deduplication", 0, [](Tally& t) {
        std::size_t emitted = 0;
        enumeration(t, emitted);
        return std::to_string(emitted) + " graphs";
    });
    criterion(7, "far-vertex search on the constant integer line", 0, [](Tally& t) {
        v_sanity(t);
        return std::string();
    });
    criterion(8, "certificate round trip and fault location", 0, [](Tally& t) {
        certificates(t);
        return std::string();
    });

    const double total = std::chrono::duration<double>(clock::now() - suite_start).count();
    const bool in_time = total < suite_seconds;
    std::printf("total: %.2f s (limit %.0f s) %s\n", total, suite_seconds, in_time ? "ok" : "over");
    return all && in_time ? 0 : 1;
}
