#include <gtest/gtest.h>

#include <random>
#include <set>

#include "gromov/constructions.hpp"
#include "gromov/enumeration.hpp"
#include "gromov/symmetry.hpp"
#include "oracles.hpp"

using namespace gromov;

TEST(Champernowne, ListedPrefix) {
    std::string s;
    for (std::int64_t n = 1; n <= 14; ++n)
        s += champernowne_color(n, ChampernowneOrder::listed).is_zero() ? '0' : '1';
    EXPECT_EQ(s, "01000111000001");
}

TEST(Champernowne, MatchesWordConcatenation) {
    for (bool skip_10 : {false, true}) {
        const std::string expected = oracle::champernowne_prefix(5000, skip_10);
        const auto order = skip_10 ? ChampernowneOrder::listed : ChampernowneOrder::standard;
        for (std::size_t i = 0; i < expected.size(); ++i)
            ASSERT_EQ(champernowne_color(static_cast<std::int64_t>(i + 1), order).is_zero(), expected[i] == '0')
                << "position " << i + 1;
    }
    EXPECT_TRUE(champernowne_color(0, ChampernowneOrder::listed).is_zero());
    EXPECT_TRUE(champernowne_color(-17, ChampernowneOrder::standard).is_zero());
}

TEST(WordLine, MatchesOracleOrder) {
    for (int k : {2, 3, 4}) {
        const auto expected = oracle::word_concatenation(k, 3000);
        for (std::size_t i = 0; i < expected.size(); ++i)
            ASSERT_EQ(word_line_letter(static_cast<std::size_t>(k), static_cast<std::int64_t>(i + 1)),
                      static_cast<std::size_t>(expected[i]))
                << "k=" << k << " position " << i + 1;
    }
    EXPECT_EQ(word_line_letter(2, 1), 0u);
    EXPECT_EQ(word_line_letter(2, 4), 1u);
    EXPECT_EQ(word_line_letter(2, -3), 0u);
    const auto line = word_line(3);
    EXPECT_EQ(line.expand("4").color, pool_color(word_line_letter(3, 4)));
    EXPECT_THROW(word_line(1), std::invalid_argument);
}

TEST(SpineColor, InjectiveAndZigzagBijective) {
    std::set<Color> colors;
    std::set<std::size_t> indices;
    for (std::int64_t z = -300; z <= 300; ++z) {
        EXPECT_TRUE(colors.insert(spine_color(z)).second) << z;
        indices.insert(zigzag_index(z));
    }
    EXPECT_EQ(indices.size(), 601u);
    EXPECT_EQ(*indices.rbegin(), 600u);
    EXPECT_EQ(spine_color(0).bits(), "01");
    EXPECT_EQ(spine_color(-1).bits(), "111");
    EXPECT_EQ(spine_color(2).bits(), "0011");
}

TEST(FreeEdgeLift, PendantsExactlyAtOnes) {
    const auto line = champernowne_line(ChampernowneOrder::listed);
    const auto lifted = free_edge_lift(line);
    for (std::int64_t z = -3; z <= 40; ++z) {
        const auto e = lifted.expand(std::to_string(z));
        const bool one = !line.expand(std::to_string(z)).color.is_zero();
        EXPECT_TRUE(e.color.is_zero());
        EXPECT_EQ(e.neighbors.size(), one ? 3u : 2u);
        if (one)
            EXPECT_EQ(lifted.expand("p" + std::to_string(z)).neighbors, std::vector<VertexKey>{std::to_string(z)});
        else
            EXPECT_THROW(lifted.expand("p" + std::to_string(z)), UnknownVertex);
    }
    EXPECT_THROW(free_edge_lift(constant_line(Color::from_bits("01"))).expand("0"), GraphError);
}

TEST(BuildK, PeriodicAndContainsTheDisk) {
    const std::vector<std::pair<Pointed, std::optional<std::size_t>>> sources = {
        {Pointed::at_root(champernowne_line(ChampernowneOrder::standard)), std::nullopt},
        {Pointed{champernowne_line(ChampernowneOrder::listed), "9"}, std::nullopt},
        {Pointed::at_root(free_edge_lift(champernowne_line(ChampernowneOrder::listed))), std::nullopt},
        {Pointed{word_line(3), "5"}, std::nullopt},
        {Pointed{universal_dense_graph(5), "a0.0"}, 5},
    };
    for (const auto& [x, override] : sources)
        for (std::size_t n = 0; n <= 3; ++n) {
            const auto k = build_K(x, n, Color::from_bits("1"), override);
            EXPECT_TRUE(shift_automorphism_check(k, n + 2, 1));
            const PointedBall disk = ball(x, n);
            const auto embedded =
                embed_colored_subgraph(disk.graph.with_basepoint(0), Pointed::at_root(k.graph), n, Tolerance::exact(), true);
            ASSERT_TRUE(embedded) << x.graph.name() << " n=" << n;
            EXPECT_EQ(embedded->at(disk.center_key()), "c0.0");
            EXPECT_TRUE(verify_equivalence(copy_zero_inclusion(x, n), x, Pointed::at_root(k.graph)));
            EXPECT_EQ(check_expander_window(k.graph, "s0", n + 3), std::nullopt);
        }
}

TEST(BuildK, NeedsAFiniteDegreeBound) {
    EXPECT_THROW(build_K(Pointed{universal_dense_graph(4), "s0"}, 1, Color()), GraphError);
    // every sphere vertex of the triangle's disk already has degree 2 inside it
    const FiniteColoredGraph c3({"0", "1", "2"}, {{"0", "1"}, {"1", "2"}, {"2", "0"}},
                                {{"0", Color()}, {"1", Color()}, {"2", Color()}}, "0");
    EXPECT_THROW(choose_attachment(ball(GraphExpander::from_finite(c3), "0", 1), 2), GraphError);
    EXPECT_EQ(choose_attachment(ball(GraphExpander::from_finite(c3), "0", 1), 3), 1u);
}

TEST(BuildK, EquivalentSourcesGiveEquivalentConstructions) {
    // Sampled pairs of (m, 1/m)-equivalent basepoints on a few lines.
    const std::vector<GraphExpander> lines = {champernowne_line(ChampernowneOrder::standard), word_line(2),
                                              free_edge_lift(champernowne_line(ChampernowneOrder::listed))};
    std::size_t checked = 0;
    for (const auto& x : lines)
        for (std::size_t m = 1; m <= 3; ++m) {
            const auto window = ball(x, x.root(), 25).graph.keys();
            for (std::size_t i = 0; i < window.size() && checked < 40; i += 3)
                for (std::size_t j = i + 1; j < window.size(); j += 5) {
                    const Pointed a{x, window[i]}, b{x, window[j]};
                    if (!find_equivalence(a, b, m, Rational(1, m)))
                        continue;
                    const auto ka = build_K(a, m, Color()), kb = build_K(b, m, Color());
                    const auto h = find_equivalence(Pointed::at_root(ka.graph), Pointed::at_root(kb.graph), m,
                                                    Rational(1, m));
                    ASSERT_TRUE(h) << x.name() << " " << window[i] << " " << window[j];
                    ++checked;
                    break;
                }
        }
    EXPECT_GE(checked, 10u);
}

TEST(Comb, Shape) {
    const auto c = comb();
    for (std::int64_t z = -5; z <= 5; ++z) {
        EXPECT_EQ(c.graph.expand("s" + std::to_string(z)).neighbors.size(), 3u);
        EXPECT_EQ(c.graph.expand("c" + std::to_string(z) + ".0").neighbors.size(), 1u);
    }
    EXPECT_EQ(c.graph.degree_sup(), 3u);
    EXPECT_EQ(c.fundamental_domain.size(), 2u);
}

TEST(Enumeration, ConnectedShapeCounts) {
    // connected graphs on 1..6 vertices up to isomorphism
    const std::vector<std::size_t> expected = {1, 1, 2, 6, 21, 112};
    for (std::size_t k = 1; k <= 6; ++k)
        EXPECT_EQ(connected_shapes(k).size(), expected[k - 1]) << k;
}

TEST(Enumeration, SmallestMembers) {
    // weight <= 3: "" ; "1" ; "01" ; "11" ; the path ""-"1" pointed at either end
    EnumerationSpec spec{3, 3, std::nullopt, DegreeConstraint::none, false};
    const auto members = enumerate_aperiodic(spec);
    ASSERT_EQ(members.size(), 6u);
    EXPECT_EQ(weight(members.front()), 1u);
    EXPECT_EQ(members.front().color(0), Color());
    EXPECT_EQ(weight(members[1]), 2u);
}

TEST(Enumeration, SoundAndDuplicateFree) {
    EnumerationSpec spec{7, 6, std::nullopt, DegreeConstraint::none, false};
    const auto members = enumerate_aperiodic(spec, Execution::parallel);
    const auto serial = enumerate_aperiodic(spec, Execution::serial);
    ASSERT_EQ(members.size(), serial.size());
    std::set<CanonicalKey> keys;
    for (std::size_t i = 0; i < members.size(); ++i) {
        const auto plain = oracle::from_graph(members[i]);
        EXPECT_EQ(oracle::automorphism_count(plain, false), 1u);
        EXPECT_TRUE(members[i].connected());
        EXPECT_LE(weight(members[i]), 7u);
        EXPECT_TRUE(keys.insert(canonical_form(members[i])).second);
        EXPECT_EQ(canonical_form(members[i]), canonical_form(serial[i]));
        if (i > 0)
            EXPECT_LE(weight(members[i - 1]), weight(members[i]));
    }
    for (std::size_t i = 0; i < 40 && i < members.size(); ++i)
        for (std::size_t j = i + 1; j < 40 && j < members.size(); ++j)
            EXPECT_FALSE(oracle::isomorphic(oracle::from_graph(members[i]), oracle::from_graph(members[j]), true));
}

TEST(Enumeration, DegreeConstraints) {
    EnumerationSpec spec{8, 6, std::nullopt, DegreeConstraint::one_or_three, true};
    const auto members = enumerate_aperiodic(spec);
    ASSERT_FALSE(members.empty());
    for (const auto& g : members) {
        for (std::size_t v = 0; v < g.size(); ++v)
            EXPECT_TRUE(g.degree(v) == 1 || g.degree(v) == 3);
        EXPECT_EQ(g.degree(*g.basepoint()), 1u);
    }
    EnumerationSpec pooled{6, 4, 2, DegreeConstraint::none, false};
    for (const auto& g : enumerate_aperiodic(pooled))
        for (const auto& c : g.colors())
            EXPECT_TRUE(c.is_zero() || c == Color::from_bits("1"));
}

TEST(AperiodicStream, PrefixStableAndBounded) {
    AperiodicStream small(DegreeConstraint::none, false, 4), large(DegreeConstraint::none, false, 6);
    std::size_t count = 0;
    try {
        for (;; ++count)
            EXPECT_EQ(canonical_form(small.member(count)), canonical_form(large.member(count)));
    } catch (const BudgetExhausted&) {
    }
    EnumerationSpec spec{4, 4, std::nullopt, DegreeConstraint::none, false};
    EXPECT_EQ(count, enumerate_aperiodic(spec).size());
}

TEST(DenseGraph, SpineInjectiveAndMembersAperiodic) {
    const auto x = universal_dense_graph(6);
    const PointedBall window = ball(x, "s0", 12);
    std::set<Color> spine;
    for (std::size_t v = 0; v < window.graph.size(); ++v)
        if (window.graph.key(v).starts_with("s"))
            EXPECT_TRUE(spine.insert(window.graph.color(v)).second);
    AperiodicStream stream(DegreeConstraint::none, false, 6);
    for (std::int64_t z = -5; z <= 5; ++z) {
        const auto member = stream.member(zigzag_index(z));
        EXPECT_EQ(oracle::automorphism_count(oracle::from_graph(member), false), 1u);
        const VertexKey attached = "a" + std::to_string(z) + "." + std::to_string(*member.basepoint());
        const auto n = x.expand("s" + std::to_string(z)).neighbors;
        EXPECT_NE(std::find(n.begin(), n.end(), attached), n.end());
    }
}

TEST(SparseGraph, HAndZ) {
    for (std::size_t n = 1; n <= 3; ++n) {
        const auto h = build_H(n, 7);
        EXPECT_EQ(h.key(*h.basepoint()), "s" + std::to_string(n));
        EXPECT_TRUE(h.connected());
        AperiodicStream stream(DegreeConstraint::one_or_three, true, 7);
        std::size_t expected = 2 * n + 1;
        for (std::int64_t z = -static_cast<std::int64_t>(n) + 1; z < static_cast<std::int64_t>(n); ++z)
            expected += stream.member(zigzag_index(z)).size();
        EXPECT_EQ(h.size(), expected);
        const auto profile = degree_profile(h);
        for (auto [d, count] : profile)
            EXPECT_TRUE(d >= 1 && d <= 3) << d;
        EXPECT_EQ(profile.at(1) >= 2, true);  // spine ends

        const auto z = build_Z(n, 7);
        EXPECT_TRUE(shift_automorphism_check(z, 2 * n + 3, 1));
        EXPECT_EQ(check_expander_window(z.graph, "s0", 2 * n + 2), std::nullopt);
        // every copy of H_n sits in Z_n with x_n on the spine
        const auto embedded = embed_colored_subgraph(h, Pointed{z.graph, "s0"}, 4 * n + 2, Tolerance::exact(), false);
        EXPECT_TRUE(embedded) << n;
    }
    EXPECT_THROW(build_H(0, 6), std::invalid_argument);
    EXPECT_THROW(build_Z(0, 6), std::invalid_argument);
}

TEST(InjectivePerturbation, InjectiveCloseAndEverywhereDifferent) {
    std::mt19937_64 rng(41);
    const std::vector<std::string> palette = {"", "1", "01"};
    for (int trial = 0; trial < 100; ++trial) {
        const auto g = oracle::to_graph(oracle::random_graph(rng, std::uniform_int_distribution<int>(1, 8)(rng), palette));
        const PointedBall disk = ball(GraphExpander::from_finite(g), g.key(*g.basepoint()), 2);
        const Rational eps(1, std::uniform_int_distribution<std::int64_t>(1, 20)(rng));
        const PointedBall p = injective_perturbation(disk, eps);
        std::set<Color> seen;
        for (std::size_t v = 0; v < p.graph.size(); ++v) {
            EXPECT_TRUE(seen.insert(p.graph.color(v)).second);
            EXPECT_TRUE(color_distance(p.graph.color(v), disk.graph.color(v)).less_than(eps));
            EXPECT_NE(p.graph.color(v), disk.graph.color(v));
        }
        EXPECT_EQ(p.graph.edges(), disk.graph.edges());
    }
}
