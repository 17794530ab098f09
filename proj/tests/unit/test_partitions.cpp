#include <gtest/gtest.h>

#include <cmath>

#include "billiards/errors.hpp"
#include "billiards/partitions.hpp"
#include "billiards/rng.hpp"

using namespace billiards;

namespace {

IndexedPartition with_cuts(double width, int level, std::vector<std::pair<double, int>> cuts) {
    auto xi = trivial_partition(width, level);
    for (const auto& [d, k] : cuts) xi.cuts.push_back({d, k, std::nullopt});
    return xi;
}

// Brute-force maximum disjoint subfamily, exponential; n <= 16.
std::size_t brute_force_max(const std::vector<Segment>& s) {
    const std::size_t n = s.size();
    std::size_t best = 0;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        bool ok = true;
        for (std::size_t i = 0; i < n && ok; ++i)
            for (std::size_t j = i + 1; j < n && ok; ++j)
                if ((mask >> i & 1) && (mask >> j & 1) && overlaps(s[i], s[j])) ok = false;
        if (ok) best = std::max<std::size_t>(best, static_cast<std::size_t>(__builtin_popcount(mask)));
    }
    return best;
}

}  // namespace

TEST(BuildPartitions, NoDiagonalsGivesTrivialLevels) {
    const auto t = make_triangle(0.9, 1.0);
    const auto xs = build_partitions(t, VertexId::A, {}, 4);
    ASSERT_EQ(xs.size(), 5u);
    for (int k = 0; k <= 4; ++k) {
        EXPECT_TRUE(xs[static_cast<std::size_t>(k)].cuts.empty());
        EXPECT_EQ(xs[static_cast<std::size_t>(k)].level, k);
        EXPECT_EQ(intervals(xs[static_cast<std::size_t>(k)]).size(), 1u);
    }
}

TEST(BuildPartitions, EquilateralDepthOne) {
    const auto t = make_rational_triangle(1, 3, 1, 3, 0.1);
    const auto xs = build_partitions(t, VertexId::A, enumerate_diagonals(t, VertexId::A, 1).diagonals, 1);
    ASSERT_EQ(xs.size(), 2u);
    EXPECT_TRUE(xs[0].cuts.empty());
    ASSERT_EQ(xs[1].cuts.size(), 1u);
    EXPECT_EQ(xs[1].cuts[0].index, 1);
    EXPECT_NEAR(min_gap(xs[1]), kPi / 6, 1e-15);
    const auto g = gap_report(xs);
    ASSERT_EQ(g.rows.size(), 1u);
    EXPECT_NEAR(g.min_gap, kPi / 6, 1e-15);
    EXPECT_NEAR(g.fitted_a, std::max(0.0, -std::log(kPi / 6)), 1e-15);
}

TEST(BuildPartitions, ObservationOneAndCountIdentity) {
    auto rng = make_stream(31, 0);
    for (int trial = 0; trial < 6; ++trial) {
        const auto t = random_triangle(rng);
        const auto counts = complexity_counts(t, 20);
        for (int v = 0; v < 3; ++v) {
            const auto vid = static_cast<VertexId>(v);
            const auto xs = build_partitions(t, vid, enumerate_diagonals(t, vid, 20).diagonals, 20);
            for (int k = 0; k <= 20; ++k) {
                const auto& xi = xs[static_cast<std::size_t>(k)];
                EXPECT_EQ(static_cast<long long>(xi.cuts.size()), counts.Q[static_cast<std::size_t>(v)][static_cast<std::size_t>(k)]);
                for (const auto& c : xi.cuts) {
                    EXPECT_LE(c.index, k);
                    EXPECT_GE(c.index, 1);
                }
                if (k < 20) EXPECT_TRUE(observation1_violations(xi, xs[static_cast<std::size_t>(k) + 1]).empty());
                EXPECT_GT(min_gap(xi), 0);
            }
        }
    }
}

TEST(BuildPartitions, DuplicateDirectionIsAnError) {
    const auto t = make_triangle(0.9, 1.0);
    auto d = enumerate_diagonals(t, VertexId::A, 6).diagonals;
    ASSERT_FALSE(d.empty());
    d.push_back(d.front());
    try {
        build_partitions(t, VertexId::A, d, 6);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::DuplicateDirection);
    }
}

TEST(Observation1, DetectsDoubleSplit) {
    const auto coarse = with_cuts(1, 1, {{0.5, 1}});
    const auto fine = with_cuts(1, 2, {{0.1, 2}, {0.2, 2}, {0.5, 1}});
    const auto v = observation1_violations(coarse, fine);
    ASSERT_EQ(v.size(), 1u);
    EXPECT_EQ(v[0].interval, 0u);
    EXPECT_EQ(v[0].new_cuts, 2u);
}

TEST(Lemma21, PlantedCount) {
    const auto xi_n = trivial_partition(1, 2);
    const auto xi_nc = with_cuts(1, 5, {{0.1, 3}, {0.3, 4}, {0.5, 5}, {0.7, 3}, {0.9, 4}});
    const auto a = lemma21_audit(xi_n, xi_nc);
    EXPECT_EQ(a.required, 4);
    EXPECT_EQ(a.found, 4);
    EXPECT_EQ(a.found_one_endpoint, 6);
    EXPECT_TRUE(a.passed());
    EXPECT_EQ(a.witnesses.size(), 4u);
}

TEST(Lemma21, VacuousWhenHypothesisFails) {
    const auto xi_n = with_cuts(1, 1, {{0.5, 1}});
    const auto xi_nc = with_cuts(1, 2, {{0.25, 2}, {0.5, 1}, {0.75, 2}});
    const auto a = lemma21_audit(xi_n, xi_nc);
    EXPECT_EQ(a.required, 0);
    EXPECT_TRUE(a.passed());
}

TEST(Lemma21, NotARefinement) {
    const auto xi_n = with_cuts(1, 1, {{0.5, 1}});
    const auto xi_nc = with_cuts(1, 2, {{0.25, 2}});
    try {
        lemma21_audit(xi_n, xi_nc);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NotARefinement);
    }
}

TEST(Lemma21, SyntheticRefinements) {
    auto rng = make_stream(32, 0);
    std::uniform_real_distribution<double> u(0.1, 0.9);
    int with_hypothesis = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const auto chain = random_refinement_chain(rng, 12, u(rng));
        for (int n = 0; n < 12; ++n) {
            for (int c = 1; n + c <= 12; ++c) {
                const auto a = lemma21_audit(chain[static_cast<std::size_t>(n)], chain[static_cast<std::size_t>(n + c)]);
                EXPECT_GE(a.found, a.required);
                with_hypothesis += a.required > 0;
            }
        }
        for (int k = 0; k < 12; ++k) {
            EXPECT_TRUE(observation1_violations(chain[static_cast<std::size_t>(k)], chain[static_cast<std::size_t>(k) + 1]).empty());
        }
    }
    EXPECT_GT(with_hypothesis, 1000);
}

TEST(GapReport, MidpointCut) {
    const std::vector<IndexedPartition> xs{trivial_partition(2.0, 0), with_cuts(2.0, 1, {{1.0, 1}})};
    const auto g = gap_report(xs);
    EXPECT_DOUBLE_EQ(g.min_gap, 1.0);
    EXPECT_EQ(g.fitted_a, 0.0);  // -ln(1) = 0
    EXPECT_EQ(g.level, 1);
}

TEST(GapReport, RunningMaximum) {
    const std::vector<IndexedPartition> xs{trivial_partition(1.0, 0), with_cuts(1.0, 1, {{0.01, 1}}),
                                           with_cuts(1.0, 2, {{0.01, 1}, {0.5, 2}})};
    const auto g = gap_report(xs);
    ASSERT_EQ(g.rows.size(), 2u);
    EXPECT_NEAR(g.rows[0].fitted_a, -std::log(0.01), 1e-12);
    EXPECT_NEAR(g.rows[1].fitted_a, -std::log(0.01) / 4, 1e-12);
    EXPECT_NEAR(g.fitted_a, -std::log(0.01), 1e-12);
}

TEST(GreedySelection, AlreadyDisjoint) {
    const std::vector<Segment> I{{0, 0.1}, {0.2, 0.3}, {0.5, 0.6}};
    const auto s = greedy_disjoint_selection(I, I, 1, 1);
    EXPECT_EQ(s.size(), 3u);
}

TEST(GreedySelection, HandExample) {
    // Dyadic endpoints so that neighbouring J intervals touch exactly.
    const std::vector<Segment> I{{0, 0.125}, {0.25, 0.375}, {0.5, 0.625}, {0.75, 0.875}};
    std::vector<Segment> J;
    for (const auto& i : I) J.push_back({i.lo, i.lo + 0.25});
    const auto s = greedy_disjoint_selection(I, J, 1, 2);
    EXPECT_GE(static_cast<double>(s.size()), 4.0 / 2.0);
    EXPECT_EQ(s.size(), 4u);  // neighbours only touch
    for (std::size_t a = 0; a < s.size(); ++a)
        for (std::size_t b = a + 1; b < s.size(); ++b) EXPECT_FALSE(overlaps(J[s[a]], J[s[b]]));
}

TEST(GreedySelection, RightAnchoredMirrorsLeft) {
    const std::vector<Segment> I{{0.1, 0.2}, {0.3, 0.4}, {0.5, 0.6}, {0.7, 0.8}};
    std::vector<Segment> J;
    for (const auto& i : I) J.push_back({i.hi - 0.25, i.hi});
    const auto s = greedy_disjoint_selection(I, J, 1, 2.5, Anchor::Right);
    EXPECT_EQ(s.size(), 2u);
    EXPECT_THROW(greedy_disjoint_selection(I, J, 1, 2.5, Anchor::Left), Error);
}

TEST(GreedySelection, PreconditionsAreChecked) {
    const std::vector<Segment> I{{0, 0.1}, {0.05, 0.2}};
    EXPECT_THROW(greedy_disjoint_selection(I, I, 2, 1), Error);  // overlapping base
    const std::vector<Segment> I2{{0, 0.1}, {0.2, 0.5}};
    EXPECT_THROW(greedy_disjoint_selection(I2, I2, 2, 1), Error);  // ratio 3 > L
    EXPECT_THROW(greedy_disjoint_selection(I2, I2, 3, 1.0 / 0.99 * 1), Error);  // n = 2 < L m
    const std::vector<Segment> J2{{0, 0.3}, {0.2, 0.5}};
    EXPECT_THROW(greedy_disjoint_selection(I2, J2, 3, 0.5), Error);  // |J| > m |I|
}

TEST(GreedySelection, FloorFailsForFractionalLm) {
    // Six touching unit-ratio intervals with J 1.5 times longer: any two
    // neighbouring J's overlap, so no selection beats 3 < 6 / 1.5.
    std::vector<Segment> I;
    std::vector<Segment> J;
    for (int i = 0; i < 6; ++i) {
        I.push_back({i / 6.0, (i + 1) / 6.0});
        J.push_back({i / 6.0, i / 6.0 + 1.5 / 6.0});
    }
    const auto s = greedy_disjoint_selection(I, J, 1, 1.5);
    EXPECT_EQ(s.size(), 3u);
    EXPECT_EQ(max_disjoint_count(J), 3u);
    EXPECT_LT(static_cast<double>(s.size()), 6 / 1.5);
    EXPECT_GE(static_cast<double>(s.size()), 6 / std::ceil(1.5));
}

TEST(GreedySelection, CeilingFloorAgainstBruteForce) {
    // n / ceil(L m) is what the sweep guarantees; the optimum dominates it.
    auto rng = make_stream(33, 0);
    std::uniform_real_distribution<double> u(0, 1);
    for (int trial = 0; trial < 300; ++trial) {
        const int n = 2 + trial % 13;
        const double L = 1 + 2 * u(rng);
        const double m = 0.5 + (n / L - 0.5) * u(rng);
        std::vector<double> len(static_cast<std::size_t>(n));
        double total = 0;
        for (auto& x : len) total += (x = 1 + (L - 1) * u(rng));
        const double scale = 0.999 / total;
        std::vector<Segment> I;
        std::vector<Segment> J;
        double pos = 0;
        for (int i = 0; i < n; ++i) {
            const double w = len[static_cast<std::size_t>(i)] * scale;
            I.push_back({pos, pos + w});
            J.push_back({pos, pos + m * w * u(rng) + 1e-15});
            pos += w;
        }
        const auto s = greedy_disjoint_selection(I, J, L, m);
        for (std::size_t a = 0; a < s.size(); ++a)
            for (std::size_t b = a + 1; b < s.size(); ++b) EXPECT_FALSE(overlaps(J[s[a]], J[s[b]]));
        EXPECT_GE(static_cast<double>(s.size()), n / std::ceil(L * m));
        if (n <= 14) EXPECT_EQ(max_disjoint_count(J), brute_force_max(J));
    }
}
