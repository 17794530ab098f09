#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "billiards/errors.hpp"
#include "billiards/geometry.hpp"
#include "billiards/rng.hpp"

using namespace billiards;

namespace {

Combinatorics random_comb(std::mt19937_64& rng, int len) {
    std::uniform_int_distribution<int> bit(0, 1);
    Combinatorics c;
    for (int i = 0; i < len; ++i) {
        c.steps.push_back({bit(rng) ? UnfoldStep::Pivot::AlphaVertex : UnfoldStep::Pivot::BetaVertex,
                           bit(rng) ? UnfoldStep::Sign::Plus : UnfoldStep::Sign::Minus});
    }
    return c;
}

// Mirror of p across the line through a and b.
Vec2L mirror(const Vec2L& p, const Vec2L& a, const Vec2L& b) {
    const Vec2L d = b - a;
    const long double t = dot(p - a, d) / dot(d, d);
    const Vec2L foot = a + d * t;
    return foot * 2.0L - p;
}

void expect_near(const Vec2L& a, const Vec2L& b, long double tol) {
    EXPECT_NEAR(static_cast<double>(a.x), static_cast<double>(b.x), static_cast<double>(tol));
    EXPECT_NEAR(static_cast<double>(a.y), static_cast<double>(b.y), static_cast<double>(tol));
}

}  // namespace

TEST(MakeTriangle, EquilateralHasEqualAngles) {
    const auto t = make_triangle(kPi / 3, kPi / 3, 0.1);
    EXPECT_NEAR(t.gamma(), kPi / 3, 1e-15);
    EXPECT_EQ(t.base_length(), 1.0);
}

TEST(MakeTriangle, RejectsAngleAtOrBelowDelta) {
    try {
        make_triangle(kPi / 2 - 0.05, 0.04, 0.05);
        FAIL() << "expected AngleOutOfRange";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::AngleOutOfRange);
    }
    EXPECT_THROW(make_triangle(3.2, 0.1), Error);
    EXPECT_THROW(make_triangle(-0.1, 1.0), Error);
}

TEST(MakeTriangle, AngleSum) {
    const auto t = make_triangle(0.9, 1.1, 0.1);
    EXPECT_NEAR(t.gamma(), kPi - 2.0, 1e-12);
    EXPECT_NEAR(t.alpha() + t.beta() + t.gamma(), kPi, 1e-12);
}

TEST(MakeTriangle, VerticesMatchLawOfSines) {
    const auto t = make_triangle(0.7, 1.2);
    const double c = std::sin(t.gamma());
    EXPECT_NEAR(static_cast<double>((t.vertex(VertexId::C) - t.vertex(VertexId::A)).norm()), std::sin(1.2) / c, 1e-14);
    EXPECT_NEAR(static_cast<double>((t.vertex(VertexId::C) - t.vertex(VertexId::B)).norm()), std::sin(0.7) / c, 1e-14);
}

TEST(ApplyStep, AlphaRotationKeepsOrigin) {
    const auto t = make_triangle(0.8, 1.0);
    const auto p = apply_step(standard_pose(), {UnfoldStep::Pivot::AlphaVertex, UnfoldStep::Sign::Plus}, t);
    EXPECT_EQ(p.angle, (AnglePair{2, 0}));
    EXPECT_EQ(p.alpha_vertex, (Vec2L{0, 0}));
    EXPECT_EQ(p.depth, 1);
}

TEST(ApplyStep, BetaRotationKeepsBetaVertex) {
    const double b = 1.0;
    const auto t = make_triangle(0.8, b);
    const auto p = apply_step(standard_pose(), {UnfoldStep::Pivot::BetaVertex, UnfoldStep::Sign::Minus}, t);
    EXPECT_EQ(p.angle, (AnglePair{0, -2}));
    const auto k = kite_vertex_coords(p, t);
    expect_near(k.beta_vertex, {1, 0}, 1e-15L);
    expect_near(p.alpha_vertex, {1 - std::cos(-2 * b), -std::sin(-2 * b)}, 1e-15L);
}

TEST(ApplyStep, InverseStepRestoresPose) {
    const auto t = make_triangle(0.8, 1.0);
    std::mt19937_64 rng(3);
    auto comb = random_comb(rng, 7);
    KitePose p = standard_pose();
    for (const auto& s : comb.steps) p = apply_step(p, s, t);
    const KitePose mid = p;
    for (const auto pivot : {UnfoldStep::Pivot::AlphaVertex, UnfoldStep::Pivot::BetaVertex}) {
        const UnfoldStep s{pivot, UnfoldStep::Sign::Plus};
        const auto back = apply_step(apply_step(mid, s, t), s.inverse(), t);
        EXPECT_EQ(back.angle, mid.angle);
        expect_near(back.alpha_vertex, mid.alpha_vertex, 1e-15L);
    }
}

TEST(UnfoldChain, EmptyIsStandard) {
    const auto t = make_triangle(0.8, 1.0);
    const auto chain = unfold_chain(t, {});
    ASSERT_EQ(chain.size(), 1u);
    EXPECT_EQ(chain[0].angle, (AnglePair{0, 0}));
    EXPECT_EQ(chain[0].depth, 0);
}

TEST(UnfoldChain, EquilateralSingleAlphaStep) {
    const auto t = make_triangle(kPi / 3, kPi / 3, 0.1);
    const auto chain = unfold_chain(t, parse_combinatorics("A+"));
    ASSERT_EQ(chain.size(), 2u);
    EXPECT_NEAR(static_cast<double>(reduced_angle(t, chain[1].angle)), 2 * kPi / 3, 1e-15);
}

TEST(UnfoldChain, AnglePairBookkeeping) {
    // Exactness, evenness and the weight bound on random chains.
    std::mt19937_64 rng(11);
    const auto t = make_triangle(0.61, 0.93);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 1 + trial % 40;
        const auto comb = random_comb(rng, n);
        const auto chain = unfold_chain(t, comb);
        ASSERT_EQ(chain.size(), comb.length() + 1);
        int m = 0;
        int l = 0;
        for (const auto& s : comb.steps) (s.pivot == UnfoldStep::Pivot::AlphaVertex ? m : l) += 2 * s.sign_value();
        EXPECT_EQ(chain.back().angle, (AnglePair{m, l}));
        EXPECT_LE(chain.back().angle.weight(), 2 * n);
        EXPECT_EQ(chain.back().angle.m % 2, 0);
        EXPECT_EQ(chain.back().angle.l % 2, 0);
        EXPECT_EQ(chain.back().depth, n);
    }
}

TEST(UnfoldChain, ReversibilityAndIsometry) {
    std::mt19937_64 rng(12);
    const auto t = make_triangle(0.47, 1.31);
    const auto k0 = kite_vertex_coords(standard_pose(), t);
    auto dist = [](const KiteCorners& k) {
        const Vec2L pts[4] = {k.alpha_vertex, k.beta_vertex, k.side_upper, k.side_lower};
        std::vector<long double> d;
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j) d.push_back((pts[i] - pts[j]).norm());
        return d;
    };
    const auto d0 = dist(k0);
    for (int trial = 0; trial < 100; ++trial) {
        auto comb = random_comb(rng, 1 + trial % 30);
        KitePose p = standard_pose();
        for (const auto& s : comb.steps) {
            p = apply_step(p, s, t);
            const auto d = dist(kite_vertex_coords(p, t));
            for (std::size_t i = 0; i < d.size(); ++i) EXPECT_NEAR(static_cast<double>(d[i]), static_cast<double>(d0[i]), 1e-12);
        }
        for (auto it = comb.steps.rbegin(); it != comb.steps.rend(); ++it) p = apply_step(p, it->inverse(), t);
        EXPECT_EQ(p.angle, (AnglePair{0, 0}));
        expect_near(p.alpha_vertex, {0, 0}, 1e-12L);
    }
}

TEST(KiteVertexCoords, EquilateralStandardPose) {
    // Side sin(pi/3)/sin(2pi/3) = 1 at angles +-pi/3.
    const auto t = make_triangle(kPi / 3, kPi / 3, 0.1);
    const auto k = kite_vertex_coords(standard_pose(), t);
    expect_near(k.side_upper, {0.5L, std::sqrt(3.0L) / 2}, 1e-15L);
    expect_near(k.side_lower, {0.5L, -std::sqrt(3.0L) / 2}, 1e-15L);
    expect_near(k.beta_vertex, {1, 0}, 1e-15L);
}

TEST(KiteVertexCoords, UnitDiagonalAndMirrorSymmetry) {
    std::mt19937_64 rng(5);
    const auto t = make_triangle(0.52, 1.17);
    for (int trial = 0; trial < 100; ++trial) {
        const auto chain = unfold_chain(t, random_comb(rng, 1 + trial % 25));
        const auto k = kite_vertex_coords(chain.back(), t);
        EXPECT_NEAR(static_cast<double>((k.beta_vertex - k.alpha_vertex).norm()), 1.0, 1e-12);
        expect_near(mirror(k.side_upper, k.alpha_vertex, k.beta_vertex), k.side_lower, 1e-12L);
    }
}

TEST(KiteVertexCoords, TrianglesAreSubsetsOfKiteCorners) {
    std::mt19937_64 rng(6);
    const auto t = make_triangle(0.52, 1.17);
    for (int trial = 0; trial < 50; ++trial) {
        const auto comb = random_comb(rng, trial % 20);
        const auto kp = unfold_chain(t, comb).back();
        const auto k = kite_vertex_coords(kp, t);
        for (int half = 0; half < 2; ++half) {
            const TrianglePose tp{kp.angle, half, kp.alpha_vertex};
            expect_near(pose_vertex(tp, VertexId::A, t), k.alpha_vertex, 1e-15L);
            expect_near(pose_vertex(tp, VertexId::B, t), k.beta_vertex, 1e-15L);
            expect_near(pose_vertex(tp, VertexId::C, t), half == 0 ? k.side_upper : k.side_lower, 1e-15L);
        }
    }
}

TEST(GeometricLength, Examples) {
    EXPECT_EQ(geometric_length({0, 0}, {1, 0}), 1.0);
    EXPECT_EQ(geometric_length({0, 0}, {3, 4}), 5.0);
}

TEST(Combinatorics, RoundTrip) {
    const auto c = parse_combinatorics("A+,B-,A+");
    ASSERT_EQ(c.length(), 3u);
    EXPECT_EQ(to_string(c), "A+,B-,A+");
    EXPECT_EQ(parse_combinatorics(""), Combinatorics{});
    EXPECT_THROW(parse_combinatorics("A+,C-"), Error);
}

TEST(ReflectAcross, MatchesPlaneReflection) {
    // Independent check: reflect the vertex positions across the side directly.
    std::mt19937_64 rng(21);
    const auto t = make_triangle(0.66, 0.88);
    std::uniform_int_distribution<int> side(0, 2);
    TrianglePose pose = standard_triangle_pose();
    for (int step = 0; step < 200; ++step) {
        const auto opp = static_cast<VertexId>(side(rng));
        const auto [u, w] = std::pair{static_cast<VertexId>((static_cast<int>(opp) + 1) % 3),
                                      static_cast<VertexId>((static_cast<int>(opp) + 2) % 3)};
        const Vec2L pu = pose_vertex(pose, u, t);
        const Vec2L pw = pose_vertex(pose, w, t);
        const Vec2L expected = mirror(pose_vertex(pose, opp, t), pu, pw);
        const auto r = reflect_across(pose, opp, t);
        expect_near(pose_vertex(r.pose, u, t), pu, 1e-11L);
        expect_near(pose_vertex(r.pose, w, t), pw, 1e-11L);
        expect_near(pose_vertex(r.pose, opp, t), expected, 1e-11L);
        EXPECT_EQ(r.is_kite_step, opp != VertexId::C);
        EXPECT_EQ(reflect_across(r.pose, opp, t).pose.angle, pose.angle);
        pose = r.pose;
    }
}

TEST(ReflectAcross, KiteStepsReproducePose) {
    std::mt19937_64 rng(22);
    const auto t = make_triangle(0.66, 0.88);
    std::uniform_int_distribution<int> side(0, 2);
    TrianglePose pose = standard_triangle_pose();
    Combinatorics comb;
    for (int step = 1; step <= 100; ++step) {
        const auto r = reflect_across(pose, static_cast<VertexId>(side(rng)), t);
        if (r.is_kite_step) comb.steps.push_back(r.kite_step);
        pose = r.pose;
        const auto rebuilt = pose_from_combinatorics(comb, step, t);
        EXPECT_EQ(rebuilt.angle, pose.angle);
        EXPECT_EQ(rebuilt.half, pose.half);
        expect_near(rebuilt.alpha_vertex, pose.alpha_vertex, 1e-11L);
    }
}

TEST(RegimeConstants, SatisfyRecipe) {
    std::mt19937_64 rng = make_stream(9, 0);
    for (int i = 0; i < 100; ++i) {
        const auto t = random_triangle(rng);
        const auto k = regime_constants(t);
        EXPECT_LT(k.b * k.D + k.b * k.r + k.r, k.R);
        EXPECT_GT(k.b, 0);
        EXPECT_GT(k.r, 0);
        EXPECT_NEAR(k.R, std::min({static_cast<double>(t.side_length_opposite(VertexId::A)),
                                   static_cast<double>(t.side_length_opposite(VertexId::B)), 1.0}),
                    1e-15);
    }
}

TEST(RandomTriangle, StaysInClass) {
    std::mt19937_64 rng = make_stream(1, 2);
    for (int i = 0; i < 1000; ++i) {
        const auto t = random_triangle(rng, 0.05);
        EXPECT_GT(std::min({t.alpha(), t.beta(), t.gamma()}), 0.05);
    }
}
