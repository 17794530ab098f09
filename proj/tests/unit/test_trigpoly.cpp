#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "billiards/enumeration.hpp"
#include "billiards/errors.hpp"
#include "billiards/rng.hpp"
#include "billiards/trigpoly.hpp"

using namespace billiards;

namespace {

TrigPoly random_poly(std::mt19937_64& rng, int terms, int max_freq) {
    std::uniform_int_distribution<int> f(-max_freq, max_freq);
    std::uniform_int_distribution<int> c(-5, 5);
    TrigPoly p;
    for (int t = 0; t < terms; ++t) p.add_term(f(rng), f(rng), Dyadic(c(rng)), Dyadic(BigInt(c(rng)), 1));
    return p;
}

Combinatorics random_comb(std::mt19937_64& rng, int len) {
    std::uniform_int_distribution<int> bit(0, 1);
    Combinatorics c;
    for (int i = 0; i < len; ++i) {
        c.steps.push_back({bit(rng) ? UnfoldStep::Pivot::AlphaVertex : UnfoldStep::Pivot::BetaVertex,
                           bit(rng) ? UnfoldStep::Sign::Plus : UnfoldStep::Sign::Minus});
    }
    return c;
}

// Random point of the open triangle-angle domain.
std::pair<double, double> random_angles(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.1, kPi - 0.2);
    while (true) {
        const double a = u(rng);
        const double b = u(rng);
        if (kPi - a - b > 0.1) return {a, b};
    }
}

}  // namespace

TEST(Dyadic, ArithmeticAndNormalization) {
    const Dyadic half = Dyadic(1).half();
    EXPECT_EQ(half.log2_den(), 1);
    EXPECT_EQ(half + half, Dyadic(1));
    EXPECT_TRUE((half + half).is_integer());
    EXPECT_EQ(Dyadic(BigInt(6), 2), Dyadic(BigInt(3), 1));
    EXPECT_EQ(half * Dyadic(4), Dyadic(2));
    EXPECT_EQ(to_string(Dyadic(BigInt(3), 2)), "3/2^2");
}

TEST(TpAdd, Examples) {
    const auto c = TrigPoly::cos_term(1, 0);
    EXPECT_EQ(tp_add(c, c), TrigPoly::cos_term(1, 0, 2));
    EXPECT_TRUE(tp_add(c, c * Dyadic(-1)).is_zero());
    const auto p = tp_add(TrigPoly::cos_term(2, 0) + TrigPoly::sin_term(0, 1), TrigPoly::cos_term(0, 1));
    EXPECT_EQ(p.terms().size(), 2u);  // sin(b) and cos(b) share the frequency (0,1)
    EXPECT_EQ(p.degree(), 2);
    int nonzero = 0;
    for (const auto& [f, t] : p.terms()) nonzero += !t.cos_coeff.is_zero() + !t.sin_coeff.is_zero();
    EXPECT_EQ(nonzero, 3);
}

TEST(TpMul, Examples) {
    const auto ca = TrigPoly::cos_term(1, 0);
    const auto expect_sq = TrigPoly::constant(Dyadic(1).half()) + TrigPoly::cos_term(2, 0, Dyadic(1).half());
    EXPECT_EQ(tp_mul(ca, ca), expect_sq);
    const auto expect_cs = TrigPoly::sin_term(1, 1, Dyadic(1).half()) - TrigPoly::sin_term(1, -1, Dyadic(1).half());
    EXPECT_EQ(tp_mul(ca, TrigPoly::sin_term(0, 1)), expect_cs);
    EXPECT_TRUE(tp_mul(ca, TrigPoly{}).is_zero());
}

TEST(TpEval, Examples) {
    EXPECT_EQ(tp_eval(TrigPoly::constant(1), 0.3, 2.2), 1.0L);
    EXPECT_NEAR(static_cast<double>(tp_eval(TrigPoly::cos_term(1, 0), 0, 1.7)), 1.0, 1e-18);
    const auto sq = tp_mul(TrigPoly::cos_term(1, 0), TrigPoly::cos_term(1, 0));
    EXPECT_NEAR(static_cast<double>(tp_eval(sq, kPiL / 4, 0.0)), 0.5, 1e-15);
    EXPECT_NEAR(std::cos(kPi / 4) * std::cos(kPi / 4), 0.5, 1e-15);
}

TEST(TrigPoly, FoldedFrequencies) {
    TrigPoly p;
    p.add_term(-2, 3, 1, 1);  // cos(-x) = cos x, sin(-x) = -sin x
    ASSERT_EQ(p.terms().size(), 1u);
    const auto& [f, c] = *p.terms().begin();
    EXPECT_EQ(f, (Frequency{2, -3}));
    EXPECT_EQ(c.cos_coeff, Dyadic(1));
    EXPECT_EQ(c.sin_coeff, Dyadic(-1));
    TrigPoly q;
    q.add_term(0, 0, 2, 7);  // sin(0) vanishes
    EXPECT_EQ(q, TrigPoly::constant(2));
}

TEST(TrigPoly, EvaluationHomomorphism) {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(0, 2 * kPi);
    for (int trial = 0; trial < 300; ++trial) {
        const auto p = random_poly(rng, 6, 5);
        const auto q = random_poly(rng, 6, 5);
        const long double a = u(rng);
        const long double b = u(rng);
        const long double pa = p.eval(a, b);
        const long double qa = q.eval(a, b);
        const long double sum = (p + q).eval(a, b);
        const long double prod = (p * q).eval(a, b);
        EXPECT_NEAR(static_cast<double>(sum), static_cast<double>(pa + qa), 1e-10 * (1 + std::abs(static_cast<double>(pa + qa))));
        EXPECT_NEAR(static_cast<double>(prod), static_cast<double>(pa * qa), 1e-10 * (1 + std::abs(static_cast<double>(pa * qa))));
        if (!(p * q).is_zero()) EXPECT_LE((p * q).degree(), p.degree() + q.degree());
        EXPECT_EQ(p.canonicalized(), p);
        EXPECT_EQ(p.canonicalized().canonicalized(), p.canonicalized());
    }
}

TEST(TrigPoly, JsonRoundTrip) {
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 50; ++trial) {
        auto p = random_poly(rng, 8, 9);
        p = p * p * p;  // larger dyadic denominators
        EXPECT_EQ(trigpoly_from_json(to_json(p)), p);
    }
    const auto j = to_json(TrigPoly::cos_term(1, 0) * TrigPoly::cos_term(1, 0));
    ASSERT_EQ(j.size(), 2u);
    EXPECT_EQ(j[0]["i"], 0);
    EXPECT_EQ(j[0]["log2_den"], 1);
}

TEST(SymbolicUnfold, SingleAlphaStep) {
    const auto k = symbolic_unfold(parse_combinatorics("A+"));
    EXPECT_EQ(k.beta_vertex.x_num, TrigPoly::cos_term(2, 0));
    EXPECT_EQ(k.beta_vertex.y_num, TrigPoly::sin_term(2, 0));
    EXPECT_TRUE(k.alpha_vertex.x_num.is_zero());
    EXPECT_TRUE(k.alpha_vertex.y_num.is_zero());
    EXPECT_EQ(k.beta_vertex.sin_power, 0);
}

TEST(SymbolicUnfold, TwoSteps) {
    const auto comb = parse_combinatorics("A+,B+");
    const auto k = symbolic_unfold(comb);
    EXPECT_EQ(k.alpha_vertex.x_num, TrigPoly::cos_term(2, 0) - TrigPoly::cos_term(2, 2));
    EXPECT_EQ(k.alpha_vertex.y_num, TrigPoly::sin_term(2, 0) - TrigPoly::sin_term(2, 2));
    EXPECT_TRUE(k.alpha_vertex.x_num.is_integral());
    EXPECT_LE(k.alpha_vertex.x_num.degree(), 4);
    std::mt19937_64 rng(4);
    for (int i = 0; i < 20; ++i) {
        const auto [a, b] = random_angles(rng);
        // Hand recursion: beta-vertex stays at cos 2a, alpha-vertex = that minus the new diagonal.
        const double x = std::cos(2 * a) - std::cos(2 * a + 2 * b);
        const double y = std::sin(2 * a) - std::sin(2 * a + 2 * b);
        const auto v = k.alpha_vertex.eval(a, b);
        EXPECT_NEAR(static_cast<double>(v.x), x, 1e-12);
        EXPECT_NEAR(static_cast<double>(v.y), y, 1e-12);
    }
}

TEST(SymbolicUnfold, DegreeIntegralityAndNumericAgreement) {
    // Degree bound in terms of the number of kites n = steps + 1: 2n - 2.
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 300; ++trial) {
        const int steps = 1 + trial % 30;
        const auto comb = random_comb(rng, steps);
        const auto k = symbolic_unfold(comb);
        for (const auto* c : {&k.alpha_vertex, &k.beta_vertex}) {
            EXPECT_TRUE(c->x_num.is_integral());
            EXPECT_TRUE(c->y_num.is_integral());
            EXPECT_LE(c->x_num.degree(), 2 * steps);
            EXPECT_LE(c->y_num.degree(), 2 * steps);
        }
        const auto [a, b] = random_angles(rng);
        const auto t = make_triangle(a, b, 0.01);
        const auto kc = kite_vertex_coords(unfold_chain(t, comb).back(), t);
        const auto av = k.alpha_vertex.eval(t);
        const auto bv = k.beta_vertex.eval(t);
        EXPECT_NEAR(static_cast<double>(av.x), static_cast<double>(kc.alpha_vertex.x), 1e-9);
        EXPECT_NEAR(static_cast<double>(av.y), static_cast<double>(kc.alpha_vertex.y), 1e-9);
        EXPECT_NEAR(static_cast<double>(bv.x), static_cast<double>(kc.beta_vertex.x), 1e-9);
        EXPECT_NEAR(static_cast<double>(bv.y), static_cast<double>(kc.beta_vertex.y), 1e-9);
    }
}

TEST(SymbolicSideVertex, SingleStepUsesAlphaVertex) {
    const auto comb = parse_combinatorics("B-");
    const auto k = symbolic_unfold(comb);
    const auto up = symbolic_side_vertex(comb, SideVertex::Upper);
    const auto lo = symbolic_side_vertex(comb, SideVertex::Lower);
    EXPECT_EQ(up.P, k.alpha_vertex.x_num);
    EXPECT_EQ(up.Q, k.alpha_vertex.y_num);
    EXPECT_EQ(up.m, k.angle.m + 1);
    EXPECT_EQ(lo.m, k.angle.m - 1);
    EXPECT_EQ(up.l, k.angle.l);
}

TEST(SymbolicSideVertex, MatchesKiteCoordinates) {
    std::mt19937_64 rng(6);
    for (int trial = 0; trial < 50; ++trial) {
        const int steps = 3 + trial % 20;
        const auto comb = random_comb(rng, steps);
        const auto up = symbolic_side_vertex(comb, SideVertex::Upper);
        const auto lo = symbolic_side_vertex(comb, SideVertex::Lower);
        EXPECT_LE(std::abs(up.m) + std::abs(up.l), 2 * steps + 1);
        EXPECT_LE(std::abs(lo.m) + std::abs(lo.l), 2 * steps + 1);
        for (int i = 0; i < 20; ++i) {
            const auto [a, b] = random_angles(rng);
            const auto t = make_triangle(a, b, 0.01);
            const auto kc = kite_vertex_coords(unfold_chain(t, comb).back(), t);
            const auto u = up.eval(t);
            const auto l = lo.eval(t);
            EXPECT_NEAR(static_cast<double>(u.x), static_cast<double>(kc.side_upper.x), 1e-9);
            EXPECT_NEAR(static_cast<double>(u.y), static_cast<double>(kc.side_upper.y), 1e-9);
            EXPECT_NEAR(static_cast<double>(l.x), static_cast<double>(kc.side_lower.x), 1e-9);
            EXPECT_NEAR(static_cast<double>(l.y), static_cast<double>(kc.side_lower.y), 1e-9);
        }
    }
}

TEST(AreaPolynomial, UnitRightTriangle) {
    SymbolicCoords A;
    SymbolicCoords B;
    B.x_num = TrigPoly::constant(1);
    SymbolicCoords C;
    C.y_num = TrigPoly::constant(1);
    const auto M = area_polynomial(A, B, C);
    // 2 * (1/2) * sin^2(a+b) = 1/2 - 1/2 cos(2a+2b)
    EXPECT_EQ(M, TrigPoly::constant(Dyadic(1).half()) - TrigPoly::cos_term(2, 2, Dyadic(1).half()));
    EXPECT_FALSE(M.is_zero());
    EXPECT_EQ(M.max_log2_den(), 1);
}

TEST(AreaPolynomial, IdenticalDiagonalsAreDegenerate) {
    const auto P = symbolic_triangle_vertex(parse_combinatorics("A+,B-"), 1, VertexId::C);
    try {
        area_polynomial(symbolic_standard_vertex(VertexId::A), P, P);
        FAIL() << "expected DegenerateInput";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::DegenerateInput);
    }
}

TEST(AreaPolynomial, MatchesNumericShoelaceOnEnumeratedPairs) {
    // Oracle: twice the signed area of (source, P, Q) from the engine's
    // unfolded endpoints, independent of the symbolic construction.
    std::mt19937_64 rng = make_stream(77, 0);
    int checked = 0;
    for (int trial = 0; trial < 10; ++trial) {
        const auto t = random_triangle(rng);
        for (int v = 0; v < 3; ++v) {
            const auto vid = static_cast<VertexId>(v);
            const auto diags = enumerate_diagonals(t, vid, 6).diagonals;
            for (std::size_t i = 0; i + 1 < diags.size(); ++i) {
                const auto& d1 = diags[i];
                const auto& d2 = diags[i + 1];
                const auto S = symbolic_standard_vertex(vid);
                const auto P = symbolic_triangle_vertex(d1.comb, d1.final_pose.half, d1.target);
                const auto Q = symbolic_triangle_vertex(d2.comb, d2.final_pose.half, d2.target);
                const auto M = area_polynomial(S, P, Q);
                EXPECT_LE(M.degree(), 4 * (std::max(d1.algebraic_length, d2.algebraic_length) + 1));
                const Vec2L o = t.vertex(vid);
                const long double twice_area = cross(d1.endpoint - o, d2.endpoint - o);
                const long double s = std::sin(t.alpha_l() + t.beta_l());
                EXPECT_NEAR(static_cast<double>(M.eval(t) / (s * s)), static_cast<double>(twice_area), 1e-9);
                ++checked;
            }
        }
    }
    EXPECT_GT(checked, 50);
}

TEST(SymbolicTriangleVertex, MatchesEngineEndpoints) {
    std::mt19937_64 rng = make_stream(78, 0);
    for (int trial = 0; trial < 10; ++trial) {
        const auto t = random_triangle(rng);
        for (int v = 0; v < 3; ++v) {
            for (const auto& d : enumerate_diagonals(t, static_cast<VertexId>(v), 10).diagonals) {
                const auto p = symbolic_triangle_vertex(d.comb, d.final_pose.half, d.target).eval(t);
                EXPECT_NEAR(static_cast<double>(p.x), static_cast<double>(d.endpoint.x), 1e-9);
                EXPECT_NEAR(static_cast<double>(p.y), static_cast<double>(d.endpoint.y), 1e-9);
            }
        }
    }
}

TEST(Compile, AgreesWithExactEvaluation) {
    std::mt19937_64 rng(8);
    const auto p = random_poly(rng, 10, 7);
    const auto c = compile(p);
    double sum = 0;
    const double a = 0.77;
    const double b = 1.91;
    for (const auto& t : c.terms) sum += t.c * std::cos(t.i * a + t.j * b) + t.s * std::sin(t.i * a + t.j * b);
    EXPECT_NEAR(sum, static_cast<double>(p.eval(a, b)), 1e-12);
}
