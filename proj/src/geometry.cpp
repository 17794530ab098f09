#include "billiards/geometry.hpp"

#include <algorithm>
#include <sstream>

#include "billiards/errors.hpp"

namespace billiards {

std::string_view vertex_name(VertexId v) {
    switch (v) {
        case VertexId::A: return "V0";
        case VertexId::B: return "V1";
        case VertexId::C: return "V2";
    }
    return "V?";
}

VertexId parse_vertex(std::string_view s) {
    if (s == "V0" || s == "A" || s == "0") return VertexId::A;
    if (s == "V1" || s == "B" || s == "1") return VertexId::B;
    if (s == "V2" || s == "C" || s == "2") return VertexId::C;
    throw Error(ErrorCode::ParseError, "unknown vertex '" + std::string(s) + "'");
}

TriangleShape make_triangle_long(long double alpha, long double beta, double delta) {
    if (!(delta >= 0.0)) {
        throw Error(ErrorCode::AngleOutOfRange, "delta must be nonnegative");
    }
    const long double gamma = kPiL - alpha - beta;
    std::ostringstream msg;
    msg.precision(17);
    if (!(alpha > 0 && beta > 0 && gamma > 0)) {
        msg << "angles (" << static_cast<double>(alpha) << ", " << static_cast<double>(beta)
            << ") do not form a triangle";
        throw Error(ErrorCode::AngleOutOfRange, msg.str());
    }
    if (!(alpha > delta && beta > delta && gamma > delta)) {
        msg << "angles (" << static_cast<double>(alpha) << ", " << static_cast<double>(beta) << ", "
            << static_cast<double>(gamma) << ") not all above delta=" << delta;
        throw Error(ErrorCode::AngleOutOfRange, msg.str());
    }
    TriangleShape t;
    t.alpha_ = alpha;
    t.beta_ = beta;
    t.gamma_ = gamma;
    t.delta_ = delta;
    t.side_ratio_ = std::sin(beta) / std::sin(alpha + beta);
    return t;
}

TriangleShape make_triangle(double alpha, double beta, double delta) {
    return make_triangle_long(alpha, beta, delta);
}

TriangleShape make_rational_triangle(int p1, int q1, int p2, int q2, double delta) {
    if (q1 <= 0 || q2 <= 0) {
        throw Error(ErrorCode::AngleOutOfRange, "rational angle denominators must be positive");
    }
    return make_triangle_long(kPiL * p1 / q1, kPiL * p2 / q2, delta);
}

long double TriangleShape::angle_at(VertexId v) const {
    switch (v) {
        case VertexId::A: return alpha_;
        case VertexId::B: return beta_;
        case VertexId::C: return gamma_;
    }
    return 0;
}

long double TriangleShape::side_length_opposite(VertexId v) const {
    // law of sines with |AB| = 1 = sin(gamma)/sin(gamma)
    const long double s = std::sin(alpha_ + beta_);
    switch (v) {
        case VertexId::A: return std::sin(alpha_) / s;
        case VertexId::B: return std::sin(beta_) / s;
        case VertexId::C: return 1.0L;
    }
    return 0;
}

Vec2L TriangleShape::vertex(VertexId v) const {
    switch (v) {
        case VertexId::A: return {0, 0};
        case VertexId::B: return {1, 0};
        case VertexId::C: return {side_ratio_ * std::cos(alpha_), side_ratio_ * std::sin(alpha_)};
    }
    return {};
}

double TriangleShape::diameter() const {
    return static_cast<double>(std::max({side_length_opposite(VertexId::A), side_length_opposite(VertexId::B),
                                         side_length_opposite(VertexId::C)}));
}

double TriangleShape::min_side() const {
    return static_cast<double>(std::min({side_length_opposite(VertexId::A), side_length_opposite(VertexId::B),
                                         side_length_opposite(VertexId::C)}));
}

long double reduced_angle(const TriangleShape& tri, AnglePair a, int extra_alpha) {
    const long double raw = static_cast<long double>(a.m + extra_alpha) * tri.alpha_l() +
                            static_cast<long double>(a.l) * tri.beta_l();
    return std::remainder(raw, 2.0L * kPiL);
}

CosSin evaluate_angle(const TriangleShape& tri, AnglePair a, int extra_alpha) {
    const long double phi = reduced_angle(tri, a, extra_alpha);
    return {std::cos(phi), std::sin(phi)};
}

namespace {

char step_letter(UnfoldStep::Pivot p) { return p == UnfoldStep::Pivot::AlphaVertex ? 'A' : 'B'; }

}  // namespace

std::string to_string(const Combinatorics& comb) {
    std::string out;
    out.reserve(comb.steps.size() * 3);
    for (std::size_t i = 0; i < comb.steps.size(); ++i) {
        if (i) out += ',';
        out += step_letter(comb.steps[i].pivot);
        out += comb.steps[i].sign == UnfoldStep::Sign::Plus ? '+' : '-';
    }
    return out;
}

Combinatorics parse_combinatorics(std::string_view text) {
    Combinatorics comb;
    if (text.empty()) return comb;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto end = std::min(text.find(',', pos), text.size());
        const auto tok = text.substr(pos, end - pos);
        if (tok.size() != 2 || (tok[0] != 'A' && tok[0] != 'B') || (tok[1] != '+' && tok[1] != '-')) {
            throw Error(ErrorCode::ParseError, "bad combinatorics token '" + std::string(tok) + "'");
        }
        comb.steps.push_back({tok[0] == 'A' ? UnfoldStep::Pivot::AlphaVertex : UnfoldStep::Pivot::BetaVertex,
                              tok[1] == '+' ? UnfoldStep::Sign::Plus : UnfoldStep::Sign::Minus});
        if (end == text.size()) break;
        pos = end + 1;
    }
    return comb;
}

KitePose standard_pose() { return {}; }

KitePose apply_step(const KitePose& pose, UnfoldStep step, const TriangleShape& tri) {
    KitePose next = pose;
    next.depth = pose.depth + 1;
    const int s = step.sign_value();
    if (step.pivot == UnfoldStep::Pivot::AlphaVertex) {
        next.angle.m += 2 * s;
        return next;
    }
    const auto [c0, s0] = evaluate_angle(tri, pose.angle);
    const Vec2L beta_vertex = pose.alpha_vertex + Vec2L{c0, s0};
    next.angle.l += 2 * s;
    const auto [c1, s1] = evaluate_angle(tri, next.angle);
    next.alpha_vertex = beta_vertex - Vec2L{c1, s1};
    return next;
}

std::vector<KitePose> unfold_chain(const TriangleShape& tri, const Combinatorics& comb) {
    std::vector<KitePose> chain;
    chain.reserve(comb.length() + 1);
    chain.push_back(standard_pose());
    for (const auto& step : comb.steps) {
        chain.push_back(apply_step(chain.back(), step, tri));
    }
    return chain;
}

KiteCorners kite_vertex_coords(const KitePose& pose, const TriangleShape& tri) {
    const auto diag = evaluate_angle(tri, pose.angle);
    const auto up = evaluate_angle(tri, pose.angle, +1);
    const auto lo = evaluate_angle(tri, pose.angle, -1);
    const long double rho = tri.side_ratio();
    return {pose.alpha_vertex, pose.alpha_vertex + Vec2L{diag.c, diag.s},
            pose.alpha_vertex + Vec2L{rho * up.c, rho * up.s}, pose.alpha_vertex + Vec2L{rho * lo.c, rho * lo.s}};
}

double geometric_length(const Vec2& a, const Vec2& b) { return (b - a).norm(); }

TrianglePose standard_triangle_pose() { return {}; }

Vec2L pose_vertex(const TrianglePose& pose, VertexId v, const TriangleShape& tri) {
    switch (v) {
        case VertexId::A: return pose.alpha_vertex;
        case VertexId::B: {
            const auto cs = evaluate_angle(tri, pose.angle);
            return pose.alpha_vertex + Vec2L{cs.c, cs.s};
        }
        case VertexId::C: {
            const auto cs = evaluate_angle(tri, pose.angle, pose.half == 0 ? 1 : -1);
            const long double rho = tri.side_ratio();
            return pose.alpha_vertex + Vec2L{rho * cs.c, rho * cs.s};
        }
    }
    return {};
}

Reflection reflect_across(const TrianglePose& pose, VertexId opposite, const TriangleShape& tri) {
    Reflection out;
    out.pose = pose;
    out.pose.half = 1 - pose.half;
    const int orient = pose.half == 0 ? 1 : -1;
    switch (opposite) {
        case VertexId::C:  // side AB: same kite, other half
            break;
        case VertexId::B:  // side AC: rotation about the alpha-vertex
            out.pose.angle.m += 2 * orient;
            out.is_kite_step = true;
            out.kite_step = {UnfoldStep::Pivot::AlphaVertex, orient > 0 ? UnfoldStep::Sign::Plus : UnfoldStep::Sign::Minus};
            break;
        case VertexId::A: {  // side BC: rotation about the beta-vertex
            const Vec2L beta_vertex = pose_vertex(pose, VertexId::B, tri);
            out.pose.angle.l -= 2 * orient;
            const auto cs = evaluate_angle(tri, out.pose.angle);
            out.pose.alpha_vertex = beta_vertex - Vec2L{cs.c, cs.s};
            out.is_kite_step = true;
            out.kite_step = {UnfoldStep::Pivot::BetaVertex, orient > 0 ? UnfoldStep::Sign::Minus : UnfoldStep::Sign::Plus};
            break;
        }
    }
    return out;
}

TrianglePose pose_from_combinatorics(const Combinatorics& comb, int reflections, const TriangleShape& tri) {
    const auto chain = unfold_chain(tri, comb);
    TrianglePose pose;
    pose.angle = chain.back().angle;
    pose.alpha_vertex = chain.back().alpha_vertex;
    pose.half = reflections % 2;
    return pose;
}

RegimeConstants regime_constants(const TriangleShape& tri) {
    // p reflections give p+1 chords, each shorter than the diameter, and p+1 <= 2p.
    const double D = 2.0 * tri.diameter();
    const double R = tri.min_side();
    return {D, R, R / (4.0 * D), R / 4.0};
}

}  // namespace billiards
