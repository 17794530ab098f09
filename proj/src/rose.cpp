// Fans of triangle copies around a vertex of the unfolding, and straight
// walks through the unfolding.

#include <algorithm>
#include <cmath>

#include "billiards/enumeration.hpp"
#include "billiards/errors.hpp"

namespace billiards {

namespace {

constexpr long double kAngleTol = 1e-12L;
constexpr int kMaxFan = 100000;

long double angle_between(const Vec2L& from, const Vec2L& to) { return std::atan2(cross(from, to), dot(from, to)); }

std::pair<VertexId, VertexId> others(VertexId v) {
    const int i = static_cast<int>(v);
    return {static_cast<VertexId>((i + 1) % 3), static_cast<VertexId>((i + 2) % 3)};
}

}  // namespace

Rose compute_rose(const GeneralizedDiagonal& diag, const TriangleShape& tri, RoseSide side) {
    Rose rose;
    rose.diagonal = diag;
    rose.side = side;
    const Vec2L P = diag.endpoint;
    const Vec2L d = diag.endpoint - tri.vertex(diag.source_vertex);
    rose.continuation = d * (1.0L / d.norm());
    // psi grows away from the incoming ray towards the continuation on the chosen side.
    const long double s = side == RoseSide::Clockwise ? 1.0L : -1.0L;
    const Vec2L back = -d;
    const long double omega = tri.angle_at(diag.target);

    TrianglePose pose = diag.final_pose;
    auto [x, y] = others(diag.target);
    long double px = s * angle_between(back, pose_vertex(pose, x, tri) - P);
    long double py = s * angle_between(back, pose_vertex(pose, y, tri) - P);
    VertexId upper = px > py ? x : y;
    VertexId lower = px > py ? y : x;
    long double psi_upper = std::max(px, py);
    rose.fan.push_back({pose, lower});
    while (psi_upper < kPiL - kAngleTol) {
        if (static_cast<int>(rose.fan.size()) >= kMaxFan) {
            throw Error(ErrorCode::IterationCap, "rose did not reach the continuation");
        }
        pose = reflect_across(pose, lower, tri).pose;
        // The edge (pivot, upper) is fixed; the reflected lower vertex becomes the new upper one.
        std::swap(upper, lower);
        psi_upper += omega;
        rose.fan.push_back({pose, lower});
    }
    rose.swept_angle = psi_upper;
    return rose;
}

ExitTriangle exit_triangle(const Rose& rose, const TriangleShape& tri) {
    if (rose.fan.empty()) throw Error(ErrorCode::PreconditionViolated, "empty rose");
    const FanTriangle& last = rose.fan.back();
    ExitTriangle e;
    e.angle = last.pose.angle;
    e.half = last.pose.half;
    e.pivot = rose.diagonal.target;
    const Vec2L edge = pose_vertex(last.pose, last.shared, tri) - rose.diagonal.endpoint;
    long double th = std::atan2(edge.y, edge.x);
    if (th < 0) th += 2 * kPiL;
    if (th >= 2 * kPiL) th -= 2 * kPiL;
    e.theta = static_cast<double>(th);
    e.boundary_case = std::abs(rose.swept_angle - kPiL) <= kAngleTol;
    return e;
}

WalkResult walk_segment(const TriangleShape& tri, const TrianglePose& start_pose, VertexId start_label,
                        const Vec2L& target, int max_crossings, std::optional<RoseSide> sense) {
    WalkResult r;
    const Vec2L S = pose_vertex(start_pose, start_label, tri);
    const Vec2L d = target - S;
    const long double eps = 1e-9L * std::max(1.0L, target.norm());
    if (d.norm() <= eps) throw Error(ErrorCode::DegenerateInput, "walk to the starting vertex");
    const long double omega = tri.angle_at(start_label);

    // Rotate around S until the sector at S contains d.
    TrianglePose pose = start_pose;
    auto [cw, ccw] = others(start_label);
    {
        const Vec2L a = pose_vertex(pose, cw, tri) - S;
        const Vec2L b = pose_vertex(pose, ccw, tri) - S;
        if (cross(a, b) < 0) std::swap(cw, ccw);
    }
    const int max_turns = static_cast<int>(2 * kPiL / omega) + 4;
    for (int turn = 0;; ++turn) {
        if (turn > max_turns) throw Error(ErrorCode::IterationCap, "no sector contains the walk direction");
        const Vec2L a = pose_vertex(pose, cw, tri) - S;
        long double th = angle_between(d, a);  // angle of the cw side, CCW from d
        if (th < 0) th += 2 * kPiL;
        const long double top = th + omega;
        if (th <= kAngleTol || th >= 2 * kPiL - kAngleTol || std::abs(top - 2 * kPiL) <= kAngleTol) {
            r.kind = WalkResult::Kind::AlongSide;
            r.hit = pose_vertex(pose, th <= kAngleTol || th >= 2 * kPiL - kAngleTol ? cw : ccw, tri);
            return r;
        }
        if (top > 2 * kPiL) break;
        const bool clockwise = sense ? *sense == RoseSide::Clockwise : th < kPiL;
        if (clockwise) {
            // Move the sector clockwise: reflect across the cw side.
            pose = reflect_across(pose, ccw, tri).pose;
            std::swap(cw, ccw);
        } else {
            pose = reflect_across(pose, cw, tri).pose;
            std::swap(cw, ccw);
        }
    }

    auto inside = [&](const Vec2L& p, const Vec2L& q, const Vec2L& z) {
        // Closed triangle p, q, z with the target allowed eps slack.
        const long double area = cross(q - p, z - p);
        const long double sg = area > 0 ? 1 : -1;
        const long double tol = eps * std::max({(q - p).norm(), (z - q).norm(), (p - z).norm()});
        return sg * cross(q - p, target - p) >= -tol && sg * cross(z - q, target - q) >= -tol &&
               sg * cross(p - z, target - z) >= -tol;
    };

    Vec2L right = pose_vertex(pose, cw, tri);
    Vec2L left = pose_vertex(pose, ccw, tri);
    VertexId right_label = cw;
    VertexId left_label = ccw;
    if (inside(S, right, left)) {
        r.kind = WalkResult::Kind::Missed;
        return r;
    }
    const long double dn = d.norm();
    while (true) {
        if (r.crossings >= max_crossings) {
            r.kind = WalkResult::Kind::CrossingCap;
            return r;
        }
        const VertexId hidden = third_vertex(right_label, left_label);
        pose = reflect_across(pose, hidden, tri).pose;
        const Vec2L x = pose_vertex(pose, hidden, tri);
        ++r.crossings;
        if ((x - target).norm() <= eps) {
            r.kind = WalkResult::Kind::HitTarget;
            r.hit = x;
            return r;
        }
        if (inside(right, left, x)) {
            r.kind = WalkResult::Kind::Missed;
            return r;
        }
        const Vec2L dx = x - S;
        const long double sine = cross(d, dx) / (dn * dx.norm());
        if (std::abs(sine) <= kAngleTol && dot(d, dx) > 0) {
            r.kind = WalkResult::Kind::HitOtherVertex;
            r.hit = x;
            return r;
        }
        if (sine < 0) {
            right = x;
            right_label = hidden;
        } else {
            left = x;
            left_label = hidden;
        }
    }
}

}  // namespace billiards
