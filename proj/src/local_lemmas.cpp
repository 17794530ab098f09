#include "billiards/local_lemmas.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace billiards {

ConnectingSegment connecting_segment(const TriangleShape& tri, const PartitionInterval& interval,
                                     const RegimeConstants& k) {
    ConnectingSegment out;
    const Cut& a = interval.lo_cut;
    const Cut& b = interval.hi_cut;
    if (a.index == b.index || !a.end || !b.end) return out;
    const Cut& low = a.index < b.index ? a : b;
    const Cut& high = a.index < b.index ? b : a;
    const int p = low.index;
    const int q = high.index;
    out.bound = q - p;
    if (!(interval.width < k.b / q)) return out;

    // Past q - p crossings the answer is a violation anyway; the slack lets
    // the report say how far off it was.
    const int cap = 2 * (q - p) + 8;
    // Rays of the interval pass the low end on the interval's side; the walk
    // turns around it from the incoming ray toward that side.
    const RoseSide turn = &low == &a ? RoseSide::Clockwise : RoseSide::CounterClockwise;
    const WalkResult w = walk_segment(tri, low.end->pose, low.end->target, high.end->endpoint, cap, turn);
    out.walk = w.kind;
    out.algebraic_length = w.crossings;
    const long double eps = 1e-9L * std::max(1.0L, high.end->endpoint.norm());
    std::ostringstream os;
    os.precision(17);
    os << "p=" << p << " q=" << q << " width=" << interval.width << " crossings=" << w.crossings;
    switch (w.kind) {
        case WalkResult::Kind::HitTarget:
            out.kind = w.crossings <= q - p ? ConnectionKind::Diagonal : ConnectionKind::Violation;
            if (out.kind == ConnectionKind::Violation) os << " (longer than q-p)";
            break;
        case WalkResult::Kind::AlongSide:
            out.algebraic_length = 0;
            out.kind = (w.hit - high.end->endpoint).norm() <= eps ? ConnectionKind::TriangleSide
                                                                  : ConnectionKind::Violation;
            if (out.kind == ConnectionKind::Violation) os << " (runs along a side past a vertex)";
            break;
        case WalkResult::Kind::HitOtherVertex:
            out.kind = ConnectionKind::Violation;
            os << " (blocked by a vertex)";
            break;
        case WalkResult::Kind::Missed:
            out.kind = ConnectionKind::Violation;
            os << " (far end is not a vertex of the unfolding)";
            break;
        case WalkResult::Kind::CrossingCap:
            out.kind = ConnectionKind::Violation;
            os << " (crossing cap)";
            break;
    }
    out.detail = os.str();
    return out;
}

ConnectingSegment connecting_segment(const TriangleShape& tri, const PartitionInterval& interval) {
    return connecting_segment(tri, interval, regime_constants(tri));
}

LengthGapCheck length_gap_check(const PartitionInterval& interval, const RegimeConstants& k) {
    LengthGapCheck c;
    const Cut& a = interval.lo_cut;
    const Cut& b = interval.hi_cut;
    if (a.index == b.index || !a.end || !b.end) return c;
    const Cut& low = a.index < b.index ? a : b;
    const Cut& high = a.index < b.index ? b : a;
    c.p = low.index;
    c.q = high.index;
    c.L_p = low.end->geometric_length;
    c.L_q = high.end->geometric_length;
    if (c.p < 1 || !(interval.width < k.b / c.p)) return c;
    c.applies = true;
    c.holds = c.L_q > c.L_p + k.r;
    return c;
}

double angle_bound_constant(const RegimeConstants& k) {
    // sin(psi) = |AB| sin(phi) / |BC| < D n phi / r, and psi is acute since
    // it faces the shorter of AB, AC; psi <= (pi/2) sin(psi) on [0, pi/2].
    return 0.5 * kPi * k.D / k.r;
}

double angle_at(const Vec2& a, const Vec2& b, const Vec2& c) {
    const Vec2 u = a - c;
    const Vec2 v = b - c;
    return std::abs(std::atan2(cross(u, v), dot(u, v)));
}

}  // namespace billiards
