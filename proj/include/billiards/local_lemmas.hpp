#pragma once
// Local estimates on narrow partition intervals: how far apart the two
// bounding orbits end, and what the segment joining their endpoints is.

#include <string>

#include "billiards/partitions.hpp"

namespace billiards {

enum class ConnectionKind { TriangleSide, Diagonal, OutOfRegime, Violation };

struct ConnectingSegment {
    ConnectionKind kind = ConnectionKind::OutOfRegime;
    /// Crossings of the walk from the lower-index end to the other end.
    int algebraic_length = 0;
    /// q - p for the interval.
    int bound = 0;
    WalkResult::Kind walk = WalkResult::Kind::Missed;
    std::string detail;
};

/// Width hypothesis |I| < b/q (q the larger index, both ends carrying
/// endpoints and p < q). Inside the regime the segment between the two
/// endpoints is walked through the unfolding and must be a triangle side or a
/// diagonal of length <= q - p; anything else is a Violation.
ConnectingSegment connecting_segment(const TriangleShape& tri, const PartitionInterval& interval,
                                     const RegimeConstants& k);
ConnectingSegment connecting_segment(const TriangleShape& tri, const PartitionInterval& interval);

struct LengthGapCheck {
    bool applies = false;
    bool holds = true;
    int p = 0;
    int q = 0;
    double L_p = 0;
    double L_q = 0;
};

/// For an interval with endpoint indices 1 <= p < q and width below b/p, the
/// higher-index orbit is longer by more than r.
LengthGapCheck length_gap_check(const PartitionInterval& interval, const RegimeConstants& k);

/// Slope K in psi < K * phi * n for a triangle with |AB| < |AC| < D n,
/// |BC| > r and angle phi at A; psi is the angle at C.
double angle_bound_constant(const RegimeConstants& k);

/// Angle at c of the triangle (a, b, c).
double angle_at(const Vec2& a, const Vec2& b, const Vec2& c);

}  // namespace billiards
