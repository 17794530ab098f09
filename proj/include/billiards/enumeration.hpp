#pragma once
/**
 * Generalized diagonals by cone-pruned breadth-first unfolding.
 *
 * From a source vertex the open angular interval I between its two sides is
 * pushed through the unfolding one edge crossing per level. Each live cone
 * sits in one unfolded triangle and is about to cross one edge. Crossing
 * exposes the image of the opposite vertex; if that vertex lies strictly
 * inside the cone a generalized diagonal is emitted and the cone splits in
 * two, otherwise the whole cone passes through one of the two new edges.
 * Hence the live cones at level k number exactly Q_k + 1.
 *
 * A trajectory terminates at the first vertex it hits; vertices lying on a
 * cone boundary (within kCollinearTol) are hidden behind the earlier cut.
 *
 * Two implementations share the per-cone kernel: an OpenMP level-synchronous
 * one and a serial depth-first reference used by the tests and the benchmark.
 */

#include <optional>
#include <span>
#include <vector>

#include "billiards/geometry.hpp"

namespace billiards {

/// Sine of the angle below which a vertex counts as lying on a cone boundary.
constexpr long double kCollinearTol = 1e-13L;

/// An open cone of directions from the source, bounded by two direction
/// vectors, lo clockwise of hi, opening < pi.
struct Cone {
    Vec2L source;
    Vec2L lo;
    Vec2L hi;

    /// Angular width hi - lo in radians.
    long double width() const;
};

struct GeneralizedDiagonal {
    VertexId source_vertex = VertexId::A;
    Combinatorics comb;
    /// Label of the triangle vertex that was hit.
    VertexId target = VertexId::A;
    /// Angle from the first side of I, so I = (0, angle at the source).
    double direction = 0;
    int algebraic_length = 0;
    double geometric_length = 0;
    /// Unfolded position of the hit vertex, standard-position frame.
    Vec2L endpoint;
    /// Unfolded triangle copy in which the hit vertex appeared.
    TrianglePose final_pose;
};

/// The open interval I at a vertex: first side clockwise of the second.
struct VertexInterval {
    VertexId source;
    Vec2L origin;
    VertexId first;   // endpoint label of the clockwise side
    VertexId second;  // endpoint label of the counterclockwise side
    Vec2L first_dir;
    Vec2L second_dir;
    double width;     // the vertex angle
};

VertexInterval vertex_interval(const TriangleShape& tri, VertexId v);

/// Direction of a point seen from the source, as an angle from the first side.
double direction_in_interval(const VertexInterval& iv, const Vec2L& point);

struct EnumerationOptions {
    int workers = 1;
    /// Keep per-level live-cone counts (cheap; on by default).
    bool record_cone_counts = true;
};

struct EnumerationResult {
    std::vector<GeneralizedDiagonal> diagonals;  // sorted by direction
    /// live_cones[k] = number of cones alive after k crossings, k = 0..n_max.
    std::vector<std::size_t> live_cones;
};

/// Largest n_max accepted; beyond it angle-pair bookkeeping could overflow int.
constexpr int kMaxSafeDepth = 1 << 24;

/// Parallel level-synchronous engine. Throws DepthOverflow past kMaxSafeDepth.
EnumerationResult enumerate_diagonals(const TriangleShape& tri, VertexId vertex, int n_max,
                                      const EnumerationOptions& opts = {});

/// Serial depth-first reference implementation (same kernel, same output).
EnumerationResult enumerate_diagonals_serial(const TriangleShape& tri, VertexId vertex, int n_max);

/// Departure direction, as an angle in the target vertex's interval, of the
/// same orbit traversed backwards.
double reverse_direction(const GeneralizedDiagonal& d, const TriangleShape& tri);
/// The orbit is its own reverse (it returns to its source along the way it left).
bool is_self_reverse(const GeneralizedDiagonal& d, const TriangleShape& tri);

struct ComplexityCounts {
    /// Q[v][k] = diagonals from vertex v with algebraic length <= k.
    std::array<std::vector<long long>, 3> Q;
    /// S[k] = self-reverse diagonals with length <= k (each appears once in the Q lists).
    std::vector<long long> S;
    /// P[k] = (Q[0][k] + Q[1][k] + Q[2][k] + S[k]) / 2, unordered orbits.
    std::vector<long long> P;
};

/// Counts from already enumerated per-vertex diagonal lists. Throws
/// InvariantViolation if the directed total does not pair up.
ComplexityCounts complexity_counts(const TriangleShape& tri,
                                   const std::array<std::vector<GeneralizedDiagonal>, 3>& per_vertex, int n_max);
ComplexityCounts complexity_counts(const TriangleShape& tri, int n_max, const EnumerationOptions& opts = {});

// ---------------------------------------------------------------------------
// Ray-sampling oracle: plain billiard flow with explicit reflections in the
// original triangle, independent of the unfolding code.

struct OracleDiagonal {
    double direction;
    int algebraic_length;
    VertexId target;
};

struct OracleResult {
    std::vector<OracleDiagonal> diagonals;  // sorted by direction
    /// Directions whose bisection did not settle on a vertex.
    std::vector<double> non_converged;
};

OracleResult ray_oracle(const TriangleShape& tri, VertexId vertex, int n_max, int rays, int workers = 1);

// ---------------------------------------------------------------------------
// Local picture at the end of a diagonal.

enum class RoseSide { Clockwise, CounterClockwise };

struct FanTriangle {
    TrianglePose pose;
    /// Label of the vertex (other than the pivot) shared with the previous fan
    /// triangle; for the first triangle, the vertex on the swept-from side.
    VertexId shared;
};

struct Rose {
    GeneralizedDiagonal diagonal;
    RoseSide side = RoseSide::Clockwise;
    std::vector<FanTriangle> fan;
    /// Direction of the formal continuation (equals the diagonal direction).
    Vec2L continuation;
    /// Total angle swept at the pivot from the incoming ray (pi at the exit triangle).
    long double swept_angle = 0;
};

Rose compute_rose(const GeneralizedDiagonal& diag, const TriangleShape& tri, RoseSide side = RoseSide::Clockwise);

struct ExitTriangle {
    AnglePair angle;
    int half = 0;  // 0 = first half of the kite, 1 = second
    VertexId pivot = VertexId::A;
    /// Oriented angle in [0, 2 pi) from the x-axis to the exit side from the pivot.
    double theta = 0;
    /// Continuation runs along the far side of the exit triangle.
    bool boundary_case = false;
};

ExitTriangle exit_triangle(const Rose& rose, const TriangleShape& tri);

// ---------------------------------------------------------------------------
// Straight walks through the unfolding starting at a vertex.

struct WalkResult {
    enum class Kind { HitTarget, HitOtherVertex, AlongSide, Missed, CrossingCap };
    Kind kind = Kind::Missed;
    int crossings = 0;
    Vec2L hit;  // vertex reached, if any
};

/// Walks the segment from `start` (vertex `start_label` of `pose`) to `target`
/// through the unfolding and reports how it ends. The unfolding around a
/// vertex is multi-sheeted, so the sheet is chosen by rotating around the
/// start vertex: in the given `sense` when set, otherwise the shorter way.
WalkResult walk_segment(const TriangleShape& tri, const TrianglePose& pose, VertexId start_label, const Vec2L& target,
                        int max_crossings, std::optional<RoseSide> sense = std::nullopt);

}  // namespace billiards
