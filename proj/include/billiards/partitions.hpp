#pragma once
/**
 * Indexed partitions of the angular interval at a vertex.
 *
 * Level k keeps the cut points of diagonals of algebraic length <= k, each
 * labelled by that length. The two sides of the vertex close the interval as
 * index-0 endpoints and are never counted as cuts.
 */

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "billiards/enumeration.hpp"

namespace billiards {

/// Unfolded end of the orbit behind a cut, kept so local lemmas can work
/// with the actual endpoint of the segment.
struct DiagonalEnd {
    Vec2L endpoint;
    TrianglePose pose;  // copy containing the endpoint as vertex `target`
    VertexId target = VertexId::A;
    double geometric_length = 0;
};

struct Cut {
    double direction = 0;
    int index = 0;  // 0 only for the two sides closing the interval
    std::optional<DiagonalEnd> end;
};

struct IndexedPartition {
    VertexId source = VertexId::A;
    double lo = 0;
    double hi = 0;
    int level = 0;
    Cut lo_side;
    Cut hi_side;
    std::vector<Cut> cuts;  // strictly increasing, all inside (lo, hi)
};

struct PartitionInterval {
    Cut lo_cut;
    Cut hi_cut;
    double width = 0;
};

/// Two cuts closer than this are reported as one direction found twice.
constexpr double kDuplicateDirectionTol = 1e-13;

/// Interval (0, width) with bare index-0 sides; used for synthetic partitions.
IndexedPartition trivial_partition(double width, int level = 0);

/// Levels 0..n_max from the complete diagonal list of one vertex.
std::vector<IndexedPartition> build_partitions(const TriangleShape& tri, VertexId vertex,
                                               const std::vector<GeneralizedDiagonal>& diagonals, int n_max);

std::vector<PartitionInterval> intervals(const IndexedPartition& xi);

struct RefinementViolation {
    int level = 0;
    std::size_t interval = 0;
    std::size_t new_cuts = 0;
};

/// Cuts of `fine` that refine `coarse`: returns the intervals of `coarse` that
/// receive more than one new cut. Throws NotARefinement when some coarse cut
/// is missing from `fine` or changed its index.
std::vector<RefinementViolation> observation1_violations(const IndexedPartition& coarse, const IndexedPartition& fine);

struct Lemma21Audit {
    int n = 0;
    int c = 0;
    long long q_n = 0;
    long long q_nc = 0;
    /// Q_{n+c} - 2 Q_n - 1, clamped at 0 when the hypothesis fails.
    long long required = 0;
    /// Intervals of the finer partition whose two endpoint indices lie in [n+1, n+c].
    long long found = 0;
    /// Same, with at least one endpoint index in the range.
    long long found_one_endpoint = 0;
    std::vector<PartitionInterval> witnesses;

    bool passed() const { return found >= required; }
};

Lemma21Audit lemma21_audit(const IndexedPartition& xi_n, const IndexedPartition& xi_nc);

struct GapRow {
    int level = 0;
    long long q = 0;
    double min_gap = 0;
    double fitted_a = 0;  // max(0, -ln(min_gap) / level^2)
};

struct GapReport {
    int level = 0;  // deepest level in the table
    double min_gap = 0;
    /// Running maximum of the per-level fitted a.
    double fitted_a = 0;
    std::vector<GapRow> rows;  // levels with at least one cut
};

/// Smallest interval width, sides included.
double min_gap(const IndexedPartition& xi);
GapReport gap_report(const std::vector<IndexedPartition>& levels);

// ---------------------------------------------------------------------------
// Disjoint selection from intervals anchored at disjoint base intervals.

struct Segment {
    double lo = 0;
    double hi = 0;

    double length() const { return hi - lo; }
};

enum class Anchor { Left, Right };

/// Interiors overlap (touching endpoints is allowed).
inline bool overlaps(const Segment& a, const Segment& b) { return a.lo < b.hi && b.lo < a.hi; }

/// Checks the selection hypotheses; throws PreconditionViolated naming the
/// first offending index or pair.
void check_selection_instance(const std::vector<Segment>& base, const std::vector<Segment>& anchored, double L,
                              double m, Anchor anchor);

/// Sweep from the anchored side: take the first remaining interval, drop the
/// ones overlapping it, repeat. Returns indices into `anchored`.
std::vector<std::size_t> greedy_disjoint_selection(const std::vector<Segment>& base,
                                                   const std::vector<Segment>& anchored, double L, double m,
                                                   Anchor anchor = Anchor::Left);

/// Size of a largest pairwise disjoint subfamily (earliest-end scheduling).
std::size_t max_disjoint_count(const std::vector<Segment>& segments);

// ---------------------------------------------------------------------------
// Synthetic refinement chains for property tests.

/// Levels 0..levels over (0, width); at each level every interval receives at
/// most one new cut, independently with probability `split_probability`.
std::vector<IndexedPartition> random_refinement_chain(std::mt19937_64& rng, int levels, double split_probability,
                                                      double width = 1.0);

}  // namespace billiards
