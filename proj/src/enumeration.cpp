#include "billiards/enumeration.hpp"

#include <algorithm>
#include <omp.h>

#include "billiards/errors.hpp"
#include "enumeration_kernel.hpp"

namespace billiards {

long double Cone::width() const { return std::atan2(cross(lo, hi), dot(lo, hi)); }

VertexInterval vertex_interval(const TriangleShape& tri, VertexId v) {
    // Standard position is counterclockwise A, B, C, so the clockwise side at
    // each vertex leads to the cyclically next label.
    const auto first = static_cast<VertexId>((static_cast<int>(v) + 1) % 3);
    const auto second = static_cast<VertexId>((static_cast<int>(v) + 2) % 3);
    VertexInterval iv;
    iv.source = v;
    iv.origin = tri.vertex(v);
    iv.first = first;
    iv.second = second;
    iv.first_dir = tri.vertex(first) - iv.origin;
    iv.second_dir = tri.vertex(second) - iv.origin;
    iv.width = static_cast<double>(tri.angle_at(v));
    return iv;
}

double direction_in_interval(const VertexInterval& iv, const Vec2L& point) {
    const Vec2L d = point - iv.origin;
    return static_cast<double>(std::atan2(cross(iv.first_dir, d), dot(iv.first_dir, d)));
}

namespace detail {

Beam root_beam(const TriangleShape& tri, const VertexInterval& iv) {
    Beam b;
    b.lo = iv.first_dir;
    b.hi = iv.second_dir;
    b.pose = standard_triangle_pose();
    b.u_label = iv.first;
    b.w_label = iv.second;
    b.u = tri.vertex(iv.first);
    b.w = tri.vertex(iv.second);
    return b;
}

namespace {

long double normalized_sine(const Vec2L& a, const Vec2L& b) { return cross(a, b) / (a.norm() * b.norm()); }

}  // namespace

Expansion expand(const Beam& beam, const TriangleShape& tri, const VertexInterval& iv) {
    Expansion out;
    const VertexId hidden = third_vertex(beam.u_label, beam.w_label);
    const Reflection refl = reflect_across(beam.pose, hidden, tri);
    const Vec2L x = pose_vertex(refl.pose, hidden, tri);
    const Vec2L dx = x - iv.origin;

    Beam child;
    child.pose = refl.pose;
    child.has_step = refl.is_kite_step;
    child.step = refl.kite_step;

    const long double s_lo = normalized_sine(beam.lo, dx);
    const long double s_hi = normalized_sine(dx, beam.hi);
    if (s_lo > kCollinearTol && s_hi > kCollinearTol) {
        out.hit = Hit{x, hidden, refl.pose, refl.is_kite_step, refl.kite_step};
        Beam left = child;
        left.lo = beam.lo;
        left.hi = dx;
        left.u_label = beam.u_label;
        left.u = beam.u;
        left.w_label = hidden;
        left.w = x;
        Beam right = child;
        right.lo = dx;
        right.hi = beam.hi;
        right.u_label = hidden;
        right.u = x;
        right.w_label = beam.w_label;
        right.w = beam.w;
        out.children[0] = left;
        out.children[1] = right;
        out.count = 2;
        return out;
    }
    child.lo = beam.lo;
    child.hi = beam.hi;
    if (s_lo <= kCollinearTol) {
        // x at or clockwise of the cone: rays leave through edge (x, w)
        child.u_label = hidden;
        child.u = x;
        child.w_label = beam.w_label;
        child.w = beam.w;
    } else {
        child.u_label = beam.u_label;
        child.u = beam.u;
        child.w_label = hidden;
        child.w = x;
    }
    out.children[0] = child;
    out.count = 1;
    return out;
}

GeneralizedDiagonal make_diagonal(const Hit& hit, Combinatorics comb, int length, const VertexInterval& iv) {
    GeneralizedDiagonal d;
    d.source_vertex = iv.source;
    if (hit.has_step) comb.steps.push_back(hit.step);
    d.comb = std::move(comb);
    d.target = hit.label;
    d.direction = direction_in_interval(iv, hit.point);
    d.algebraic_length = length;
    d.geometric_length = static_cast<double>((hit.point - iv.origin).norm());
    d.endpoint = hit.point;
    d.final_pose = hit.pose;
    return d;
}

void sort_by_direction(std::vector<GeneralizedDiagonal>& diags) {
    std::sort(diags.begin(), diags.end(), [](const GeneralizedDiagonal& a, const GeneralizedDiagonal& b) {
        if (a.direction != b.direction) return a.direction < b.direction;
        return a.algebraic_length < b.algebraic_length;
    });
}

void check_depth(int n_max) {
    if (n_max < 0) throw Error(ErrorCode::PreconditionViolated, "n_max must be nonnegative");
    if (n_max > kMaxSafeDepth) {
        throw Error(ErrorCode::DepthOverflow,
                    "n_max=" + std::to_string(n_max) + " exceeds max safe depth " + std::to_string(kMaxSafeDepth));
    }
}

}  // namespace detail

EnumerationResult enumerate_diagonals(const TriangleShape& tri, VertexId vertex, int n_max,
                                      const EnumerationOptions& opts) {
    detail::check_depth(n_max);
    const VertexInterval iv = vertex_interval(tri, vertex);
    const int workers = std::max(1, opts.workers);

    struct Emitted {
        int level;  // level of the beam that produced the hit
        std::size_t beam;
        detail::Hit hit;
    };

    std::vector<std::vector<detail::Beam>> levels;
    levels.reserve(static_cast<std::size_t>(n_max) + 1);
    levels.push_back({detail::root_beam(tri, iv)});
    std::vector<Emitted> emitted;

    for (int k = 0; k < n_max; ++k) {
        const auto& cur = levels[static_cast<std::size_t>(k)];
        const auto n = static_cast<std::ptrdiff_t>(cur.size());
        std::vector<detail::Expansion> outs(cur.size());
#pragma omp parallel for num_threads(workers) schedule(dynamic, 64)
        for (std::ptrdiff_t i = 0; i < n; ++i) {
            outs[static_cast<std::size_t>(i)] = detail::expand(cur[static_cast<std::size_t>(i)], tri, iv);
        }
        // Serial compaction keeps the (depth, lo) order independent of the worker count.
        std::vector<detail::Beam> next;
        next.reserve(cur.size() + cur.size() / 4 + 1);
        for (std::size_t i = 0; i < outs.size(); ++i) {
            auto& o = outs[i];
            for (int c = 0; c < o.count; ++c) {
                o.children[c].parent = static_cast<std::int64_t>(i);
                next.push_back(o.children[c]);
            }
            if (o.hit) emitted.push_back({k, i, *o.hit});
        }
        levels.push_back(std::move(next));
    }

    EnumerationResult result;
    if (opts.record_cone_counts) {
        result.live_cones.reserve(levels.size());
        for (const auto& lv : levels) result.live_cones.push_back(lv.size());
    }

    result.diagonals.resize(emitted.size());
    const auto ne = static_cast<std::ptrdiff_t>(emitted.size());
#pragma omp parallel for num_threads(workers) schedule(dynamic, 64)
    for (std::ptrdiff_t e = 0; e < ne; ++e) {
        const auto& em = emitted[static_cast<std::size_t>(e)];
        std::vector<UnfoldStep> rev;
        int level = em.level;
        auto idx = static_cast<std::int64_t>(em.beam);
        while (level > 0) {
            const auto& b = levels[static_cast<std::size_t>(level)][static_cast<std::size_t>(idx)];
            if (b.has_step) rev.push_back(b.step);
            idx = b.parent;
            --level;
        }
        Combinatorics comb{{rev.rbegin(), rev.rend()}};
        result.diagonals[static_cast<std::size_t>(e)] = detail::make_diagonal(em.hit, std::move(comb), em.level + 1, iv);
    }
    detail::sort_by_direction(result.diagonals);
    return result;
}

EnumerationResult enumerate_diagonals_serial(const TriangleShape& tri, VertexId vertex, int n_max) {
    detail::check_depth(n_max);
    const VertexInterval iv = vertex_interval(tri, vertex);
    EnumerationResult result;
    result.live_cones.assign(static_cast<std::size_t>(n_max) + 1, 0);

    struct Frame {
        detail::Beam beam;
        int level;
        std::size_t path_len;
    };
    std::vector<UnfoldStep> path;
    std::vector<Frame> stack{{detail::root_beam(tri, iv), 0, 0}};
    while (!stack.empty()) {
        Frame f = std::move(stack.back());
        stack.pop_back();
        path.resize(f.path_len);
        if (f.level > 0 && f.beam.has_step) path.push_back(f.beam.step);
        ++result.live_cones[static_cast<std::size_t>(f.level)];
        if (f.level == n_max) continue;
        const auto ex = detail::expand(f.beam, tri, iv);
        if (ex.hit) {
            result.diagonals.push_back(detail::make_diagonal(*ex.hit, Combinatorics{path}, f.level + 1, iv));
        }
        for (int c = ex.count - 1; c >= 0; --c) stack.push_back({ex.children[c], f.level + 1, path.size()});
    }
    detail::sort_by_direction(result.diagonals);
    return result;
}

double reverse_direction(const GeneralizedDiagonal& d, const TriangleShape& tri) {
    // Map the arrival direction back through the final copy's linear part
    // R(phi) F^half, then flip it.
    const Vec2L arrival = d.endpoint - tri.vertex(d.source_vertex);
    const auto cs = evaluate_angle(tri, d.final_pose.angle);
    Vec2L u{cs.c * arrival.x + cs.s * arrival.y, -cs.s * arrival.x + cs.c * arrival.y};
    if (d.final_pose.half == 1) u.y = -u.y;
    const VertexInterval iv = vertex_interval(tri, d.target);
    return direction_in_interval(iv, iv.origin - u);
}

bool is_self_reverse(const GeneralizedDiagonal& d, const TriangleShape& tri) {
    return d.target == d.source_vertex && std::abs(reverse_direction(d, tri) - d.direction) < 1e-9;
}

ComplexityCounts complexity_counts(const TriangleShape& tri,
                                   const std::array<std::vector<GeneralizedDiagonal>, 3>& per_vertex, int n_max) {
    ComplexityCounts out;
    const auto len = static_cast<std::size_t>(n_max) + 1;
    out.S.assign(len, 0);
    for (int v = 0; v < 3; ++v) {
        auto& q = out.Q[static_cast<std::size_t>(v)];
        q.assign(len, 0);
        for (const auto& d : per_vertex[static_cast<std::size_t>(v)]) {
            if (d.algebraic_length > n_max) continue;
            const auto k = static_cast<std::size_t>(d.algebraic_length);
            ++q[k];
            if (is_self_reverse(d, tri)) ++out.S[k];
        }
    }
    for (std::size_t k = 1; k < len; ++k) {
        for (auto& q : out.Q) q[k] += q[k - 1];
        out.S[k] += out.S[k - 1];
    }
    out.P.assign(len, 0);
    for (std::size_t k = 0; k < len; ++k) {
        const long long sum = out.Q[0][k] + out.Q[1][k] + out.Q[2][k] + out.S[k];
        if (sum % 2 != 0) {
            throw Error(ErrorCode::InvariantViolation,
                        "directed diagonals of length <= " + std::to_string(k) + " do not pair with their reverses (" +
                            std::to_string(sum) + " after adding self-reverse orbits)");
        }
        out.P[k] = sum / 2;
    }
    return out;
}

ComplexityCounts complexity_counts(const TriangleShape& tri, int n_max, const EnumerationOptions& opts) {
    std::array<std::vector<GeneralizedDiagonal>, 3> per_vertex;
    for (int v = 0; v < 3; ++v) {
        per_vertex[static_cast<std::size_t>(v)] =
            enumerate_diagonals(tri, static_cast<VertexId>(v), n_max, opts).diagonals;
    }
    return complexity_counts(tri, per_vertex, n_max);
}

}  // namespace billiards
