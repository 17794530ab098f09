// Ray-sampling oracle. Shares nothing with the unfolding code beyond the
// triangle shape: rays are reflected explicitly inside the original triangle.

#include <algorithm>
#include <array>
#include <cmath>
#include <omp.h>

#include "billiards/enumeration.hpp"
#include "billiards/errors.hpp"

namespace billiards {

namespace {

constexpr int kBisectionSteps = 200;
constexpr double kMissTolerance = 1e-9;

struct Flat {
    std::array<Vec2, 3> p;  // vertices, double precision
};

// Edge e is the side opposite vertex e.
struct Itinerary {
    std::vector<std::uint8_t> edges;
    std::vector<Vec2> points;
};

Itinerary trace(const Flat& t, int source, double angle, const Vec2& first_dir, int hits) {
    Itinerary it;
    it.edges.reserve(static_cast<std::size_t>(hits));
    it.points.reserve(static_cast<std::size_t>(hits));
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    Vec2 d{first_dir.x * c - first_dir.y * s, first_dir.x * s + first_dir.y * c};
    Vec2 pos = t.p[static_cast<std::size_t>(source)];
    int cur = -1;
    for (int h = 0; h < hits; ++h) {
        double best = INFINITY;
        int edge = -1;
        for (int e = 0; e < 3; ++e) {
            if (e == cur) continue;
            if (h == 0 && e != source) continue;  // the two sides at the source pass through it
            const Vec2& a = t.p[static_cast<std::size_t>((e + 1) % 3)];
            const Vec2& b = t.p[static_cast<std::size_t>((e + 2) % 3)];
            const Vec2 ab = b - a;
            const double den = cross(d, ab);
            if (den == 0) continue;
            const double tt = cross(a - pos, ab) / den;
            if (tt > 0 && tt < best) {
                best = tt;
                edge = e;
            }
        }
        if (edge < 0) break;
        pos = pos + d * best;
        const Vec2& a = t.p[static_cast<std::size_t>((edge + 1) % 3)];
        const Vec2& b = t.p[static_cast<std::size_t>((edge + 2) % 3)];
        Vec2 n{-(b - a).y, (b - a).x};
        n = n * (1.0 / n.norm());
        d = d - n * (2 * dot(d, n));
        cur = edge;
        it.edges.push_back(static_cast<std::uint8_t>(edge));
        it.points.push_back(pos);
    }
    return it;
}

std::size_t first_difference(const Itinerary& a, const Itinerary& b) {
    const std::size_t n = std::min(a.edges.size(), b.edges.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (a.edges[i] != b.edges[i]) return i;
    }
    return n;
}

struct Found {
    bool converged;
    double direction;
    int length;
    VertexId target;
};

Found bisect(const Flat& t, int source, const Vec2& first_dir, double lo, double hi, int hits) {
    Itinerary ilo = trace(t, source, lo, first_dir, hits);
    Itinerary ihi = trace(t, source, hi, first_dir, hits);
    std::size_t k = first_difference(ilo, ihi);
    for (int it = 0; it < kBisectionSteps && hi - lo > 0; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        Itinerary im = trace(t, source, mid, first_dir, hits);
        const std::size_t k_lo = first_difference(ilo, im);
        const std::size_t k_hi = first_difference(im, ihi);
        // Keep the half with the earliest discontinuity.
        if (k_lo <= k_hi) {
            hi = mid;
            ihi = std::move(im);
            k = k_lo;
        } else {
            lo = mid;
            ilo = std::move(im);
            k = k_hi;
        }
    }
    Found f{false, 0.5 * (lo + hi), static_cast<int>(k), VertexId::A};
    if (k >= ilo.edges.size() || k >= ihi.edges.size()) return f;
    const int e1 = ilo.edges[k];
    const int e2 = ihi.edges[k];
    if (e1 == e2) return f;
    const int vertex = 3 - e1 - e2;
    f.target = static_cast<VertexId>(vertex);
    const Vec2& corner = t.p[static_cast<std::size_t>(vertex)];
    const double miss = std::max((ilo.points[k] - corner).norm(), (ihi.points[k] - corner).norm());
    f.converged = miss < kMissTolerance;
    return f;
}

}  // namespace

OracleResult ray_oracle(const TriangleShape& tri, VertexId vertex, int n_max, int rays, int workers) {
    if (n_max < 0) throw Error(ErrorCode::PreconditionViolated, "n_max must be nonnegative");
    if (rays < 2) throw Error(ErrorCode::PreconditionViolated, "ray_oracle needs at least two rays");
    Flat t;
    for (int v = 0; v < 3; ++v) t.p[static_cast<std::size_t>(v)] = to_double(tri.vertex(static_cast<VertexId>(v)));
    const int source = static_cast<int>(vertex);
    const Vec2 first_dir = t.p[static_cast<std::size_t>((source + 1) % 3)] - t.p[static_cast<std::size_t>(source)];
    const Vec2 unit_first = first_dir * (1.0 / first_dir.norm());
    const double width = static_cast<double>(tri.angle_at(vertex));
    const int hits = n_max + 1;
    const int nthreads = std::max(1, workers);

    std::vector<double> dirs(static_cast<std::size_t>(rays));
    std::vector<Itinerary> its(static_cast<std::size_t>(rays));
#pragma omp parallel for num_threads(nthreads) schedule(static)
    for (int i = 0; i < rays; ++i) {
        const double a = (i + 0.5) * width / rays;
        dirs[static_cast<std::size_t>(i)] = a;
        its[static_cast<std::size_t>(i)] = trace(t, source, a, unit_first, hits);
    }

    std::vector<int> breaks;
    for (int i = 0; i + 1 < rays; ++i) {
        const auto& a = its[static_cast<std::size_t>(i)];
        const auto& b = its[static_cast<std::size_t>(i) + 1];
        if (first_difference(a, b) < static_cast<std::size_t>(hits)) breaks.push_back(i);
    }

    std::vector<Found> found(breaks.size());
    const auto nb = static_cast<std::ptrdiff_t>(breaks.size());
#pragma omp parallel for num_threads(nthreads) schedule(dynamic, 16)
    for (std::ptrdiff_t b = 0; b < nb; ++b) {
        const auto i = static_cast<std::size_t>(breaks[static_cast<std::size_t>(b)]);
        found[static_cast<std::size_t>(b)] = bisect(t, source, unit_first, dirs[i], dirs[i + 1], hits);
    }

    OracleResult out;
    for (const auto& f : found) {
        if (!f.converged || f.length > n_max) {
            if (!f.converged) out.non_converged.push_back(f.direction);
            continue;
        }
        out.diagonals.push_back({f.direction, f.length, f.target});
    }
    std::sort(out.diagonals.begin(), out.diagonals.end(),
              [](const OracleDiagonal& a, const OracleDiagonal& b) { return a.direction < b.direction; });
    auto same = [](const OracleDiagonal& a, const OracleDiagonal& b) {
        return a.target == b.target && a.algebraic_length == b.algebraic_length &&
               std::abs(a.direction - b.direction) < 1e-10;
    };
    out.diagonals.erase(std::unique(out.diagonals.begin(), out.diagonals.end(), same), out.diagonals.end());
    return out;
}

}  // namespace billiards
