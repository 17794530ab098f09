#include "billiards/partitions.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "billiards/errors.hpp"

namespace billiards {

IndexedPartition trivial_partition(double width, int level) {
    IndexedPartition xi;
    xi.lo = 0;
    xi.hi = width;
    xi.level = level;
    xi.lo_side.direction = 0;
    xi.hi_side.direction = width;
    return xi;
}

std::vector<IndexedPartition> build_partitions(const TriangleShape& tri, VertexId vertex,
                                               const std::vector<GeneralizedDiagonal>& diagonals, int n_max) {
    if (n_max < 0) throw Error(ErrorCode::PreconditionViolated, "n_max must be nonnegative");
    const VertexInterval iv = vertex_interval(tri, vertex);
    IndexedPartition base = trivial_partition(iv.width);
    base.source = vertex;
    base.lo_side.end = DiagonalEnd{tri.vertex(iv.first), standard_triangle_pose(), iv.first,
                                   static_cast<double>(iv.first_dir.norm())};
    base.hi_side.end = DiagonalEnd{tri.vertex(iv.second), standard_triangle_pose(), iv.second,
                                   static_cast<double>(iv.second_dir.norm())};

    std::vector<Cut> all;
    all.reserve(diagonals.size());
    for (const auto& d : diagonals) {
        if (d.source_vertex != vertex) {
            throw Error(ErrorCode::PreconditionViolated, "diagonal from another vertex in partition input");
        }
        if (d.algebraic_length < 1 || d.algebraic_length > n_max) continue;
        if (!(d.direction > base.lo && d.direction < base.hi)) {
            throw Error(ErrorCode::PreconditionViolated,
                        "diagonal direction " + std::to_string(d.direction) + " outside the open interval");
        }
        all.push_back({d.direction, d.algebraic_length, DiagonalEnd{d.endpoint, d.final_pose, d.target, d.geometric_length}});
    }
    std::sort(all.begin(), all.end(), [](const Cut& a, const Cut& b) { return a.direction < b.direction; });
    for (std::size_t i = 1; i < all.size(); ++i) {
        if (all[i].direction - all[i - 1].direction < kDuplicateDirectionTol) {
            std::ostringstream os;
            os.precision(17);
            os << "directions " << all[i - 1].direction << " (index " << all[i - 1].index << ") and "
               << all[i].direction << " (index " << all[i].index << ")";
            throw Error(ErrorCode::DuplicateDirection, os.str());
        }
    }

    std::vector<IndexedPartition> out(static_cast<std::size_t>(n_max) + 1, base);
    for (int k = 0; k <= n_max; ++k) {
        auto& xi = out[static_cast<std::size_t>(k)];
        xi.level = k;
        for (const auto& c : all) {
            if (c.index <= k) xi.cuts.push_back(c);
        }
    }
    return out;
}

std::vector<PartitionInterval> intervals(const IndexedPartition& xi) {
    std::vector<PartitionInterval> out;
    out.reserve(xi.cuts.size() + 1);
    const Cut* prev = &xi.lo_side;
    for (const auto& c : xi.cuts) {
        out.push_back({*prev, c, c.direction - prev->direction});
        prev = &c;
    }
    out.push_back({*prev, xi.hi_side, xi.hi_side.direction - prev->direction});
    return out;
}

namespace {

bool same_direction(double a, double b) { return std::abs(a - b) < kDuplicateDirectionTol; }

}  // namespace

std::vector<RefinementViolation> observation1_violations(const IndexedPartition& coarse, const IndexedPartition& fine) {
    std::vector<RefinementViolation> out;
    std::size_t j = 0;
    std::size_t interval = 0;
    std::size_t new_cuts = 0;
    auto close_interval = [&] {
        if (new_cuts > 1) out.push_back({coarse.level, interval, new_cuts});
        ++interval;
        new_cuts = 0;
    };
    for (const auto& c : coarse.cuts) {
        while (j < fine.cuts.size() && fine.cuts[j].direction < c.direction - kDuplicateDirectionTol) {
            ++new_cuts;
            ++j;
        }
        if (j == fine.cuts.size() || !same_direction(fine.cuts[j].direction, c.direction) ||
            fine.cuts[j].index != c.index) {
            std::ostringstream os;
            os.precision(17);
            os << "cut at " << c.direction << " (index " << c.index << ") of level " << coarse.level
               << " is missing from level " << fine.level;
            throw Error(ErrorCode::NotARefinement, os.str());
        }
        ++j;
        close_interval();
    }
    new_cuts += fine.cuts.size() - j;
    close_interval();
    return out;
}

Lemma21Audit lemma21_audit(const IndexedPartition& xi_n, const IndexedPartition& xi_nc) {
    if (xi_nc.level < xi_n.level) {
        throw Error(ErrorCode::NotARefinement, "finer partition has a lower level");
    }
    observation1_violations(xi_n, xi_nc);  // refinement check only
    Lemma21Audit a;
    a.n = xi_n.level;
    a.c = xi_nc.level - xi_n.level;
    a.q_n = static_cast<long long>(xi_n.cuts.size());
    a.q_nc = static_cast<long long>(xi_nc.cuts.size());
    a.required = std::max(0LL, a.q_nc - 2 * a.q_n - 1);
    auto in_range = [&](const Cut& c) { return c.index >= a.n + 1 && c.index <= a.n + a.c; };
    for (const auto& iv : intervals(xi_nc)) {
        const bool lo = in_range(iv.lo_cut);
        const bool hi = in_range(iv.hi_cut);
        if (lo && hi) {
            ++a.found;
            a.witnesses.push_back(iv);
        }
        if (lo || hi) ++a.found_one_endpoint;
    }
    return a;
}

double min_gap(const IndexedPartition& xi) {
    double g = INFINITY;
    for (const auto& iv : intervals(xi)) g = std::min(g, iv.width);
    return g;
}

GapReport gap_report(const std::vector<IndexedPartition>& levels) {
    GapReport r;
    r.min_gap = INFINITY;
    for (const auto& xi : levels) {
        if (xi.level < 1 || xi.cuts.empty()) continue;
        GapRow row;
        row.level = xi.level;
        row.q = static_cast<long long>(xi.cuts.size());
        row.min_gap = min_gap(xi);
        row.fitted_a = std::max(0.0, -std::log(row.min_gap) / (static_cast<double>(xi.level) * xi.level));
        r.rows.push_back(row);
        r.level = xi.level;
        r.min_gap = std::min(r.min_gap, row.min_gap);
        r.fitted_a = std::max(r.fitted_a, row.fitted_a);
    }
    if (r.rows.empty()) r.min_gap = 0;
    return r;
}

// ---------------------------------------------------------------------------

void check_selection_instance(const std::vector<Segment>& base, const std::vector<Segment>& anchored, double L,
                              double m, Anchor anchor) {
    auto fail = [](const std::string& what) { throw Error(ErrorCode::PreconditionViolated, what); };
    const std::size_t n = base.size();
    if (anchored.size() != n) fail("base and anchored families differ in size");
    if (!(L >= 1) || !(m > 0)) fail("need L >= 1 and m > 0");
    if (static_cast<double>(n) < L * m) fail("need n >= L*m");
    for (std::size_t i = 0; i < n; ++i) {
        const auto& I = base[i];
        const auto& J = anchored[i];
        if (!(I.lo >= 0 && I.hi <= 1 && I.lo < I.hi)) fail("base interval " + std::to_string(i) + " not inside [0,1]");
        if (!(J.lo < J.hi)) fail("anchored interval " + std::to_string(i) + " is empty");
        const bool shares = anchor == Anchor::Left ? J.lo == I.lo : J.hi == I.hi;
        if (!shares) fail("anchored interval " + std::to_string(i) + " does not share its anchored endpoint");
        if (J.length() > m * I.length() * (1 + 1e-12)) fail("anchored interval " + std::to_string(i) + " longer than m|I|");
    }
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return base[a].lo < base[b].lo; });
    for (std::size_t k = 1; k < n; ++k) {
        if (overlaps(base[order[k - 1]], base[order[k]])) {
            fail("base intervals " + std::to_string(order[k - 1]) + " and " + std::to_string(order[k]) + " overlap");
        }
    }
    if (n > 0) {
        // The ratio bound only needs checking against the extremes.
        const auto [mn, mx] = std::minmax_element(base.begin(), base.end(),
                                                  [](const Segment& a, const Segment& b) { return a.length() < b.length(); });
        if (mx->length() > L * mn->length() * (1 + 1e-12)) {
            fail("base intervals " + std::to_string(mn - base.begin()) + " and " + std::to_string(mx - base.begin()) +
                 " have length ratio above L");
        }
    }
}

std::vector<std::size_t> greedy_disjoint_selection(const std::vector<Segment>& base,
                                                   const std::vector<Segment>& anchored, double L, double m,
                                                   Anchor anchor) {
    check_selection_instance(base, anchored, L, m, anchor);
    const std::size_t n = anchored.size();
    // Right-anchored instances are the mirror image x -> 1 - x of left-anchored ones.
    std::vector<Segment> js(n);
    for (std::size_t i = 0; i < n; ++i) {
        js[i] = anchor == Anchor::Left ? anchored[i] : Segment{1 - anchored[i].hi, 1 - anchored[i].lo};
    }
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return js[a].lo < js[b].lo; });
    std::vector<std::size_t> picked;
    double frontier = -INFINITY;
    for (std::size_t i : order) {
        if (js[i].lo < frontier) continue;
        picked.push_back(i);
        frontier = js[i].hi;
    }
    return picked;
}

std::size_t max_disjoint_count(const std::vector<Segment>& segments) {
    std::vector<Segment> s = segments;
    std::sort(s.begin(), s.end(), [](const Segment& a, const Segment& b) { return a.hi < b.hi; });
    std::size_t count = 0;
    double frontier = -INFINITY;
    for (const auto& x : s) {
        if (x.lo >= frontier) {
            ++count;
            frontier = x.hi;
        }
    }
    return count;
}

std::vector<IndexedPartition> random_refinement_chain(std::mt19937_64& rng, int levels, double split_probability,
                                                      double width) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<IndexedPartition> out;
    out.push_back(trivial_partition(width, 0));
    for (int k = 1; k <= levels; ++k) {
        IndexedPartition next = out.back();
        next.level = k;
        std::vector<Cut> cuts;
        for (const auto& iv : intervals(out.back())) {
            if (u(rng) < split_probability) {
                // Stay clear of the endpoints so cuts never collide.
                const double t = 0.05 + 0.9 * u(rng);
                cuts.push_back({iv.lo_cut.direction + t * iv.width, k, std::nullopt});
            }
        }
        next.cuts.insert(next.cuts.end(), cuts.begin(), cuts.end());
        std::sort(next.cuts.begin(), next.cuts.end(), [](const Cut& a, const Cut& b) { return a.direction < b.direction; });
        out.push_back(std::move(next));
    }
    return out;
}

}  // namespace billiards
