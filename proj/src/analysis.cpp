#include "billiards/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <omp.h>

#include "billiards/errors.hpp"
#include "billiards/rng.hpp"

namespace billiards {

double bootstrap_gamma(double nu) {
    if (!(nu > 0) || !std::isfinite(nu)) throw Error(ErrorCode::DomainError, "bootstrap map needs nu > 0");
    // Rationalized root: avoids cancellation for small nu.
    const double n2 = nu * nu;
    return 2 * n2 / (n2 + std::sqrt(n2 * n2 + 4 * n2));
}

BootstrapTrace bootstrap_iterate(double nu0, double target_eps) {
    if (!(target_eps > 0 && target_eps < nu0 && nu0 <= 1)) {
        throw Error(ErrorCode::DomainError, "need 0 < target_eps < nu0 <= 1");
    }
    BootstrapTrace t;
    t.nu0 = nu0;
    t.target_eps = target_eps;
    t.nu.push_back(nu0);
    while (t.nu.back() >= target_eps) {
        if (static_cast<int>(t.nu.size()) > kBootstrapIterationCap) {
            throw Error(ErrorCode::IterationCap, "bootstrap iteration did not reach target_eps");
        }
        const double next = bootstrap_gamma(t.nu.back());
        if (!(next > 0 && next < t.nu.back())) {
            throw Error(ErrorCode::InvariantViolation, "bootstrap map failed to decrease at nu=" +
                                                           std::to_string(t.nu.back()));
        }
        t.nu.push_back(next);
    }
    t.k_stop = static_cast<int>(t.nu.size()) - 1;
    return t;
}

std::optional<double> epsilon_witness(double nu, double mu) {
    if (!(nu > 0) || !(mu > 0)) throw Error(ErrorCode::DomainError, "epsilon_witness needs nu, mu > 0");
    if (!(mu > bootstrap_gamma(nu))) return std::nullopt;
    const double lo = std::max(0.0, nu / mu - nu);
    const double hi = mu / nu;
    const double eps = 0.5 * (lo + hi);
    if (!(mu > eps * nu) || !((eps + nu) * mu > nu)) {
        throw Error(ErrorCode::InvariantViolation, "witness fails its inequalities at nu=" + std::to_string(nu) +
                                                       " mu=" + std::to_string(mu));
    }
    return eps;
}

std::optional<int> pigeonhole_step(const std::vector<long long>& Q, int n, int k, int c, double ratio) {
    if (n < 0 || k < 1 || c < 1) throw Error(ErrorCode::IndexOutOfRange, "need n >= 0, k >= 1, c >= 1");
    const long long last = static_cast<long long>(n) + static_cast<long long>(k) * c;
    if (last >= static_cast<long long>(Q.size())) {
        throw Error(ErrorCode::IndexOutOfRange,
                    "Q has " + std::to_string(Q.size()) + " entries, window needs index " + std::to_string(last));
    }
    for (int j = 1; j <= k; ++j) {
        const int s = n + (j - 1) * c;
        if (static_cast<double>(Q[static_cast<std::size_t>(s + c)]) >= ratio * static_cast<double>(Q[static_cast<std::size_t>(s)])) {
            return s;
        }
    }
    return std::nullopt;
}

double ls_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const auto n = static_cast<double>(x.size());
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxy = 0;
    double sxx = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    return sxy / sxx;
}

GrowthFit fit_growth(const std::vector<std::pair<int, double>>& series, GrowthModel model) {
    std::vector<double> x;
    std::vector<double> y;
    GrowthFit f;
    f.model = model;
    f.n_min = 0;
    for (const auto& [n, p] : series) {
        if (n <= 0 || !(p >= 1)) continue;
        if (model == GrowthModel::StretchedExp && !(p > 1)) continue;
        if (x.empty()) f.n_min = n;
        f.n_max = n;
        x.push_back(std::log(static_cast<double>(n)));
        y.push_back(model == GrowthModel::PowerLaw ? std::log(p) : std::log(std::log(p)));
    }
    if (x.size() < 5) {
        throw Error(ErrorCode::InsufficientData,
                    "growth fit needs at least 5 usable points, got " + std::to_string(x.size()));
    }
    std::vector<double> xs = x;
    std::sort(xs.begin(), xs.end());
    if (xs.front() == xs.back()) throw Error(ErrorCode::InsufficientData, "growth fit needs distinct n");
    f.exponent = ls_slope(x, y);
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(y.size());
    f.intercept = my - f.exponent * mx;
    double ss = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - (f.intercept + f.exponent * x[i]);
        ss += r * r;
    }
    f.residual = std::sqrt(ss / static_cast<double>(x.size()));
    f.points = x.size();
    return f;
}

MeasureEstimate wilson_interval(std::uint64_t hits, std::uint64_t samples, double z) {
    MeasureEstimate e;
    e.hits = hits;
    e.samples = samples;
    if (samples == 0) return e;
    const double n = static_cast<double>(samples);
    const double p = static_cast<double>(hits) / n;
    const double z2 = z * z;
    const double den = 1 + z2 / n;
    const double center = (p + z2 / (2 * n)) / den;
    const double half = z * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n)) / den;
    e.fraction = p;
    // The interval closes exactly at 0 and 1 when no sample (every sample) hits.
    e.ci_lo = hits == 0 ? 0.0 : std::max(0.0, center - half);
    e.ci_hi = hits == samples ? 1.0 : std::min(1.0, center + half);
    return e;
}

namespace {

constexpr std::uint64_t kSampleChunks = 64;

// Evaluates a compiled polynomial from tables of e^{i k alpha}, e^{i k beta}.
class TableEvaluator {
public:
    explicit TableEvaluator(const CompiledTrigPoly& p)
        : poly_(p), ea_(static_cast<std::size_t>(p.max_abs_i) + 1), eb_(2 * static_cast<std::size_t>(p.max_abs_j) + 1) {}

    double operator()(double alpha, double beta) {
        const std::complex<double> a = std::polar(1.0, alpha);
        const std::complex<double> b = std::polar(1.0, beta);
        ea_[0] = 1;
        for (std::size_t k = 1; k < ea_.size(); ++k) ea_[k] = ea_[k - 1] * a;
        const auto J = static_cast<std::size_t>(poly_.max_abs_j);
        eb_[J] = 1;
        for (std::size_t k = 1; k <= J; ++k) {
            eb_[J + k] = eb_[J + k - 1] * b;
            eb_[J - k] = std::conj(eb_[J + k]);
        }
        double sum = 0;
        for (const auto& t : poly_.terms) {
            const std::complex<double> ei = ea_[static_cast<std::size_t>(t.i)] *
                                            eb_[static_cast<std::size_t>(static_cast<long>(J) + t.j)];
            sum += t.c * ei.real() + t.s * ei.imag();
        }
        return sum;
    }

private:
    const CompiledTrigPoly& poly_;
    std::vector<std::complex<double>> ea_;
    std::vector<std::complex<double>> eb_;
};

}  // namespace

KRReport kr_measure_sample_threshold(const std::vector<TrigPoly>& polys, double threshold, std::uint64_t samples,
                                     std::uint64_t rng_seed, int workers) {
    KRReport rep;
    rep.threshold = threshold;
    std::vector<CompiledTrigPoly> compiled;
    compiled.reserve(polys.size());
    for (const auto& p : polys) compiled.push_back(compile(p));

    const std::size_t np = polys.size();
    std::vector<std::uint64_t> hits(np * kSampleChunks, 0);
    const auto nchunks = static_cast<std::int64_t>(kSampleChunks);
#pragma omp parallel for num_threads(std::max(1, workers)) schedule(static)
    for (std::int64_t ch = 0; ch < nchunks; ++ch) {
        const auto c = static_cast<std::uint64_t>(ch);
        const std::uint64_t begin = samples * c / kSampleChunks;
        const std::uint64_t end = samples * (c + 1) / kSampleChunks;
        std::mt19937_64 rng = make_stream(rng_seed, c);
        std::uniform_real_distribution<double> u(0.0, 2 * kPi);
        std::vector<TableEvaluator> ev;
        ev.reserve(np);
        for (const auto& cp : compiled) ev.emplace_back(cp);
        for (std::uint64_t s = begin; s < end; ++s) {
            const double a = u(rng);
            const double b = u(rng);
            for (std::size_t i = 0; i < np; ++i) {
                if (std::abs(ev[i](a, b)) < threshold) ++hits[i * kSampleChunks + c];
            }
        }
    }
    for (std::size_t i = 0; i < np; ++i) {
        std::uint64_t h = 0;
        for (std::uint64_t c = 0; c < kSampleChunks; ++c) h += hits[i * kSampleChunks + c];
        rep.per_poly.push_back(wilson_interval(h, samples));
        if (rep.per_poly.back().fraction > rep.max_fraction) {
            rep.max_fraction = rep.per_poly.back().fraction;
            rep.argmax = i;
        }
    }
    return rep;
}

KRReport kr_measure_sample(const std::vector<TrigPoly>& polys, int m, double R, std::uint64_t samples,
                           std::uint64_t rng_seed, int workers) {
    if (m < 1 || !(R > 0)) throw Error(ErrorCode::DomainError, "need m >= 1 and R > 0");
    for (std::size_t i = 0; i < polys.size(); ++i) {
        if (polys[i].is_zero()) throw Error(ErrorCode::PreconditionViolated, "zero polynomial at " + std::to_string(i));
        if (polys[i].degree() > m) {
            throw Error(ErrorCode::PreconditionViolated,
                        "polynomial " + std::to_string(i) + " has degree " + std::to_string(polys[i].degree()) +
                            " > m = " + std::to_string(m));
        }
    }
    return kr_measure_sample_threshold(polys, std::exp(-R * m * static_cast<double>(m)), samples, rng_seed, workers);
}

std::vector<int> below_envelope_levels(const std::vector<long long>& Q, double mu) {
    std::vector<int> out;
    for (std::size_t n = 1; n < Q.size(); ++n) {
        if (static_cast<double>(Q[n]) < std::exp(std::pow(static_cast<double>(n), mu))) out.push_back(static_cast<int>(n));
    }
    return out;
}

}  // namespace billiards
