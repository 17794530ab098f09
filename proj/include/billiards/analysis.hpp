#pragma once
/**
 * Complexity-exponent calculus and empirical growth analysis.
 *
 * The bootstrap map f(nu) = (-nu^2 + sqrt(nu^4 + 4 nu^2)) / 2 is the positive
 * root of (g + nu^2) g = nu^2; it sends an admissible stretched-exponential
 * exponent to a strictly smaller admissible one.
 */

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "billiards/trigpoly.hpp"

namespace billiards {

double bootstrap_gamma(double nu);

struct BootstrapTrace {
    double nu0 = 1;
    double target_eps = 0;
    std::vector<double> nu;  // nu[0] = nu0, nu[k] = f^k(nu0)
    int k_stop = 0;          // first k with nu[k] < target_eps
};

constexpr int kBootstrapIterationCap = 1000000;

BootstrapTrace bootstrap_iterate(double nu0, double target_eps);

/// Midpoint of the feasible eps-interval for mu > eps nu and (eps + nu) mu > nu,
/// or nothing when mu <= f(nu).
std::optional<double> epsilon_witness(double nu, double mu);

/// First window start s = n + (j-1) c, j = 1..k, with Q[s+c] >= ratio * Q[s].
std::optional<int> pigeonhole_step(const std::vector<long long>& Q, int n, int k, int c, double ratio = 3.0);

enum class GrowthModel { PowerLaw, StretchedExp };

struct GrowthFit {
    GrowthModel model = GrowthModel::PowerLaw;
    double exponent = 0;
    double intercept = 0;
    /// RMS residual in the model's log space.
    double residual = 0;
    int n_min = 0;
    int n_max = 0;
    std::size_t points = 0;
};

/// Least squares of ln P on ln n (PowerLaw) or ln ln P on ln n (StretchedExp,
/// points with P <= 1 dropped). Needs at least five usable points.
GrowthFit fit_growth(const std::vector<std::pair<int, double>>& series, GrowthModel model);

/// Ordinary least-squares slope of y on x.
double ls_slope(const std::vector<double>& x, const std::vector<double>& y);

struct MeasureEstimate {
    std::uint64_t hits = 0;
    std::uint64_t samples = 0;
    double fraction = 0;
    double ci_lo = 0;  // Wilson 95% interval
    double ci_hi = 0;
};

struct KRReport {
    double threshold = 0;  // e^{-R m^2}
    std::vector<MeasureEstimate> per_poly;
    double max_fraction = 0;
    std::size_t argmax = 0;
};

/// Fraction of uniform (alpha, beta) in [0, 2 pi]^2 with |P| below
/// e^{-R m^2}. Samples are split into fixed chunks seeded from (rng_seed,
/// chunk), so the report does not depend on `workers`.
KRReport kr_measure_sample(const std::vector<TrigPoly>& polys, int m, double R, std::uint64_t samples,
                           std::uint64_t rng_seed, int workers = 1);
/// Same with an explicit threshold instead of e^{-R m^2}.
KRReport kr_measure_sample_threshold(const std::vector<TrigPoly>& polys, double threshold, std::uint64_t samples,
                                     std::uint64_t rng_seed, int workers = 1);

MeasureEstimate wilson_interval(std::uint64_t hits, std::uint64_t samples, double z = 1.959963984540054);

/// Levels n (in order) where Q_n < e^{n^mu}, the complexity staying below the
/// stretched-exponential envelope.
std::vector<int> below_envelope_levels(const std::vector<long long>& Q, double mu);

}  // namespace billiards
