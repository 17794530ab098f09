// Command-line driver. Every run resolves its options into a JSON config,
// executes it, and records the config in <out>/manifest.json; `rerun` feeds a
// manifest back through the same code path. Output files depend only on the
// config, so worker count and wall-clock time live in the manifest's
// "runtime" block.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "billiards/analysis.hpp"
#include "billiards/enumeration.hpp"
#include "billiards/errors.hpp"
#include "billiards/io.hpp"
#include "billiards/local_lemmas.hpp"
#include "billiards/partitions.hpp"
#include "billiards/rng.hpp"
#include "billiards/trigpoly.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace billiards;

namespace {

enum Exit : int { kOk = 0, kInput = 2, kCorrupt = 3, kInsufficient = 4, kInvariant = 5 };

int exit_code_for(ErrorCode c) {
    switch (c) {
        case ErrorCode::ParseError:
            return kCorrupt;
        case ErrorCode::InsufficientData:
            return kInsufficient;
        case ErrorCode::DuplicateDirection:
        case ErrorCode::NotARefinement:
        case ErrorCode::InvariantViolation:
        case ErrorCode::IterationCap:
            return kInvariant;
        default:
            return kInput;
    }
}

/// Raised by a command once its context dump is on disk.
struct InvariantFailure {
    std::string message;
};

/// Input problems detected by the driver itself (missing files, bad flags).
struct InputFailure {
    std::string message;
};

struct RunContext {
    fs::path out;
    int workers = 1;
    std::vector<std::string> outputs;  // relative to out, in creation order

    std::ofstream open(const std::string& rel) {
        const fs::path p = out / rel;
        fs::create_directories(p.parent_path());
        std::ofstream os(p, std::ios::binary);
        if (!os) throw InputFailure{"cannot write " + p.string()};
        outputs.push_back(rel);
        return os;
    }

    void write_json(const std::string& rel, const json& j) { open(rel) << j.dump(2) << '\n'; }

    [[noreturn]] void fail_invariant(const std::string& what, const json& context) {
        write_json("violation_dump.json", {{"violation", what}, {"context", context}});
        std::cerr << "invariant violation: " << what << '\n' << context.dump(2) << '\n';
        throw InvariantFailure{what};
    }
};

std::string utc_now() {
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::uint64_t fnv1a(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string read_file(const fs::path& p) {
    std::ifstream is(p, std::ios::binary);
    if (!is) throw InputFailure{"cannot read " + p.string()};
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

std::string hex64(std::uint64_t v) {
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

// ---------------------------------------------------------------------------
// Triangle selection

struct TriangleOptions {
    std::optional<double> alpha;
    std::optional<double> beta;
    std::string rational;
    std::optional<int> random_count;
    std::uint64_t seed = 0;
    double delta = kDefaultDelta;
};

void add_triangle_options(CLI::App* app, TriangleOptions& t, bool allow_random) {
    auto* a = app->add_option("--alpha", t.alpha, "angle at V0 in radians");
    auto* b = app->add_option("--beta", t.beta, "angle at V1 in radians");
    a->needs(b);
    b->needs(a);
    auto* r = app->add_option("--rational", t.rational, "angles as p1/q1,p2/q2 multiples of pi");
    r->excludes(a)->excludes(b);
    if (allow_random) {
        auto* n = app->add_option("--random", t.random_count, "number of seeded random triangles")->check(CLI::PositiveNumber);
        n->excludes(a)->excludes(b)->excludes(r);
    }
    app->add_option("--seed", t.seed, "seed of all randomness");
    app->add_option("--delta", t.delta, "minimum angle of the triangle class");
}

json triangle_spec(const TriangleOptions& t, bool default_random) {
    json j{{"delta", t.delta}};
    if (t.alpha) {
        j["mode"] = "explicit";
        j["alpha"] = *t.alpha;
        j["beta"] = *t.beta;
    } else if (!t.rational.empty()) {
        j["mode"] = "rational";
        j["rational"] = t.rational;
    } else if (t.random_count || default_random) {
        j["mode"] = "random";
        j["count"] = t.random_count.value_or(1);
        j["seed"] = t.seed;
    } else {
        throw InputFailure{"a triangle is required: --alpha/--beta, --rational or --random"};
    }
    return j;
}

std::vector<TriangleShape> resolve_triangles(const json& spec) {
    const double delta = spec.at("delta").get<double>();
    const std::string mode = spec.at("mode").get<std::string>();
    if (mode == "explicit") return {make_triangle(spec.at("alpha").get<double>(), spec.at("beta").get<double>(), delta)};
    if (mode == "rational") {
        int p1 = 0, q1 = 0, p2 = 0, q2 = 0;
        char s1 = 0, s2 = 0, comma = 0, extra = 0;
        std::istringstream is(spec.at("rational").get<std::string>());
        if (!(is >> p1 >> s1 >> q1 >> comma >> p2 >> s2 >> q2) || s1 != '/' || s2 != '/' || comma != ',' ||
            (is >> extra)) {
            throw InputFailure{"--rational expects p1/q1,p2/q2"};
        }
        return {make_rational_triangle(p1, q1, p2, q2, delta)};
    }
    if (mode == "random") {
        const int count = spec.at("count").get<int>();
        auto rng = make_stream(spec.at("seed").get<std::uint64_t>(), 0);
        std::vector<TriangleShape> out;
        for (int i = 0; i < count; ++i) out.push_back(random_triangle(rng, delta));
        return out;
    }
    throw InputFailure{"unknown triangle mode '" + mode + "'"};
}

json describe(const TriangleShape& t) {
    return {{"alpha", t.alpha()}, {"beta", t.beta()}, {"gamma", t.gamma()}};
}

std::string triangle_dir(std::size_t i) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "t%03zu", i);
    return buf;
}

// ---------------------------------------------------------------------------
// enumerate

void run_enumerate(const json& cfg, RunContext& ctx) {
    const int n_max = cfg.at("max_depth").get<int>();
    if (n_max < 0) throw InputFailure{"--max-depth must be >= 0"};
    const auto tris = resolve_triangles(cfg.at("triangle"));
    EnumerationOptions opts;
    opts.workers = ctx.workers;
    std::ostringstream summary;
    summary << "index,alpha,beta,gamma,P_max\n";
    for (std::size_t i = 0; i < tris.size(); ++i) {
        const auto& tri = tris[i];
        std::array<std::vector<GeneralizedDiagonal>, 3> per_vertex;
        for (int v = 0; v < 3; ++v) {
            const auto vid = static_cast<VertexId>(v);
            per_vertex[v] = enumerate_diagonals(tri, vid, n_max, opts).diagonals;
            auto os = ctx.open(triangle_dir(i) + "/diagonals_" + std::string(vertex_name(vid)) + ".jsonl");
            write_diagonals_jsonl(os, per_vertex[v], tri);
        }
        ComplexityCounts counts;
        try {
            counts = complexity_counts(tri, per_vertex, n_max);
        } catch (const Error& e) {
            if (e.code() != ErrorCode::InvariantViolation) throw;
            ctx.fail_invariant(e.what(), {{"triangle", describe(tri)}, {"index", i}, {"max_depth", n_max}});
        }
        auto os = ctx.open(triangle_dir(i) + "/counts.csv");
        write_counts_csv(os, counts);
        summary << i << ',' << format_double(tri.alpha()) << ',' << format_double(tri.beta()) << ','
                << format_double(tri.gamma()) << ',' << counts.P.back() << '\n';
    }
    ctx.open("triangles.csv") << summary.str();
}

// ---------------------------------------------------------------------------
// partition

json interval_json(const PartitionInterval& iv) {
    return {{"lo", iv.lo_cut.direction}, {"hi", iv.hi_cut.direction}, {"lo_index", iv.lo_cut.index},
            {"hi_index", iv.hi_cut.index}, {"width", iv.width}};
}

const char* kind_name(ConnectionKind k) {
    switch (k) {
        case ConnectionKind::TriangleSide: return "side";
        case ConnectionKind::Diagonal: return "diagonal";
        case ConnectionKind::OutOfRegime: return "out_of_regime";
        case ConnectionKind::Violation: return "violation";
    }
    return "?";
}

void run_partition(const json& cfg, RunContext& ctx) {
    const fs::path in = cfg.at("input").get<std::string>();
    if (!fs::exists(in)) throw InputFailure{"input file not found: " + in.string()};
    const std::string bytes = read_file(in);
    if (cfg.contains("input_fnv1a") && cfg["input_fnv1a"].get<std::string>() != hex64(fnv1a(bytes))) {
        throw Error(ErrorCode::ParseError, "input file differs from the one recorded in the manifest");
    }
    std::istringstream is(bytes);
    const auto diags = read_diagonals_jsonl(is);

    const auto tris = resolve_triangles(cfg.at("triangle"));
    const std::size_t index = cfg.value("index", 0);
    if (index >= tris.size()) throw InputFailure{"--index out of range"};
    const auto& tri = tris[index];
    const VertexId vertex = parse_vertex(cfg.at("vertex").get<std::string>());
    for (std::size_t i = 0; i < diags.size(); ++i) {
        if (diags[i].source_vertex != vertex) {
            throw Error(ErrorCode::ParseError, "line " + std::to_string(i + 1) + ": diagonal leaves " +
                                                   std::string(vertex_name(diags[i].source_vertex)) + ", expected " +
                                                   std::string(vertex_name(vertex)));
        }
    }
    int n_max = cfg.at("max_depth").get<int>();
    if (n_max < 0) {
        n_max = 0;
        for (const auto& d : diags) n_max = std::max(n_max, d.algebraic_length);
    }

    const auto levels = build_partitions(tri, vertex, diags, n_max);
    {
        auto os = ctx.open("partitions.jsonl");
        for (const auto& xi : levels) write_partition_jsonl(os, xi);
    }
    const GapReport gaps = gap_report(levels);
    {
        auto os = ctx.open("gaps.csv");
        write_gap_csv(os, gaps);
    }
    ctx.write_json("gaps.json", gap_to_json(gaps));

    // Observation 1 and the cut count.
    std::vector<long long> Q(levels.size(), 0);
    for (const auto& d : diags) {
        if (d.algebraic_length <= n_max) ++Q[d.algebraic_length];
    }
    for (std::size_t k = 1; k < Q.size(); ++k) Q[k] += Q[k - 1];
    std::ostringstream obs;
    for (std::size_t k = 0; k < levels.size(); ++k) {
        if (static_cast<long long>(levels[k].cuts.size()) != Q[k]) {
            ctx.open("observation1.log") << obs.str();
            ctx.fail_invariant("cut count differs from Q_k",
                               {{"level", k}, {"cuts", levels[k].cuts.size()}, {"Q", Q[k]}});
        }
        if (k + 1 == levels.size()) break;
        const auto v = observation1_violations(levels[k], levels[k + 1]);
        obs << "level " << k << " -> " << k + 1 << ": " << (v.empty() ? "ok" : "VIOLATION") << " (cuts "
            << levels[k].cuts.size() << " -> " << levels[k + 1].cuts.size() << ")\n";
        if (!v.empty()) {
            ctx.open("observation1.log") << obs.str();
            json dump = json::array();
            for (const auto& r : v) dump.push_back({{"level", r.level}, {"interval", r.interval}, {"new_cuts", r.new_cuts}});
            ctx.fail_invariant("an interval received more than one new cut", {{"level", k}, {"violations", dump}});
        }
    }
    ctx.open("observation1.log") << obs.str();

    // Interval-count lower bound over all pairs (n, n + c), c <= 10.
    std::ostringstream audit;
    audit << "n,c,Q_n,Q_nc,required,found,found_one_endpoint,passed\n";
    for (int n = 0; n <= n_max; ++n) {
        for (int c = 1; c <= 10 && n + c <= n_max; ++c) {
            const auto a = lemma21_audit(levels[n], levels[n + c]);
            audit << n << ',' << c << ',' << a.q_n << ',' << a.q_nc << ',' << a.required << ',' << a.found << ','
                  << a.found_one_endpoint << ',' << (a.passed() ? 1 : 0) << '\n';
            if (!a.passed()) {
                ctx.open("lemma21.csv") << audit.str();
                ctx.fail_invariant("too few fresh intervals",
                                   {{"n", n}, {"c", c}, {"required", a.required}, {"found", a.found}});
            }
        }
    }
    ctx.open("lemma21.csv") << audit.str();

    // Local estimates on every interval inside the small-width regime.
    const RegimeConstants k = regime_constants(tri);
    std::ostringstream reg;
    reg << "level,lo_index,hi_index,width,kind,algebraic_length,bound,gap_applies,L_p,L_q,gap_holds\n";
    for (const auto& xi : levels) {
        for (const auto& iv : intervals(xi)) {
            const auto seg = connecting_segment(tri, iv, k);
            const auto gap = length_gap_check(iv, k);
            if (seg.kind == ConnectionKind::OutOfRegime && !gap.applies) continue;
            reg << xi.level << ',' << iv.lo_cut.index << ',' << iv.hi_cut.index << ',' << format_double(iv.width)
                << ',' << kind_name(seg.kind) << ',' << seg.algebraic_length << ',' << seg.bound << ','
                << (gap.applies ? 1 : 0) << ',' << format_double(gap.L_p) << ',' << format_double(gap.L_q) << ','
                << (gap.holds ? 1 : 0) << '\n';
            const bool too_long = seg.kind == ConnectionKind::Diagonal && seg.algebraic_length > seg.bound;
            if (seg.kind == ConnectionKind::Violation || too_long || (gap.applies && !gap.holds)) {
                ctx.open("regime.csv") << reg.str();
                ctx.fail_invariant("local estimate failed",
                                   {{"level", xi.level},
                                    {"interval", interval_json(iv)},
                                    {"connection", kind_name(seg.kind)},
                                    {"detail", seg.detail},
                                    {"algebraic_length", seg.algebraic_length},
                                    {"bound", seg.bound},
                                    {"L_p", gap.L_p},
                                    {"L_q", gap.L_q},
                                    {"constants", {{"D", k.D}, {"R", k.R}, {"b", k.b}, {"r", k.r}}}});
            }
        }
    }
    ctx.open("regime.csv") << reg.str();

    ctx.write_json("summary.json", {{"triangle", describe(tri)},
                                    {"vertex", vertex_name(vertex)},
                                    {"max_depth", n_max},
                                    {"diagonals", diags.size()},
                                    {"Q", Q},
                                    {"min_gap", gaps.min_gap},
                                    {"fitted_a", gaps.fitted_a},
                                    {"constants", {{"D", k.D}, {"R", k.R}, {"b", k.b}, {"r", k.r}}}});
}

// ---------------------------------------------------------------------------
// analyze

json fit_json(const GrowthFit& f) {
    return {{"model", f.model == GrowthModel::PowerLaw ? "power" : "stretched"},
            {"exponent", f.exponent},
            {"intercept", f.intercept},
            {"residual", f.residual},
            {"n_min", f.n_min},
            {"n_max", f.n_max},
            {"points", f.points}};
}

void run_fit(const json& cfg, RunContext& ctx) {
    const fs::path in = cfg.at("input").get<std::string>();
    if (!fs::exists(in)) throw InputFailure{"input file not found: " + in.string()};
    std::istringstream is(read_file(in));
    auto series = read_series_csv(is, cfg.at("column").get<std::string>());
    const int n_min = cfg.at("n_min").get<int>();
    std::erase_if(series, [n_min](const auto& p) { return p.first < n_min; });
    const auto model = cfg.at("model").get<std::string>() == "power" ? GrowthModel::PowerLaw : GrowthModel::StretchedExp;
    const json j = fit_json(fit_growth(series, model));
    ctx.write_json("fit.json", j);
    std::cout << j.dump() << '\n';
}

void run_bootstrap(const json& cfg, RunContext& ctx) {
    const auto t = bootstrap_iterate(cfg.at("nu0").get<double>(), cfg.at("eps").get<double>());
    std::ostringstream csv;
    csv << "k,nu\n";
    for (std::size_t k = 0; k < t.nu.size(); ++k) csv << k << ',' << format_double(t.nu[k]) << '\n';
    ctx.open("bootstrap.csv") << csv.str();
    const json j{{"nu0", t.nu0}, {"eps", t.target_eps}, {"k_stop", t.k_stop}, {"final_nu", t.nu.back()}};
    ctx.write_json("bootstrap.json", j);
    std::cout << j.dump() << '\n';
}

void run_witness(const json& cfg, RunContext& ctx) {
    const double nu = cfg.at("nu").get<double>();
    const double mu = cfg.at("mu").get<double>();
    const auto e = epsilon_witness(nu, mu);
    json j{{"nu", nu}, {"mu", mu}, {"gamma", bootstrap_gamma(nu)}, {"exists", e.has_value()}};
    if (e) j["epsilon"] = *e;
    ctx.write_json("witness.json", j);
    std::cout << j.dump() << '\n';
}

void run_kr(const json& cfg, RunContext& ctx) {
    const int depth = cfg.at("depth").get<int>();
    if (depth < 1) throw InputFailure{"--depth must be >= 1"};
    const auto tris = resolve_triangles(cfg.at("triangle"));
    const auto& tri = tris.front();
    EnumerationOptions opts;
    opts.workers = ctx.workers;
    // Family: twice the signed area of (source, P, Q) for diagonals adjacent in
    // direction at one vertex, as polynomials in the angles.
    std::vector<TrigPoly> polys;
    std::vector<json> labels;
    int m = 0;
    for (int v = 0; v < 3; ++v) {
        const auto vid = static_cast<VertexId>(v);
        const auto diags = enumerate_diagonals(tri, vid, depth, opts).diagonals;
        const auto S = symbolic_standard_vertex(vid);
        for (std::size_t i = 0; i + 1 < diags.size(); ++i) {
            const auto& d1 = diags[i];
            const auto& d2 = diags[i + 1];
            TrigPoly p;
            try {
                p = area_polynomial(S, symbolic_triangle_vertex(d1.comb, d1.final_pose.half, d1.target),
                                    symbolic_triangle_vertex(d2.comb, d2.final_pose.half, d2.target));
            } catch (const Error& e) {
                if (e.code() != ErrorCode::DegenerateInput) throw;
                continue;
            }
            if (p.is_zero()) continue;
            m = std::max(m, p.degree());
            labels.push_back({{"vertex", vertex_name(vid)}, {"first", to_string(d1.comb)}, {"second", to_string(d2.comb)}});
            polys.push_back(std::move(p));
        }
    }
    if (polys.empty()) throw Error(ErrorCode::InsufficientData, "no adjacent diagonal pairs at this depth");
    const auto samples = cfg.at("samples").get<std::uint64_t>();
    const auto seed = cfg.at("seed").get<std::uint64_t>();
    const KRReport r = cfg.contains("threshold")
                           ? kr_measure_sample_threshold(polys, cfg["threshold"].get<double>(), samples, seed, ctx.workers)
                           : kr_measure_sample(polys, m, cfg.at("R").get<double>(), samples, seed, ctx.workers);
    std::ostringstream csv;
    csv << "index,vertex,degree,hits,samples,fraction,ci_lo,ci_hi\n";
    for (std::size_t i = 0; i < polys.size(); ++i) {
        const auto& e = r.per_poly[i];
        csv << i << ',' << labels[i]["vertex"].get<std::string>() << ',' << polys[i].degree() << ',' << e.hits << ','
            << e.samples << ',' << format_double(e.fraction) << ',' << format_double(e.ci_lo) << ','
            << format_double(e.ci_hi) << '\n';
    }
    ctx.open("kr.csv") << csv.str();
    const json j{{"triangle", describe(tri)},
                 {"depth", depth},
                 {"polynomials", polys.size()},
                 {"max_degree", m},
                 {"threshold", r.threshold},
                 {"samples", samples},
                 {"max_fraction", r.max_fraction},
                 {"argmax", labels[r.argmax]}};
    ctx.write_json("kr.json", j);
    std::cout << j.dump() << '\n';
}

// ---------------------------------------------------------------------------
// oracle

void run_oracle(const json& cfg, RunContext& ctx) {
    const auto tris = resolve_triangles(cfg.at("triangle"));
    const int n_max = cfg.at("max_depth").get<int>();
    const int rays = cfg.at("rays").get<int>();
    if (rays < 2) throw InputFailure{"--rays must be >= 2"};
    EnumerationOptions opts;
    opts.workers = ctx.workers;
    json summary = json::array();
    json misses = json::array();
    for (std::size_t i = 0; i < tris.size(); ++i) {
        const auto& tri = tris[i];
        for (int v = 0; v < 3; ++v) {
            const auto vid = static_cast<VertexId>(v);
            const auto engine = enumerate_diagonals(tri, vid, n_max, opts).diagonals;
            const auto oracle = ray_oracle(tri, vid, n_max, rays, ctx.workers);
            std::size_t missed = 0;
            auto os = ctx.open(triangle_dir(i) + "/oracle_" + std::string(vertex_name(vid)) + ".jsonl");
            for (const auto& od : oracle.diagonals) {
                const auto it = std::lower_bound(engine.begin(), engine.end(), od.direction - 1e-8,
                                                 [](const GeneralizedDiagonal& d, double x) { return d.direction < x; });
                const bool found = it != engine.end() && it->direction <= od.direction + 1e-8;
                os << json{{"direction", od.direction}, {"algebraic_length", od.algebraic_length},
                           {"target", vertex_name(od.target)}, {"matched", found}}
                          .dump()
                   << '\n';
                if (!found) {
                    ++missed;
                    misses.push_back({{"triangle", describe(tri)}, {"vertex", vertex_name(vid)}, {"direction", od.direction},
                                      {"algebraic_length", od.algebraic_length}});
                }
            }
            summary.push_back({{"index", i},
                               {"vertex", vertex_name(vid)},
                               {"engine", engine.size()},
                               {"oracle", oracle.diagonals.size()},
                               {"non_converged", oracle.non_converged.size()},
                               {"missed", missed}});
        }
    }
    ctx.write_json("oracle_summary.json", summary);
    if (!misses.empty()) ctx.fail_invariant("oracle found diagonals the engine did not", misses);
}

// ---------------------------------------------------------------------------

int execute(const std::string& command, const json& cfg, const fs::path& out, int workers) {
    if (workers < 1) throw InputFailure{"--workers must be >= 1"};
    RunContext ctx{out, workers, {}};
    fs::create_directories(out);
    const std::string runtime_error_message = [&]() -> std::string {
        try {
            if (command == "enumerate") run_enumerate(cfg, ctx);
            else if (command == "partition") run_partition(cfg, ctx);
            else if (command == "analyze fit") run_fit(cfg, ctx);
            else if (command == "analyze bootstrap") run_bootstrap(cfg, ctx);
            else if (command == "analyze witness") run_witness(cfg, ctx);
            else if (command == "analyze kr") run_kr(cfg, ctx);
            else if (command == "oracle") run_oracle(cfg, ctx);
            else throw InputFailure{"unknown command '" + command + "' in manifest"};
        } catch (const InvariantFailure& f) {
            return f.message;
        }
        return {};
    }();
    json manifest{{"tool", "billiards"},
                  {"command", command},
                  {"config", cfg},
                  {"outputs", ctx.outputs},
                  {"status", runtime_error_message.empty() ? "ok" : "invariant_violation"},
                  {"runtime", {{"created_utc", utc_now()}, {"workers", workers}}}};
    std::ofstream(out / "manifest.json", std::ios::binary) << manifest.dump(2) << '\n';
    return runtime_error_message.empty() ? kOk : kInvariant;
}

std::string default_out() {
    const char* env = std::getenv("BILLIARDS_OUT");
    return env && *env ? env : "billiards_out";
}

int run(int argc, char** argv) {
    CLI::App app{"Generalized diagonals, partitions and complexity analysis for triangular billiards"};
    app.require_subcommand(1);
    int workers = 1;
    std::string out = default_out();
    auto common = [&](CLI::App* sub) {
        sub->add_option("--workers", workers, "worker threads (results do not depend on it)")->check(CLI::PositiveNumber);
        sub->add_option("--out", out, "output directory (default $BILLIARDS_OUT or ./billiards_out)");
    };

    std::string command;
    json cfg;

    TriangleOptions enum_tri;
    int enum_depth = 10;
    auto* enumerate = app.add_subcommand("enumerate", "enumerate generalized diagonals from every vertex");
    add_triangle_options(enumerate, enum_tri, true);
    enumerate->add_option("--max-depth", enum_depth, "largest algebraic length")->check(CLI::NonNegativeNumber);
    common(enumerate);

    TriangleOptions part_tri;
    std::string part_in;
    std::string part_vertex;
    int part_depth = -1;
    std::size_t part_index = 0;
    auto* partition = app.add_subcommand("partition", "indexed partitions, gaps and lemma audits at one vertex");
    add_triangle_options(partition, part_tri, true);
    partition->add_option("--in", part_in, "diagonals JSON-lines file")->required();
    partition->add_option("--vertex", part_vertex, "source vertex V0, V1 or V2 (default: from the file)");
    partition->add_option("--max-depth", part_depth, "deepest level (default: longest diagonal in the file)");
    partition->add_option("--index", part_index, "which of the --random triangles");
    common(partition);

    auto* analyze = app.add_subcommand("analyze", "growth fits, bootstrap calculus, small-value sampling");
    analyze->require_subcommand(1);

    std::string fit_in;
    std::string fit_model = "power";
    std::string fit_column = "P";
    int fit_n_min = 1;
    auto* fit = analyze->add_subcommand("fit", "fit P_n against a growth model");
    fit->add_option("--in", fit_in, "counts CSV")->required();
    fit->add_option("--model", fit_model)->check(CLI::IsMember({"power", "stretched"}));
    fit->add_option("--column", fit_column, "series column");
    fit->add_option("--n-min", fit_n_min, "drop levels below this");
    common(fit);

    double nu0 = 1;
    double eps = 0.5;
    auto* bootstrap = analyze->add_subcommand("bootstrap", "iterate the growth-exponent bootstrap");
    bootstrap->add_option("--nu0", nu0);
    bootstrap->add_option("--eps", eps);
    common(bootstrap);

    double w_nu = 1;
    double w_mu = 0.7;
    auto* witness = analyze->add_subcommand("witness", "epsilon witnessing mu above the bootstrap threshold");
    witness->add_option("--nu", w_nu);
    witness->add_option("--mu", w_mu);
    common(witness);

    TriangleOptions kr_tri;
    int kr_depth = 5;
    std::uint64_t kr_samples = 100000;
    double kr_R = 1;
    std::optional<double> kr_threshold;
    auto* kr = analyze->add_subcommand("kr", "measure of small values of area polynomials");
    add_triangle_options(kr, kr_tri, false);
    kr->add_option("--depth", kr_depth);
    kr->add_option("--samples", kr_samples)->check(CLI::PositiveNumber);
    kr->add_option("--R", kr_R, "threshold exp(-R m^2)");
    kr->add_option("--threshold", kr_threshold, "explicit threshold instead of exp(-R m^2)");
    common(kr);

    TriangleOptions or_tri;
    int or_depth = 8;
    int or_rays = 100000;
    auto* oracle = app.add_subcommand("oracle", "cross-check the engine against plain ray tracing");
    add_triangle_options(oracle, or_tri, true);
    oracle->add_option("--max-depth", or_depth)->check(CLI::NonNegativeNumber);
    oracle->add_option("--rays", or_rays);
    common(oracle);

    std::string manifest_path;
    std::optional<int> rerun_workers;
    std::optional<std::string> rerun_out;
    auto* rerun = app.add_subcommand("rerun", "repeat the run recorded in a manifest");
    rerun->add_option("--manifest", manifest_path)->required();
    rerun->add_option("--workers", rerun_workers)->check(CLI::PositiveNumber);
    rerun->add_option("--out", rerun_out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kInput;
    }

    if (*enumerate) {
        command = "enumerate";
        cfg = {{"triangle", triangle_spec(enum_tri, false)}, {"max_depth", enum_depth}};
    } else if (*partition) {
        command = "partition";
        const fs::path in = part_in;
        if (!fs::exists(in)) throw InputFailure{"input file not found: " + part_in};
        const std::string bytes = read_file(in);
        if (part_vertex.empty()) {
            std::istringstream is(bytes);
            const auto diags = read_diagonals_jsonl(is);
            part_vertex = diags.empty() ? "V0" : std::string(vertex_name(diags.front().source_vertex));
        }
        cfg = {{"triangle", triangle_spec(part_tri, false)}, {"index", part_index},
               {"input", fs::absolute(in).lexically_normal().string()}, {"input_fnv1a", hex64(fnv1a(bytes))},
               {"vertex", part_vertex}, {"max_depth", part_depth}};
    } else if (*analyze && *fit) {
        command = "analyze fit";
        cfg = {{"input", fs::absolute(fit_in).lexically_normal().string()}, {"model", fit_model},
               {"column", fit_column}, {"n_min", fit_n_min}};
    } else if (*analyze && *bootstrap) {
        command = "analyze bootstrap";
        cfg = {{"nu0", nu0}, {"eps", eps}};
    } else if (*analyze && *witness) {
        command = "analyze witness";
        cfg = {{"nu", w_nu}, {"mu", w_mu}};
    } else if (*analyze && *kr) {
        command = "analyze kr";
        cfg = {{"triangle", triangle_spec(kr_tri, true)}, {"depth", kr_depth}, {"samples", kr_samples},
               {"seed", kr_tri.seed}, {"R", kr_R}};
        if (kr_threshold) cfg["threshold"] = *kr_threshold;
    } else if (*oracle) {
        command = "oracle";
        cfg = {{"triangle", triangle_spec(or_tri, false)}, {"max_depth", or_depth}, {"rays", or_rays}};
    } else if (*rerun) {
        json m;
        try {
            m = json::parse(read_file(manifest_path));
            command = m.at("command").get<std::string>();
            cfg = m.at("config");
            workers = rerun_workers.value_or(m.at("runtime").at("workers").get<int>());
        } catch (const json::exception& e) {
            throw Error(ErrorCode::ParseError, manifest_path + ": " + e.what());
        }
        out = rerun_out.value_or(fs::path(manifest_path).parent_path().string());
    }
    return execute(command, cfg, out, workers);
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const InputFailure& e) {
        std::cerr << "error: " << e.message << '\n';
        return kInput;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code_for(e.code());
    } catch (const json::exception& e) {
        std::cerr << "error: malformed configuration: " << e.what() << '\n';
        return kCorrupt;
    } catch (const fs::filesystem_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInput;
    }
}
