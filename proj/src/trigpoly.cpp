#include "billiards/trigpoly.hpp"

#include <algorithm>
#include <limits>

#include "billiards/errors.hpp"

namespace billiards {

Dyadic::Dyadic(BigInt num, int log2_den) : num_(std::move(num)), exp_(log2_den) {
    if (exp_ < 0) {
        num_ <<= -exp_;
        exp_ = 0;
    }
    normalize();
}

void Dyadic::normalize() {
    if (num_.is_zero()) {
        exp_ = 0;
        return;
    }
    if (exp_ == 0) return;
    const auto tz = static_cast<int>(boost::multiprecision::lsb(boost::multiprecision::abs(num_)));
    const int shift = std::min(tz, exp_);
    num_ >>= shift;
    exp_ -= shift;
}

long double Dyadic::to_long_double() const {
    return std::ldexp(num_.convert_to<long double>(), -exp_);
}

Dyadic Dyadic::operator+(const Dyadic& o) const {
    const int e = std::max(exp_, o.exp_);
    return Dyadic(scaled_numerator(e) + o.scaled_numerator(e), e);
}

Dyadic Dyadic::operator-(const Dyadic& o) const { return *this + (-o); }

Dyadic Dyadic::operator*(const Dyadic& o) const { return Dyadic(num_ * o.num_, exp_ + o.exp_); }

std::string to_string(const Dyadic& d) {
    std::string s = d.numerator().str();
    if (d.log2_den() > 0) s += "/2^" + std::to_string(d.log2_den());
    return s;
}

TrigPoly TrigPoly::constant(const Dyadic& c) {
    TrigPoly p;
    p.add_term(0, 0, c, 0);
    return p;
}

TrigPoly TrigPoly::cos_term(int i, int j, const Dyadic& coeff) {
    TrigPoly p;
    p.add_term(i, j, coeff, 0);
    return p;
}

TrigPoly TrigPoly::sin_term(int i, int j, const Dyadic& coeff) {
    TrigPoly p;
    p.add_term(i, j, 0, coeff);
    return p;
}

void TrigPoly::add_term(int i, int j, const Dyadic& c, const Dyadic& s) {
    Dyadic sc = s;
    if (i < 0 || (i == 0 && j < 0)) {
        i = -i;
        j = -j;
        sc = -sc;
    }
    if (i == 0 && j == 0) sc = 0;  // sin(0) vanishes
    if (c.is_zero() && sc.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(Frequency{i, j}, TrigCoeffs{c, sc});
    if (!inserted) {
        it->second.cos_coeff = it->second.cos_coeff + c;
        it->second.sin_coeff = it->second.sin_coeff + sc;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

int TrigPoly::degree() const {
    int d = 0;
    for (const auto& [f, _] : terms_) d = std::max(d, f.weight());
    return d;
}

bool TrigPoly::is_integral() const {
    return std::all_of(terms_.begin(), terms_.end(), [](const auto& kv) {
        return kv.second.cos_coeff.is_integer() && kv.second.sin_coeff.is_integer();
    });
}

int TrigPoly::max_log2_den() const {
    int d = 0;
    for (const auto& [_, c] : terms_) d = std::max({d, c.cos_coeff.log2_den(), c.sin_coeff.log2_den()});
    return d;
}

long double TrigPoly::eval(long double alpha, long double beta) const {
    long double acc = 0;
    for (const auto& [f, c] : terms_) {
        const long double arg = std::remainder(f.i * alpha + f.j * beta, 2.0L * kPiL);
        if (!c.cos_coeff.is_zero()) acc += c.cos_coeff.to_long_double() * std::cos(arg);
        if (!c.sin_coeff.is_zero()) acc += c.sin_coeff.to_long_double() * std::sin(arg);
    }
    return acc;
}

TrigPoly TrigPoly::canonicalized() const {
    TrigPoly out;
    for (const auto& [f, c] : terms_) out.add_term(f.i, f.j, c.cos_coeff, c.sin_coeff);
    return out;
}

TrigPoly TrigPoly::operator+(const TrigPoly& o) const {
    TrigPoly out = *this;
    for (const auto& [f, c] : o.terms_) out.add_term(f.i, f.j, c.cos_coeff, c.sin_coeff);
    return out;
}

TrigPoly TrigPoly::operator-() const {
    TrigPoly out;
    for (const auto& [f, c] : terms_) out.terms_.emplace(f, TrigCoeffs{-c.cos_coeff, -c.sin_coeff});
    return out;
}

TrigPoly TrigPoly::operator-(const TrigPoly& o) const { return *this + (-o); }

TrigPoly TrigPoly::operator*(const Dyadic& s) const {
    if (s.is_zero()) return {};
    TrigPoly out;
    for (const auto& [f, c] : terms_) out.terms_.emplace(f, TrigCoeffs{c.cos_coeff * s, c.sin_coeff * s});
    return out;
}

TrigPoly TrigPoly::operator*(const TrigPoly& o) const {
    // (c1 cos a + s1 sin a)(c2 cos b + s2 sin b)
    //   = 1/2 (c1c2 - s1s2) cos(a+b) + 1/2 (c1c2 + s1s2) cos(a-b)
    //   + 1/2 (c1s2 + s1c2) sin(a+b) + 1/2 (s1c2 - c1s2) sin(a-b)
    TrigPoly out;
    for (const auto& [f1, k1] : terms_) {
        for (const auto& [f2, k2] : o.terms_) {
            const Dyadic cc = k1.cos_coeff * k2.cos_coeff;
            const Dyadic ss = k1.sin_coeff * k2.sin_coeff;
            const Dyadic cs = k1.cos_coeff * k2.sin_coeff;
            const Dyadic sc = k1.sin_coeff * k2.cos_coeff;
            out.add_term(f1.i + f2.i, f1.j + f2.j, (cc - ss).half(), (cs + sc).half());
            out.add_term(f1.i - f2.i, f1.j - f2.j, (cc + ss).half(), (sc - cs).half());
        }
    }
    return out;
}

namespace {

nlohmann::json bigint_json(const BigInt& v) {
    if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max()) {
        return v.convert_to<std::int64_t>();
    }
    return v.str();
}

BigInt bigint_from_json(const nlohmann::json& j) {
    if (j.is_number_integer()) return BigInt(j.get<std::int64_t>());
    if (j.is_string()) return BigInt(j.get<std::string>());
    throw Error(ErrorCode::ParseError, "trig polynomial numerator must be an integer or decimal string");
}

}  // namespace

nlohmann::json to_json(const TrigPoly& p) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [f, c] : p.terms()) {
        const int e = std::max(c.cos_coeff.log2_den(), c.sin_coeff.log2_den());
        arr.push_back({{"i", f.i},
                       {"j", f.j},
                       {"cos_num", bigint_json(c.cos_coeff.scaled_numerator(e))},
                       {"sin_num", bigint_json(c.sin_coeff.scaled_numerator(e))},
                       {"log2_den", e}});
    }
    return arr;
}

TrigPoly trigpoly_from_json(const nlohmann::json& j) {
    if (!j.is_array()) throw Error(ErrorCode::ParseError, "trig polynomial must be a JSON array");
    TrigPoly p;
    for (const auto& rec : j) {
        const int e = rec.at("log2_den").get<int>();
        p.add_term(rec.at("i").get<int>(), rec.at("j").get<int>(), Dyadic(bigint_from_json(rec.at("cos_num")), e),
                   Dyadic(bigint_from_json(rec.at("sin_num")), e));
    }
    return p;
}

CompiledTrigPoly compile(const TrigPoly& p) {
    CompiledTrigPoly out;
    out.terms.reserve(p.terms().size());
    for (const auto& [f, c] : p.terms()) {
        out.terms.push_back({f.i, f.j, static_cast<double>(c.cos_coeff.to_long_double()),
                             static_cast<double>(c.sin_coeff.to_long_double())});
        out.max_abs_i = std::max(out.max_abs_i, std::abs(f.i));
        out.max_abs_j = std::max(out.max_abs_j, std::abs(f.j));
    }
    return out;
}

TrigPoly sin_alpha_plus_beta() { return TrigPoly::sin_term(1, 1); }

Vec2L SymbolicCoords::eval(long double alpha, long double beta) const {
    const long double den = std::pow(std::sin(alpha + beta), static_cast<long double>(sin_power));
    return {x_num.eval(alpha, beta) / den, y_num.eval(alpha, beta) / den};
}

SymbolicCoords SymbolicCoords::with_sin_power(int power) const {
    if (power < sin_power) {
        throw Error(ErrorCode::PreconditionViolated, "cannot lower the sin(alpha+beta) power of a coordinate");
    }
    SymbolicCoords out = *this;
    const TrigPoly s = sin_alpha_plus_beta();
    for (; out.sin_power < power; ++out.sin_power) {
        out.x_num = out.x_num * s;
        out.y_num = out.y_num * s;
    }
    return out;
}

SymbolicKite symbolic_unfold(const Combinatorics& comb) {
    // Same recursion as the numeric kite chain: the pivot stays, the other
    // diagonal end moves to pivot +/- (cos phi, sin phi).
    SymbolicKite k;
    k.beta_vertex.x_num = TrigPoly::constant(1);
    for (const auto& step : comb.steps) {
        const int s = step.sign_value();
        if (step.pivot == UnfoldStep::Pivot::AlphaVertex) {
            k.angle.m += 2 * s;
            k.beta_vertex.x_num = k.alpha_vertex.x_num + TrigPoly::cos_term(k.angle.m, k.angle.l);
            k.beta_vertex.y_num = k.alpha_vertex.y_num + TrigPoly::sin_term(k.angle.m, k.angle.l);
        } else {
            k.angle.l += 2 * s;
            k.alpha_vertex.x_num = k.beta_vertex.x_num - TrigPoly::cos_term(k.angle.m, k.angle.l);
            k.alpha_vertex.y_num = k.beta_vertex.y_num - TrigPoly::sin_term(k.angle.m, k.angle.l);
        }
    }
    return k;
}

SideVertexForm symbolic_side_vertex(const Combinatorics& comb, SideVertex which) {
    const auto k = symbolic_unfold(comb);
    return {k.alpha_vertex.x_num, k.alpha_vertex.y_num, k.angle.m + (which == SideVertex::Upper ? 1 : -1),
            k.angle.l};
}

Vec2L SideVertexForm::eval(const TriangleShape& tri) const {
    const long double rho = tri.side_ratio();
    const auto cs = evaluate_angle(tri, {m, l});
    return {P.eval(tri) + rho * cs.c, Q.eval(tri) + rho * cs.s};
}

SymbolicCoords symbolic_triangle_vertex(const Combinatorics& comb, int half, VertexId v) {
    const auto k = symbolic_unfold(comb);
    switch (v) {
        case VertexId::A: return k.alpha_vertex.with_sin_power(1);
        case VertexId::B: return k.beta_vertex.with_sin_power(1);
        case VertexId::C: {
            // (P sin(a+b) + sin(b) cos(theta)) / sin(a+b), theta = phi +/- alpha
            const auto side = symbolic_side_vertex(comb, half == 0 ? SideVertex::Upper : SideVertex::Lower);
            const TrigPoly s = sin_alpha_plus_beta();
            const TrigPoly sin_b = TrigPoly::sin_term(0, 1);
            SymbolicCoords out;
            out.sin_power = 1;
            out.x_num = side.P * s + sin_b * TrigPoly::cos_term(side.m, side.l);
            out.y_num = side.Q * s + sin_b * TrigPoly::sin_term(side.m, side.l);
            return out;
        }
    }
    return {};
}

SymbolicCoords symbolic_standard_vertex(VertexId v) {
    return symbolic_triangle_vertex(Combinatorics{}, 0, v);
}

TrigPoly area_polynomial(const SymbolicCoords& a, const SymbolicCoords& b, const SymbolicCoords& c) {
    const auto A = a.with_sin_power(1);
    const auto B = b.with_sin_power(1);
    const auto C = c.with_sin_power(1);
    const TrigPoly m = (B.x_num - A.x_num) * (C.y_num - A.y_num) - (C.x_num - A.x_num) * (B.y_num - A.y_num);
    if (m.is_zero()) {
        throw Error(ErrorCode::DegenerateInput, "area polynomial vanishes identically (coincident diagonals)");
    }
    return m;
}

}  // namespace billiards
