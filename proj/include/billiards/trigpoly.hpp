#pragma once
/**
 * Exact sparse trigonometric polynomials in two angles,
 *
 *     p(alpha, beta) = sum_{(i,j)} a_ij cos(i alpha + j beta) + b_ij sin(i alpha + j beta),
 *
 * with dyadic rational coefficients. Frequencies are folded so every stored
 * pair has i > 0, or i == 0 and j >= 0.
 */

#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "billiards/geometry.hpp"
#include "json.hpp"

namespace billiards {

using BigInt = boost::multiprecision::cpp_int;

/// num / 2^log2_den, kept reduced (num odd whenever log2_den > 0).
class Dyadic {
public:
    Dyadic() = default;
    Dyadic(long long v) : num_(v) {}  // NOLINT(google-explicit-constructor)
    Dyadic(BigInt num, int log2_den);

    const BigInt& numerator() const { return num_; }
    int log2_den() const { return exp_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_integer() const { return exp_ == 0; }
    long double to_long_double() const;

    Dyadic operator+(const Dyadic& o) const;
    Dyadic operator-(const Dyadic& o) const;
    Dyadic operator*(const Dyadic& o) const;
    Dyadic operator-() const { return Dyadic(-num_, exp_); }
    Dyadic half() const { return Dyadic(num_, exp_ + 1); }
    bool operator==(const Dyadic& o) const { return exp_ == o.exp_ && num_ == o.num_; }

    /// Numerator after scaling to denominator 2^target (target >= log2_den()).
    BigInt scaled_numerator(int target) const { return num_ << (target - exp_); }

private:
    void normalize();

    BigInt num_{0};
    int exp_ = 0;
};

std::string to_string(const Dyadic& d);

struct Frequency {
    int i = 0;
    int j = 0;

    auto operator<=>(const Frequency&) const = default;
    int weight() const { return std::abs(i) + std::abs(j); }
};

struct TrigCoeffs {
    Dyadic cos_coeff;
    Dyadic sin_coeff;

    bool is_zero() const { return cos_coeff.is_zero() && sin_coeff.is_zero(); }
    bool operator==(const TrigCoeffs&) const = default;
};

class TrigPoly {
public:
    TrigPoly() = default;

    static TrigPoly constant(const Dyadic& c);
    static TrigPoly cos_term(int i, int j, const Dyadic& coeff = 1);
    static TrigPoly sin_term(int i, int j, const Dyadic& coeff = 1);

    /// Adds c*cos(i a + j b) + s*sin(i a + j b), folding the frequency.
    void add_term(int i, int j, const Dyadic& c, const Dyadic& s);

    const std::map<Frequency, TrigCoeffs>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    int degree() const;
    /// All coefficients integers.
    bool is_integral() const;
    /// Largest log2 denominator over all coefficients (0 for integral polys).
    int max_log2_den() const;

    long double eval(long double alpha, long double beta) const;
    long double eval(const TriangleShape& tri) const { return eval(tri.alpha_l(), tri.beta_l()); }

    /// Rebuilds the term map from scratch through add_term.
    TrigPoly canonicalized() const;

    TrigPoly operator+(const TrigPoly& o) const;
    TrigPoly operator-(const TrigPoly& o) const;
    TrigPoly operator*(const TrigPoly& o) const;
    TrigPoly operator*(const Dyadic& s) const;
    TrigPoly operator-() const;
    bool operator==(const TrigPoly&) const = default;

private:
    std::map<Frequency, TrigCoeffs> terms_;
};

inline TrigPoly tp_add(const TrigPoly& p, const TrigPoly& q) { return p + q; }
inline TrigPoly tp_mul(const TrigPoly& p, const TrigPoly& q) { return p * q; }
inline long double tp_eval(const TrigPoly& p, long double alpha, long double beta) { return p.eval(alpha, beta); }

/// [{i, j, cos_num, sin_num, log2_den}, ...] sorted by (i, j). Numerators are
/// JSON integers when they fit in 64 bits and decimal strings otherwise.
nlohmann::json to_json(const TrigPoly& p);
TrigPoly trigpoly_from_json(const nlohmann::json& j);

/// Double-precision term list for fast repeated evaluation (sampling).
struct CompiledTrigPoly {
    struct Term {
        int i;
        int j;
        double c;
        double s;
    };
    std::vector<Term> terms;
    int max_abs_i = 0;
    int max_abs_j = 0;
};

CompiledTrigPoly compile(const TrigPoly& p);

/// x_num / sin(alpha+beta)^sin_power, y_num likewise.
struct SymbolicCoords {
    TrigPoly x_num;
    TrigPoly y_num;
    int sin_power = 0;

    Vec2L eval(long double alpha, long double beta) const;
    Vec2L eval(const TriangleShape& tri) const { return eval(tri.alpha_l(), tri.beta_l()); }
    /// Same point with the denominator raised to sin(alpha+beta)^power.
    SymbolicCoords with_sin_power(int power) const;
};

/// sin(alpha + beta) as a trig polynomial.
TrigPoly sin_alpha_plus_beta();

struct SymbolicKite {
    SymbolicCoords alpha_vertex;
    SymbolicCoords beta_vertex;
    AnglePair angle;
};

/// Exact alpha- and beta-vertex coordinates of the final kite of a kite
/// unfolding started from standard position (unit diagonal).
SymbolicKite symbolic_unfold(const Combinatorics& comb);

enum class SideVertex { Upper, Lower };

/// Side vertex as x = P + sin(b)/sin(a+b) cos(m a + l b), y = Q + sin(b)/sin(a+b) sin(m a + l b).
struct SideVertexForm {
    TrigPoly P;
    TrigPoly Q;
    int m = 0;
    int l = 0;

    Vec2L eval(const TriangleShape& tri) const;
};

SideVertexForm symbolic_side_vertex(const Combinatorics& comb, SideVertex which);

/// Vertex `v` of an unfolded triangle copy reached by `comb` with final half
/// `half`, in the form num/sin(alpha+beta) (sin_power = 1).
SymbolicCoords symbolic_triangle_vertex(const Combinatorics& comb, int half, VertexId v);
/// Vertex `v` of the triangle in standard position, sin_power = 1.
SymbolicCoords symbolic_standard_vertex(VertexId v);

/// M = 2 * signed area(A, B, C) * sin^2(alpha+beta). Inputs of sin_power 0 or 1
/// are accepted and lifted to power 1. Throws DegenerateInput if M == 0.
TrigPoly area_polynomial(const SymbolicCoords& a, const SymbolicCoords& b, const SymbolicCoords& c);

}  // namespace billiards
