#pragma once
/**
 * Triangle shapes, kite poses and the exact angle bookkeeping used by every
 * unfolding in the library.
 *
 * Orientation of any unfolded copy is kept as an integer pair (m, l) meaning
 * the angle m*alpha + l*beta. Floating point only enters when that angle is
 * evaluated, and the evaluation reduces the argument modulo 2*pi in long
 * double first.
 *
 * Standard position: the alpha-vertex sits at the origin and the unit kite
 * diagonal (the triangle side of length 1) runs along the positive x-axis.
 * The triangle itself has vertices A=(0,0), B=(1,0) and apex C above the
 * x-axis; its mirror image below the axis completes the kite.
 */

#include <array>
#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace billiards {

template <class T>
struct BasicVec2 {
    T x{0};
    T y{0};

    constexpr BasicVec2 operator+(const BasicVec2& o) const { return {x + o.x, y + o.y}; }
    constexpr BasicVec2 operator-(const BasicVec2& o) const { return {x - o.x, y - o.y}; }
    constexpr BasicVec2 operator*(T s) const { return {x * s, y * s}; }
    constexpr BasicVec2 operator-() const { return {-x, -y}; }
    constexpr bool operator==(const BasicVec2&) const = default;

    T norm() const { return std::hypot(x, y); }
};

template <class T>
constexpr T dot(const BasicVec2<T>& a, const BasicVec2<T>& b) { return a.x * b.x + a.y * b.y; }

template <class T>
constexpr T cross(const BasicVec2<T>& a, const BasicVec2<T>& b) { return a.x * b.y - a.y * b.x; }

using Vec2 = BasicVec2<double>;
using Vec2L = BasicVec2<long double>;

inline Vec2 to_double(const Vec2L& v) { return {static_cast<double>(v.x), static_cast<double>(v.y)}; }
inline Vec2L to_long(const Vec2& v) { return {v.x, v.y}; }

constexpr long double kPiL = 3.141592653589793238462643383279502884L;
constexpr double kPi = 3.141592653589793238462643383279502884;

/// Triangle labels in standard position: A carries alpha, B carries beta, C gamma.
enum class VertexId : std::uint8_t { A = 0, B = 1, C = 2 };

std::string_view vertex_name(VertexId v);  // "V0", "V1", "V2"
VertexId parse_vertex(std::string_view s);
inline VertexId third_vertex(VertexId a, VertexId b) {
    return static_cast<VertexId>(3 - static_cast<int>(a) - static_cast<int>(b));
}

/// A triangle of the class Delta_delta: unit side AB, angles alpha at A and
/// beta at B, all three angles strictly above delta.
class TriangleShape {
public:
    double alpha() const { return static_cast<double>(alpha_); }
    double beta() const { return static_cast<double>(beta_); }
    double gamma() const { return static_cast<double>(gamma_); }
    double delta() const { return delta_; }
    double base_length() const { return 1.0; }

    long double alpha_l() const { return alpha_; }
    long double beta_l() const { return beta_; }
    long double gamma_l() const { return gamma_; }

    long double angle_at(VertexId v) const;
    /// Length of |AC| = sin(beta)/sin(alpha+beta).
    long double side_ratio() const { return side_ratio_; }
    long double side_length_opposite(VertexId v) const;
    /// Vertex coordinates in standard position.
    Vec2L vertex(VertexId v) const;

    /// Longest side.
    double diameter() const;
    double min_side() const;

    friend TriangleShape make_triangle(double alpha, double beta, double delta);
    friend TriangleShape make_triangle_long(long double alpha, long double beta, double delta);

private:
    TriangleShape() = default;

    long double alpha_ = 0;
    long double beta_ = 0;
    long double gamma_ = 0;
    double delta_ = 0;
    long double side_ratio_ = 0;
};

constexpr double kDefaultDelta = 0.05;

/// Throws Error{AngleOutOfRange} unless 0 < alpha, beta, alpha + beta < pi and
/// every angle exceeds delta.
TriangleShape make_triangle(double alpha, double beta, double delta = kDefaultDelta);
/// Same, with angles supplied in extended precision (rational multiples of pi
/// are best built here so collinearities survive deep unfoldings).
TriangleShape make_triangle_long(long double alpha, long double beta, double delta = kDefaultDelta);
/// Angles given as p1/q1*pi and p2/q2*pi.
TriangleShape make_rational_triangle(int p1, int q1, int p2, int q2, double delta = kDefaultDelta);

/// Integer pair (m, l) standing for the angle m*alpha + l*beta.
struct AnglePair {
    int m = 0;
    int l = 0;

    constexpr bool operator==(const AnglePair&) const = default;
    constexpr auto operator<=>(const AnglePair&) const = default;
    int weight() const { return std::abs(m) + std::abs(l); }
};

struct CosSin {
    long double c;
    long double s;
};

/// cos/sin of m*alpha + l*beta + extra_alpha*alpha with the argument reduced
/// modulo 2*pi in long double before evaluation.
CosSin evaluate_angle(const TriangleShape& tri, AnglePair a, int extra_alpha = 0);
long double reduced_angle(const TriangleShape& tri, AnglePair a, int extra_alpha = 0);

/// One kite rotation: about the alpha- or beta-vertex, by +2 or -2 times that angle.
struct UnfoldStep {
    enum class Pivot : std::uint8_t { AlphaVertex, BetaVertex };
    enum class Sign : std::uint8_t { Plus, Minus };

    Pivot pivot = Pivot::AlphaVertex;
    Sign sign = Sign::Plus;

    constexpr bool operator==(const UnfoldStep&) const = default;
    UnfoldStep inverse() const { return {pivot, sign == Sign::Plus ? Sign::Minus : Sign::Plus}; }
    int sign_value() const { return sign == Sign::Plus ? 1 : -1; }
};

struct Combinatorics {
    std::vector<UnfoldStep> steps;

    std::size_t length() const { return steps.size(); }
    bool operator==(const Combinatorics&) const = default;
};

/// "A+,B-,A+" style serialization.
std::string to_string(const Combinatorics& comb);
Combinatorics parse_combinatorics(std::string_view text);

struct KitePose {
    AnglePair angle;
    Vec2L alpha_vertex;
    int depth = 0;
};

KitePose standard_pose();
KitePose apply_step(const KitePose& pose, UnfoldStep step, const TriangleShape& tri);
std::vector<KitePose> unfold_chain(const TriangleShape& tri, const Combinatorics& comb);

/// Kite corners: alpha-vertex, beta-vertex, side vertex at phi+alpha, side vertex at phi-alpha.
struct KiteCorners {
    Vec2L alpha_vertex;
    Vec2L beta_vertex;
    Vec2L side_upper;
    Vec2L side_lower;
};

KiteCorners kite_vertex_coords(const KitePose& pose, const TriangleShape& tri);

double geometric_length(const Vec2& a, const Vec2& b);

/// One unfolded copy of the triangle: half 0 is the rotated standard triangle
/// (apex at phi + alpha), half 1 its mirror across the kite diagonal.
struct TrianglePose {
    AnglePair angle;
    int half = 0;
    Vec2L alpha_vertex;

    bool operator==(const TrianglePose&) const = default;
};

TrianglePose standard_triangle_pose();
Vec2L pose_vertex(const TrianglePose& pose, VertexId v, const TriangleShape& tri);

/// Result of reflecting a triangle copy across the side opposite `opposite`.
/// `kite_step` is set when the reflection is a kite rotation (sides AC and BC);
/// reflecting across AB only switches kite halves.
struct Reflection {
    TrianglePose pose;
    bool is_kite_step = false;
    UnfoldStep kite_step;
};

Reflection reflect_across(const TrianglePose& pose, VertexId opposite, const TriangleShape& tri);

/// Rebuild the final triangle pose of an unfolding from its kite combinatorics
/// and its total reflection count (which fixes the half).
TrianglePose pose_from_combinatorics(const Combinatorics& comb, int reflections, const TriangleShape& tri);

/// Per-triangle constants of the local estimates: D bounds geometric length by
/// D * reflections, R bounds side lengths from below, b and r follow the
/// recipe b*D + b*r + r < R.
struct RegimeConstants {
    double D;
    double R;
    double b;
    double r;
};

RegimeConstants regime_constants(const TriangleShape& tri);

}  // namespace billiards
