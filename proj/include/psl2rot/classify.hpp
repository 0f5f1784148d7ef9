#pragma once

#include <cmath>
#include <stdexcept>
#include <variant>

#include "psl2rot/angles.hpp"
#include "psl2rot/matrix.hpp"

namespace psl2rot {

inline constexpr double classify_tolerance = 1e-9;

/// Trace trichotomy of a PSL(2,R) element. Elliptic carries the rotation
/// angle in (0, 2*pi); Hyperbolic carries the translation length.
struct Classification {
    enum class Type { Identity, Elliptic, Parabolic, Hyperbolic };

    Type type = Type::Identity;
    double angle = 0.0;
    double translation_length = 0.0;

    bool is_identity() const { return type == Type::Identity; }
    bool is_elliptic() const { return type == Type::Elliptic; }
    bool is_parabolic() const { return type == Type::Parabolic; }
    bool is_hyperbolic() const { return type == Type::Hyperbolic; }
};

/// A point x + iy of the upper half-plane, y > 0.
struct HalfPlanePoint {
    double x = 0.0;
    double y = 1.0;
};

/// A point of the boundary circle, as an angle in [0, 2*pi) of the disk model
/// reached from the half-plane by the Cayley map centered at i. The real
/// boundary point x sits at angle atan2(-2x, x^2 - 1); infinity sits at 0.
struct BoundaryPoint {
    Angle angle;

    BoundaryPoint() = default;
    explicit BoundaryPoint(Angle a) : angle(a) {}

    static BoundaryPoint from_real(double x) {
        return BoundaryPoint(Angle(std::atan2(-2.0 * x, x * x - 1.0)));
    }
    static BoundaryPoint infinity() { return BoundaryPoint(Angle(0.0)); }
};

inline double circle_distance(const BoundaryPoint& p, const BoundaryPoint& q) {
    return circle_distance(p.angle, q.angle);
}

namespace detail {

/// Rotation angle of an elliptic element: -2 arg(c z0 + d) at the fixed point
/// z0, which reduces to -2 atan2(sign(c) sqrt(4 - tr^2), tr).
inline double elliptic_rotation_angle(const UnimodularMatrix& m) {
    double t = m.trace();
    double s = std::sqrt(std::max(0.0, 4.0 - t * t));
    double signed_s = m.c < 0.0 ? -s : s;
    return mod_two_pi(-2.0 * std::atan2(signed_s, t));
}

} // namespace detail

inline Classification classify(const ProjectiveElement& g, double tol = classify_tolerance) {
    const UnimodularMatrix& m = g.rep();
    double t = std::abs(m.trace());
    if (std::abs(t - 2.0) <= tol) {
        // canonical representative of the identity is +I
        if (max_entry_distance(m, UnimodularMatrix{}) <= tol)
            return {Classification::Type::Identity, 0.0, 0.0};
        return {Classification::Type::Parabolic, 0.0, 0.0};
    }
    if (t < 2.0)
        return {Classification::Type::Elliptic, detail::elliptic_rotation_angle(m), 0.0};
    return {Classification::Type::Hyperbolic, 0.0, 2.0 * std::acosh(t / 2.0)};
}

/// Rotation number in R/2piZ: zero unless elliptic, in which case the angle
/// 2*theta of the conjugate standard rotation.
inline Angle rotation_number(const ProjectiveElement& g, double tol = classify_tolerance) {
    Classification cls = classify(g, tol);
    if (!cls.is_elliptic()) return Angle(0.0);
    return Angle(cls.angle);
}

struct EllipticFix { HalfPlanePoint point; };
struct ParabolicFix { BoundaryPoint point; };
struct HyperbolicFix { BoundaryPoint attracting; BoundaryPoint repelling; };
struct AllPoints {};

using FixedPointSet = std::variant<EllipticFix, ParabolicFix, HyperbolicFix, AllPoints>;

/// Fixed points of the Mobius action, from the roots of c z^2 + (d-a) z - b.
inline FixedPointSet fixed_points(const ProjectiveElement& g, double tol = classify_tolerance) {
    const UnimodularMatrix& m = g.rep();
    Classification cls = classify(g, tol);
    switch (cls.type) {
        case Classification::Type::Identity:
            return AllPoints{};
        case Classification::Type::Elliptic: {
            // complex root with positive imaginary part; c != 0 when |tr| < 2
            double t = m.trace();
            double s = std::sqrt(std::max(0.0, 4.0 - t * t));
            double x = (m.a - m.d) / (2.0 * m.c);
            double y = s / (2.0 * std::abs(m.c));
            return EllipticFix{HalfPlanePoint{x, y}};
        }
        case Classification::Type::Parabolic: {
            if (std::abs(m.c) <= tol) return ParabolicFix{BoundaryPoint::infinity()};
            return ParabolicFix{BoundaryPoint::from_real((m.a - m.d) / (2.0 * m.c))};
        }
        case Classification::Type::Hyperbolic:
        default: {
            double t = m.trace();
            double disc = std::sqrt(std::max(0.0, t * t - 4.0));
            BoundaryPoint p, q; // fixed points; attracting sorted below
            double dp, dq;      // |c z + d| at each, squared
            if (std::abs(m.c) > tol) {
                double z1 = (m.a - m.d + disc) / (2.0 * m.c);
                double z2 = (m.a - m.d - disc) / (2.0 * m.c);
                p = BoundaryPoint::from_real(z1);
                q = BoundaryPoint::from_real(z2);
                dp = (m.c * z1 + m.d) * (m.c * z1 + m.d);
                dq = (m.c * z2 + m.d) * (m.c * z2 + m.d);
            } else {
                double z2 = m.b / (m.d - m.a);
                p = BoundaryPoint::infinity();
                q = BoundaryPoint::from_real(z2);
                dp = m.a * m.a; // derivative at infinity is a^2 (c = 0, d = 1/a)
                dq = m.d * m.d;
            }
            // attracting fixed point has derivative 1/(cz+d)^2 < 1
            if (dp >= dq) return HyperbolicFix{p, q};
            return HyperbolicFix{q, p};
        }
    }
}

/// Image of a half-plane point under z -> (az+b)/(cz+d).
inline HalfPlanePoint mobius_act(const ProjectiveElement& g, const HalfPlanePoint& p) {
    const UnimodularMatrix& m = g.rep();
    double nr = m.a * p.x + m.b; // numerator a z + b = nr + i ni
    double ni = m.a * p.y;
    double dr = m.c * p.x + m.d;
    double di = m.c * p.y;
    double den = dr * dr + di * di;
    return HalfPlanePoint{(nr * dr + ni * di) / den, (ni * dr - nr * di) / den};
}

/// Induced circle map in the boundary angle coordinate. The boundary point at
/// angle phi corresponds to the projective direction (-cos(phi/2), sin(phi/2)).
inline BoundaryPoint boundary_act(const ProjectiveElement& g, const BoundaryPoint& p) {
    const UnimodularMatrix& m = g.rep();
    double half = p.angle.value / 2.0;
    double u = -std::cos(half);
    double v = std::sin(half);
    double u2 = m.a * u + m.b * v;
    double v2 = m.c * u + m.d * v;
    return BoundaryPoint(Angle(std::atan2(-2.0 * u2 * v2, u2 * u2 - v2 * v2)));
}

struct NotElliptic : std::runtime_error {
    NotElliptic() : std::runtime_error("element is not elliptic") {}
};

/// Conjugates an elliptic element to the standard rotation: returns (h, theta)
/// with h g h^-1 = +-[[cos t, sin t], [-sin t, cos t]], theta in (0, pi), and
/// h mapping the fixed point of g to i.
inline std::pair<ProjectiveElement, double> conjugate_to_rotation(const ProjectiveElement& g,
                                                                  double tol = classify_tolerance) {
    FixedPointSet fps = fixed_points(g, tol);
    const EllipticFix* fix = std::get_if<EllipticFix>(&fps);
    if (fix == nullptr) throw NotElliptic{};
    double x = fix->point.x;
    double y = fix->point.y;
    double rs = std::sqrt(y); // h : z -> (z - x)/y sends the fixed point to i
    ProjectiveElement h(UnimodularMatrix{1.0 / rs, -x / rs, 0.0, rs});
    double theta = rotation_number(g, tol).value / 2.0;
    return {h, theta};
}

/// The standard rotation +-R_theta fixing i, a rotation of angle 2*theta
/// about i in the half-plane.
inline ProjectiveElement standard_rotation(double theta) {
    double c = std::cos(theta);
    double s = std::sin(theta);
    return ProjectiveElement(UnimodularMatrix{c, s, -s, c});
}

} // namespace psl2rot
