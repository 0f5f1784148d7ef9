#pragma once

#include <cmath>
#include <numbers>

namespace psl2rot {

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

/// Reduce x into [0, 2*pi).
inline double mod_two_pi(double x) {
    double r = std::fmod(x, two_pi);
    if (r < 0.0) r += two_pi;
    // fmod of a tiny negative can round back up to 2*pi
    if (r >= two_pi) r -= two_pi;
    return r;
}

/// An angle on R/2piZ, stored reduced into [0, 2*pi).
struct Angle {
    double value = 0.0;

    Angle() = default;
    explicit Angle(double radians) : value(mod_two_pi(radians)) {}
};

/// Distance on the circle R/2piZ, in [0, pi].
inline double circle_distance(double a, double b) {
    double d = mod_two_pi(a - b);
    return std::min(d, two_pi - d);
}

inline double circle_distance(Angle a, Angle b) {
    return circle_distance(a.value, b.value);
}

} // namespace psl2rot
