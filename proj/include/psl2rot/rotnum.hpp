#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>

#include "psl2rot/angles.hpp"
#include "psl2rot/classify.hpp"
#include "psl2rot/matrix.hpp"

namespace psl2rot {

/// A lift F: R -> R of a circle map through x -> exp(i x), expected to be
/// continuous, nondecreasing, and to satisfy F(x + 2 pi) = F(x) + 2 pi.
struct CircleLift {
    std::function<double(double)> map;
    std::string description;

    double operator()(double x) const { return map(x); }
};

struct NotMonotone : std::runtime_error {
    NotMonotone(const std::string& description, double x, double drop)
        : std::runtime_error("lift " + description + " decreases near x = " + std::to_string(x) +
                             " by " + std::to_string(drop)) {}
};

struct NotDegreeOne : std::runtime_error {
    NotDegreeOne(const std::string& description, double x, double defect)
        : std::runtime_error("lift " + description + " fails F(x+2pi) = F(x)+2pi at x = " +
                             std::to_string(x) + " with defect " + std::to_string(defect)) {}
};

inline constexpr double monotone_slack = 1e-9;
inline constexpr double degree_one_tolerance = 1e-10;
inline constexpr int lift_grid_points = 1024;

/// Samples the lift over one period and checks monotonicity and the
/// degree-one identity. Throws NotMonotone or NotDegreeOne on failure.
inline void validate_lift(const CircleLift& lift) {
    double prev = lift(0.0);
    for (int i = 1; i <= lift_grid_points; ++i) {
        double x = two_pi * static_cast<double>(i) / lift_grid_points;
        double y = lift(x);
        if (y < prev - monotone_slack)
            throw NotMonotone(lift.description, x, prev - y);
        prev = y;
        if (i % 32 == 0) {
            double defect = lift(x - two_pi) + two_pi - y;
            if (std::abs(defect) > degree_one_tolerance)
                throw NotDegreeOne(lift.description, x, defect);
        }
    }
}

/// The canonical lift of the boundary action of g, pinned by F(0) in
/// [0, 2 pi). Piecewise: F(2 pi k + phi) = 2 pi k + f(phi) + 2 pi [f(phi) < f(0)]
/// where f is the pointwise boundary angle in [0, 2 pi).
inline CircleLift lift_of_element(const ProjectiveElement& g) {
    const UnimodularMatrix m = g.rep();
    auto pointwise = [m](double phi) {
        double h = 0.5 * phi;
        double u = -std::cos(h);
        double v = std::sin(h);
        double up = m.a * u + m.b * v;
        double vp = m.c * u + m.d * v;
        return mod_two_pi(std::atan2(-2.0 * up * vp, up * up - vp * vp));
    };
    double at_zero = pointwise(0.0);
    auto map = [pointwise, at_zero](double x) {
        double k = std::floor(x / two_pi);
        double phi = x - two_pi * k;
        if (phi >= two_pi) { k += 1.0; phi = 0.0; }
        if (phi < 0.0) phi = 0.0;
        double f = pointwise(phi);
        if (f < at_zero) f += two_pi;
        return two_pi * k + f;
    };
    return CircleLift{std::move(map), "boundary lift of " + [](const UnimodularMatrix& w) {
        return "[[" + std::to_string(w.a) + ", " + std::to_string(w.b) + "], [" +
               std::to_string(w.c) + ", " + std::to_string(w.d) + "]]";
    }(m)};
}

inline constexpr long long default_iterations = 100000;

/// A Poincare rotation number estimate together with the a-priori error
/// bound 2 pi / n that the averaging argument guarantees.
struct RotationEstimate {
    Angle value{0.0};
    long long n_iterations = 0;
    double error_bound = 0.0;
};

/// Averages the lift displacement over n iterations from x0. Validates the
/// lift first.
inline RotationEstimate poincare_rotation_number(const CircleLift& lift, double x0,
                                                 long long n = default_iterations) {
    if (n < 1) throw std::invalid_argument("iteration count must be positive");
    validate_lift(lift);
    double x = x0;
    for (long long i = 0; i < n; ++i) x = lift(x);
    double mean = (x - x0) / static_cast<double>(n);
    return RotationEstimate{Angle(mean), n, two_pi / static_cast<double>(n)};
}

/// inf { x : H(x) >= y } for a monotone degree-one lift H, by bisection on a
/// bracket built from the degree-one identity. Deterministic; returns the
/// left endpoint of a plateau preimage to within the final bracket width.
inline double lift_right_inverse(const CircleLift& h, double y) {
    double h0 = h(0.0);
    double s = std::floor((y - h0) / two_pi);
    double lo = two_pi * (s - 1.0);
    double hi = two_pi * (s + 1.0);
    for (int i = 0; i < 80; ++i) {
        double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (h(mid) >= y) hi = mid; else lo = mid;
    }
    return hi;
}

inline constexpr double plateau_detection_tolerance = 1e-12;

/// True when two adjacent grid samples coincide, i.e. h collapses an interval
/// and only a one-sided inverse exists.
inline bool lift_has_plateau(const CircleLift& h) {
    double prev = h(0.0);
    for (int i = 1; i <= lift_grid_points; ++i) {
        double x = two_pi * static_cast<double>(i) / lift_grid_points;
        double y = h(x);
        if (std::abs(y - prev) <= plateau_detection_tolerance) return true;
        prev = y;
    }
    return false;
}

/// Rotation number invariance under (semi)conjugacy by h. For invertible h
/// the conjugated map is h . g . h^-1; when h has plateaus the right inverse
/// replaces h^-1 on the other side, h_r^-1 . g . h, so h still intertwines
/// the two maps. Both orbits telescope through a single iteration of the
/// lift of g, so each estimate carries the plain 2 pi / n bound and the
/// difference is certified against their sum.
struct InvarianceReport {
    RotationEstimate rot_original;
    RotationEstimate rot_conjugated;
    double difference = 0.0;
    bool within_bound = false;
    bool used_plateau_inverse = false;
};

inline InvarianceReport semiconjugacy_invariance_check(const ProjectiveElement& g,
                                                       const CircleLift& h,
                                                       long long n = default_iterations,
                                                       double y0 = 0.0) {
    if (n < 1) throw std::invalid_argument("iteration count must be positive");
    validate_lift(h);
    bool plateau = lift_has_plateau(h);
    CircleLift lift = lift_of_element(g);

    double x0 = plateau ? h(y0) : lift_right_inverse(h, y0);
    double x = x0;
    for (long long i = 0; i < n; ++i) x = lift(x);
    double conjugated_end = plateau ? lift_right_inverse(h, x) : h(x);

    double bound = two_pi / static_cast<double>(n);
    InvarianceReport report;
    report.rot_original = RotationEstimate{Angle((x - x0) / static_cast<double>(n)), n, bound};
    report.rot_conjugated =
        RotationEstimate{Angle((conjugated_end - y0) / static_cast<double>(n)), n, bound};
    report.difference =
        circle_distance(report.rot_original.value, report.rot_conjugated.value);
    report.within_bound =
        report.difference <= report.rot_original.error_bound + report.rot_conjugated.error_bound;
    report.used_plateau_inverse = plateau;
    return report;
}

} // namespace psl2rot
