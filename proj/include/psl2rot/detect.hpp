#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "psl2rot/angles.hpp"
#include "psl2rot/classify.hpp"
#include "psl2rot/matrix.hpp"
#include "psl2rot/words.hpp"

namespace psl2rot {

/// |tr(A)^2 - 4| + |tr(ABA^-1B^-1) - 2|, sign-independent. Below 1 this
/// certifies that <A,B> is not both discrete and non-elementary.
inline double jorgensen_value(const ProjectiveElement& A, const ProjectiveElement& B) {
    UnimodularMatrix a = A.rep();
    UnimodularMatrix b = B.rep();
    UnimodularMatrix comm = ((a * b) * a.inverse()) * b.inverse();
    double t = a.trace();
    return std::abs(t * t - 4.0) + std::abs(comm.trace() - 2.0);
}

inline constexpr long long default_irrational_q = 10000;
inline constexpr double default_irrational_delta = 1e-9;

enum class IrrationalityVerdict { Rational, NumericallyIrrational };

/// Continued-fraction rationality probe of theta / pi. Rational means some
/// convergent or semiconvergent p/q with q <= Q lands within delta; p, q and
/// best_error always describe the best approximant found.
struct IrrationalityReport {
    IrrationalityVerdict verdict = IrrationalityVerdict::NumericallyIrrational;
    double theta_over_pi = 0.0;
    long long p = 0;
    long long q = 1;
    double best_error = 0.0;
    std::vector<std::pair<long long, long long>> convergents;

    bool is_rational() const { return verdict == IrrationalityVerdict::Rational; }
};

inline IrrationalityReport irrationality_test(double theta,
                                              long long max_q = default_irrational_q,
                                              double delta = default_irrational_delta) {
    double x = std::abs(theta) / pi;
    IrrationalityReport report;
    report.theta_over_pi = x;

    long long pm1 = 1, qm1 = 0;           // p_{k-1}, q_{k-1}
    long long p = static_cast<long long>(std::floor(x)), q = 1;
    report.convergents.emplace_back(p, q);
    report.p = p;
    report.q = 1;
    report.best_error = std::abs(x - static_cast<double>(p));

    double frac = x - std::floor(x);
    for (int depth = 0; depth < 64 && frac > 1e-15; ++depth) {
        double inv = 1.0 / frac;
        double digit = std::floor(inv);
        if (digit > 1e15) break;
        long long a = static_cast<long long>(digit);
        frac = inv - digit;
        // semiconvergents (p_{k-1} + j p_k) / (q_{k-1} + j q_k); j = a is the
        // next convergent proper
        bool advanced = false;
        for (long long j = 1; j <= a; ++j) {
            long long cp = pm1 + j * p;
            long long cq = qm1 + j * q;
            if (cq > max_q) break;
            double err = std::abs(x - static_cast<double>(cp) / static_cast<double>(cq));
            if (err < report.best_error) {
                report.best_error = err;
                report.p = cp;
                report.q = cq;
            }
            if (j == a) {
                pm1 = p; qm1 = q; p = cp; q = cq;
                report.convergents.emplace_back(p, q);
                advanced = true;
            }
        }
        if (!advanced) break;
    }
    report.verdict = (frac <= 1e-15 && report.best_error <= 1e-12) ||
                             report.best_error <= delta
                         ? IrrationalityVerdict::Rational
                         : IrrationalityVerdict::NumericallyIrrational;
    return report;
}

struct NotFound : std::runtime_error {
    explicit NotFound(int radius)
        : std::runtime_error("no elliptic element of infinite order found in the word ball of "
                             "radius " + std::to_string(radius)),
          radius(radius) {}
    int radius;
};

/// A word whose image was elliptic with theta = rotation_number / 2 not a
/// numerically rational multiple of pi.
struct EllipticSearchResult {
    Word word;
    double theta = 0.0;
    IrrationalityReport report;
};

/// Scans the word ball in enumeration order; first hit wins. Such an element
/// has infinite order, so a group containing it is not discrete-and-torsion-
/// controlled the way the rigidity pipeline assumes discreteness would imply.
inline EllipticSearchResult find_infinite_order_elliptic(
    const Representation& rho, int max_radius, long long max_q = default_irrational_q,
    double delta = default_irrational_delta) {
    for (const Word& w : enumerate_ball(static_cast<int>(rho.size()), max_radius)) {
        Classification cls = classify(evaluate(rho, w));
        if (!cls.is_elliptic()) continue;
        double theta = cls.angle / 2.0;
        IrrationalityReport report = irrationality_test(theta, max_q, delta);
        if (!report.is_rational()) return EllipticSearchResult{w, theta, report};
    }
    throw NotFound(max_radius);
}

// --- elementarity -----------------------------------------------------------

struct Elementary {
    std::string reason;
};

struct NonElementary {
    Word witness1;
    Word witness2;
};

struct Unknown {
    std::string reason;
};

using ElementaryVerdict = std::variant<Elementary, NonElementary, Unknown>;

namespace detail {

inline bool fixes_interior(const ProjectiveElement& g, const HalfPlanePoint& z, double tol) {
    HalfPlanePoint w = mobius_act(g, z);
    return std::hypot(w.x - z.x, w.y - z.y) <= tol;
}

inline bool fixes_boundary(const ProjectiveElement& g, const BoundaryPoint& p, double tol) {
    return circle_distance(boundary_act(g, p).angle, p.angle) <= tol;
}

inline bool preserves_pair(const ProjectiveElement& g, const BoundaryPoint& p,
                           const BoundaryPoint& q, double tol) {
    Angle gp = boundary_act(g, p).angle;
    Angle gq = boundary_act(g, q).angle;
    double keep = std::max(circle_distance(gp, p.angle), circle_distance(gq, q.angle));
    double swap = std::max(circle_distance(gp, q.angle), circle_distance(gq, p.angle));
    return std::min(keep, swap) <= tol;
}

/// Boundary endpoints of the geodesic through two interior points.
inline std::pair<BoundaryPoint, BoundaryPoint> geodesic_through(const HalfPlanePoint& z1,
                                                                const HalfPlanePoint& z2) {
    if (std::abs(z1.x - z2.x) < 1e-12)
        return {BoundaryPoint::from_real(0.5 * (z1.x + z2.x)), BoundaryPoint::infinity()};
    double c = (z2.x * z2.x + z2.y * z2.y - z1.x * z1.x - z1.y * z1.y) / (2.0 * (z2.x - z1.x));
    double r = std::hypot(z1.x - c, z1.y);
    return {BoundaryPoint::from_real(c - r), BoundaryPoint::from_real(c + r)};
}

/// Fixed-point data of one non-identity element, for disjointness tests.
struct FixedSet {
    bool has_interior = false;
    HalfPlanePoint interior;
    std::vector<BoundaryPoint> boundary;
};

inline FixedSet fixed_set_of(const FixedPointSet& fps) {
    FixedSet out;
    if (const auto* ell = std::get_if<EllipticFix>(&fps)) {
        out.has_interior = true;
        out.interior = ell->point;
    } else if (const auto* par = std::get_if<ParabolicFix>(&fps)) {
        out.boundary.push_back(par->point);
    } else if (const auto* hyp = std::get_if<HyperbolicFix>(&fps)) {
        out.boundary.push_back(hyp->attracting);
        out.boundary.push_back(hyp->repelling);
    }
    return out;
}

inline bool disjoint_fixed_sets(const FixedSet& s, const FixedSet& t, double sep) {
    if (s.has_interior && t.has_interior &&
        std::hypot(s.interior.x - t.interior.x, s.interior.y - t.interior.y) <= sep)
        return false;
    for (const BoundaryPoint& p : s.boundary)
        for (const BoundaryPoint& q : t.boundary)
            if (circle_distance(p.angle, q.angle) <= sep) return false;
    return true;
}

} // namespace detail

/// Decides whether the generated group is elementary. Elementary: a candidate
/// fixed point or invariant boundary pair read off the generators survives
/// every generator. NonElementary: two words with disjoint fixed sets and
/// commutator trace away from 2, any elliptic among them of infinite order so
/// no finite orbit can exist. Unknown when neither side resolves.
inline ElementaryVerdict is_elementary(const Representation& rho, double tol = 1e-8) {
    std::vector<std::size_t> active; // non-identity generators
    for (std::size_t i = 0; i < rho.size(); ++i)
        if (!classify(rho.generators[i]).is_identity()) active.push_back(i);
    if (active.empty()) return Elementary{"all generators are the identity"};

    auto all_fix_interior = [&](const HalfPlanePoint& z) {
        for (std::size_t i : active)
            if (!detail::fixes_interior(rho.generators[i], z, tol)) return false;
        return true;
    };
    auto all_fix_boundary = [&](const BoundaryPoint& p) {
        for (std::size_t i : active)
            if (!detail::fixes_boundary(rho.generators[i], p, tol)) return false;
        return true;
    };
    auto all_preserve_pair = [&](const BoundaryPoint& p, const BoundaryPoint& q) {
        for (std::size_t i : active)
            if (!detail::preserves_pair(rho.generators[i], p, q, tol)) return false;
        return true;
    };

    std::vector<HalfPlanePoint> interior_candidates;
    std::vector<BoundaryPoint> boundary_candidates;
    std::vector<std::pair<BoundaryPoint, BoundaryPoint>> pair_candidates;
    std::vector<HalfPlanePoint> finite_order_centers;

    for (std::size_t i : active) {
        const ProjectiveElement& g = rho.generators[i];
        FixedPointSet fixed = fixed_points(g);
        if (const auto* ell = std::get_if<EllipticFix>(&fixed)) {
            interior_candidates.push_back(ell->point);
            if (irrationality_test(classify(g).angle / 2.0).is_rational())
                finite_order_centers.push_back(ell->point);
        } else if (const auto* par = std::get_if<ParabolicFix>(&fixed)) {
            boundary_candidates.push_back(par->point);
        } else if (const auto* hyp = std::get_if<HyperbolicFix>(&fixed)) {
            boundary_candidates.push_back(hyp->attracting);
            boundary_candidates.push_back(hyp->repelling);
            pair_candidates.emplace_back(hyp->attracting, hyp->repelling);
        }
    }
    // two finite-order elliptics can generate a dihedral-type group along the
    // geodesic joining their centers
    for (std::size_t i = 0; i < finite_order_centers.size(); ++i)
        for (std::size_t j = i + 1; j < finite_order_centers.size(); ++j)
            pair_candidates.push_back(
                detail::geodesic_through(finite_order_centers[i], finite_order_centers[j]));

    for (const HalfPlanePoint& z : interior_candidates)
        if (all_fix_interior(z))
            return Elementary{"common fixed point in the upper half plane at (" +
                              std::to_string(z.x) + ", " + std::to_string(z.y) + ")"};
    for (const BoundaryPoint& p : boundary_candidates)
        if (all_fix_boundary(p))
            return Elementary{"common fixed boundary point at angle " +
                              std::to_string(p.angle.value)};
    for (const auto& [p, q] : pair_candidates)
        if (all_preserve_pair(p, q))
            return Elementary{"invariant boundary pair at angles {" +
                              std::to_string(p.angle.value) + ", " +
                              std::to_string(q.angle.value) + "}"};

    double sep = std::max(tol, 1e-6);
    struct Candidate {
        Word word;
        ProjectiveElement image;
        detail::FixedSet fixed;
        bool finite_order_elliptic = false;
    };
    std::vector<Candidate> cands;
    for (const Word& w : enumerate_ball(static_cast<int>(rho.size()), 2)) {
        ProjectiveElement g = evaluate(rho, w);
        Classification cls = classify(g);
        if (cls.is_identity()) continue;
        bool finite_elliptic =
            cls.is_elliptic() && irrationality_test(cls.angle / 2.0).is_rational();
        cands.push_back(Candidate{w, g, detail::fixed_set_of(fixed_points(g)), finite_elliptic});
    }
    for (std::size_t i = 0; i < cands.size(); ++i) {
        if (cands[i].finite_order_elliptic) continue;
        for (std::size_t j = i + 1; j < cands.size(); ++j) {
            if (cands[j].finite_order_elliptic) continue;
            if (!detail::disjoint_fixed_sets(cands[i].fixed, cands[j].fixed, sep)) continue;
            UnimodularMatrix a = cands[i].image.rep();
            UnimodularMatrix b = cands[j].image.rep();
            UnimodularMatrix comm = ((a * b) * a.inverse()) * b.inverse();
            if (std::abs(comm.trace() - 2.0) > tol)
                return NonElementary{cands[i].word, cands[j].word};
        }
    }
    return Unknown{"no invariant candidate verified and no witness pair found"};
}

} // namespace psl2rot
