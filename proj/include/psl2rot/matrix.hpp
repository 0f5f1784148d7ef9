#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace psl2rot {

struct NonPositiveDeterminant : std::runtime_error {
    explicit NonPositiveDeterminant(double det)
        : std::runtime_error("matrix determinant must be positive, got " + std::to_string(det)),
          det(det) {}
    double det;
};

struct DeterminantOutOfTolerance : std::runtime_error {
    explicit DeterminantOutOfTolerance(double det)
        : std::runtime_error("determinant deviates from 1 beyond tolerance: " + std::to_string(det)),
          det(det) {}
    double det;
};

/// Real 2x2 matrix [[a,b],[c,d]] with determinant 1, an SL(2,R) element.
struct UnimodularMatrix {
    double a = 1.0, b = 0.0, c = 0.0, d = 1.0;

    double det() const { return a * d - b * c; }
    double trace() const { return a + d; }

    UnimodularMatrix inverse() const { return {d, -b, -c, a}; }
    UnimodularMatrix negated() const { return {-a, -b, -c, -d}; }

    double frobenius_sq() const { return a * a + b * b + c * c + d * d; }

    friend UnimodularMatrix operator*(const UnimodularMatrix& l, const UnimodularMatrix& r) {
        return {l.a * r.a + l.b * r.c, l.a * r.b + l.b * r.d,
                l.c * r.a + l.d * r.c, l.c * r.b + l.d * r.d};
    }
};

/// Entrywise max-norm distance.
inline double max_entry_distance(const UnimodularMatrix& x, const UnimodularMatrix& y) {
    return std::max(std::max(std::abs(x.a - y.a), std::abs(x.b - y.b)),
                    std::max(std::abs(x.c - y.c), std::abs(x.d - y.d)));
}

inline constexpr double det_tolerance = 1e-9;
inline constexpr double sign_tie_tolerance = 1e-12;

namespace detail {

/// Canonical sign representative: trace > 0, ties broken by the first entry
/// among (a, b, c) that is away from zero.
inline UnimodularMatrix canonical_sign(const UnimodularMatrix& m) {
    double s = 0.0;
    if (std::abs(m.trace()) > sign_tie_tolerance) {
        s = m.trace();
    } else {
        for (double e : {m.a, m.b, m.c}) {
            if (std::abs(e) > sign_tie_tolerance) { s = e; break; }
        }
    }
    return s < 0.0 ? m.negated() : m;
}

} // namespace detail

/// An element of PSL(2,R): a unimodular matrix up to sign, stored as its
/// canonical sign representative.
class ProjectiveElement {
  public:
    ProjectiveElement() = default;

    /// Wraps a matrix assumed unimodular up to rounding drift; the stored
    /// representative is rescaled back to determinant exactly ~1.
    explicit ProjectiveElement(const UnimodularMatrix& m) {
        double det = m.det();
        if (!(det > 0.0)) throw NonPositiveDeterminant(det);
        UnimodularMatrix u = m;
        if (det != 1.0) {
            double s = std::sqrt(det);
            u = {m.a / s, m.b / s, m.c / s, m.d / s};
        }
        rep_ = detail::canonical_sign(u);
    }

    const UnimodularMatrix& rep() const { return rep_; }

    static ProjectiveElement identity() { return ProjectiveElement{}; }

    ProjectiveElement inverse() const { return ProjectiveElement(rep_.inverse()); }

    friend ProjectiveElement operator*(const ProjectiveElement& g, const ProjectiveElement& h) {
        return ProjectiveElement(g.rep() * h.rep());
    }

  private:
    UnimodularMatrix rep_;
};

/// Builds a PSL(2,R) element from matrix entries. With renormalize set the
/// entries are divided by sqrt(det); otherwise det must be within 1e-9 of 1.
inline ProjectiveElement from_entries(double a, double b, double c, double d,
                                      bool renormalize = false) {
    double det = a * d - b * c;
    if (!(det > 0.0)) throw NonPositiveDeterminant(det);
    if (renormalize) {
        double s = std::sqrt(det);
        a /= s; b /= s; c /= s; d /= s;
    } else if (std::abs(det - 1.0) > det_tolerance) {
        throw DeterminantOutOfTolerance(det);
    }
    return ProjectiveElement(UnimodularMatrix{a, b, c, d});
}

inline ProjectiveElement compose(const ProjectiveElement& g, const ProjectiveElement& h) {
    return g * h;
}

inline ProjectiveElement inverse(const ProjectiveElement& g) { return g.inverse(); }

/// |a + d| of the unimodular representative; independent of the sign choice.
inline double abs_trace(const ProjectiveElement& g) { return std::abs(g.rep().trace()); }

/// Distance between PSL(2,R) elements as the smaller of the entrywise
/// distances over the two sign choices.
inline double projective_distance(const ProjectiveElement& g, const ProjectiveElement& h) {
    return std::min(max_entry_distance(g.rep(), h.rep()),
                    max_entry_distance(g.rep(), h.rep().negated()));
}

/// Conjugate g by k: returns k g k^-1.
inline ProjectiveElement conjugate(const ProjectiveElement& k, const ProjectiveElement& g) {
    return k * g * k.inverse();
}

/// Integer matrix power with exponent of either sign.
inline ProjectiveElement power(const ProjectiveElement& g, long long n) {
    ProjectiveElement base = n < 0 ? g.inverse() : g;
    unsigned long long e = n < 0 ? static_cast<unsigned long long>(-(n + 1)) + 1ull
                                 : static_cast<unsigned long long>(n);
    ProjectiveElement acc = ProjectiveElement::identity();
    while (e > 0) {
        if (e & 1ull) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

} // namespace psl2rot
