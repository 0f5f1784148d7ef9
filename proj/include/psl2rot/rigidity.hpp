#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "psl2rot/angles.hpp"
#include "psl2rot/classify.hpp"
#include "psl2rot/detect.hpp"
#include "psl2rot/matrix.hpp"
#include "psl2rot/words.hpp"

namespace psl2rot {

struct RigidityParams {
    int search_radius = 3;
    int corpus_radius = 4;
    long long irrational_q = default_irrational_q;
    double irrational_delta = default_irrational_delta;
    double tol = 1e-8;
};

struct RotationMismatch : std::runtime_error {
    RotationMismatch(double rot1, double rot2)
        : std::runtime_error("rotation numbers " + std::to_string(rot1) + " and " +
                             std::to_string(rot2) + " do not match"),
          rot1(rot1), rot2(rot2) {}
    double rot1, rot2;
};

/// Both representations conjugated generator-wise so gamma0 evaluates to the
/// standard rotation R_theta about i in each.
struct NormalizedPair {
    Representation rho1;
    Representation rho2;
    Word gamma0;
    double theta = 0.0;
    ProjectiveElement h1;
    ProjectiveElement h2;
};

inline NormalizedPair normalize_pair(const Representation& rho1, const Representation& rho2,
                                     const Word& gamma0, double tol = 1e-8) {
    ProjectiveElement g1 = evaluate(rho1, gamma0);
    ProjectiveElement g2 = evaluate(rho2, gamma0);
    if (!classify(g1).is_elliptic() || !classify(g2).is_elliptic()) throw NotElliptic{};
    Angle rot1 = rotation_number(g1);
    Angle rot2 = rotation_number(g2);
    if (circle_distance(rot1, rot2) > tol) throw RotationMismatch(rot1.value, rot2.value);

    auto conjugated = [](const Representation& rho, const ProjectiveElement& h) {
        std::vector<ProjectiveElement> gens;
        gens.reserve(rho.size());
        for (const ProjectiveElement& g : rho.generators) gens.push_back(conjugate(h, g));
        return Representation(std::move(gens), rho.labels);
    };
    auto [h1, theta1] = conjugate_to_rotation(g1);
    auto [h2, theta2] = conjugate_to_rotation(g2);
    (void)theta2;
    return NormalizedPair{conjugated(rho1, h1), conjugated(rho2, h2), gamma0, theta1, h1, h2};
}

/// |tr(rho(gamma . gamma0^n))| for each requested n. For a normalized rho
/// this equals |(a+d)cos(n theta) + (c-b)sin(n theta)| where [[a,b],[c,d]] is
/// the image of gamma; the coefficient vector has norm at least 2.
inline std::vector<double> trace_sequence(const Representation& rho, const Word& gamma,
                                          const Word& gamma0,
                                          const std::vector<long long>& n_values) {
    ProjectiveElement g = evaluate(rho, gamma);
    ProjectiveElement g0 = evaluate(rho, gamma0);
    std::vector<double> out;
    out.reserve(n_values.size());
    for (long long n : n_values) out.push_back(abs_trace(g * power(g0, n)));
    return out;
}

/// Largest deviation between |tr rho1(w)| and |tr rho2(w)| over the word
/// ball. Equal traces up to sign are necessary for conjugacy.
struct TraceComparisonReport {
    double max_deviation = 0.0;
    Word worst_word;
    bool within_tol = true;
};

inline TraceComparisonReport verify_abs_trace_equality(const NormalizedPair& pair,
                                                       int corpus_radius, double tol = 1e-8) {
    TraceComparisonReport report;
    for (const Word& w : enumerate_ball(static_cast<int>(pair.rho1.size()), corpus_radius)) {
        double dev =
            std::abs(abs_trace(evaluate(pair.rho1, w)) - abs_trace(evaluate(pair.rho2, w)));
        if (dev > report.max_deviation) {
            report.max_deviation = dev;
            report.worst_word = w;
        }
    }
    report.within_tol = report.max_deviation <= tol;
    return report;
}

// --- conjugator recovery ----------------------------------------------------

struct ResidualTooLarge : std::runtime_error {
    explicit ResidualTooLarge(double residual)
        : std::runtime_error("intertwiner residual " + std::to_string(residual) +
                             " exceeds tolerance"),
          residual(residual) {}
    double residual;
};

struct AmbiguousNullspace : std::runtime_error {
    explicit AmbiguousNullspace(double gap)
        : std::runtime_error("two smallest singular values are " + std::to_string(gap) +
                             " apart; intertwiner direction is not unique"),
          gap(gap) {}
    double gap;
};

struct OrientationReversing : std::runtime_error {
    explicit OrientationReversing(double residual)
        : std::runtime_error("best intertwiner has negative determinant (orientation-reversing), "
                             "residual " + std::to_string(residual)),
          residual(residual) {}
    double residual;
};

inline constexpr double nullspace_gap_tolerance = 1e-6;

namespace detail {

/// 4x4 block of the intertwiner system for one generator pair: rows of
/// s (B kron I) - (I kron A^T) applied to the row-major vec of X, zero
/// exactly when s B X = X A.
inline Eigen::Matrix4d intertwiner_block(const UnimodularMatrix& A, const UnimodularMatrix& B,
                                         double s) {
    Eigen::Matrix4d K;
    K << s * B.a - A.a, -A.c, s * B.b, 0.0,
         -A.b, s * B.a - A.d, 0.0, s * B.b,
         s * B.c, 0.0, s * B.d - A.a, -A.c,
         0.0, s * B.c, -A.b, s * B.d - A.d;
    return K;
}

} // namespace detail

/// Solves X rho1(gen) X^-1 = +-rho2(gen) over all non-identity generators as
/// the smallest singular direction of the stacked linear system, trying both
/// signs per generator and keeping the assignment with the smallest residual.
/// Expects rho1 with no common fixed point of all generators; returns the
/// conjugator normalized to determinant +1.
inline ProjectiveElement recover_conjugator(const Representation& rho1,
                                            const Representation& rho2, double tol = 1e-8) {
    if (rho1.size() != rho2.size())
        throw std::invalid_argument("representations have different generator counts");

    std::vector<std::size_t> eff; // generators that constrain X at all
    for (std::size_t k = 0; k < rho1.size(); ++k)
        if (!classify(rho1.generators[k]).is_identity() ||
            !classify(rho2.generators[k]).is_identity())
            eff.push_back(k);
    if (eff.empty()) throw AmbiguousNullspace(0.0);

    // sign assignments: all of them while cheap, else only the generators
    // whose traces are too small to pin the sign
    std::vector<std::size_t> searched = eff;
    if (searched.size() > 8) {
        searched.clear();
        for (std::size_t k : eff)
            if (abs_trace(rho1.generators[k]) < 0.5) searched.push_back(k);
        if (searched.size() > 16)
            throw std::invalid_argument("too many near-traceless generators for the sign search");
    }

    Eigen::VectorXd best_sv;
    Eigen::Vector4d best_x;
    double best_sigma = std::numeric_limits<double>::infinity();
    for (std::uint32_t mask = 0; mask < (1u << searched.size()); ++mask) {
        std::vector<double> sign(rho1.size(), 1.0);
        for (std::size_t j = 0; j < searched.size(); ++j)
            if (mask & (1u << j)) sign[searched[j]] = -1.0;

        Eigen::MatrixXd K(4 * static_cast<Eigen::Index>(eff.size()), 4);
        for (std::size_t r = 0; r < eff.size(); ++r)
            K.block<4, 4>(4 * static_cast<Eigen::Index>(r), 0) =
                detail::intertwiner_block(rho1.generators[eff[r]].rep(),
                                          rho2.generators[eff[r]].rep(), sign[eff[r]]);

        Eigen::JacobiSVD<Eigen::MatrixXd> svd(K, Eigen::ComputeFullV);
        Eigen::VectorXd sv = svd.singularValues();
        if (sv(3) < best_sigma) {
            best_sigma = sv(3);
            best_sv = sv;
            best_x = svd.matrixV().col(3);
        }
    }

    double gap = best_sv(2) - best_sv(3);
    if (gap < nullspace_gap_tolerance) throw AmbiguousNullspace(gap);

    UnimodularMatrix X{best_x(0), best_x(1), best_x(2), best_x(3)};
    double det = X.det();
    if (std::abs(det) < 1e-12) throw ResidualTooLarge(std::numeric_limits<double>::infinity());

    if (det < 0.0) {
        double scale = std::sqrt(-det);
        UnimodularMatrix R{X.a / scale, X.b / scale, X.c / scale, X.d / scale}; // det -1
        UnimodularMatrix Rinv{-R.d, R.b, R.c, -R.a};
        double residual = 0.0;
        for (std::size_t k : eff) {
            UnimodularMatrix C = (R * rho1.generators[k].rep()) * Rinv;
            const UnimodularMatrix& B = rho2.generators[k].rep();
            residual = std::max(residual, std::min(max_entry_distance(C, B),
                                                   max_entry_distance(C.negated(), B)));
        }
        if (residual > tol) throw ResidualTooLarge(residual);
        throw OrientationReversing(residual);
    }

    ProjectiveElement conj(X);
    double residual = 0.0;
    for (std::size_t k : eff)
        residual = std::max(residual, projective_distance(conjugate(conj, rho1.generators[k]),
                                                          rho2.generators[k]));
    if (residual > tol) throw ResidualTooLarge(residual);
    return conj;
}

// --- the full pipeline ------------------------------------------------------

struct Certificate {
    ProjectiveElement g;
    double max_generator_residual = 0.0;
    double max_corpus_trace_deviation = 0.0;
    int corpus_radius = 0;
};

struct Witness {
    Word word;
    Angle rot1{0.0};
    Angle rot2{0.0};
};

struct Inconclusive {
    std::string reason;
};

using RigidityVerdict = std::variant<Certificate, Witness, Inconclusive>;

/// The end-to-end decision. Checks the hypotheses on rho1, compares rotation
/// numbers over the corpus ball (first mismatch is a Witness), normalizes at
/// the found elliptic word, recovers the conjugator, and certifies it in the
/// original coordinates; every failure mode degrades to Inconclusive.
inline RigidityVerdict check_rigidity(const Representation& rho1, const Representation& rho2,
                                      const RigidityParams& params = {}) {
    if (rho1.size() != rho2.size())
        return Inconclusive{"representations have different generator counts"};

    ElementaryVerdict elementary = is_elementary(rho1, params.tol);
    if (const auto* elem = std::get_if<Elementary>(&elementary))
        return Inconclusive{"representation 1 looks elementary: " + elem->reason};

    EllipticSearchResult found;
    try {
        found = find_infinite_order_elliptic(rho1, params.search_radius, params.irrational_q,
                                             params.irrational_delta);
    } catch (const NotFound&) {
        return Inconclusive{"no infinite order elliptic word found within radius " +
                            std::to_string(params.search_radius)};
    } catch (const BallTooLarge& e) {
        return Inconclusive{std::string("search ball too large: ") + e.what()};
    }

    std::vector<Word> corpus;
    try {
        corpus = enumerate_ball(static_cast<int>(rho1.size()), params.corpus_radius);
    } catch (const BallTooLarge& e) {
        return Inconclusive{std::string("corpus ball too large: ") + e.what()};
    }
    for (const Word& w : corpus) {
        Angle r1 = rotation_number(evaluate(rho1, w));
        Angle r2 = rotation_number(evaluate(rho2, w));
        if (circle_distance(r1, r2) > params.tol) return Witness{w, r1, r2};
    }

    std::optional<NormalizedPair> np;
    ProjectiveElement X;
    try {
        np = normalize_pair(rho1, rho2, found.word, params.tol);
        X = recover_conjugator(np->rho1, np->rho2, params.tol);
    } catch (const AmbiguousNullspace& e) {
        return Inconclusive{e.what()};
    } catch (const OrientationReversing& e) {
        return Inconclusive{e.what()};
    } catch (const ResidualTooLarge& e) {
        return Inconclusive{e.what()};
    } catch (const std::exception& e) {
        return Inconclusive{std::string("normalization failed: ") + e.what()};
    }

    ProjectiveElement g = (inverse(np->h2) * X) * np->h1;
    double residual = 0.0;
    for (std::size_t k = 0; k < rho1.size(); ++k)
        residual = std::max(residual, projective_distance(conjugate(g, rho1.generators[k]),
                                                          rho2.generators[k]));
    if (residual > params.tol)
        return Inconclusive{"conjugator residual " + std::to_string(residual) +
                            " exceeds tolerance in the original coordinates"};

    TraceComparisonReport corpus_traces =
        verify_abs_trace_equality(*np, params.corpus_radius, params.tol);
    if (!corpus_traces.within_tol)
        return Inconclusive{"abs-trace deviation " +
                            std::to_string(corpus_traces.max_deviation) + " at word " +
                            format_word(corpus_traces.worst_word, rho1.labels) +
                            " exceeds tolerance"};

    return Certificate{g, residual, corpus_traces.max_deviation, params.corpus_radius};
}

/// Rotation number of every word in the ball, in enumeration order.
struct SpectrumEntry {
    Word word;
    Classification cls;
    Angle rotation{0.0};
};

inline std::vector<SpectrumEntry> rotation_spectrum(const Representation& rho,
                                                    int corpus_radius) {
    std::vector<SpectrumEntry> out;
    for (const Word& w : enumerate_ball(static_cast<int>(rho.size()), corpus_radius)) {
        ProjectiveElement g = evaluate(rho, w);
        Classification cls = classify(g);
        out.push_back(SpectrumEntry{w, cls, rotation_number(g)});
    }
    return out;
}

} // namespace psl2rot
