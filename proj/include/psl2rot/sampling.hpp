#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <utility>
#include <variant>
#include <vector>

#include "psl2rot/angles.hpp"
#include "psl2rot/classify.hpp"
#include "psl2rot/detect.hpp"
#include "psl2rot/matrix.hpp"
#include "psl2rot/words.hpp"

namespace psl2rot {

/// Uniform doubles from the 53 high bits of std::mt19937_64, whose output
/// stream is fixed by the standard, so identical seeds reproduce identical
/// samples on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_bits() { return engine_(); }

    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Unbiased integer in [lo, hi] by rejection.
    long long uniform_int(long long lo, long long hi) {
        if (hi < lo) throw std::invalid_argument("empty integer range");
        std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        std::uint64_t threshold = (0 - span) % span;
        for (;;) {
            std::uint64_t r = engine_();
            if (r >= threshold) return lo + static_cast<long long>(r % span);
        }
    }

    bool coin() { return (engine_() & 1u) != 0; }

private:
    std::mt19937_64 engine_;
};

/// Decorrelated per-trial seed (splitmix64 finalizer).
inline std::uint64_t split_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Mild Iwasawa element: rotation times small diagonal times small shear.
/// Keeps conjugated generators well conditioned.
inline ProjectiveElement random_conjugator(Rng& rng) {
    double phi = rng.uniform(0.0, two_pi);
    double s = rng.uniform(-0.3, 0.3);
    double u = rng.uniform(-0.3, 0.3);
    UnimodularMatrix diag{std::exp(0.5 * s), 0.0, 0.0, std::exp(-0.5 * s)};
    UnimodularMatrix shear{1.0, u, 0.0, 1.0};
    return ProjectiveElement((standard_rotation(phi).rep() * diag) * shear);
}

inline ProjectiveElement random_elliptic(Rng& rng, double theta_min = 0.3,
                                         double theta_max = pi - 0.3) {
    double theta = rng.uniform(theta_min, theta_max);
    return conjugate(random_conjugator(rng), standard_rotation(theta));
}

inline ProjectiveElement random_hyperbolic(Rng& rng, double length_min = 0.1,
                                           double length_max = 0.5) {
    double ell = rng.uniform(length_min, length_max);
    UnimodularMatrix axis{std::exp(0.5 * ell), 0.0, 0.0, std::exp(-0.5 * ell)};
    return conjugate(random_conjugator(rng), ProjectiveElement(axis));
}

inline ProjectiveElement random_parabolic(Rng& rng) {
    double t = rng.uniform(0.5, 1.5) * (rng.coin() ? 1.0 : -1.0);
    UnimodularMatrix shear{1.0, t, 0.0, 1.0};
    return conjugate(random_conjugator(rng), ProjectiveElement(shear));
}

inline Word random_word(Rng& rng, int n_generators, int length) {
    std::vector<Syllable> syllables;
    syllables.reserve(static_cast<std::size_t>(length));
    for (int i = 0; i < length; ++i)
        syllables.push_back(Syllable{static_cast<int>(rng.uniform_int(0, n_generators - 1)),
                                     rng.coin() ? 1 : -1});
    return Word(std::move(syllables));
}

/// rho2 is an exact conjugate of rho1 = {infinite order elliptic a,
/// hyperbolic b} with a and b rejected until they generate nothing
/// elementary.
struct PlantedPair {
    Representation rho1{{ProjectiveElement{}}, {"a"}};
    Representation rho2{{ProjectiveElement{}}, {"a"}};
    ProjectiveElement conjugator;
};

inline PlantedPair sample_planted_pair(std::uint64_t seed) {
    for (std::uint64_t attempt = 0;; ++attempt) {
        Rng rng(split_seed(seed, attempt));
        double theta = rng.uniform(0.3, pi - 0.3);
        if (irrationality_test(theta).is_rational()) continue;
        ProjectiveElement a = conjugate(random_conjugator(rng), standard_rotation(theta));
        ProjectiveElement b = random_hyperbolic(rng);

        UnimodularMatrix comm =
            ((a.rep() * b.rep()) * a.rep().inverse()) * b.rep().inverse();
        if (std::abs(comm.trace() - 2.0) < 1e-6) continue;

        Representation rho1({a, b}, {"a", "b"});
        if (!std::holds_alternative<NonElementary>(is_elementary(rho1))) continue;

        ProjectiveElement k = random_conjugator(rng);
        std::vector<ProjectiveElement> gens2;
        for (const ProjectiveElement& g : rho1.generators) gens2.push_back(conjugate(k, g));
        return PlantedPair{std::move(rho1), Representation(std::move(gens2), {"a", "b"}), k};
    }
}

/// A planted pair with one generator of rho2 displaced by at least 1e-3
/// projectively, rejected until some word in the corpus ball shows a rotation
/// number gap two orders above the detection tolerance.
struct PerturbedPair {
    Representation rho1{{ProjectiveElement{}}, {"a"}};
    Representation rho2{{ProjectiveElement{}}, {"a"}};
    std::size_t perturbed_index = 0;
    double displacement = 0.0;
};

inline PerturbedPair sample_perturbed_pair(std::uint64_t seed, double tol = 1e-8,
                                           int corpus_radius = 4) {
    for (std::uint64_t attempt = 0;; ++attempt) {
        PlantedPair base = sample_planted_pair(split_seed(seed, 2 * attempt));
        Rng rng(split_seed(seed, 2 * attempt + 1));

        std::size_t idx = static_cast<std::size_t>(rng.uniform_int(0, 1));
        UnimodularMatrix dir{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0),
                             rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
        double scale = std::max(std::max(std::abs(dir.a), std::abs(dir.b)),
                                std::max(std::abs(dir.c), std::abs(dir.d)));
        if (scale < 0.1) continue;
        double delta = rng.uniform(2e-3, 5e-3) / scale;

        const UnimodularMatrix& m = base.rho2.generators[idx].rep();
        UnimodularMatrix moved{m.a + delta * dir.a, m.b + delta * dir.b,
                               m.c + delta * dir.c, m.d + delta * dir.d};
        if (moved.det() < 0.5) continue;
        ProjectiveElement g2{moved};
        double displacement = projective_distance(g2, base.rho2.generators[idx]);
        if (displacement < 1e-3) continue;

        std::vector<ProjectiveElement> gens = base.rho2.generators;
        gens[idx] = g2;
        Representation rho2(std::move(gens), base.rho2.labels);

        bool visible = false;
        for (const Word& w : enumerate_ball(2, corpus_radius)) {
            if (circle_distance(rotation_number(evaluate(base.rho1, w)),
                                rotation_number(evaluate(rho2, w))) > 100.0 * tol) {
                visible = true;
                break;
            }
        }
        if (!visible) continue;
        return PerturbedPair{std::move(base.rho1), std::move(rho2), idx, displacement};
    }
}

/// rho2 conjugate to the mirror image of rho1 (b -> -b, c -> -c entry-wise),
/// so the unique intertwiner has determinant -1. Rejected until the corpus
/// rotation gap is two orders above tolerance, which reflections of
/// irrational elliptics provide away from half turns.
inline PlantedPair sample_reflected_pair(std::uint64_t seed, double tol = 1e-8,
                                         int corpus_radius = 4) {
    for (std::uint64_t attempt = 0;; ++attempt) {
        PlantedPair base = sample_planted_pair(split_seed(seed, 2 * attempt));
        Rng rng(split_seed(seed, 2 * attempt + 1));

        ProjectiveElement k = random_conjugator(rng);
        std::vector<ProjectiveElement> gens2;
        for (const ProjectiveElement& g : base.rho1.generators) {
            const UnimodularMatrix& m = g.rep();
            gens2.push_back(conjugate(k, ProjectiveElement(UnimodularMatrix{m.a, -m.b, -m.c, m.d})));
        }
        Representation rho2(std::move(gens2), {"a", "b"});

        bool visible = false;
        for (const Word& w : enumerate_ball(2, corpus_radius)) {
            if (circle_distance(rotation_number(evaluate(base.rho1, w)),
                                rotation_number(evaluate(rho2, w))) > 100.0 * tol) {
                visible = true;
                break;
            }
        }
        if (!visible) continue;
        return PlantedPair{std::move(base.rho1), std::move(rho2), k};
    }
}

} // namespace psl2rot
