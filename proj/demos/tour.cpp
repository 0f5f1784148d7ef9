// A walk through the library: classification, rotation numbers, the elliptic
// search, and the conjugacy decision, driven by the bundled data files.
#include "psl2rot/psl2rot.hpp"

#include <cmath>
#include <iostream>
#include <string>

using namespace psl2rot;

namespace {

std::string data_file(const std::string& name) {
    return std::string(DEMO_DATA_DIR) + "/" + name;
}

void classify_some_elements() {
    std::cout << "-- classification --\n";
    for (auto [text, g] : {std::pair<const char*, ProjectiveElement>
             {"standard rotation by one radian", standard_rotation(1.0)},
             {"unit shear", from_entries(1.0, 1.0, 0.0, 1.0)},
             {"diagonal boost", from_entries(2.0, 0.0, 0.0, 0.5)}}) {
        Classification cls = classify(g);
        std::cout << text << ": ";
        switch (cls.type) {
            case Classification::Type::Identity: std::cout << "identity"; break;
            case Classification::Type::Elliptic:
                std::cout << "elliptic, rotation number " << cls.angle;
                break;
            case Classification::Type::Parabolic: std::cout << "parabolic"; break;
            case Classification::Type::Hyperbolic:
                std::cout << "hyperbolic, translation length " << cls.translation_length;
                break;
        }
        std::cout << "\n";
    }
    std::cout << "\n";
}

void estimate_a_rotation_number() {
    std::cout << "-- rotation number from the circle action --\n";
    Representation rho = load_representation(data_file("rotation.json"));
    ProjectiveElement g = rho.generators[0];

    RotationEstimate est = poincare_rotation_number(lift_of_element(g), 0.0, 100000);
    std::cout << "closed form: " << rotation_number(g).value << "\n";
    std::cout << "orbit estimate: " << est.value.value
              << " (error bound " << est.error_bound << ")\n";

    CircleLift wavy{[](double x) { return x + 0.3 * std::sin(x); }, "gentle wave"};
    InvarianceReport inv = semiconjugacy_invariance_check(g, wavy);
    std::cout << "after conjugating by a " << wavy.description
              << ": difference " << inv.difference
              << (inv.within_bound ? " (within bound)" : " (OUT OF BOUND)") << "\n\n";
}

void search_for_an_elliptic() {
    std::cout << "-- elliptic search and elementarity --\n";
    Representation pair_left = load_representation(data_file("pair_left.json"));

    EllipticSearchResult found = find_infinite_order_elliptic(pair_left, 3);
    std::cout << "first infinite order elliptic word: "
              << format_word(found.word, pair_left.labels)
              << " with half-angle " << found.theta << "\n";

    Representation sanov = load_representation(data_file("sanov.json"));
    std::cout << "jorgensen value of the sanov pair: "
              << jorgensen_value(sanov.generators[0], sanov.generators[1]) << "\n";
    ElementaryVerdict verdict = is_elementary(sanov);
    if (std::holds_alternative<NonElementary>(verdict))
        std::cout << "the sanov pair is non-elementary\n";
    std::cout << "\n";
}

void decide_conjugacy() {
    std::cout << "-- conjugacy decision --\n";
    Representation rho1 = load_representation(data_file("pair_left.json"));
    Representation rho2 = load_representation(data_file("pair_right.json"));

    RigidityVerdict verdict = check_rigidity(rho1, rho2);
    if (const auto* cert = std::get_if<Certificate>(&verdict)) {
        const UnimodularMatrix& g = cert->g.rep();
        std::cout << "certificate: conjugator [[" << g.a << ", " << g.b << "], ["
                  << g.c << ", " << g.d << "]]\n";
        std::cout << "generator residual " << cert->max_generator_residual
                  << ", corpus trace deviation " << cert->max_corpus_trace_deviation << "\n";
    } else if (const auto* wit = std::get_if<Witness>(&verdict)) {
        std::cout << "witness: word " << format_word(wit->word, rho1.labels)
                  << " has rotation numbers " << wit->rot1.value << " vs " << wit->rot2.value
                  << "\n";
    } else {
        std::cout << "inconclusive: " << std::get<Inconclusive>(verdict).reason << "\n";
    }

    Representation nudged = rho2;
    const UnimodularMatrix m = nudged.generators[1].rep();
    nudged.generators[1] = from_entries(m.a + 2e-3, m.b, m.c, m.d, true);
    RigidityVerdict second = check_rigidity(rho1, nudged);
    if (const auto* wit = std::get_if<Witness>(&second))
        std::cout << "after nudging one generator: witness word "
                  << format_word(wit->word, rho1.labels) << " separates the rotation spectra\n";
    else if (std::holds_alternative<Certificate>(second))
        std::cout << "after nudging one generator: still certified\n";
    else
        std::cout << "after nudging one generator: inconclusive\n";
}

} // namespace

int main() {
    std::cout.precision(15);
    classify_some_elements();
    estimate_a_rotation_number();
    search_for_an_elliptic();
    decide_conjugacy();
    return 0;
}
