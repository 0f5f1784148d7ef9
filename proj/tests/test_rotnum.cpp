#include "psl2rot/rotnum.hpp"
#include <catch2/catch_amalgamated.hpp>
#include <cmath>

using namespace psl2rot;

namespace {

CircleLift plateau_lift() {
    auto base = [](double r) {
        return r <= pi / 2.0 ? 0.0 : (4.0 / 3.0) * (r - pi / 2.0);
    };
    return CircleLift{[base](double x) {
                          double k = std::floor(x / two_pi);
                          return base(x - two_pi * k) + two_pi * k;
                      },
                      "flat on the first quarter"};
}

} // namespace

TEST_CASE("validate_lift accepts monotone degree-one maps") {
    CHECK_NOTHROW(validate_lift(CircleLift{[](double x) { return x; }, "identity"}));
    CHECK_NOTHROW(validate_lift(CircleLift{[](double x) { return x + 0.3 * std::sin(x); },
                                           "smooth perturbation"}));
    CHECK_NOTHROW(validate_lift(plateau_lift()));
}

TEST_CASE("validate_lift rejects bad maps") {
    CHECK_THROWS_AS(validate_lift(CircleLift{[](double x) { return x + 1.5 * std::sin(x); },
                                             "non-monotone"}),
                    NotMonotone);
    CHECK_THROWS_AS(validate_lift(CircleLift{[](double x) { return 2.0 * x; }, "degree two"}),
                    NotDegreeOne);
}

TEST_CASE("poincare estimate on a rigid rotation") {
    RotationEstimate est = poincare_rotation_number(lift_of_element(standard_rotation(1.0)),
                                                   0.0, 100000);
    CHECK(circle_distance(est.value.value, 2.0) < 1e-12);
    CHECK(est.n_iterations == 100000);
    CHECK(est.error_bound == Catch::Approx(two_pi / 100000.0).margin(1e-18));
}

TEST_CASE("poincare estimate vanishes off the elliptic case") {
    RotationEstimate hyp = poincare_rotation_number(lift_of_element(from_entries(2.0, 0.0, 0.0, 0.5)),
                                                    0.3, 100000);
    CHECK(circle_distance(hyp.value.value, 0.0) <= hyp.error_bound);

    RotationEstimate par = poincare_rotation_number(lift_of_element(from_entries(1.0, 1.0, 0.0, 1.0)),
                                                    0.3, 100000);
    CHECK(circle_distance(par.value.value, 0.0) <= par.error_bound);
}

TEST_CASE("poincare estimate matches the closed form under conjugation") {
    ProjectiveElement k = from_entries(1.0, 0.5, 0.3, 1.15);
    ProjectiveElement g = conjugate(k, standard_rotation(1.0));
    RotationEstimate est = poincare_rotation_number(lift_of_element(g), 0.0, 100000);
    CHECK(circle_distance(est.value.value, rotation_number(g).value) <= est.error_bound);
}

TEST_CASE("poincare estimate is base-point independent up to the bound") {
    ProjectiveElement k = from_entries(1.0, 0.5, 0.3, 1.15);
    ProjectiveElement g = conjugate(k, standard_rotation(1.0));
    CircleLift lift = lift_of_element(g);
    RotationEstimate at0 = poincare_rotation_number(lift, 0.0, 10000);
    RotationEstimate at1 = poincare_rotation_number(lift, 1.7, 10000);
    CHECK(circle_distance(at0.value, at1.value) <= at0.error_bound + at1.error_bound);
}

TEST_CASE("lift_right_inverse inverts a strict lift") {
    CircleLift h{[](double x) { return x + 0.3 * std::sin(x); }, "smooth"};
    for (double y : {0.0, 1.0, 4.0, -2.5}) {
        double x = lift_right_inverse(h, y);
        CHECK(h.map(x) == Catch::Approx(y).margin(1e-9));
    }
}

TEST_CASE("lift_right_inverse remains a section through a plateau") {
    CircleLift h = plateau_lift();

    double x = lift_right_inverse(h, 0.0);
    CHECK(h.map(x) == Catch::Approx(0.0).margin(1e-9));
    CHECK(x >= -1e-9);
    CHECK(x <= pi / 2.0 + 1e-9);

    double shifted = lift_right_inverse(h, two_pi);
    CHECK(h.map(shifted) == Catch::Approx(two_pi).margin(1e-9));
    CHECK(shifted == Catch::Approx(x + two_pi).margin(1e-9));
}

TEST_CASE("plateau detection") {
    CHECK(!lift_has_plateau(CircleLift{[](double x) { return x; }, "identity"}));
    CHECK(!lift_has_plateau(lift_of_element(standard_rotation(1.0))));
    CHECK(lift_has_plateau(plateau_lift()));
}

TEST_CASE("conjugating by the identity changes nothing") {
    InvarianceReport report = semiconjugacy_invariance_check(
        standard_rotation(1.0), CircleLift{[](double x) { return x; }, "identity"}, 10000);
    CHECK(report.difference == 0.0);
    CHECK(report.within_bound);
    CHECK(!report.used_plateau_inverse);
}

TEST_CASE("rotation number is invariant under a smooth conjugacy") {
    CircleLift h{[](double x) { return x + 1.2 + 0.4 * std::cos(x); }, "smooth"};
    InvarianceReport report = semiconjugacy_invariance_check(standard_rotation(1.0), h, 10000);
    CHECK(report.within_bound);
    CHECK(!report.used_plateau_inverse);
    CHECK(report.difference <= report.rot_original.error_bound + report.rot_conjugated.error_bound);
}

TEST_CASE("rotation number survives a monotone map with a plateau") {
    InvarianceReport report = semiconjugacy_invariance_check(standard_rotation(1.0),
                                                            plateau_lift(), 10000);
    CHECK(report.within_bound);
    CHECK(report.used_plateau_inverse);
}
