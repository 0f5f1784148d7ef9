#include "psl2rot/classify.hpp"
#include <catch2/catch_amalgamated.hpp>
#include <cmath>

using namespace psl2rot;

TEST_CASE("trichotomy on standard representatives") {
    CHECK(classify(ProjectiveElement::identity()).is_identity());
    CHECK(classify(standard_rotation(1.0)).is_elliptic());
    CHECK(classify(from_entries(1.0, 1.0, 0.0, 1.0)).is_parabolic());
    CHECK(classify(from_entries(2.0, 0.0, 0.0, 0.5)).is_hyperbolic());
}

TEST_CASE("classification band around trace two") {
    ProjectiveElement inside = from_entries(1.0, 1.0, 5e-10, 1.0 + 5e-10);
    CHECK(classify(inside).is_parabolic());

    ProjectiveElement above = from_entries(1.0, 1.0, 2e-9, 1.0 + 2e-9);
    CHECK(classify(above).is_hyperbolic());

    ProjectiveElement below = from_entries(1.0, 1.0, -2e-9, 1.0 - 2e-9);
    CHECK(classify(below).is_elliptic());
}

TEST_CASE("rotation number of standard rotations") {
    CHECK(rotation_number(standard_rotation(1.0)).value == Catch::Approx(2.0).margin(1e-12));
    CHECK(rotation_number(standard_rotation(0.7)).value == Catch::Approx(1.4).margin(1e-12));
    CHECK(rotation_number(standard_rotation(2.0)).value == Catch::Approx(4.0).margin(1e-12));

    ProjectiveElement quarter = from_entries(0.0, 1.0, -1.0, 0.0);
    CHECK(rotation_number(quarter).value == Catch::Approx(pi).margin(1e-12));
}

TEST_CASE("rotation number is zero off the elliptic case") {
    CHECK(rotation_number(ProjectiveElement::identity()).value == 0.0);
    CHECK(rotation_number(from_entries(1.0, 1.0, 0.0, 1.0)).value == 0.0);
    CHECK(rotation_number(from_entries(2.0, 0.0, 0.0, 0.5)).value == 0.0);
}

TEST_CASE("rotation number is a conjugation invariant") {
    ProjectiveElement k = from_entries(1.0, 3.0, 0.0, 1.0);
    ProjectiveElement quarter = from_entries(0.0, 1.0, -1.0, 0.0);
    CHECK(rotation_number(conjugate(k, quarter)).value == Catch::Approx(pi).margin(1e-9));
    CHECK(rotation_number(conjugate(k, standard_rotation(2.0))).value ==
          Catch::Approx(4.0).margin(1e-9));
}

TEST_CASE("hyperbolic translation length") {
    Classification cls = classify(from_entries(2.0, 0.0, 0.0, 0.5));
    CHECK(cls.translation_length == Catch::Approx(2.0 * std::log(2.0)).margin(1e-12));

    ProjectiveElement k = from_entries(1.0, 0.0, 1.0, 1.0);
    Classification conj = classify(conjugate(k, from_entries(2.0, 0.0, 0.0, 0.5)));
    CHECK(conj.translation_length == Catch::Approx(2.0 * std::log(2.0)).margin(1e-9));
}

TEST_CASE("fixed points of an elliptic rotation") {
    auto fp = fixed_points(standard_rotation(1.0));
    auto* e = std::get_if<EllipticFix>(&fp);
    REQUIRE(e != nullptr);
    CHECK(e->point.x == Catch::Approx(0.0).margin(1e-12));
    CHECK(e->point.y == Catch::Approx(1.0).margin(1e-12));
}

TEST_CASE("fixed points of a parabolic shear") {
    auto fp = fixed_points(from_entries(1.0, 1.0, 0.0, 1.0));
    auto* p = std::get_if<ParabolicFix>(&fp);
    REQUIRE(p != nullptr);
    CHECK(circle_distance(p->point, BoundaryPoint{Angle(0.0)}) < 1e-12);
}

TEST_CASE("fixed points of a hyperbolic element are the quadratic roots") {
    auto fp = fixed_points(from_entries(2.0, 1.0, 1.0, 1.0));
    auto* h = std::get_if<HyperbolicFix>(&fp);
    REQUIRE(h != nullptr);
    double golden = (1.0 + std::sqrt(5.0)) / 2.0;
    CHECK(circle_distance(h->attracting, BoundaryPoint::from_real(golden)) < 1e-12);
    CHECK(circle_distance(h->repelling, BoundaryPoint::from_real(golden - std::sqrt(5.0))) < 1e-12);
}

TEST_CASE("identity fixes everything") {
    auto fp = fixed_points(ProjectiveElement::identity());
    CHECK(std::holds_alternative<AllPoints>(fp));
}

TEST_CASE("mobius action on the half-plane") {
    HalfPlanePoint image = mobius_act(from_entries(2.0, 1.0, 1.0, 1.0), HalfPlanePoint{});
    CHECK(image.x == Catch::Approx(1.5).margin(1e-15));
    CHECK(image.y == Catch::Approx(0.5).margin(1e-15));

    HalfPlanePoint shifted = mobius_act(from_entries(1.0, 1.0, 0.0, 1.0), HalfPlanePoint{0.25, 2.0});
    CHECK(shifted.x == Catch::Approx(1.25).margin(1e-15));
    CHECK(shifted.y == Catch::Approx(2.0).margin(1e-15));
}

TEST_CASE("boundary action of a rotation advances the angle by twice theta") {
    BoundaryPoint p{Angle(0.5)};
    BoundaryPoint q = boundary_act(standard_rotation(1.0), p);
    CHECK(circle_distance(q, BoundaryPoint{Angle(2.5)}) < 1e-12);
}

TEST_CASE("boundary orbit converges to the attracting fixed point") {
    ProjectiveElement g = from_entries(2.0, 1.0, 1.0, 1.0);
    auto fp = fixed_points(g);
    auto* h = std::get_if<HyperbolicFix>(&fp);
    REQUIRE(h != nullptr);

    BoundaryPoint p{Angle(2.5)};
    for (int i = 0; i < 50; ++i) p = boundary_act(g, p);
    CHECK(circle_distance(p, h->attracting) < 1e-12);
}

TEST_CASE("conjugate_to_rotation recovers the frame") {
    ProjectiveElement k = from_entries(1.0, 3.0, 0.0, 1.0);

    for (double theta : {0.7, 2.0}) {
        ProjectiveElement g = conjugate(k, standard_rotation(theta));
        auto [h, recovered] = conjugate_to_rotation(g);
        CHECK(recovered == Catch::Approx(theta).margin(1e-9));
        CHECK(projective_distance(conjugate(h, g), standard_rotation(recovered)) < 1e-9);
    }
}

TEST_CASE("conjugate_to_rotation rejects non-elliptic input") {
    CHECK_THROWS_AS(conjugate_to_rotation(from_entries(2.0, 0.0, 0.0, 0.5)), NotElliptic);
    CHECK_THROWS_AS(conjugate_to_rotation(ProjectiveElement::identity()), NotElliptic);
}
