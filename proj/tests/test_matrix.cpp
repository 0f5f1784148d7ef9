#include "psl2rot/matrix.hpp"
#include <catch2/catch_amalgamated.hpp>
#include <cmath>

using namespace psl2rot;

TEST_CASE("constructor rescales determinant drift") {
    ProjectiveElement g{UnimodularMatrix{2.0, 0.0, 0.0, 2.0}};
    CHECK(g.rep().a == 1.0);
    CHECK(g.rep().d == 1.0);
    CHECK(g.rep().det() == Catch::Approx(1.0).margin(1e-15));
}

TEST_CASE("constructor rejects non-positive determinant") {
    CHECK_THROWS_AS((ProjectiveElement{UnimodularMatrix{1.0, 0.0, 0.0, -1.0}}),
                    NonPositiveDeterminant);
    CHECK_THROWS_AS((ProjectiveElement{UnimodularMatrix{0.0, 0.0, 0.0, 0.0}}),
                    NonPositiveDeterminant);
}

TEST_CASE("from_entries tolerance band") {
    CHECK_NOTHROW(from_entries(1.0 + 5e-10, 0.0, 0.0, 1.0));
    CHECK_THROWS_AS(from_entries(1.0 + 1e-6, 0.0, 0.0, 1.0), DeterminantOutOfTolerance);
    CHECK_NOTHROW(from_entries(3.0, 0.0, 0.0, 3.0, true));
    CHECK_THROWS_AS(from_entries(0.0, 1.0, 1.0, 0.0, true), NonPositiveDeterminant);
}

TEST_CASE("canonical sign prefers positive trace") {
    ProjectiveElement g{UnimodularMatrix{-2.0, 0.0, 0.0, -0.5}};
    CHECK(g.rep().a == 2.0);
    CHECK(g.rep().d == 0.5);
}

TEST_CASE("canonical sign tie-break on traceless matrices") {
    ProjectiveElement quarter{UnimodularMatrix{0.0, 1.0, -1.0, 0.0}};
    CHECK(quarter.rep().b == 1.0);
    CHECK(quarter.rep().c == -1.0);

    ProjectiveElement flipped{UnimodularMatrix{0.0, -1.0, 1.0, 0.0}};
    CHECK(flipped.rep().b == 1.0);
    CHECK(flipped.rep().c == -1.0);

    ProjectiveElement traceless{UnimodularMatrix{-2.0, -5.0, 1.0, 2.0}};
    CHECK(traceless.rep().a == 2.0);
    CHECK(traceless.rep().b == 5.0);
    CHECK(traceless.rep().c == -1.0);
}

TEST_CASE("sign quotient collapses negated matrices") {
    ProjectiveElement g = from_entries(2.0, 1.0, 1.0, 1.0);
    ProjectiveElement h{UnimodularMatrix{-2.0, -1.0, -1.0, -1.0}};
    CHECK(projective_distance(g, h) == 0.0);
}

TEST_CASE("group operations") {
    ProjectiveElement g = from_entries(2.0, 1.0, 1.0, 1.0);
    ProjectiveElement h = from_entries(1.0, 0.5, 0.0, 1.0);

    CHECK(projective_distance(g * g.inverse(), ProjectiveElement::identity()) < 1e-15);
    CHECK(projective_distance(inverse(g) * g, ProjectiveElement::identity()) < 1e-15);
    CHECK(projective_distance(compose(g, h), g * h) == 0.0);
    CHECK(projective_distance(conjugate(h, g), h * g * h.inverse()) < 1e-15);
}

TEST_CASE("abs_trace ignores the sign choice") {
    ProjectiveElement g{UnimodularMatrix{-2.0, 0.0, 0.0, -0.5}};
    CHECK(abs_trace(g) == 2.5);
}

TEST_CASE("power matches repeated multiplication") {
    ProjectiveElement g = from_entries(1.0, 1.0, 0.0, 1.0);
    CHECK(power(g, 0).rep().b == 0.0);
    CHECK(power(g, 7).rep().b == Catch::Approx(7.0).margin(1e-12));
    CHECK(power(g, -7).rep().b == Catch::Approx(-7.0).margin(1e-12));

    ProjectiveElement h = from_entries(2.0, 1.0, 1.0, 1.0);
    ProjectiveElement manual = ProjectiveElement::identity();
    for (int i = 0; i < 11; ++i) manual = manual * h;
    CHECK(projective_distance(power(h, 11), manual) < 1e-9);
    CHECK(projective_distance(power(h, -11), manual.inverse()) < 1e-9);
}

TEST_CASE("max_entry_distance is the entrywise max norm") {
    UnimodularMatrix x{1.0, 2.0, 3.0, 4.0};
    UnimodularMatrix y{1.5, 2.0, 3.0, 3.0};
    CHECK(max_entry_distance(x, y) == 1.0);
}
