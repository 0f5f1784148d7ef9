#include "psl2rot/detect.hpp"
#include <catch2/catch_amalgamated.hpp>
#include <cmath>

using namespace psl2rot;

namespace {

Representation sanov() {
    return Representation{{from_entries(1.0, 2.0, 0.0, 1.0), from_entries(1.0, 0.0, 2.0, 1.0)},
                          {"a", "b"}};
}

} // namespace

TEST_CASE("jorgensen value of the Sanov generators") {
    ProjectiveElement a = from_entries(1.0, 2.0, 0.0, 1.0);
    ProjectiveElement b = from_entries(1.0, 0.0, 2.0, 1.0);
    CHECK(jorgensen_value(a, b) == Catch::Approx(16.0).margin(1e-12));

    ProjectiveElement k = from_entries(1.0, 0.7, 0.2, 1.14);
    CHECK(jorgensen_value(conjugate(k, a), conjugate(k, b)) ==
          Catch::Approx(16.0).margin(1e-9));
}

TEST_CASE("irrationality test flags exact rational multiples of pi") {
    IrrationalityReport half = irrationality_test(pi / 2.0);
    CHECK(half.is_rational());
    CHECK(half.p == 1);
    CHECK(half.q == 2);
    CHECK(half.theta_over_pi == Catch::Approx(0.5).margin(1e-15));

    IrrationalityReport nearby = irrationality_test(3.0 * pi / 7.0 + 1e-15);
    CHECK(nearby.is_rational());
    CHECK(nearby.p == 3);
    CHECK(nearby.q == 7);
}

TEST_CASE("irrationality test accepts one radian") {
    IrrationalityReport report = irrationality_test(1.0);
    CHECK(!report.is_rational());
    CHECK(report.theta_over_pi == Catch::Approx(1.0 / pi).margin(1e-15));
    CHECK(report.best_error > default_irrational_delta);
    CHECK(report.best_error < 1e-7);

    bool has_1_3 = false, has_7_22 = false;
    for (auto [p, q] : report.convergents) {
        if (p == 1 && q == 3) has_1_3 = true;
        if (p == 7 && q == 22) has_7_22 = true;
    }
    CHECK(has_1_3);
    CHECK(has_7_22);
}

TEST_CASE("irrationality verdict depends on the denominator bound") {
    CHECK(!irrationality_test(1.0, 100).is_rational());
    CHECK(irrationality_test(1.0, 100, 1e-2).is_rational());
}

TEST_CASE("elliptic search finds a generator directly") {
    Representation rho{{standard_rotation(1.0)}, {"a"}};
    EllipticSearchResult found = find_infinite_order_elliptic(rho, 3);
    CHECK(format_word(found.word, rho.labels) == "a");
    CHECK(found.theta == Catch::Approx(1.0).margin(1e-12));
    CHECK(!found.report.is_rational());
}

TEST_CASE("elliptic search scans past non-elliptic generators") {
    ProjectiveElement a = from_entries(2.0, 0.0, 0.0, 0.5);
    ProjectiveElement g1 = a.inverse() * standard_rotation(1.0);
    Representation rho{{a, g1}, {"a", "b"}};

    EllipticSearchResult found = find_infinite_order_elliptic(rho, 3);
    CHECK(format_word(found.word, rho.labels) == "b");
    CHECK(found.theta == Catch::Approx(std::acos(1.25 * std::cos(1.0))).margin(1e-12));
}

TEST_CASE("elliptic search reports failure with the radius searched") {
    Representation hyperbolic_only{{from_entries(2.0, 0.0, 0.0, 0.5)}, {"a"}};
    CHECK_THROWS_MATCHES(find_infinite_order_elliptic(hyperbolic_only, 3), NotFound,
                         Catch::Matchers::Predicate<NotFound>(
                             [](const NotFound& e) { return e.radius == 3; }));

    Representation finite_order{{from_entries(0.0, 1.0, -1.0, 0.0)}, {"a"}};
    CHECK_THROWS_AS(find_infinite_order_elliptic(finite_order, 4), NotFound);
}

TEST_CASE("single elliptic generator is elementary") {
    Representation rho{{standard_rotation(1.0)}, {"a"}};
    CHECK(std::holds_alternative<Elementary>(is_elementary(rho)));
}

TEST_CASE("commuting hyperbolics are elementary") {
    Representation rho{{from_entries(2.0, 0.0, 0.0, 0.5), from_entries(3.0, 0.0, 0.0, 1.0 / 3.0)},
                       {"a", "b"}};
    CHECK(std::holds_alternative<Elementary>(is_elementary(rho)));
}

TEST_CASE("axis swap gives an invariant boundary pair") {
    Representation rho{{from_entries(2.0, 0.0, 0.0, 0.5), from_entries(0.0, 1.0, -1.0, 0.0)},
                       {"a", "b"}};
    ElementaryVerdict verdict = is_elementary(rho);
    auto* elem = std::get_if<Elementary>(&verdict);
    REQUIRE(elem != nullptr);
    CHECK(elem->reason.find("boundary pair") != std::string::npos);
}

TEST_CASE("Sanov generators are non-elementary") {
    ElementaryVerdict verdict = is_elementary(sanov());
    auto* ne = std::get_if<NonElementary>(&verdict);
    REQUIRE(ne != nullptr);

    Representation rho = sanov();
    ProjectiveElement w1 = evaluate(rho, ne->witness1);
    ProjectiveElement w2 = evaluate(rho, ne->witness2);
    CHECK(!classify(w1).is_identity());
    CHECK(!classify(w2).is_identity());
    CHECK(std::abs(abs_trace(w1 * w2 * w1.inverse() * w2.inverse()) - 2.0) > 1e-9);
}

TEST_CASE("mixed elliptic and hyperbolic pair is non-elementary") {
    Representation rho{{standard_rotation(1.0), from_entries(2.0, 1.0, 1.0, 1.0)}, {"a", "b"}};
    CHECK(std::holds_alternative<NonElementary>(is_elementary(rho)));
}
