#include "psl2rot/words.hpp"
#include <catch2/catch_amalgamated.hpp>
#include <set>

using namespace psl2rot;

namespace {

Representation sanov() {
    return Representation{{from_entries(1.0, 2.0, 0.0, 1.0), from_entries(1.0, 0.0, 2.0, 1.0)},
                          {"a", "b"}};
}

} // namespace

TEST_CASE("free reduction collapses adjacent syllables") {
    Word w{{{0, 2}, {0, -2}, {1, 1}}};
    CHECK(w == Word{{{1, 1}}});

    Word cancel{{{0, 1}, {1, 1}, {1, -1}, {0, -1}}};
    CHECK(cancel.is_identity());

    Word merged{{{0, 1}, {0, 2}, {1, -1}, {1, -2}}};
    CHECK(merged == Word{{{0, 3}, {1, -3}}});
    CHECK(merged.length() == 6);
}

TEST_CASE("word group operations") {
    Word a{{{0, 1}}};
    Word b{{{1, 1}}};
    Word w = a * b * a.inverse();

    CHECK((w * w.inverse()).is_identity());
    CHECK(w.pow(0).is_identity());
    CHECK(w.pow(3) == w * w * w);
    CHECK(w.pow(-2) == (w * w).inverse());
    CHECK(Word::identity().length() == 0);
}

TEST_CASE("evaluation is a homomorphism") {
    Representation rho = sanov();
    Word a{{{0, 1}}};
    Word b{{{1, 1}}};

    ProjectiveElement ab = evaluate(rho, a * b);
    CHECK(projective_distance(ab, rho.generators[0] * rho.generators[1]) < 1e-15);
    CHECK(ab.rep().a == Catch::Approx(5.0).margin(1e-15));
    CHECK(ab.rep().b == Catch::Approx(2.0).margin(1e-15));

    ProjectiveElement comm = evaluate(rho, a * b * a.inverse() * b.inverse());
    ProjectiveElement direct = rho.generators[0] * rho.generators[1] *
                               rho.generators[0].inverse() * rho.generators[1].inverse();
    CHECK(projective_distance(comm, direct) < 1e-12);
    CHECK(evaluate(rho, Word::identity()).rep().b == 0.0);
}

TEST_CASE("evaluation rejects out-of-range generators") {
    Representation rho = sanov();
    CHECK_THROWS_AS(evaluate(rho, Word{{{5, 1}}}), IndexOutOfRange);
}

TEST_CASE("ball sizes over two generators") {
    CHECK(ball_count(2, 1) == 5);
    CHECK(ball_count(2, 2) == 17);
    CHECK(ball_count(2, 4) == 161);

    CHECK(enumerate_ball(2, 1).size() == 5);
    CHECK(enumerate_ball(2, 2).size() == 17);
    CHECK(enumerate_ball(2, 4).size() == 161);
    CHECK(enumerate_ball(1, 3).size() == 7);
}

TEST_CASE("ball enumeration is reduced and duplicate-free") {
    std::vector<Word> ball = enumerate_ball(2, 3);
    std::set<std::string> seen;
    for (const Word& w : ball) {
        CHECK(w.length() <= 3);
        CHECK(w == Word{w.syllables()});
        seen.insert(format_word(w));
    }
    CHECK(seen.size() == ball.size());
}

TEST_CASE("ball ordering is by length with the identity first") {
    std::vector<Word> ball = enumerate_ball(2, 2);
    REQUIRE(!ball.empty());
    CHECK(ball.front().is_identity());
    for (std::size_t i = 1; i < ball.size(); ++i)
        CHECK(ball[i - 1].length() <= ball[i].length());
}

TEST_CASE("ball cap guards against exponential blowup") {
    CHECK_THROWS_AS(enumerate_ball(2, 30), BallTooLarge);
    CHECK_THROWS_AS(enumerate_ball(2, 4, 100), BallTooLarge);
}

TEST_CASE("word parsing round trip") {
    Representation rho = sanov();

    Word w = parse_word("a b^-2 A", rho);
    CHECK(w == Word{{{0, 1}, {1, -2}, {0, -1}}});
    CHECK(format_word(w, rho.labels) == "ab^-2A");
    CHECK(parse_word(format_word(w, rho.labels), rho) == w);

    CHECK(parse_word("", rho).is_identity());
    CHECK(parse_word("a A", rho).is_identity());
    CHECK(parse_word("a^3", rho) == Word{{{0, 3}}});
    CHECK(parse_word("B^2", rho) == Word{{{1, -2}}});
}

TEST_CASE("word parsing rejects malformed text") {
    Representation rho = sanov();
    CHECK_THROWS_AS(parse_word("c", rho), WordSyntaxError);
    CHECK_THROWS_AS(parse_word("a^", rho), WordSyntaxError);
    CHECK_THROWS_AS(parse_word("a^x", rho), WordSyntaxError);
    CHECK_THROWS_AS(parse_word("^2", rho), WordSyntaxError);
}

TEST_CASE("format_word falls back to letter names") {
    Word w{{{0, 2}, {1, -1}}};
    CHECK(format_word(w) == "a^2B");
    CHECK(format_word(Word::identity()) == "1");
}
