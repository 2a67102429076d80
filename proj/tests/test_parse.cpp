#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "gen.hpp"
#include "zk/format.hpp"
#include "zk/oracles.hpp"
#include "zk/parse.hpp"
#include "zk/verify.hpp"

using namespace zk;

TEST_CASE("laurent parsing") {
    LaurentPoly p = parse_laurent("1 - 2*X^-1*Y1 + Y1^2", 1);
    LaurentPoly expected = LaurentPoly::constant(1, Rat(1)) -
                           LaurentPoly::monomial(1, Rat(2), -1, {1}) +
                           LaurentPoly::monomial(1, Rat(1), 0, {2});
    CHECK(p == expected);

    CHECK(parse_laurent("(1 - X^-1)^2", 1) ==
          (LaurentPoly::constant(1, Rat(1)) - LaurentPoly::monomial(1, Rat(1), -1, {})).pow(2));

    CHECK(parse_laurent("0*X + 1", 1) == LaurentPoly::constant(1, Rat(1)));
}

TEST_CASE("cyclo parsing and the heisenberg example") {
    CycloRational w = parse_cyclo("(1 - Y1) / ((1 - X*Y1))", 1);
    LaurentPoly num = LaurentPoly::constant(1, Rat(1)) - LaurentPoly::monomial(1, Rat(1), 0, {1});
    FactorMultiset den;
    den[CycloFactor{1, {1}}] = 1;
    CHECK(cyclo_equal(w, CycloRational(num, den)));

    CycloRational a3 = parse_cyclo("1 / ((1 - Y1)*(1 - X*Y1)*(1 - X^2*Y1))", 1);
    CHECK(a3.den_size() == 3);
    CHECK(cyclo_equal(a3, catalog("abelian_sub(3)").terms()[0].w));
}

TEST_CASE("degenerate factor is reported") {
    try {
        parse_cyclo("1 / ((1 - X^0*Y1^0))", 1);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrKind::DegenerateFactor);
    }
}

TEST_CASE("parse errors carry positions") {
    try {
        parse_cyclo("1 / ((2 - X*Y1))", 1);
        CHECK(false);
    } catch (const ParseError& e) {
        CHECK(e.line() == 1);
        CHECK(e.column() > 1);
    }
    CHECK_THROWS_AS(parse_laurent("1 + Z", 1), ParseError);
    CHECK_THROWS_AS(parse_laurent("1 + Y2", 1), ParseError);  // m = 1
}

TEST_CASE("variety parsing: builtins") {
    CHECK(count_points(parse_constructible("point"), 5, 1) == 1);
    CHECK(count_points(parse_constructible("affine(2)"), 3, 1) == 9);
    CHECK(count_points(parse_constructible("torus(2)"), 3, 1) == 4);
    CHECK(count_points(parse_constructible("difference(affine(1), point)"), 7, 1) == 6);
    CHECK(count_points(parse_constructible("product(torus(1), affine(1))"), 5, 1) == 20);
    CHECK(count_points(parse_constructible("union(point, torus(1))"), 5, 1) == 5);
}

TEST_CASE("variety parsing: inline systems") {
    ConstructibleSet circle = parse_constructible("vars x,y ; eq x^2 + y^2 - 1");
    CHECK(count_points(circle, 5, 1) == 4);
    CHECK(count_points(circle, 7, 1) == 8);

    ConstructibleSet empty = parse_constructible("vars x ; eq 0*x + 1");
    CHECK(empty.pieces.empty());

    ConstructibleSet torus = parse_constructible("vars x ; ineq x");
    CHECK(count_points(torus, 5, 1) == 4);

    CHECK_THROWS_AS(parse_constructible("vars x ; eq y"), ParseError);
    CHECK_THROWS_AS(parse_constructible("blob(2)"), ParseError);
}

TEST_CASE("formula files parse, print, and round trip") {
    std::string text =
        "# a comment\n"
        "m 1\n"
        "exclude 2 3\n"
        "term\n"
        "  variety point\n"
        "  chi 1\n"
        "  W (1 - Y1) / ((1 - X*Y1))\n"
        "term\n"
        "  variety torus(1)\n"
        "  W 1 / ((1 - X*Y1))\n";
    LocalMapFormula f = parse_formula_text(text);
    CHECK(f.m() == 1);
    CHECK(f.terms().size() == 2);
    CHECK(f.excluded_primes() == std::set<std::uint64_t>{2, 3});
    CHECK(f.terms()[0].set.user_chi == 1);

    // print and reparse: same evaluations
    LocalMapFormula g = parse_formula_text(format_formula_file(f));
    CHECK(g.m() == f.m());
    for (std::uint64_t p : {5ull, 7ull})
        for (long long ff = 1; ff <= 2; ++ff)
            CHECK(yrat_equal(evaluate(f, p, ff), evaluate(g, p, ff)));
}

TEST_CASE("formula file structural errors") {
    CHECK_THROWS_AS(parse_formula_text("term\n  variety point\n"), ParseError);   // missing m
    CHECK_THROWS_AS(parse_formula_text("m 1\nterm\n  W 1\n  variety point\nterm\n  variety point\n"),
                    ParseError);  // second term lacks W
    CHECK_THROWS_AS(parse_formula_text("m 1\nvariety point\n"), ParseError);      // outside a term
    CHECK_THROWS_AS(parse_formula_text("m 1\nterm\n  variety blob\n  W 1\n"), ParseError);
}

TEST_CASE("cyclo print/parse round trip on random inputs") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 40; ++i) {
        int m = 1 + static_cast<int>(i % 2);
        CycloRational w = gen::random_cyclo(rng, m);
        CycloRational back = parse_cyclo(format_cyclo(w), m);
        CHECK(cyclo_equal(w, back));
    }
}

TEST_CASE("formula print/parse round trip keeps inline varieties") {
    std::string text =
        "m 1\n"
        "term\n"
        "  variety vars x,y ; eq x^2 + y^2 - 1\n"
        "  W 1 / ((1 - X*Y1))\n";
    LocalMapFormula f = parse_formula_text(text);
    LocalMapFormula g = parse_formula_text(format_formula_file(f));
    for (std::uint64_t p : {5ull, 7ull, 11ull})
        CHECK(yrat_equal(evaluate(f, p, 1), evaluate(g, p, 1)));
}

TEST_CASE("algebra files") {
    std::string text =
        "d 3\n"
        "mode subalgebra\n"
        "prod 1 2 -> 0 0 1\n"
        "prod 2 1 -> 0 0 -1\n";
    AlgebraPresentation alg = parse_algebra_text(text);
    CHECK(alg.d == 3);
    CHECK(alg.sc_at(0, 1, 2) == 1);
    CHECK(alg.sc_at(1, 0, 2) == -1);
    CHECK(subzeta_coeffs(alg, 2, 2) == std::vector<Int>{Int(1), Int(3), Int(19)});

    std::string sub =
        "d 2\n"
        "mode submodule\n"
        "gen 0 1 0 0\n";
    AlgebraPresentation s = parse_algebra_text(sub);
    CHECK(s.generators.size() == 1);

    CHECK_THROWS_AS(parse_algebra_text("mode subalgebra\n"), ParseError);
    CHECK_THROWS_AS(parse_algebra_text("d 2\nmode banana\n"), ParseError);
}
