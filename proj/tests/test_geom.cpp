#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <vector>

#include "doctest.h"
#include "zk/error.hpp"
#include "zk/geom.hpp"

using namespace zk;

namespace {

// circle x^2 + y^2 - 1 = 0 in two variables
ConstructibleSet circle() {
    AffineSystem sys;
    sys.nvars = 2;
    IntPoly x = IntPoly::variable(2, 0), y = IntPoly::variable(2, 1);
    sys.equations.push_back(x * x + y * y - IntPoly::constant(2, Int(1)));
    return cs_from_system(std::move(sys));
}

}  // namespace

TEST_CASE("builtin counts") {
    CHECK(count_points(cs_point(), 5, 1) == 1);
    CHECK(count_points(cs_affine(2), 3, 2) == 81);
    CHECK(count_points(cs_torus(1), 5, 1) == 4);
    CHECK(count_points(cs_torus(2), 3, 1) == 4);
    CHECK(count_points(cs_difference(cs_affine(1), cs_point()), 7, 1) == 6);
}

TEST_CASE("circle counts match q - (-1)^((q-1)/2) for odd prime fields") {
    ConstructibleSet c = circle();
    for (std::uint64_t p : {3ull, 5ull, 7ull, 11ull, 13ull}) {
        Int expected = Int(static_cast<unsigned long>(p)) - ((p % 4 == 1) ? 1 : -1);
        CHECK(count_points(c, p, 1) == expected);
    }
    CHECK(count_points(c, 5, 1) == 4);
    CHECK(count_points(c, 7, 1) == 8);
}

TEST_CASE("circle counts over extensions follow the parity of f") {
    ConstructibleSet c = circle();
    // p = 3: q = 3^f alternates 3 mod 4 (f odd) and 1 mod 4 (f even)
    CHECK(count_points(c, 3, 1) == 4);    // 3 + 1
    CHECK(count_points(c, 3, 2) == 8);    // 9 - 1
    CHECK(count_points(c, 3, 3) == 28);   // 27 + 1
    CHECK(count_points(c, 3, 4) == 80);   // 81 - 1
    // p = 5: q = 5^f always 1 mod 4
    CHECK(count_points(c, 5, 2) == 24);
    CHECK(count_points(c, 5, 3) == 124);
}

TEST_CASE("multiplicativity and additivity on a grid") {
    ConstructibleSet a = cs_torus(1), b = circle();
    for (std::uint64_t p : {3ull, 5ull}) {
        for (unsigned f = 1; f <= 2; ++f) {
            Int ca = count_points(a, p, f), cb = count_points(b, p, f);
            CHECK(count_points(cs_product(a, b), p, f) == ca * cb);
            CHECK(count_points(cs_disjoint_union(a, b), p, f) == ca + cb);
            CHECK(count_points(cs_difference(a, b), p, f) == ca - cb);
        }
    }
}

TEST_CASE("inclusion-exclusion: affine minus hyperplane equals the ineq system") {
    // {x1 != 0} in A^2  ==  A^2 - {x1 = 0}
    AffineSystem hyp;
    hyp.nvars = 2;
    hyp.equations.push_back(IntPoly::variable(2, 0));
    ConstructibleSet hyperplane = cs_from_system(std::move(hyp));

    AffineSystem ineq;
    ineq.nvars = 2;
    ineq.inequations.push_back(IntPoly::variable(2, 0));
    ConstructibleSet direct = cs_from_system(std::move(ineq));

    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull}) {
        for (unsigned f = 1; f <= 2; ++f) {
            Int lhs = count_points(cs_affine(2), p, f) - count_points(hyperplane, p, f);
            CHECK(lhs == count_points(direct, p, f));
        }
    }
}

TEST_CASE("degenerate systems normalize") {
    // equation 0 = 0 is dropped
    AffineSystem s1;
    s1.nvars = 1;
    s1.equations.push_back(IntPoly(1));  // zero polynomial
    CHECK(count_points(cs_from_system(std::move(s1)), 5, 1) == 5);

    // equation 1 = 0 empties the piece
    AffineSystem s2;
    s2.nvars = 1;
    s2.equations.push_back(IntPoly::constant(1, Int(1)));
    ConstructibleSet empty = cs_from_system(std::move(s2));
    CHECK(empty.pieces.empty());
    CHECK(count_points(empty, 5, 1) == 0);
}

TEST_CASE("budget enforcement charges actual enumeration work") {
    CountOptions opts;
    opts.budget = 100;
    try {
        count_points(circle(), 11, 1, opts);  // 121 points to scan > 100
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrKind::BudgetExceeded);
    }
    CHECK(count_points(circle(), 7, 1, opts) == 8);
    // unconstrained and separable pieces cost far less than q^n
    CHECK(count_points(cs_affine(2), 101, 1, opts) == 101 * 101);
    CHECK(count_points(cs_torus(2), 31, 1, opts) == 30 * 30);
}

TEST_CASE("strict mode rejects negative totals") {
    ConstructibleSet neg = cs_difference(cs_point(), cs_affine(1));
    CHECK(count_points(neg, 5, 1) == -4);
    CountOptions strict;
    strict.strict = true;
    try {
        count_points(neg, 5, 1, strict);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrKind::NegativeCount);
    }
}

TEST_CASE("determinism") {
    ConstructibleSet c = circle();
    CHECK(count_points(c, 13, 2) == count_points(c, 13, 2));
}

TEST_CASE("feasible_depth respects the budget") {
    ConstructibleSet c = circle();  // not separable: cost q^2
    CHECK(feasible_depth(c, 13, 8, 100'000'000) == 3);   // 13^6 ok, 13^8 too big
    CHECK(feasible_depth(c, 5, 8, 100'000'000) == 5);    // 5^10 ok, 5^12 too big
    CHECK(feasible_depth(cs_torus(1), 13, 8, 100'000'000) == 7);  // separable: cost q, 13^8 over
    CHECK(feasible_depth(c, 2, 3, 1) == 0);
}

TEST_CASE("awkward primes from leading coefficients") {
    AffineSystem sys;
    sys.nvars = 1;
    IntPoly x = IntPoly::variable(1, 0);
    sys.equations.push_back(IntPoly::constant(1, Int(6)) * x - IntPoly::constant(1, Int(1)));
    auto bad = awkward_primes(cs_from_system(std::move(sys)));
    CHECK(bad == std::vector<std::uint64_t>{2, 3});
}
