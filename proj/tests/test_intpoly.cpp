#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "spectra/error.hpp"
#include "spectra/intpoly.hpp"
#include "test_util.hpp"

using spectra::IntPoly;
using spectra::RatPoly;

TEST_CASE("basic arithmetic and normalization") {
    IntPoly a{1, 0, 1};   // x^2 + 1
    IntPoly b{-1, 1};     // x - 1
    CHECK(a.degree() == 2);
    CHECK((a * b).degree() == 3);
    CHECK((a - a).is_zero());
    CHECK(IntPoly{0, 0, 0}.is_zero());
    CHECK((a * b).eval(mpz_class(3)) == 20);
    IntPoly c{2, 4, 6};
    CHECK(c.content() == 2);
    CHECK(c.primitive_part() == IntPoly{1, 2, 3});
    CHECK(IntPoly{-2, -4}.primitive_part() == IntPoly{1, 2});  // sign flips to positive lc
}

TEST_CASE("exact division") {
    IntPoly a{-1, 0, 1};  // (x-1)(x+1)
    IntPoly q;
    REQUIRE(IntPoly::divide_exact(a, IntPoly{-1, 1}, &q));
    CHECK(q == IntPoly{1, 1});
    CHECK_FALSE(IntPoly::divide_exact(a, IntPoly{1, 3}, &q));
}

TEST_CASE("gcd spec examples") {
    // gcd(x^2-1, x-1) = x-1
    CHECK(spectra::subresultant_gcd(IntPoly{-1, 0, 1}, IntPoly{-1, 1}) == IntPoly{-1, 1});
    // gcd(a, 0) = primitive part of a
    CHECK(spectra::subresultant_gcd(IntPoly{2, 4}, IntPoly::zero()) == IntPoly{1, 2});
    // gcd((x^2+1)(x^3-2), (x^2+1)(x+5)) = x^2+1, products expanded in-test
    IntPoly common{1, 0, 1};
    IntPoly lhs = common * IntPoly{-2, 0, 0, 1};
    IntPoly rhs = common * IntPoly{5, 1};
    CHECK(spectra::subresultant_gcd(lhs, rhs) == common);
}

TEST_CASE("gcd divides both inputs and absorbs common factors") {
    testutil::Rng rng(7);
    for (int iter = 0; iter < 200; ++iter) {
        IntPoly a = testutil::random_nonzero_poly(rng, 8, 10);
        IntPoly b = testutil::random_nonzero_poly(rng, 8, 10);
        IntPoly c = testutil::random_nonzero_poly(rng, 4, 10);
        IntPoly g = spectra::subresultant_gcd(a * c, b * c);
        IntPoly q;
        CHECK(IntPoly::divide_exact(a * c, g, &q));
        CHECK(IntPoly::divide_exact(b * c, g, &q));
        CHECK(IntPoly::divide_exact(g, c.primitive_part(), &q));
    }
}

TEST_CASE("resultant convention") {
    // Res(x-a, x-b) = b-a
    CHECK(spectra::resultant(IntPoly{-2, 1}, IntPoly{-3, 1}) == 1);
    CHECK(spectra::resultant(IntPoly{-3, 1}, IntPoly{-2, 1}) == -1);
    // Res(x^2+1, x-1) = value of x^2+1 at 1
    CHECK(spectra::resultant(IntPoly{1, 0, 1}, IntPoly{-1, 1}) == 2);
    // Res(x^2-2, x^2-3) = prod (3 - alpha^2) over alpha^2 = 2 ... = 1
    CHECK(spectra::resultant(IntPoly{-2, 0, 1}, IntPoly{-3, 0, 1}) == 1);
    CHECK_THROWS_AS(spectra::resultant(IntPoly::zero(), IntPoly{1, 1}), spectra::invalid_input_error);
}

TEST_CASE("resultant swap sign and multiplicativity") {
    testutil::Rng rng(11);
    for (int iter = 0; iter < 100; ++iter) {
        IntPoly a = testutil::random_nonzero_poly(rng, 5, 6);
        IntPoly b = testutil::random_nonzero_poly(rng, 5, 6);
        IntPoly c = testutil::random_nonzero_poly(rng, 4, 6);
        mpz_class rab = spectra::resultant(a, b);
        mpz_class rba = spectra::resultant(b, a);
        mpz_class sign = (a.degree() * b.degree()) % 2 == 0 ? 1 : -1;
        CHECK(rab == sign * rba);
        CHECK(spectra::resultant(a, b * c) == rab * spectra::resultant(a, c));
    }
}

TEST_CASE("squarefree decomposition") {
    // (x-1)^2 (x+2)
    IntPoly p = IntPoly{-1, 1} * IntPoly{-1, 1} * IntPoly{2, 1};
    auto d = spectra::squarefree_decomposition(p);
    REQUIRE(d.parts.size() == 2);
    CHECK(d.parts[0] == std::pair<IntPoly, int>{IntPoly{2, 1}, 1});
    CHECK(d.parts[1] == std::pair<IntPoly, int>{IntPoly{-1, 1}, 2});

    // squarefree input stays one part
    auto d2 = spectra::squarefree_decomposition(IntPoly{-2, 0, 0, 1});
    REQUIRE(d2.parts.size() == 1);
    CHECK(d2.parts[0].second == 1);

    // x^4 - 2x^2 + 1 = (x^2-1)^2
    auto d3 = spectra::squarefree_decomposition(IntPoly{1, 0, -2, 0, 1});
    REQUIRE(d3.parts.size() == 1);
    CHECK(d3.parts[0] == std::pair<IntPoly, int>{IntPoly{-1, 0, 1}, 2});

    // reconstruction is exact, including content and sign
    testutil::Rng rng(3);
    for (int iter = 0; iter < 100; ++iter) {
        IntPoly a = testutil::random_nonzero_poly(rng, 6, 8);
        auto dec = spectra::squarefree_decomposition(a);
        IntPoly prod = IntPoly::constant(dec.content);
        for (auto& [part, e] : dec.parts)
            for (int i = 0; i < e; ++i) prod = prod * part;
        CHECK(prod == a);
    }
}

TEST_CASE("rational polynomial division oracle") {
    // used as the independent long-division oracle by the dynatomic tests
    RatPoly a = RatPoly::from_int(IntPoly{2, -1, 0, 1});
    RatPoly b = RatPoly::from_int(IntPoly{1, 1});
    RatPoly q, r;
    RatPoly::divmod(a, b, &q, &r);
    CHECK((q * b + r) == a);
    CHECK(r.degree() < b.degree());
}

TEST_CASE("primitive conversion") {
    RatPoly p(std::vector<mpq_class>{mpq_class(1, 2), mpq_class(3, 4)});
    auto [prim, scale] = p.to_primitive();
    CHECK(prim == IntPoly{2, 3});
    CHECK(scale == mpq_class(1, 4));
}
