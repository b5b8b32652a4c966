#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "spectra/error.hpp"
#include "spectra/factor_zz.hpp"
#include "spectra/intfactor.hpp"
#include "test_util.hpp"

using namespace spectra;

TEST_CASE("factor_over_Z spec examples") {
    // x^2 - 1 = (x-1)(x+1)
    auto f = factor_over_Z(IntPoly{-1, 0, 1});
    REQUIRE(f.factors.size() == 2);
    CHECK(f.factors[0].first == IntPoly{-1, 1});
    CHECK(f.factors[1].first == IntPoly{1, 1});
    CHECK(f.unit == 1);
    CHECK(f.content == 1);

    // x^4 + 4 = (x^2-2x+2)(x^2+2x+2), Sophie Germain
    auto g = factor_over_Z(IntPoly{4, 0, 0, 0, 1});
    REQUIRE(g.factors.size() == 2);
    CHECK(g.factors[0].first == IntPoly{2, -2, 1});
    CHECK(g.factors[1].first == IntPoly{2, 2, 1});

    // lambda^2 - 2 lambda + 4 irreducible (discriminant -12)
    CHECK(is_irreducible_over_Z(IntPoly{4, -2, 1}));
}

TEST_CASE("factor_over_Z round-trip on random products of irreducibles") {
    testutil::Rng rng(99);
    int done = 0;
    while (done < 1000) {
        // build a product of small irreducibles with a scalar
        IntPoly prod = IntPoly::constant(rng.range(-4, 4));
        if (prod.is_zero()) continue;
        int nf = static_cast<int>(1 + rng.next() % 3);
        for (int i = 0; i < nf; ++i) {
            IntPoly f = testutil::random_nonzero_poly(rng, 3, 5);
            if (f.degree() < 1) f = f * IntPoly{1, 1};
            prod = prod * f;
        }
        if (prod.degree() > 10) continue;
        auto fac = factor_over_Z(prod);
        CHECK(fac.expand() == prod);
        for (auto& [irr, m] : fac.factors) {
            CHECK(irr.is_primitive());
            CHECK(m >= 1);
        }
        ++done;
    }
}

TEST_CASE("factorization output ordering is deterministic") {
    IntPoly p = IntPoly{-1, 1} * IntPoly{1, 1} * IntPoly{1, 1} * IntPoly{1, 0, 1} * IntPoly::constant(-6);
    auto a = factor_over_Z(p);
    auto b = factor_over_Z(p);
    REQUIRE(a.factors.size() == b.factors.size());
    for (std::size_t i = 0; i < a.factors.size(); ++i) {
        CHECK(a.factors[i].first == b.factors[i].first);
        CHECK(a.factors[i].second == b.factors[i].second);
    }
    CHECK(a.unit == -1);
    CHECK(a.content == 6);
    // sorted by (degree, coefficients)
    for (std::size_t i = 1; i < a.factors.size(); ++i)
        CHECK(IntPoly::compare(a.factors[i - 1].first, a.factors[i].first) < 0);
    CHECK(a.expand() == p);
}

TEST_CASE("degree cap errors with budget exceeded") {
    FactorBudget tight;
    tight.max_degree = 3;
    CHECK_THROWS_AS(factor_over_Z(IntPoly{1, 0, 0, 0, 1}, tight), budget_error);
}

TEST_CASE("cyclotomic-style inputs with many modular factors") {
    // x^12 - 1 factors into cyclotomics of degree up to 4
    IntPoly p = IntPoly::monomial(1, 12) - IntPoly::constant(1);
    auto f = factor_over_Z(p);
    int degsum = 0;
    for (auto& [irr, m] : f.factors) degsum += irr.degree() * m;
    CHECK(degsum == 12);
    CHECK(f.expand() == p);
    REQUIRE(f.factors.size() == 6);  // Phi_1, Phi_2, Phi_3, Phi_4, Phi_6, Phi_12
}

TEST_CASE("integer factorization") {
    auto f = factor_integer(mpz_class(320));
    CHECK(f[mpz_class(2)] == 6);
    CHECK(f[mpz_class(5)] == 1);
    CHECK(f.size() == 2);

    auto g = factor_integer(mpz_class(-53248));
    CHECK(g[mpz_class(2)] == 12);
    CHECK(g[mpz_class(13)] == 1);

    // a product of two largish primes exercises the rho path
    mpz_class a("1000003");
    mpz_class b("10000019");
    auto h = factor_integer(a * b);
    CHECK(h[a] == 1);
    CHECK(h[b] == 1);

    CHECK(is_prime(mpz_class("1000003")));
    CHECK_FALSE(is_prime(mpz_class(1)));
    CHECK_THROWS_AS(factor_integer(mpz_class(0)), invalid_input_error);
}

TEST_CASE("primes_in_range and valuation") {
    auto pr = primes_in_range(10, 30);
    CHECK(pr == std::vector<std::uint64_t>{11, 13, 17, 19, 23, 29});
    CHECK(valuation(mpz_class(320), mpz_class(2)) == 6);
    CHECK(valuation(mpz_class(320), mpz_class(7)) == 0);
}
