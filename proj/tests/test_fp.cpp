#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "spectra/error.hpp"
#include "spectra/fp.hpp"
#include "test_util.hpp"

using namespace spectra;

TEST_CASE("factor_mod_p spec examples") {
    // x^2+1 mod 5 splits with roots 2 and 3
    auto f = factor_mod_p(IntPoly{1, 0, 1}, 5);
    REQUIRE(f.size() == 2);
    CHECK(f[0].first == FpPoly(5, {2, 1}));  // x + 2 = x - 3
    CHECK(f[1].first == FpPoly(5, {3, 1}));  // x + 3 = x - 2
    CHECK(f[0].second == 1);

    // x^2+1 mod 3 irreducible
    auto g = factor_mod_p(IntPoly{1, 0, 1}, 3);
    REQUIRE(g.size() == 1);
    CHECK(g[0].first.degree() == 2);
    CHECK(g[0].second == 1);

    // x^2 mod 7 -> (x, 2)
    auto h = factor_mod_p(IntPoly{0, 0, 1}, 7);
    REQUIRE(h.size() == 1);
    CHECK(h[0].first == FpPoly(7, {0, 1}));
    CHECK(h[0].second == 2);

    CHECK_THROWS_AS(factor_mod_p(IntPoly{1, 7}, 7), invalid_input_error);
}

TEST_CASE("factor degree bookkeeping and determinism") {
    testutil::Rng rng(23);
    for (int iter = 0; iter < 60; ++iter) {
        IntPoly a = testutil::random_nonzero_poly(rng, 9, 50);
        for (std::uint64_t p : {3ull, 5ull, 13ull}) {
            mpz_class pz(static_cast<unsigned long>(p));
            if (mpz_divisible_p(a.lc().get_mpz_t(), pz.get_mpz_t())) continue;
            auto f1 = factor_mod_p(a, p);
            auto f2 = factor_mod_p(a, p);
            REQUIRE(f1.size() == f2.size());
            for (std::size_t i = 0; i < f1.size(); ++i) {
                CHECK(f1[i].first == f2[i].first);
                CHECK(f1[i].second == f2[i].second);
            }
            int degsum = 0;
            FpPoly prod = FpPoly::constant(p, 1);
            for (auto& [fac, m] : f1) {
                degsum += fac.degree() * m;
                for (int j = 0; j < m; ++j) prod = prod * fac;
            }
            FpPoly red = FpPoly::reduce(a, p);
            CHECK(degsum == red.degree());
            CHECK(prod.monic() == red.monic());
        }
    }
}

TEST_CASE("factor mod 2 exercises the trace splitter") {
    // x^2 + x + 1 is the only irreducible quadratic over F_2;
    // (x^2+x+1)(x+1)x has three distinct factors
    IntPoly a = IntPoly{1, 1, 1} * IntPoly{1, 1} * IntPoly{0, 1};
    auto f = factor_mod_p(a, 2);
    REQUIRE(f.size() == 3);
    CHECK(f[0].first == FpPoly(2, {0, 1}));
    CHECK(f[1].first == FpPoly(2, {1, 1}));
    CHECK(f[2].first == FpPoly(2, {1, 1, 1}));
}

TEST_CASE("canonical modulus is deterministic and irreducible") {
    FpPoly m52 = fpk_modulus(5, 2);
    CHECK(m52 == FpPoly(5, {1, 1, 1}));  // t^2+t+1: first with ascending (c0,c1)
    FpPoly m32 = fpk_modulus(3, 2);
    CHECK(m32.degree() == 2);
    CHECK(fpk_modulus(3, 2) == m32);  // cached and stable
    FpPoly m23 = fpk_modulus(2, 3);
    CHECK(m23.degree() == 3);
}

TEST_CASE("roots_in_fpk spec examples") {
    IntPoly a{1, 0, 1};  // x^2 + 1
    auto r5 = roots_in_fpk(a, 5, 1);
    REQUIRE(r5.size() == 2);
    CHECK(r5[0].repr == std::vector<std::uint64_t>{2});
    CHECK(r5[1].repr == std::vector<std::uint64_t>{3});

    CHECK(roots_in_fpk(a, 3, 1).empty());

    auto r9 = roots_in_fpk(a, 3, 2);
    REQUIRE(r9.size() == 2);
    for (const auto& root : r9) {
        FpkElem val = fpk_eval(a, root);
        CHECK(val.is_zero());
        CHECK_FALSE(root.in_prime_field());
    }
}

TEST_CASE("roots with multiplicity") {
    // (x-2)^2 (x-3) mod 7
    IntPoly a = IntPoly{-2, 1} * IntPoly{-2, 1} * IntPoly{-3, 1};
    auto r = roots_in_fpk(a, 7, 1);
    REQUIRE(r.size() == 3);
    CHECK(r[0].repr[0] == 2);
    CHECK(r[1].repr[0] == 2);
    CHECK(r[2].repr[0] == 3);
}

TEST_CASE("field arithmetic in F_9") {
    FpkElem one = fpk_from_base(3, 2, 1);
    auto roots = roots_in_fpk(IntPoly{1, 0, 1}, 3, 2);
    REQUIRE(roots.size() == 2);
    FpkElem i = roots[0];
    CHECK(fpk_mul(i, i) == fpk_sub(fpk_from_base(3, 2, 0), one));  // i^2 = -1
    CHECK(fpk_mul(i, fpk_inv(i)) == one);
}
