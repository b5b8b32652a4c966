#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "spectra/error.hpp"
#include "spectra/rog.hpp"
#include "test_util.hpp"

using namespace spectra;

namespace {
RogVector rv(std::map<mpz_class, mpq_class> m) { return RogVector(std::move(m)); }
}

TEST_CASE("rog_of_rational spec examples") {
    CHECK(rog_of_rational(mpq_class(8)) == rv({{2, 3}}));
    CHECK(rog_of_rational(mpq_class(-4, 9)) == rv({{2, 2}, {3, -2}}));
    CHECK(rog_of_rational(mpq_class(1)).empty());
    CHECK(rog_of_rational(mpq_class(-1)).empty());
    CHECK_THROWS_AS(rog_of_rational(mpq_class(0)), invalid_input_error);
}

TEST_CASE("rog is a homomorphism") {
    testutil::Rng rng(41);
    for (int iter = 0; iter < 500; ++iter) {
        mpq_class a(rng.range(-300, 300), rng.range(1, 60));
        mpq_class b(rng.range(-300, 300), rng.range(1, 60));
        a.canonicalize();
        b.canonicalize();
        if (a == 0 || b == 0) continue;
        CHECK(rog_of_rational(a * b) == rog_of_rational(a) + rog_of_rational(b));
    }
}

TEST_CASE("product formula bridge") {
    testutil::Rng rng(43);
    for (int iter = 0; iter < 60; ++iter) {
        mpq_class x(rng.range(-4000, 4000), rng.range(1, 500));
        x.canonicalize();
        if (x == 0) continue;
        double lhs = 0;
        for (const auto& [p, e] : rog_of_rational(x).entries())
            lhs += e.get_d() * std::log(p.get_d());
        double rhs = std::log(std::abs(x.get_d()));
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
}

TEST_CASE("norm_vector spec examples") {
    AlgebraicClass quad{IntPoly{4, -2, 1}, 1, 1, true};
    ClassVector cv = norm_vector(quad);
    CHECK(cv.norm == 4);
    CHECK(cv.vector == rv({{2, 1}}));

    AlgebraicClass lin{IntPoly{-8, 1}, 2, 2, true};
    ClassVector cl = norm_vector(lin);
    CHECK(cl.norm == 8);
    CHECK(cl.vector == rv({{2, 3}}));

    AlgebraicClass zero{IntPoly{0, 1}, 1, 1, true};
    CHECK_THROWS_AS(norm_vector(zero), invalid_input_error);

    // period-3 class of z^2+1: N = 320 = 2^6 * 5, degree 2
    AlgebraicClass p3{IntPoly{320, -24, 1}, 3, 3, true};
    ClassVector c3 = norm_vector(p3);
    CHECK(c3.vector == rv({{2, 3}, {5, mpq_class(1, 2)}}));
}

TEST_CASE("phi_p lookups") {
    RogVector v = rv({{2, 3}});
    CHECK(v.phi(2) == 3);
    CHECK(v.phi(5) == 0);
    // sparsity: only finitely many nonzero coordinates
    CHECK(v.entries().size() == 1);
}

TEST_CASE("rank") {
    CHECK(rank({}) == 0);
    CHECK(rank({rv({{2, 1}}), rv({{2, 3}})}) == 1);
    CHECK(rank({rv({{2, 1}}), rv({{2, 3}}), rv({{2, 3}, {5, mpq_class(1, 2)}})}) == 2);

    // scaling invariance and fold invariance
    testutil::Rng rng(7);
    std::vector<RogVector> vs = {rv({{2, 1}, {3, -2}}), rv({{3, 1}, {5, 2}}), rv({{2, 2}, {3, -4}})};
    int r0 = rank(vs);
    std::vector<RogVector> scaled = vs;
    scaled[1] = scaled[1].scale(mpq_class(7, 3));
    CHECK(rank(scaled) == r0);
    std::vector<RogVector> folded = vs;
    folded[0] = fold_involution(vs[0], vs[0]);
    CHECK(rank(folded) == r0);
    CHECK(r0 == 2);  // third = 2 * first

    // rank bounded by min(#vectors, #primes)
    CHECK(rank({rv({{2, 1}}), rv({{2, 2}}), rv({{2, 5}})}) <= 1);
}

TEST_CASE("fold_involution") {
    RogVector v = rv({{2, 1}});
    CHECK(fold_involution(v, v) == v);
    CHECK(fold_involution(rv({{2, 1}}), rv({{2, 3}})) == rv({{2, 2}}));
    CHECK(fold_involution(v, RogVector()) == rv({{2, mpq_class(1, 2)}}));
}

TEST_CASE("verify_upper_triangle") {
    AlgebraicClass lin{IntPoly{-2, 1}, 1, 1, true};
    TriangleCertificate c1;
    c1.rows.push_back(TriangleRow{norm_vector(lin), mpz_class(2)});
    CHECK_FALSE(verify_upper_triangle(&c1).has_value());
    CHECK(c1.verified);
    CHECK(c1.achieved_dim == 1);

    // z^2+1-style data: rows ({2:3}, p=2), ({2:3, 5:1/2}, p=5)
    AlgebraicClass a2{IntPoly{-8, 1}, 2, 2, true};
    AlgebraicClass a3{IntPoly{320, -24, 1}, 3, 3, true};
    TriangleCertificate c2;
    c2.rows.push_back(TriangleRow{norm_vector(a2), mpz_class(2)});
    c2.rows.push_back(TriangleRow{norm_vector(a3), mpz_class(5)});
    CHECK_FALSE(verify_upper_triangle(&c2).has_value());
    CHECK(c2.verified);
    CHECK(c2.phi_matrix[0][0] == 3);
    CHECK(c2.phi_matrix[0][1] == 0);
    CHECK(c2.phi_matrix[1][1] == mpq_class(1, 2));

    // swapped order violates the triangle: phi_5 of the first row nonzero
    TriangleCertificate c3;
    c3.rows.push_back(TriangleRow{norm_vector(a3), mpz_class(2)});
    c3.rows.push_back(TriangleRow{norm_vector(a2), mpz_class(5)});
    auto viol = verify_upper_triangle(&c3);
    REQUIRE(viol.has_value());
    CHECK(viol->i == 0);
    CHECK(viol->j == 1);
    CHECK_FALSE(c3.verified);

    // negative entry rejected with witness
    AlgebraicClass neg{IntPoly{1, 2}, 1, 1, true};  // norm -1/2: phi_2 = -1
    TriangleCertificate c4;
    c4.rows.push_back(TriangleRow{norm_vector(lin), mpz_class(2)});
    c4.rows.push_back(TriangleRow{norm_vector(neg), mpz_class(3)});
    auto v4 = verify_upper_triangle(&c4);
    REQUIRE(v4.has_value());
    CHECK(v4->reason == "negative entry (O-membership fails)");
}

TEST_CASE("independence certificate for z^2+1") {
    RationalMap f = make_map({1, 0, 1}, {1});
    TriangleCertificate cert = independence_certificate(f, 2, 100, 4);
    CHECK(cert.verified);
    CHECK(cert.achieved_dim == 2);
    CHECK_FALSE(cert.budget_exhausted);
    REQUIRE(cert.rows.size() == 2);
    CHECK(cert.rows[0].prime == 2);
    CHECK(cert.rows[1].prime == 5);
    CHECK(cert.rows[0].cv.cls.minpoly == IntPoly{-8, 1});
    CHECK(cert.rows[1].cv.cls.minpoly == IntPoly{320, -24, 1});

    std::vector<RogVector> vs{cert.rows[0].cv.vector, cert.rows[1].cv.vector};
    CHECK(rank(vs) == 2);
}

TEST_CASE("certificate for z^2 saturates at dimension 1") {
    RationalMap f = make_map({0, 0, 1}, {1});
    TriangleCertificate cert = independence_certificate(f, 2, 100, 4);
    CHECK(cert.budget_exhausted);
    CHECK(cert.achieved_dim == 1);
    CHECK(cert.verified);  // the partial certificate itself is valid
    REQUIRE(cert.rows.size() == 1);
    CHECK(cert.rows[0].prime == 2);
}

TEST_CASE("k = 1 succeeds immediately on a PCF non-superattracting fixture") {
    RationalMap f = make_map({-1, 0, 1}, {1});  // z^2 - 1 (PCF, no sieve)
    TriangleCertificate cert = independence_certificate(f, 1, 100, 3);
    CHECK(cert.verified);
    CHECK(cert.achieved_dim == 1);
    CHECK_FALSE(cert.budget_exhausted);
    CHECK(cert.rows[0].cv.cls.minpoly == IntPoly{-4, -2, 1});  // fixed repelling class
}

TEST_CASE("certificate dimension is conjugation invariant") {
    RationalMap f = make_map({1, 0, 1}, {1});
    for (Mobius m : {Mobius(1, 1, 0, 1), Mobius(1, -2, 0, 1)}) {
        RationalMap g = conjugate(f, m);
        TriangleCertificate cert = independence_certificate(g, 2, 100, 4);
        CHECK(cert.achieved_dim == 2);
    }
}
