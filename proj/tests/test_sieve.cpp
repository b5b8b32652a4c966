#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "spectra/error.hpp"
#include "spectra/rog.hpp"
#include "spectra/intfactor.hpp"
#include "spectra/sieve.hpp"
#include "test_util.hpp"
#include <set>

using namespace spectra;

TEST_CASE("reduce_map") {
    RationalMap f = make_map({1, 0, 1}, {1});
    FpRatMap fbar = reduce_map(f, 5);
    CHECK(fbar.num == FpPoly(5, {1, 0, 1}));
    CHECK(fbar.den == FpPoly(5, {1}));

    RationalMap cheb = make_map({-2, 0, 1}, {1});
    FpRatMap cb = reduce_map(cheb, 7);
    CHECK(cb.num == FpPoly(7, {5, 0, 1}));

    RationalMap fl = make_map({1, 0, 2, 0, 1}, {0, -4, 0, 4});
    CHECK_THROWS_WITH_AS(reduce_map(fl, 2), "bad reduction: degree drop mod 2", invalid_input_error);
}

TEST_CASE("orbit_mod_p spec examples") {
    RationalMap f = make_map({1, 0, 1}, {1});
    FpRatMap f5 = reduce_map(f, 5);
    FpProjPoint zero{false, fpk_from_base(5, 1, 0)};
    auto [t5, c5] = orbit_mod_p(zero, f5, 1);
    CHECK(t5 == 0);
    CHECK(c5 == 3);  // 0 -> 1 -> 2 -> 0

    FpRatMap f3 = reduce_map(f, 3);
    FpProjPoint zero3{false, fpk_from_base(3, 1, 0)};
    auto [t3, c3] = orbit_mod_p(zero3, f3, 1);
    CHECK(t3 == 2);
    CHECK(c3 == 1);  // 0 -> 1 -> 2 -> 2

    // fixed start
    FpProjPoint inf{true, {}};
    auto [ti, ci] = orbit_mod_p(inf, f5, 1);
    CHECK(ti == 0);
    CHECK(ci == 1);
}

TEST_CASE("critical_points_mod_p") {
    RationalMap f = make_map({1, 0, 1}, {1});
    auto pts = critical_points_mod_p(f, 7, 2);
    // {0, infinity}
    bool has_zero = false, has_inf = false;
    for (const auto& cr : pts) {
        if (cr.point.infinite) has_inf = true;
        if (!cr.point.infinite && cr.point.value.is_zero()) has_zero = true;
    }
    CHECK(has_zero);
    CHECK(has_inf);

    // z + 1/z at p=5: reductions of +-1
    RationalMap g = make_map({1, 0, 1}, {0, 1});
    auto pg = critical_points_mod_p(g, 5, 1);
    std::set<std::uint64_t> vals;
    for (const auto& cr : pg)
        if (!cr.point.infinite) vals.insert(cr.point.value.repr[0]);
    CHECK(vals == std::set<std::uint64_t>{1, 4});

    // a quadratic critical class irreducible mod p appears at k=2 only
    RationalMap h = make_map({1, 1, 1}, {-1, 1});
    auto classes = critical_classes(h);
    int quad_id = -1;
    for (int i = 0; i < static_cast<int>(classes.size()); ++i)
        if (!classes[static_cast<std::size_t>(i)].at_infinity && classes[static_cast<std::size_t>(i)].degree() == 2) quad_id = i;
    REQUIRE(quad_id >= 0);
    // find a prime where that minpoly stays irreducible
    const IntPoly& mp = classes[static_cast<std::size_t>(quad_id)].minpoly;
    std::uint64_t p_irr = 0;
    for (std::uint64_t p : {3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull}) {
        if (!good_reduction(h, p)) continue;
        auto fac = factor_mod_p(mp, p);
        if (fac.size() == 1 && fac[0].first.degree() == 2) {
            p_irr = p;
            break;
        }
    }
    REQUIRE(p_irr != 0);
    auto only_k1 = critical_points_mod_p(h, p_irr, 1);
    for (const auto& cr : only_k1) CHECK(cr.crit_id != quad_id);
    auto with_k2 = critical_points_mod_p(h, p_irr, 2);
    bool found_quad = false;
    for (const auto& cr : with_k2)
        if (cr.crit_id == quad_id) {
            found_quad = true;
            CHECK(cr.k == 2);
        }
    CHECK(found_quad);
}

TEST_CASE("sieve z^2+1 in [2, 100]") {
    RationalMap f = make_map({1, 0, 1}, {1});
    SieveReport rep = sieve(f, 2, 100, 2);
    // derived by the orbit oracle: tail-0 primes are 2, 5, 13, 41
    std::vector<std::uint64_t> hit_primes;
    for (const auto& h : rep.hits) hit_primes.push_back(h.p);
    CHECK(hit_primes == std::vector<std::uint64_t>{2, 5, 13, 41});
    CHECK(rep.hits[1].p == 5);
    CHECK(rep.hits[1].cycle_len == 3);
    CHECK(rep.hits[0].cycle_len == 2);
    CHECK(rep.hits[2].cycle_len == 4);
    CHECK(rep.hits[3].cycle_len == 7);
    for (const auto& h : rep.hits) CHECK(h.tail == 0);
}

TEST_CASE("sieve refuses PCF maps") {
    CHECK_THROWS_WITH_AS(sieve(make_map({0, 0, 1}, {1}), 2, 50, 2),
                         "no non-preperiodic critical point", invalid_input_error);
    CHECK_THROWS_WITH_AS(sieve(make_map({-2, 0, 1}, {1}), 2, 50, 2),
                         "no non-preperiodic critical point", invalid_input_error);
}

TEST_CASE("sieve determinism under range splitting and jobs") {
    RationalMap f = make_map({1, 0, 1}, {1});
    SieveReport whole = sieve(f, 2, 60, 2);
    SieveReport left = sieve(f, 2, 30, 2);
    SieveReport right = sieve(f, 31, 60, 2);
    std::vector<PrimeHit> merged = left.hits;
    merged.insert(merged.end(), right.hits.begin(), right.hits.end());
    REQUIRE(merged.size() == whole.hits.size());
    for (std::size_t i = 0; i < merged.size(); ++i) {
        CHECK(merged[i].p == whole.hits[i].p);
        CHECK(merged[i].crit_id == whole.hits[i].crit_id);
        CHECK(merged[i].cycle_len == whole.hits[i].cycle_len);
    }
    SieveReport parallel = sieve(f, 2, 60, 2, 4);
    REQUIRE(parallel.hits.size() == whole.hits.size());
    for (std::size_t i = 0; i < parallel.hits.size(); ++i) {
        CHECK(parallel.hits[i].p == whole.hits[i].p);
        CHECK(parallel.hits[i].cycle_len == whole.hits[i].cycle_len);
    }
    for (const auto& [id, c] : whole.miss_counts) CHECK(parallel.miss_counts.at(id) == c);
}

TEST_CASE("attach_class realizes the Hensel equivalence") {
    RationalMap f = make_map({1, 0, 1}, {1});
    SieveReport rep = sieve(f, 2, 100, 2);
    for (const auto& hit : rep.hits) {
        AlgebraicClass c = attach_class(f, hit, 7);
        ClassVector cv = norm_vector(c);
        CHECK(cv.vector.phi(mpz_class(static_cast<unsigned long>(hit.p))) > 0);
        CHECK(c.period == hit.cycle_len);
    }
    // the p = 5 / cycle 3 hit attaches the 320-norm class
    AlgebraicClass c5 = attach_class(f, rep.hits[1], 6);
    CHECK(c5.minpoly == IntPoly{320, -24, 1});

    // period budget
    CHECK_THROWS_AS(attach_class(f, rep.hits[3], 6), budget_error);
}

TEST_CASE("good-reduction primes away from hits give nonnegative valuations") {
    RationalMap f = make_map({1, 0, 1}, {1});
    for (int n = 1; n <= 4; ++n) {
        for (const auto& c : galois_classes(f, n, true)) {
            if (c.is_zero_class()) continue;
            ClassVector cv = norm_vector(c);
            for (std::uint64_t p : primes_in_range(2, 50)) {
                if (!good_reduction(f, p)) continue;
                CHECK(cv.vector.phi(mpz_class(static_cast<unsigned long>(p))) >= 0);
            }
        }
    }
}
