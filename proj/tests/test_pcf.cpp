#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "spectra/error.hpp"
#include "spectra/pcf.hpp"
#include "test_util.hpp"

using namespace spectra;

TEST_CASE("critical classes") {
    RationalMap f = make_map({1, 0, 1}, {1});
    auto cs = critical_classes(f);
    REQUIRE(cs.size() == 2);
    CHECK(cs[0].minpoly == IntPoly{0, 1});
    CHECK(cs[1].at_infinity);

    // z + 1/z: critical points +-1
    RationalMap g = make_map({1, 0, 1}, {0, 1});
    auto cg = critical_classes(g);
    REQUIRE(cg.size() == 2);
    CHECK(cg[0].minpoly == IntPoly{-1, 1});
    CHECK(cg[1].minpoly == IntPoly{1, 1});

    // z^2 + z + 1 over z - 1 has an irrational critical pair
    RationalMap h = make_map({1, 1, 1}, {-1, 1});
    auto ch = critical_classes(h);
    bool has_quadratic = false;
    for (const auto& c : ch)
        if (!c.at_infinity && c.minpoly.degree() == 2) has_quadratic = true;
    CHECK(has_quadratic);
}

TEST_CASE("critical orbits of the basilica close in two steps") {
    RationalMap f = make_map({-1, 0, 1}, {1});  // z^2 - 1
    auto orbits = critical_orbits(f);
    REQUIRE(orbits.size() == 2);
    // 0 -> -1 -> 0
    CHECK(orbits[0].status == OrbitStatus::Periodic);
    CHECK(orbits[0].tail == 0);
    CHECK(orbits[0].cycle_len == 2);
    CHECK(orbits[0].steps_explored == 2);
    REQUIRE(orbits[0].steps.size() >= 2);
    CHECK(orbits[0].steps[0] == "0");
    CHECK(orbits[0].steps[1] == "-1");
    // infinity fixed
    CHECK(orbits[1].status == OrbitStatus::Periodic);
    CHECK(orbits[1].cycle_len == 1);
}

TEST_CASE("chebyshev critical orbit is preperiodic") {
    RationalMap f = make_map({-2, 0, 1}, {1});  // 0 -> -2 -> 2 -> 2
    auto orbits = critical_orbits(f);
    CHECK(orbits[0].status == OrbitStatus::Preperiodic);
    CHECK(orbits[0].tail == 2);
    CHECK(orbits[0].cycle_len == 1);
}

TEST_CASE("open orbit of z^2+1 with height growth") {
    RationalMap f = make_map({1, 0, 1}, {1});
    auto orbits = critical_orbits(f);
    CHECK(orbits[0].status == OrbitStatus::Open);
    // 0 -> 1 -> 2 -> 5 -> 26 -> ...: doubling bit lengths
    REQUIRE(orbits[0].height_bits.size() >= 10);
    int grow = 0;
    for (std::size_t i = 3; i < orbits[0].height_bits.size(); ++i)
        if (orbits[0].height_bits[i] > orbits[0].height_bits[i - 1]) ++grow;
    CHECK(grow >= 10);
}

TEST_CASE("quadratic critical points iterate exactly") {
    // (z^2+z+1)/(z-1): critical classes include a quadratic; the orbit
    // exploration must run in Q(sqrt(D)) without throwing
    RationalMap h = make_map({1, 1, 1}, {-1, 1});
    auto orbits = critical_orbits(h, PcfBudgets{12, 2048, 2});
    bool saw_quadratic_exploration = false;
    for (const auto& rep : orbits) {
        if (rep.status == OrbitStatus::UnsupportedExactness) continue;
        if (rep.steps.size() >= 2 && rep.steps[0].find("sqrt") != std::string::npos)
            saw_quadratic_exploration = true;
    }
    CHECK(saw_quadratic_exploration);
}

TEST_CASE("rank growth golden values") {
    RationalMap f = make_map({1, 0, 1}, {1});
    RankGrowth rg = rank_growth(f, 3);
    CHECK(rg.dims == std::vector<int>{1, 1, 2});

    RationalMap sq = make_map({0, 0, 1}, {1});
    RankGrowth rs = rank_growth(sq, 6);
    CHECK(rs.dims == std::vector<int>{1, 1, 1, 1, 1, 1});

    RationalMap bas = make_map({-1, 0, 1}, {1});
    RankGrowth rb = rank_growth(bas, 5);
    for (int d : rb.dims) CHECK(d <= 1);

    // monotone on every input
    RationalMap cheb = make_map({-2, 0, 1}, {1});
    RankGrowth rc = rank_growth(cheb, 6);
    for (std::size_t i = 1; i < rc.dims.size(); ++i) CHECK(rc.dims[i] >= rc.dims[i - 1]);
    for (int d : rc.dims) CHECK(d == 1);
}

TEST_CASE("exceptional fixtures have power-of-two class norms") {
    for (RationalMap f : {make_map({0, 0, 1}, {1}), make_map({-2, 0, 1}, {1})}) {
        for (int n = 1; n <= 5; ++n) {
            for (const auto& c : galois_classes(f, n, true)) {
                if (c.is_zero_class()) continue;
                mpq_class norm = c.norm();
                CHECK(norm.get_den() == 1);
                mpz_class a = abs(norm.get_num());
                // a must be a power of two
                mpz_class low = a & -a;
                CHECK(a == low);
            }
        }
    }
}

TEST_CASE("classify verdicts") {
    ClassifyResult basilica = classify(make_map({-1, 0, 1}, {1}));
    CHECK(basilica.verdict == PcfVerdict::PCF);
    // certificate: replaying the recorded steps reproduces the collision
    for (const auto& rep : basilica.orbits) {
        CHECK((rep.status == OrbitStatus::Periodic || rep.status == OrbitStatus::Preperiodic));
    }

    ClassifyResult open_case = classify(make_map({1, 0, 1}, {1}));
    CHECK(open_case.verdict == PcfVerdict::LikelyNonPCF);
    CHECK(open_case.rank_dims == std::vector<int>{1, 1, 2});

    // tiny budgets starve the evidence: Unknown
    ClassifyResult unknown = classify(make_map({1, 0, 1}, {1}), PcfBudgets{5, 64, 2});
    CHECK(unknown.verdict == PcfVerdict::Unknown);

    // never both PCF and LikelyNonPCF evidence: PCF maps report no rank dims
    CHECK(basilica.rank_dims.empty());
}

TEST_CASE("pcf certificate replay") {
    RationalMap f = make_map({-1, 0, 1}, {1});
    auto orbits = critical_orbits(f);
    // replay the rational orbit exactly
    const auto& rep = orbits[0];
    mpq_class z(0);
    for (std::size_t i = 0; i + 1 < rep.steps.size(); ++i) {
        mpq_class next;
        REQUIRE(eval_map(f, z, &next));
        z = next;
    }
    // final step returns to the recorded cycle entry
    mpq_class back;
    REQUIRE(eval_map(f, z, &back));
    CHECK(back == mpq_class(rep.steps[rep.tail]));
}
