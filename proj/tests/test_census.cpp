#include <catch_amalgamated.hpp>

#include "tightset/oct_census.hpp"

using namespace tightset;

TEST_CASE("pair-sum counts match the closed formula for all targets", "[census]") {
    for (auto [p, f] : {std::pair{2, 1}, {3, 1}, {2, 2}, {5, 1}}) {
        Field F(p, f);
        for (int k = 1; k <= 4; ++k) {
            if (ipow(F.q(), 2 * k) > 100000000) continue;
            for (int a = 0; a < F.q(); ++a) {
                CountCheck c = census_pair_sums(F, k, F.elem(a));
                INFO("q=" << F.q() << " k=" << k << " a=" << a);
                CHECK(c.enumerated == c.expected);
            }
        }
    }
    SECTION("frozen values at q = 2") {
        Field F(2, 1);
        CHECK(census_pair_sums(F, 4, F.zero()).enumerated == 136);
        CHECK(census_pair_sums(F, 4, F.one()).enumerated == 120);
        CHECK(census_pair_sums(F, 3, F.zero()).enumerated == 36);
    }
}

TEST_CASE("norm fibers, full and l8-constrained", "[census]") {
    for (auto [p, f] : {std::pair{2, 1}, {3, 1}, {2, 2}, {5, 1}}) {
        Field F(p, f);
        for (int a = 0; a < F.q(); ++a) {
            NormFiberCheck c = census_norm_fiber(F, F.elem(a));
            INFO("q=" << F.q() << " a=" << a);
            CHECK(c.full.enumerated == c.full.expected);
            CHECK(c.constrained.enumerated == c.constrained.expected);
        }
    }
    SECTION("frozen values") {
        Field F2(2, 1);
        CHECK(census_norm_fiber(F2, F2.zero()).full.enumerated == 136);
        CHECK(census_norm_fiber(F2, F2.one()).full.enumerated == 120);
        CHECK(census_norm_fiber(F2, F2.zero()).constrained.enumerated == 72);
        Field F3(3, 1);
        CHECK(census_norm_fiber(F3, F3.zero()).full.enumerated == 2241);
        CHECK(census_norm_fiber(F3, F3.elem(2)).full.enumerated == 2160);
        CHECK(census_norm_fiber(F3, F3.zero()).constrained.enumerated == 783);
    }
}

TEST_CASE("zero-product pairs with the hyperplane constraint", "[census]") {
    Field F2(2, 1);
    CountCheck c2 = census_zero_product_pairs(F2);
    CHECK(c2.enumerated == c2.expected);
    CHECK(c2.enumerated == 71 * 15);
    Field F3(3, 1);
    CountCheck c3 = census_zero_product_pairs(F3);
    CHECK(c3.enumerated == c3.expected);
    CHECK(c3.enumerated == 782 * 80);
    Field F4(2, 2);
    CHECK_THROWS_AS(census_zero_product_pairs(F4), config_error);
}

TEST_CASE("orbit fibers partition the algebra with the three predicted sizes",
          "[census]") {
    for (auto [p, f] : {std::pair{3, 1}, {2, 2}, {5, 1}}) {
        Field F(p, f);
        auto fibers = census_orbit_fibers(F);
        REQUIRE(static_cast<int>(fibers.size()) == F.q() * F.q());
        long long total = 0;
        for (const auto& fb : fibers) {
            INFO("q=" << F.q() << " trace=" << fb.trace.v << " norm=" << fb.norm.v);
            CHECK(fb.size == fb.expected);
            total += fb.size;
        }
        CHECK(total == ipow(F.q(), 8));
    }
    SECTION("frozen values at q = 3") {
        Field F(3, 1);
        auto fibers = census_orbit_fibers(F);
        auto at = [&](int t, int n) { return fibers[static_cast<std::size_t>(t) * 3 + n].size; };
        CHECK(at(2, 1) == 729);        // trace 2k with k=1, norm k^2
        CHECK(at(0, 2) == 756);        // k=0, k^2-n = 1, a square
        CHECK(at(0, 1) == 702);        // k=0, k^2-n = 2, a nonsquare
    }
    SECTION("q = 2 is rejected") {
        Field F(2, 1);
        CHECK_THROWS_AS(census_orbit_fibers(F), config_error);
    }
}

TEST_CASE("annihilator census is exhaustive and structurally clean", "[census]") {
    for (auto [p, f] : {std::pair{2, 1}, {3, 1}}) {
        Field F(p, f);
        AnnihilatorCheck c = census_annihilators(F);
        INFO("q=" << F.q());
        CHECK(c.violations == 0);
        CHECK(c.singular_nonzero == c.expected_singular_nonzero);
        CHECK(c.zero_product_pairs == c.expected_zero_product_pairs);
    }
    Field F2(2, 1);
    AnnihilatorCheck c = census_annihilators(F2);
    CHECK(c.singular_nonzero == 135);
    CHECK(c.zero_product_pairs == 135 * 15);
}
