#include <doctest.h>

#include <cmath>

#include "xyphonon/multimode.hpp"

using namespace xyp;
using doctest::Approx;

TEST_CASE("effective coupling sums the mode couplings") {
    CHECK(Bath({{1.0, 0.5}}).effective_coupling() == 0.5);
    CHECK(effective_coupling(Bath({{1.0, 0.3}, {2.0, 0.4}})) == Approx(0.7).epsilon(1e-15));

    // lambda_n = g^2 / (J omega): {1, 0.5}
    const auto phys = Bath::from_physical({1.0, 1.0}, {1.0, 2.0}, 1.0);
    REQUIRE(phys.size() == 2);
    CHECK(phys.modes()[0].lambda == 1.0);
    CHECK(phys.modes()[1].lambda == 0.5);
    CHECK(phys.modes()[1].gamma == 2.0);
    CHECK(phys.effective_coupling() == 1.5);

    const auto scaled = Bath::from_physical({0.3}, {1.5}, 2.0);
    CHECK(scaled.modes()[0].lambda == Approx(0.09 / 3.0));
    CHECK(scaled.modes()[0].gamma == Approx(0.75));
}

TEST_CASE("bath validation") {
    CHECK_THROWS_AS(Bath({}), InvalidArgument);
    CHECK_THROWS_AS(Bath({{0.0, 0.1}}), InvalidArgument);
    CHECK_THROWS_AS(Bath({{1.0, -0.1}}), InvalidArgument);
    CHECK_THROWS_AS(Bath::from_physical({1.0}, {1.0, 2.0}, 1.0), InvalidArgument);
    CHECK_THROWS_AS(Bath::from_physical({1.0}, {0.0}, 1.0), InvalidArgument);
    CHECK_THROWS_AS(Bath::from_physical({1.0}, {1.0}, 0.0), InvalidArgument);
}

TEST_CASE("two equal modes above the transition") {
    const Bath bath({{1.0, 0.5}, {2.0, 0.5}});
    const auto r = multimode_ground_state(8, bath);
    CHECK(r.base.degeneracy == 2);
    CHECK(r.base.fillings == std::vector<int>{0, 8});
    CHECK(r.base.energy == ground_state({8, 1.0, 1.0, Boundary::Ring}).energy);
    REQUIRE(r.amplitudes.size() == 2);
    CHECK(r.amplitudes[0].filling == 0);
    CHECK(r.amplitudes[0].alpha[0] == Approx(-std::sqrt(0.5 / 8.0) * 8.0));
    CHECK(r.amplitudes[0].alpha[1] == Approx(-std::sqrt(0.5 / 16.0) * 8.0));
    CHECK(r.amplitudes[1].alpha[0] == Approx(std::sqrt(0.5 / 8.0) * 8.0));
    for (const auto& a : r.amplitudes)
        for (double x : a.alpha) CHECK(std::signbit(x) == std::signbit(a.alpha[0]));
}

TEST_CASE("below the transition every amplitude vanishes") {
    const Bath bath({{0.7, 0.2}, {1.3, 0.2}, {3.0, 0.1}});
    const auto r = multimode_ground_state(8, bath);
    CHECK(r.base.fillings == std::vector<int>{4});
    REQUIRE(r.amplitudes.size() == 1);
    for (double x : r.amplitudes[0].alpha) CHECK(x == 0.0);
}

TEST_CASE("a single mode reduces to the single-mode solution exactly") {
    for (double lambda : {0.1, 0.65, 0.6532814824381883, 1.7}) {
        const auto mm = multimode_ground_state(8, Bath({{1.0, lambda}}));
        CHECK(mm.base == ground_state({8, 1.0, lambda, Boundary::Ring}));
    }
}

TEST_CASE("partition invariance of the ground state") {
    const std::vector<std::vector<BathMode>> parts{
        {{1.0, 1.0}},
        {{1.0, 0.5}, {3.0, 0.5}},
        {{0.5, 0.1}, {1.0, 0.2}, {2.0, 0.3}, {4.0, 0.15}, {8.0, 0.25}},
    };
    for (int n : {4, 8, 10}) {
        const auto ref = multimode_ground_state(n, Bath(parts[0])).base;
        for (const auto& p : parts) {
            const auto r = multimode_ground_state(n, Bath(p)).base;
            CHECK(std::abs(r.energy - ref.energy) <= 1e-12);
            CHECK(r.fillings == ref.fillings);
            CHECK(r.degeneracy == ref.degeneracy);
        }
    }
}

TEST_CASE("transition sits at the single-mode critical coupling") {
    for (int n : {8, 16}) {
        const double lc = critical_coupling(n);
        // first Lambda on a fine scan where the half-filled state stops winning
        double found = -1.0;
        const int steps = 4000;
        for (int i = 0; i <= steps; ++i) {
            const double big = 2.0 * i / steps;
            const auto r = multimode_ground_state(n, Bath({{1.0, big / 3}, {2.0, 2 * big / 3}}));
            if (r.base.fillings.front() == 0) {
                found = big;
                break;
            }
        }
        CHECK(found >= lc);
        CHECK(found - lc <= 2.0 / steps);
    }
}

TEST_CASE("mode amplitudes follow -sqrt(lambda_n / (gamma_n N)) (N - 2m)") {
    const Bath bath({{0.5, 0.2}, {2.0, 0.8}});
    for (int m = 0; m <= 6; ++m) {
        const auto a = mode_amplitudes(6, bath, m);
        CHECK(a[0] == Approx(-std::sqrt(0.2 / 3.0) * (6 - 2 * m)));
        CHECK(a[1] == Approx(-std::sqrt(0.8 / 12.0) * (6 - 2 * m)));
    }
    CHECK_THROWS_AS(mode_amplitudes(6, bath, 7), InvalidArgument);
}
