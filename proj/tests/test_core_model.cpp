#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "xyphonon/core_model.hpp"

using namespace xyp;
using doctest::Approx;

namespace {
ChainSpec ring(int n, double lambda, double gamma = 1.0) { return {n, gamma, lambda, Boundary::Ring}; }
}  // namespace

TEST_CASE("dispersion: N=4 periodic and antiperiodic grids") {
    const auto odd = dispersion(4, Parity::Odd);
    REQUIRE(odd.size() == 4);
    // sorted: k=4 (-2), k=1 (0), k=3 (0), k=2 (+2); tie broken by ascending k
    CHECK(odd[0].twice_k == 8);
    CHECK(odd[0].eps == Approx(-2.0));
    CHECK(odd[1].twice_k == 2);
    CHECK(odd[2].twice_k == 6);
    CHECK(odd[1].eps == 0.0);
    CHECK(odd[2].eps == 0.0);
    CHECK(odd[3].twice_k == 4);
    CHECK(odd[3].eps == Approx(2.0));

    const auto even = dispersion(4, Parity::Even);
    CHECK(even[0].twice_k == 1);
    CHECK(even[1].twice_k == 7);
    CHECK(even[0].eps == Approx(-std::sqrt(2.0)));
    CHECK(even[1].eps == Approx(-std::sqrt(2.0)));
    CHECK(even[2].twice_k == 3);
    CHECK(even[3].twice_k == 5);
    CHECK(even[3].eps == Approx(std::sqrt(2.0)));
}

TEST_CASE("dispersion: N=8 antiperiodic minimum") {
    CHECK(dispersion(8, Parity::Even).front().eps == Approx(-1.8477590650225735).epsilon(1e-14));
}

TEST_CASE("dispersion: band is exactly symmetric under eps -> -eps") {
    for (int n = 4; n <= 40; n += 2) {
        for (Parity p : {Parity::Even, Parity::Odd}) {
            const auto modes = dispersion(n, p);
            for (int i = 0; i < n; ++i) CHECK(modes[i].eps == -modes[n - 1 - i].eps);
        }
    }
}

TEST_CASE("dispersion: rejects odd N and open chains") {
    CHECK_THROWS_AS(dispersion(5, Parity::Even), InvalidArgument);
    CHECK_THROWS_AS(dispersion(2, Parity::Even), InvalidArgument);
    CHECK_THROWS_AS(dispersion(ChainSpec{6, 1.0, 0.0, Boundary::OpenChain}, Parity::Even),
                    InvalidArgument);
}

TEST_CASE("open_chain_levels: matches 2cos(pi j/(N+1)) and is symmetric") {
    const auto two = open_chain_levels({2, 1.0, 0.0, Boundary::OpenChain});
    CHECK(two[0] == Approx(-1.0));
    CHECK(two[1] == Approx(1.0));
    for (int n = 2; n <= 17; ++n) {
        const auto levels = open_chain_levels({n, 1.0, 0.0, Boundary::OpenChain});
        const auto expected = oracle::open_chain_analytic(n);
        REQUIRE(levels.size() == static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            CHECK(levels[i] == Approx(expected[i]).epsilon(1e-12));
            CHECK(levels[i] == Approx(-levels[n - 1 - i]).epsilon(1e-12));
        }
    }
    CHECK_THROWS_AS(open_chain_levels({1, 1.0, 0.0, Boundary::OpenChain}), InvalidArgument);
}

TEST_CASE("config_energy: documented values") {
    CHECK(config_energy(ring(6, 0.7), {Parity::Even, {}}) == Approx(-6 * 0.7));
    CHECK(config_energy(ring(4, 0.5), {Parity::Even, {1, 3, 5, 7}}) == Approx(-2.0));
    // four lowest antiperiodic modes of N=8: k = 1/2, 3/2, 13/2, 15/2
    for (double lambda : {0.0, 0.3, 2.0})
        CHECK(config_energy(ring(8, lambda), {Parity::Even, {1, 3, 13, 15}}) ==
              Approx(-5.226251859505506).epsilon(1e-13));
}

TEST_CASE("config_energy: rejects sector mismatches") {
    CHECK_THROWS_AS(config_energy(ring(4, 0.1), {Parity::Even, {1}}), InvalidArgument);
    CHECK_THROWS_AS(config_energy(ring(4, 0.1), {Parity::Odd, {1}}), InvalidArgument);
    CHECK_THROWS_AS(config_energy(ring(4, 0.1), {Parity::Even, {2, 4}}), InvalidArgument);
    CHECK_THROWS_AS(config_energy(ring(4, 0.1), {Parity::Even, {3, 3}}), InvalidArgument);
    CHECK_THROWS_AS(config_energy(ring(4, 0.1), {Parity::Odd, {10}}), InvalidArgument);
}

TEST_CASE("best_energy_at_filling: documented values") {
    const auto empty = best_energy_at_filling(ring(8, 0.4), 0);
    CHECK(empty.energy == Approx(-8 * 0.4));
    CHECK(empty.config.sector == Parity::Even);
    CHECK(empty.config.occupied_twice_k.empty());

    const auto full = best_energy_at_filling(ring(8, 0.4), 8);
    CHECK(full.energy == Approx(-8 * 0.4));
    CHECK(full.config.sector == Parity::Even);

    const auto one = best_energy_at_filling(ring(8, 0.3), 1);
    CHECK(one.config.sector == Parity::Odd);
    CHECK(one.config.occupied_twice_k == std::vector<int>{16});
    CHECK(one.energy == Approx(-0.3 * 36 / 8 - 2.0).epsilon(1e-14));
    CHECK(one.energy == Approx(oracle::brute_force_at_filling(8, 0.3, 1)).epsilon(1e-14));
}

TEST_CASE("best_energy_at_filling: lowest modes beat every other subset (N <= 10)") {
    for (int n = 4; n <= 10; n += 2) {
        for (double lambda : {0.0, 0.37, 1.3}) {
            for (int m = 0; m <= n; ++m) {
                const double ours = best_energy_at_filling(ring(n, lambda), m).energy;
                CHECK(ours == Approx(oracle::brute_force_at_filling(n, lambda, m)).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("particle-hole symmetry is exact") {
    for (int n = 4; n <= 64; n += 2)
        for (double lambda : {0.0, 0.25, 0.65, 3.0})
            for (int m = 0; m <= n; ++m)
                CHECK(best_energy_at_filling(ring(n, lambda), m).energy ==
                      best_energy_at_filling(ring(n, lambda), n - m).energy);
}

TEST_CASE("ground_state: N=8 on both sides of and at the crossing") {
    const auto strong = ground_state(ring(8, 1.0));
    CHECK(strong.fillings == std::vector<int>{0, 8});
    CHECK(strong.energy == Approx(-8.0));
    CHECK(strong.degeneracy == 2);
    CHECK(strong.energy == Approx(oracle::brute_force_ground(8, 1.0)).epsilon(1e-12));

    const auto weak = ground_state(ring(8, 0.3));
    CHECK(weak.fillings == std::vector<int>{4});
    CHECK(weak.degeneracy == 1);
    CHECK(weak.energy == Approx(-5.226251859505506).epsilon(1e-13));
    CHECK(weak.energy == Approx(oracle::brute_force_ground(8, 0.3)).epsilon(1e-12));

    const auto at = ground_state(ring(8, critical_coupling(8)));
    CHECK(at.fillings == std::vector<int>{0, 4, 8});
    CHECK(at.degeneracy == 3);
    for (std::size_t i = 0; i < at.fillings.size(); ++i)
        CHECK(config_energy(ring(8, critical_coupling(8)), at.configs[i]) == Approx(at.energy));
}

TEST_CASE("ground_state: exhaustive search agrees for N <= 10") {
    for (int n = 4; n <= 10; n += 2)
        for (double lambda = 0.0; lambda <= 2.0; lambda += 0.05) {
            const auto gs = ground_state(ring(n, lambda));
            CHECK(std::abs(gs.energy - oracle::brute_force_ground(n, lambda)) <= 1e-12);
        }
}

TEST_CASE("ground_state: degeneracy counts all minimal states") {
    // brute-force count of configurations within the tie tolerance
    for (int n = 4; n <= 10; n += 2) {
        for (double lambda : {0.1, 0.5, 0.9, 1.7}) {
            const auto gs = ground_state(ring(n, lambda));
            int count = 0;
            for (const auto& e : oracle::enumerate_all(n, lambda))
                if (e.energy - gs.energy <= 1e-9) ++count;
            CHECK(gs.degeneracy == count);
        }
    }
}

TEST_CASE("phase structure straddling the critical coupling") {
    for (int n : {4, 8, 12, 16}) {
        const double lc = critical_coupling(n);
        for (double f : {0.0, 0.2, 0.5, 0.9, 0.99, 0.9999}) {
            const auto gs = ground_state(ring(n, f * lc));
            CHECK(gs.fillings == std::vector<int>{n / 2});
        }
        for (double f : {1.0001, 1.01, 1.1, 2.0, 10.0}) {
            const auto gs = ground_state(ring(n, f * lc));
            CHECK(gs.fillings == std::vector<int>{0, n});
            CHECK(gs.degeneracy == 2);
        }
    }
}

TEST_CASE("crossing_lambda: documented values and ordering") {
    CHECK(crossing_lambda(8, 4) == Approx(0.6532814824381883).epsilon(1e-14));
    // one fermion lives in the periodic sector: K_1 = -2
    CHECK(crossing_lambda(8, 1) == Approx(2.0 * 8 / 28).epsilon(1e-14));
    CHECK(crossing_lambda(8, 1) < crossing_lambda(8, 2));
    CHECK(crossing_lambda(8, 2) < crossing_lambda(8, 3));
    CHECK(crossing_lambda(8, 3) < crossing_lambda(8, 4));
    CHECK_THROWS_AS(crossing_lambda(8, 0), InvalidArgument);
    CHECK_THROWS_AS(crossing_lambda(8, 5), InvalidArgument);
}

TEST_CASE("crossing_lambda: the crossing energies coincide") {
    for (int n = 4; n <= 20; n += 2)
        for (int m = 1; m <= n / 2; ++m) {
            const double lm = crossing_lambda(n, m);
            CHECK(best_energy_at_filling(ring(n, lm), m).energy == Approx(-n * lm).epsilon(1e-12));
        }
}

TEST_CASE("crossing_lambda: monotone in m for every even N up to 64") {
    for (int n = 4; n <= 64; n += 2)
        for (int m = 1; m < n / 2; ++m) CHECK(crossing_lambda(n, m) < crossing_lambda(n, m + 1));
}

TEST_CASE("critical_coupling: values, limits and the closed form") {
    CHECK(critical_coupling(8) == Approx(0.6532814824381883).epsilon(1e-14));
    CHECK(std::abs(critical_coupling(8) - crossing_lambda(8, 4)) <= 1e-12);
    CHECK(critical_coupling_thermodynamic() == 2.0 / std::numbers::pi);
    CHECK(std::abs(critical_coupling_closed_form(1000) - 2.0 / std::numbers::pi) <= 1.1e-6);
    CHECK(critical_coupling(4) == Approx(std::sqrt(0.5)).epsilon(1e-14));
    // N = 2 mod 4 falls back to the half-filled periodic-sector crossing
    CHECK(critical_coupling(6) == Approx(2.0 / 3.0).epsilon(1e-14));
    CHECK(critical_coupling(6) == crossing_lambda(6, 3));
    for (int n = 4; n <= 4096; n += 4)
        CHECK(std::abs(critical_coupling(n) - critical_coupling_closed_form(n)) <= 1e-12);
    for (int n = 6; n <= 102; n += 4)
        CHECK(std::abs(critical_coupling(n) - critical_coupling_closed_form(n)) <= 1e-12);
    CHECK_THROWS_AS(critical_coupling(7), InvalidArgument);
}

TEST_CASE("order_parameters: coherent amplitude") {
    const auto empty = order_parameters(ring(8, 1.0, 1.0), 0);
    CHECK(empty.magnetization_total == 8);
    CHECK(empty.alpha == Approx(-2.8284271247461903));
    CHECK(empty.phonon_number == Approx(8.0));
    const auto full = order_parameters(ring(8, 1.0, 1.0), 8);
    CHECK(full.magnetization_total == -8);
    CHECK(full.alpha == Approx(2.8284271247461903));
    const auto half = order_parameters(ring(8, 1.0, 1.0), 4);
    CHECK(half.magnetization_total == 0);
    CHECK(half.alpha == 0.0);
    CHECK(half.phonon_number == 0.0);
    CHECK(half.displacement == 0.0);

    for (int m = 0; m <= 10; ++m) {
        const auto op = order_parameters(ring(10, 0.77, 0.3), m);
        CHECK(op.displacement == 2.0 * op.alpha);
        CHECK(op.phonon_number == op.alpha * op.alpha);
    }
    CHECK_THROWS_AS(order_parameters(ring(8, 1.0), 9), InvalidArgument);
}

TEST_CASE("spectrum_scan: rows, particle-hole pairs and the lambda = 0 minimum") {
    const std::vector<double> grid{0.0, 0.5, 1.0};
    const auto rows = spectrum_scan(8, grid);
    CHECK(rows.size() == 3 * 5);
    const auto full = spectrum_scan(8, grid, 8);
    for (const auto& r : full) {
        const auto& mirror = full[(&r - full.data()) - r.m + (8 - r.m)];
        CHECK(mirror.m == 8 - r.m);
        CHECK(mirror.energy == r.energy);
        CHECK(r.energy == best_energy_at_filling(ring(8, r.lambda), r.m).energy);
    }
    int best_m = -1;
    double best = 1e300;
    for (int m = 0; m <= 4; ++m)
        if (rows[m].energy < best) best = rows[m].energy, best_m = m;
    CHECK(best_m == 4);
    CHECK_THROWS_AS(spectrum_scan(8, std::vector<double>{}), InvalidArgument);
    CHECK_THROWS_AS(spectrum_scan(8, std::vector<double>{-0.1}), InvalidArgument);
}

TEST_CASE("ChainSpec validation") {
    CHECK_THROWS_AS(ring(2, 0.1).validate(), InvalidArgument);
    CHECK_THROWS_AS(ring(7, 0.1).validate(), InvalidArgument);
    CHECK_THROWS_AS(ring(8, -0.1).validate(), InvalidArgument);
    CHECK_THROWS_AS(ring(8, 0.1, 0.0).validate(), InvalidArgument);
    CHECK_NOTHROW(ChainSpec({3, 1.0, 0.1, Boundary::OpenChain}).validate());
}
