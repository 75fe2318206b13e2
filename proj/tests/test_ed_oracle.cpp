#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "xyphonon/core_model.hpp"
#include "xyphonon/ed_oracle.hpp"

using namespace xyp;
using doctest::Approx;

TEST_CASE("default cutoff rule and dimension guard") {
    // a2 = 4: ceil(4 + 20 + 10)
    CHECK(ed::EDConfig::default_n_cut(4, 1.0, 1.0) == 34);
    CHECK(ed::EDConfig::default_n_cut(4, 1.0, 0.0) == 10);
    ed::EDConfig cfg{4, 1.0, 1.0};
    CHECK(cfg.resolved_n_cut() == 34);
    CHECK(cfg.dimension() == 16u * 35u);

    cfg.n_cut = 5;
    CHECK_THROWS_AS(cfg.validate(), InvalidArgument);
    cfg.allow_small_cutoff = true;
    CHECK_NOTHROW(cfg.validate());

    CHECK_THROWS_AS((ed::EDConfig{9, 1.0, 0.1}.validate()), InvalidArgument);
    CHECK_THROWS_AS((ed::EDConfig{3, 1.0, 0.1}.validate()), InvalidArgument);
    CHECK_NOTHROW((ed::EDConfig{3, 1.0, 0.1, -1, 0.0, Boundary::OpenChain}.validate()));
    // 2^8 * (n_cut + 1) > 2^18
    CHECK_THROWS_AS((ed::EDConfig{8, 0.01, 2.0}.validate()), InvalidArgument);
    CHECK_THROWS_AS((ed::EDConfig{4, 0.0, 0.1}.validate()), InvalidArgument);
}

TEST_CASE("Hamiltonian is real symmetric and conserves magnetization") {
    for (double eps : {0.0, 0.3}) {
        ed::EDConfig cfg{4, 0.7, 1.3, 20, eps};
        cfg.allow_small_cutoff = true;
        const Eigen::SparseMatrix<double> h = ed::build_hamiltonian(cfg);
        const Eigen::SparseMatrix<double> ht = h.transpose();
        CHECK((h - ht).norm() == 0.0);
        const auto blocks = ed::magnetization_blocks(cfg, h);
        REQUIRE(blocks.size() == 5);
        std::size_t total = 0;
        for (int m = 0; m <= 4; ++m) {
            total += blocks[m].size();
            const auto binom = std::tgamma(5.0) / (std::tgamma(m + 1.0) * std::tgamma(5.0 - m));
            CHECK(blocks[m].size() == static_cast<std::size_t>(std::lround(binom)) * 21u);
        }
        CHECK(total == cfg.dimension());
    }
}

TEST_CASE("lambda = 0: Fock levels decouple and the spin part is the XX ring") {
    ed::EDConfig cfg{4, 1.5, 0.0, 3};
    cfg.allow_small_cutoff = true;
    const Eigen::MatrixXd h = Eigen::MatrixXd(ed::build_hamiltonian(cfg));
    const Eigen::MatrixXd spin = ed::xx_spin_matrix(4, Boundary::Ring);
    for (int s = 0; s < 16; ++s)
        for (int n = 0; n < 4; ++n)
            for (int t = 0; t < 16; ++t)
                for (int k = 0; k < 4; ++k) {
                    const double expected = (n == k) ? spin(t, s) + (s == t ? 1.5 * n : 0.0) : 0.0;
                    CHECK(h(t * 4 + k, s * 4 + n) == expected);
                }
}

TEST_CASE("lowest_eigenpairs: residual contract") {
    Eigen::MatrixXd m(3, 3);
    m << 2, -1, 0, -1, 2, -1, 0, -1, 2;
    const auto pairs = ed::lowest_eigenpairs(m, 2);
    REQUIRE(pairs.values.size() == 2);
    CHECK(pairs.values[0] == Approx(2 - std::sqrt(2.0)));
    CHECK(pairs.values[1] == Approx(2.0));
    CHECK(pairs.max_residual <= 1e-10);
    CHECK(ed::lowest_eigenpairs(m, 10).values.size() == 3);
}

TEST_CASE("N=4 above the critical coupling: degenerate pair at -N lambda") {
    const auto r = ed::ed_ground({4, 1.0, 1.0, 64});
    CHECK(r.lowest_energies[0] == Approx(-4.0).epsilon(1e-10));
    CHECK(std::abs(r.lowest_energies[0] + 4.0) <= 1e-8);
    CHECK(r.gap <= 1e-8);
    CHECK(r.lowest_fillings[0] + r.lowest_fillings[1] == 4);
    CHECK(r.ground_filling == 0);
    CHECK(r.ground.boson_number == Approx(4.0).epsilon(1e-8));
    CHECK(r.ground.sigma_z_total == Approx(4.0).epsilon(1e-12));
    CHECK(r.ground.displacement == Approx(-4.0).epsilon(1e-8));
    CHECK(r.max_residual <= 1e-10);
    REQUIRE(r.sectors.size() == 5);
    CHECK(r.sectors[4].energy == Approx(r.sectors[0].energy).epsilon(1e-12));
    CHECK(r.sectors[4].observables.displacement == Approx(4.0).epsilon(1e-8));
}

TEST_CASE("N=4 below the critical coupling: unique half-filled ground") {
    const auto r = ed::ed_ground({4, 1.0, 0.3, 64});
    CHECK(std::abs(r.lowest_energies[0] + 2 * std::numbers::sqrt2) <= 1e-8);
    CHECK(r.gap >= 0.01);
    CHECK(r.ground_filling == 2);
    CHECK(r.ground.boson_number <= 1e-8);
    CHECK(std::abs(r.ground.displacement) <= 1e-8);
    for (std::size_t i = 1; i < r.lowest_energies.size(); ++i)
        CHECK(r.lowest_energies[i - 1] <= r.lowest_energies[i]);
}

TEST_CASE("every magnetization block ground energy matches the analytic filling energy") {
    for (int n : {4, 6})
        for (double gamma : {0.5, 2.0})
            for (double lambda : {0.2, 1.0}) {
                const auto r = ed::ed_ground({n, gamma, lambda});
                for (const auto& s : r.sectors) {
                    const double exact = best_energy_at_filling({n, gamma, lambda, Boundary::Ring}, s.filling).energy;
                    CHECK(std::abs(s.energy - exact) <= 1e-8);
                    // coherent-state amplitude alpha^2 = lambda (N - 2m)^2 / (gamma N)
                    const double a2 = lambda * (n - 2.0 * s.filling) * (n - 2.0 * s.filling) / (gamma * n);
                    CHECK(std::abs(s.observables.boson_number - a2) <= 1e-8 * std::max(1.0, a2));
                    CHECK(s.observables.sigma_z_total == Approx(n - 2.0 * s.filling));
                }
            }
}

TEST_CASE("truncation convergence: doubling n_cut moves E0 by <= 1e-10") {
    for (double lambda : {0.2, 1.0, 2.0}) {
        ed::EDConfig cfg{4, 1.0, lambda};
        const double e1 = ed::ed_ground(cfg).lowest_energies[0];
        cfg.n_cut = 2 * cfg.resolved_n_cut();
        const double e2 = ed::ed_ground(cfg).lowest_energies[0];
        CHECK(std::abs(e1 - e2) <= 1e-10);
    }
}

TEST_CASE("open chain ED matches subset sums of open-chain levels") {
    for (int n : {2, 3, 5}) {
        const auto levels = oracle::open_chain_analytic(n);
        const auto h = ed::xx_spin_matrix(n, Boundary::OpenChain);
        const auto pairs = ed::lowest_eigenpairs(h, static_cast<int>(h.rows()));
        std::vector<double> sums;
        for (unsigned mask = 0; mask < (1u << n); ++mask) {
            double e = 0.0;
            for (int j = 0; j < n; ++j)
                if (mask & (1u << j)) e += levels[j];
            sums.push_back(e);
        }
        std::sort(sums.begin(), sums.end());
        for (std::size_t i = 0; i < sums.size(); ++i) CHECK(pairs.values[i] == Approx(sums[i]).epsilon(1e-12));
    }
    // the spin-boson problem on an open chain still builds and solves
    const auto r = ed::ed_ground({3, 1.0, 0.1, -1, 0.0, Boundary::OpenChain});
    CHECK(r.lowest_energies.size() >= 2);
}

TEST_CASE("sector assembly reproduces the full XX spectrum") {
    for (int n : {4, 6, 8}) {
        const auto rep = ed::xx_sector_check(n);
        CHECK(rep.passed);
        CHECK(rep.levels == (1u << n));
        CHECK(rep.max_deviation <= 1e-10);
        CHECK(rep.max_parity_deviation <= 1e-8);
        CHECK(rep.unmatched.empty());
    }
    CHECK_THROWS_AS(ed::xx_sector_check(5), InvalidArgument);
}

TEST_CASE("polynomial extrapolation to zero") {
    const std::vector<double> xs{1e-3, 1e-4, 1e-5};
    std::vector<double> ys;
    for (double x : xs) ys.push_back(3.0 - 2.0 * x + 7.0 * x * x);
    CHECK(ed::extrapolate_to_zero(xs, ys) == Approx(3.0).epsilon(1e-14));
    CHECK_THROWS_AS(ed::extrapolate_to_zero(std::vector<double>{}, std::vector<double>{}), InvalidArgument);
}

TEST_CASE("symmetry-breaking probe selects the displaced state") {
    const std::vector<double> schedule{1e-3, 1e-4, 1e-5};
    const auto above = ed::symmetry_breaking_probe({4, 1.0, 1.0}, schedule);
    REQUIRE(above.points.size() == 3);
    // eps (a + a^dag) > 0 favours the negative displacement, m = 0
    for (const auto& p : above.points) CHECK(p.filling == 0);
    CHECK(above.extrapolated.boson_number == Approx(4.0).epsilon(1e-8));
    CHECK(above.extrapolated.displacement == Approx(-4.0).epsilon(1e-8));

    const auto below = ed::symmetry_breaking_probe({4, 1.0, 0.3}, schedule);
    CHECK(std::abs(below.extrapolated.boson_number) <= 1e-8);
    CHECK(std::abs(below.extrapolated.displacement) <= 1e-8);
}

TEST_CASE("oracle matrix layout") {
    const auto cases = ed::default_oracle_matrix();
    CHECK(cases.size() == 30);
    CHECK(cases.front() == ed::OracleCase{4, 0.5, 0.2});
    const double lc6 = critical_coupling(6);
    bool found = false;
    for (const auto& c : cases) found = found || (c.n_spins == 6 && c.lambda == lc6 + 0.05);
    CHECK(found);
}

TEST_CASE("oracle records: serial and parallel agree and pass") {
    std::vector<ed::OracleCase> cases{{4, 1.0, 0.2}, {4, 2.0, 1.0}, {4, 0.5, critical_coupling(4) - 0.05}};
    const auto serial = ed::run_oracle_matrix_serial(cases);
    const auto par = ed::run_oracle_matrix(cases);
    CHECK(serial == par);
    for (const auto& r : serial) {
        CHECK(r.passed);
        CHECK(r.energy_ok);
        CHECK(r.gap_ok);
    }
    CHECK(serial[0].gap_rule == "gapped");
    CHECK(serial[1].gap_rule == "degenerate");
    CHECK(serial[2].gap_rule == "none");
}
