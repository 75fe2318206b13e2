#include "xyphonon/core_model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <cstdint>
#include <string>

#include <Eigen/Dense>

namespace xyp {

namespace {

void require_ring_size(int n_spins) {
    if (n_spins < 4 || n_spins % 2 != 0)
        throw InvalidArgument("ring requires an even number of spins >= 4, got " +
                              std::to_string(n_spins));
}

// -2 cos(pi q / N) with q = 2k reduced to [0, N/2] so that modes related by
// k -> k + N/2 come out as exact negatives of each other.
double mode_energy(int n_spins, int twice_k) {
    int q = twice_k % (2 * n_spins);
    if (q < 0) q += 2 * n_spins;
    if (q > n_spins) q = 2 * n_spins - q;
    if (2 * q == n_spins) return 0.0;
    if (2 * q > n_spins) return 2.0 * std::cos(std::numbers::pi * (n_spins - q) / n_spins);
    return -2.0 * std::cos(std::numbers::pi * q / n_spins);
}

// Sum in which exact +/- pairs cancel first and the remainder is added in
// ascending order; the result depends only on the multiset, and a set and its
// particle-hole complement give bit-identical sums.
double cancelling_sum(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    std::vector<double> kept;
    kept.reserve(values.size());
    std::size_t i = 0, j = values.size();
    while (i < j) {
        if (i + 1 == j) {
            kept.push_back(values[i]);
            break;
        }
        const double lo = values[i], hi = values[j - 1];
        if (lo == -hi) {
            ++i;
            --j;
        } else if (-lo > hi) {
            kept.push_back(lo);
            ++i;
        } else {
            kept.push_back(hi);
            --j;
        }
    }
    std::sort(kept.begin(), kept.end());
    double sum = 0.0;
    for (double v : kept) sum += v;
    return sum;
}

std::int64_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    std::int64_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

}  // namespace

std::vector<Mode> dispersion(int n_spins, Parity sector) {
    require_ring_size(n_spins);
    std::vector<Mode> modes;
    modes.reserve(n_spins);
    for (int j = 1; j <= n_spins; ++j) {
        const int twice_k = (sector == Parity::Even) ? 2 * j - 1 : 2 * j;
        modes.push_back({twice_k, mode_energy(n_spins, twice_k)});
    }
    std::stable_sort(modes.begin(), modes.end(),
                     [](const Mode& a, const Mode& b) { return a.eps < b.eps; });
    return modes;
}

std::vector<Mode> dispersion(const ChainSpec& spec, Parity sector) {
    if (spec.boundary != Boundary::Ring)
        throw InvalidArgument("open chains have no momentum sectors; use open_chain_levels");
    return dispersion(spec.n_spins, sector);
}

std::vector<double> open_chain_levels(const ChainSpec& spec) {
    const int n = spec.n_spins;
    if (n < 2) throw InvalidArgument("open chain requires at least 2 spins");
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd sub = Eigen::VectorXd::Ones(n - 1);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw ComputationError("tridiagonal eigensolve failed");
    std::vector<double> levels(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
    std::sort(levels.begin(), levels.end());
    return levels;
}

void validate_config(int n_spins, const OccupationConfig& config) {
    const bool even = config.sector == Parity::Even;
    if (parity_of_filling(config.filling()) != config.sector)
        throw InvalidArgument("filling " + std::to_string(config.filling()) +
                              " does not match the " + to_string(config.sector) + " sector");
    int previous = 0;
    for (int twice_k : config.occupied_twice_k) {
        const bool half_integer = (twice_k % 2 != 0);
        if (twice_k < 1 || twice_k > 2 * n_spins || half_integer != even)
            throw InvalidArgument("momentum " + std::to_string(twice_k) + "/2 is not in the " +
                                  to_string(config.sector) + " sector");
        if (twice_k <= previous)
            throw InvalidArgument("occupied momenta must be strictly ascending");
        previous = twice_k;
    }
}

double config_energy(const ChainSpec& spec, const OccupationConfig& config) {
    require_ring_size(spec.n_spins);
    validate_config(spec.n_spins, config);
    const int n = spec.n_spins;
    const int mz = n - 2 * config.filling();
    std::vector<double> eps;
    eps.reserve(config.occupied_twice_k.size());
    for (int twice_k : config.occupied_twice_k) eps.push_back(mode_energy(n, twice_k));
    return -spec.lambda * mz * mz / n + cancelling_sum(std::move(eps));
}

FillingEnergy best_energy_at_filling(const ChainSpec& spec, int m) {
    const int n = spec.n_spins;
    if (m < 0 || m > n)
        throw InvalidArgument("filling must lie in [0, N], got " + std::to_string(m));
    const Parity sector = parity_of_filling(m);
    const auto modes = dispersion(spec, sector);
    OccupationConfig config{sector, {}};
    config.occupied_twice_k.reserve(m);
    for (int i = 0; i < m; ++i) config.occupied_twice_k.push_back(modes[i].twice_k);
    std::sort(config.occupied_twice_k.begin(), config.occupied_twice_k.end());
    return {config_energy(spec, config), std::move(config)};
}

int optimal_subset_count(int n_spins, int m, double tol) {
    if (m <= 0 || m >= n_spins) return 1;
    const auto modes = dispersion(n_spins, parity_of_filling(m));
    const double fermi = modes[m - 1].eps;
    int tied = 0, tied_inside = 0;
    for (int i = 0; i < n_spins; ++i) {
        if (std::abs(modes[i].eps - fermi) <= tol) {
            ++tied;
            if (i < m) ++tied_inside;
        }
    }
    return static_cast<int>(binomial(tied, tied_inside));
}

double band_energy(int n_spins, int m) {
    if (m < 0 || m > n_spins)
        throw InvalidArgument("filling must lie in [0, N], got " + std::to_string(m));
    const auto modes = dispersion(n_spins, parity_of_filling(m));
    std::vector<double> eps;
    eps.reserve(m);
    for (int i = 0; i < m; ++i) eps.push_back(modes[i].eps);
    return cancelling_sum(std::move(eps));
}

GroundStateReport ground_state(const ChainSpec& spec, double tie_eps) {
    spec.validate();
    if (spec.boundary != Boundary::Ring)
        throw InvalidArgument("ground_state is defined for the ring");
    const int n = spec.n_spins;
    if (tie_eps < 0.0) tie_eps = 1e-12 * n;

    std::vector<FillingEnergy> best;
    best.reserve(n + 1);
    double emin = 0.0;
    for (int m = 0; m <= n; ++m) {
        best.push_back(best_energy_at_filling(spec, m));
        if (m == 0 || best.back().energy < emin) emin = best.back().energy;
    }

    GroundStateReport report;
    report.energy = emin;
    for (int m = 0; m <= n; ++m) {
        if (best[m].energy - emin <= tie_eps) {
            report.fillings.push_back(m);
            report.configs.push_back(best[m].config);
            report.degeneracy += optimal_subset_count(n, m);
        }
    }
    return report;
}

double crossing_lambda(int n_spins, int m) {
    require_ring_size(n_spins);
    if (m < 1 || m > n_spins / 2)
        throw InvalidArgument("crossing_lambda requires 1 <= m <= N/2, got " + std::to_string(m));
    const double k_m = band_energy(n_spins, m);
    return -k_m * n_spins / (4.0 * m * (n_spins - m));
}

double critical_coupling(int n_spins) {
    require_ring_size(n_spins);
    if (n_spins % 4 != 0) return crossing_lambda(n_spins, n_spins / 2);
    double sum = 0.0;
    for (int k = 1; k <= n_spins / 4; ++k)
        sum += std::cos((2 * k - 1) * std::numbers::pi / n_spins);
    return 4.0 * sum / n_spins;
}

double critical_coupling_thermodynamic() { return 2.0 / std::numbers::pi; }

double critical_coupling_closed_form(int n_spins) {
    require_ring_size(n_spins);
    return 2.0 / (n_spins * std::sin(std::numbers::pi / n_spins));
}

OrderParameters order_parameters(const ChainSpec& spec, int m) {
    spec.validate();
    const int n = spec.n_spins;
    if (m < 0 || m > n)
        throw InvalidArgument("filling must lie in [0, N], got " + std::to_string(m));
    OrderParameters op;
    op.magnetization_total = n - 2 * m;
    // + 0.0 folds the -0 of a half-filled ring into +0
    op.alpha = -std::sqrt(spec.lambda / (spec.gamma * n)) * op.magnetization_total + 0.0;
    op.phonon_number = op.alpha * op.alpha;
    op.displacement = 2.0 * op.alpha;
    return op;
}

std::vector<SpectrumRow> spectrum_scan(int n_spins, std::span<const double> lambda_grid,
                                       int max_filling) {
    require_ring_size(n_spins);
    if (lambda_grid.empty()) throw InvalidArgument("lambda grid is empty");
    if (max_filling < 0) max_filling = n_spins / 2;
    if (max_filling > n_spins)
        throw InvalidArgument("max_filling exceeds N");

    // The kinetic part depends on m only, so it is computed once per filling.
    std::vector<double> kinetic(max_filling + 1);
    for (int m = 0; m <= max_filling; ++m) kinetic[m] = band_energy(n_spins, m);

    std::vector<SpectrumRow> rows;
    rows.reserve(lambda_grid.size() * (max_filling + 1));
    for (double lambda : lambda_grid) {
        if (!(lambda >= 0.0)) throw InvalidArgument("lambda grid values must be >= 0");
        for (int m = 0; m <= max_filling; ++m) {
            const int mz = n_spins - 2 * m;
            rows.push_back({lambda, m, -lambda * mz * mz / n_spins + kinetic[m]});
        }
    }
    return rows;
}

}  // namespace xyp
