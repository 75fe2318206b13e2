#include "xyphonon/ed_oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include <lapacke.h>

#include "xyphonon/core_model.hpp"

namespace xyp::ed {

namespace {

int popcount(unsigned s) { return std::popcount(s); }

// sum_l s^z_l for a spin string
int magnetization(unsigned s, int n_spins) { return n_spins - 2 * popcount(s); }

// Spin strings reachable from s by one hop, including the wrap bond on a ring.
template <class F>
void for_each_hop(unsigned s, int n_spins, Boundary boundary, F&& emit) {
    const int bonds = boundary == Boundary::Ring ? n_spins : n_spins - 1;
    for (int l = 0; l < bonds; ++l) {
        const int r = (l + 1) % n_spins;
        const unsigned bl = (s >> l) & 1u, br = (s >> r) & 1u;
        if (bl != br) emit(s ^ ((1u << l) | (1u << r)));
    }
}

Observables measure(const Eigen::Ref<const Eigen::VectorXd>& vec, const std::vector<int>& block,
                    int n_spins, int n_cut) {
    const int levels = n_cut + 1;
    Observables obs;
    for (std::size_t i = 0; i < block.size(); ++i) {
        const int idx = block[i];
        const unsigned s = static_cast<unsigned>(idx / levels);
        const int n = idx % levels;
        const double w = vec[i] * vec[i];
        obs.sigma_z_total += w * magnetization(s, n_spins);
        obs.boson_number += w * n;
        // <a + a^dag> = 2 sum c_{s,n} c_{s,n+1} sqrt(n+1); within a block the
        // (s, n+1) state is the next index
        if (n < n_cut && i + 1 < block.size() && block[i + 1] == idx + 1)
            obs.displacement += 2.0 * vec[i] * vec[i + 1] * std::sqrt(n + 1.0);
    }
    return obs;
}

Eigen::MatrixXd dense_block(const Eigen::SparseMatrix<double>& h, const std::vector<int>& block) {
    std::vector<int> local(h.rows(), -1);
    for (std::size_t i = 0; i < block.size(); ++i) local[block[i]] = static_cast<int>(i);
    const auto size = static_cast<Eigen::Index>(block.size());
    Eigen::MatrixXd dense = Eigen::MatrixXd::Zero(size, size);
    for (Eigen::Index j = 0; j < size; ++j) {
        for (Eigen::SparseMatrix<double>::InnerIterator it(h, block[j]); it; ++it) {
            const int row = local[it.row()];
            if (row < 0) throw ComputationError("Hamiltonian couples different magnetization blocks");
            dense(row, j) = it.value();
        }
    }
    return dense;
}

}  // namespace

int EDConfig::default_n_cut(int n_spins, double gamma, double lambda) {
    const double a2 = lambda * n_spins / gamma;
    return static_cast<int>(std::ceil(a2 + 10.0 * std::sqrt(a2) + 10.0));
}

int EDConfig::resolved_n_cut() const {
    return n_cut < 0 ? default_n_cut(n_spins, gamma, lambda) : n_cut;
}

std::size_t EDConfig::dimension() const {
    return (std::size_t{1} << n_spins) * static_cast<std::size_t>(resolved_n_cut() + 1);
}

void EDConfig::validate() const {
    if (n_spins < 2 || n_spins > 8)
        throw InvalidArgument("exact diagonalization supports 2 <= N <= 8, got " +
                              std::to_string(n_spins));
    if (boundary == Boundary::Ring && n_spins < 4)
        throw InvalidArgument("ring requires at least 4 spins");
    if (!(gamma > 0.0)) throw InvalidArgument("gamma must be positive");
    if (!(lambda >= 0.0)) throw InvalidArgument("lambda must be non-negative");
    const int cut = resolved_n_cut();
    if (cut < 0) throw InvalidArgument("boson cutoff must be non-negative");
    if (!allow_small_cutoff && cut < default_n_cut(n_spins, gamma, lambda))
        throw InvalidArgument("boson cutoff " + std::to_string(cut) + " below the default rule " +
                              std::to_string(default_n_cut(n_spins, gamma, lambda)));
    if (dimension() > kMaxDimension)
        throw InvalidArgument("Hilbert dimension " + std::to_string(dimension()) +
                              " exceeds 2^18");
}

Eigen::SparseMatrix<double> build_hamiltonian(const EDConfig& cfg) {
    cfg.validate();
    const int n_spins = cfg.n_spins;
    const int n_cut = cfg.resolved_n_cut();
    const int levels = n_cut + 1;
    const auto dim = static_cast<Eigen::Index>(cfg.dimension());
    const double coupling = std::sqrt(cfg.lambda * cfg.gamma / n_spins);

    std::vector<Eigen::Triplet<double>> entries;
    entries.reserve(static_cast<std::size_t>(dim) * (n_spins + 3));
    const unsigned spin_states = 1u << n_spins;
    for (unsigned s = 0; s < spin_states; ++s) {
        const double field = coupling * magnetization(s, n_spins) + cfg.eps_sb;
        for (int n = 0; n < levels; ++n) {
            const int idx = static_cast<int>(s) * levels + n;
            if (n > 0) entries.emplace_back(idx, idx, cfg.gamma * n);
            if (n < n_cut && field != 0.0) {
                const double amp = field * std::sqrt(n + 1.0);
                entries.emplace_back(idx + 1, idx, amp);
                entries.emplace_back(idx, idx + 1, amp);
            }
            for_each_hop(s, n_spins, cfg.boundary, [&](unsigned t) {
                entries.emplace_back(static_cast<int>(t) * levels + n, idx, 1.0);
            });
        }
    }
    Eigen::SparseMatrix<double> h(dim, dim);
    h.setFromTriplets(entries.begin(), entries.end());
    return h;
}

Eigen::MatrixXd xx_spin_matrix(int n_spins, Boundary boundary, double field) {
    if (n_spins < 2 || n_spins > 12) throw InvalidArgument("spin matrix supports 2 <= N <= 12");
    const unsigned states = 1u << n_spins;
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(states, states);
    for (unsigned s = 0; s < states; ++s) {
        h(s, s) = field * magnetization(s, n_spins);
        for_each_hop(s, n_spins, boundary, [&](unsigned t) { h(t, s) += 1.0; });
    }
    return h;
}

std::vector<std::vector<int>> magnetization_blocks(const EDConfig& cfg,
                                                   const Eigen::SparseMatrix<double>& h) {
    const int levels = cfg.resolved_n_cut() + 1;
    std::vector<std::vector<int>> blocks(cfg.n_spins + 1);
    for (int idx = 0; idx < h.rows(); ++idx)
        blocks[popcount(static_cast<unsigned>(idx / levels))].push_back(idx);
    for (Eigen::Index col = 0; col < h.outerSize(); ++col)
        for (Eigen::SparseMatrix<double>::InnerIterator it(h, col); it; ++it)
            if (popcount(static_cast<unsigned>(it.row() / levels)) !=
                popcount(static_cast<unsigned>(col / levels)))
                throw ComputationError("Hamiltonian couples different magnetization blocks");
    return blocks;
}

Eigenpairs lowest_eigenpairs(const Eigen::MatrixXd& h, int count) {
    const auto n = static_cast<lapack_int>(h.rows());
    if (n == 0) throw InvalidArgument("empty matrix");
    const lapack_int want = std::min<lapack_int>(std::max(count, 1), n);
    Eigen::MatrixXd work = h;
    Eigen::VectorXd w(n);
    Eigen::MatrixXd z(n, want);
    std::vector<lapack_int> support(2 * static_cast<std::size_t>(want));
    lapack_int found = 0;
    const lapack_int info =
        LAPACKE_dsyevr(LAPACK_COL_MAJOR, 'V', 'I', 'L', n, work.data(), n, 0.0, 0.0, 1, want, 0.0,
                       &found, w.data(), z.data(), n, support.data());
    if (info != 0 || found != want)
        throw ComputationError("dsyevr failed with info " + std::to_string(info));

    Eigenpairs out;
    out.values = w.head(want);
    out.vectors = std::move(z);
    const double norm = std::max(h.norm(), 1.0);
    for (lapack_int i = 0; i < want; ++i) {
        const double r = (h * out.vectors.col(i) - out.values[i] * out.vectors.col(i)).norm();
        out.max_residual = std::max(out.max_residual, r / norm);
    }
    if (out.max_residual > 1e-10)
        throw ComputationError("eigensolver residual " + std::to_string(out.max_residual) +
                               " exceeds 1e-10 ||H||");
    return out;
}

EDResult ed_ground(const EDConfig& cfg, int n_levels) {
    const auto h = build_hamiltonian(cfg);
    const auto blocks = magnetization_blocks(cfg, h);
    const int n_cut = cfg.resolved_n_cut();
    n_levels = std::max(n_levels, 2);

    struct Level {
        double energy;
        int filling;
    };
    std::vector<Level> levels;
    EDResult result;
    for (int m = 0; m <= cfg.n_spins; ++m) {
        const auto dense = dense_block(h, blocks[m]);
        const auto pairs = lowest_eigenpairs(dense, n_levels);
        result.max_residual = std::max(result.max_residual, pairs.max_residual);
        for (Eigen::Index i = 0; i < pairs.values.size(); ++i)
            levels.push_back({pairs.values[i], m});
        result.sectors.push_back(
            {m, pairs.values[0], measure(pairs.vectors.col(0), blocks[m], cfg.n_spins, n_cut)});
    }
    std::stable_sort(levels.begin(), levels.end(),
                     [](const Level& a, const Level& b) { return a.energy < b.energy; });
    for (int i = 0; i < n_levels && i < static_cast<int>(levels.size()); ++i) {
        result.lowest_energies.push_back(levels[i].energy);
        result.lowest_fillings.push_back(levels[i].filling);
    }
    result.gap = result.lowest_energies[1] - result.lowest_energies[0];

    // ties within roundoff go to the lowest filling so that reports are stable
    const double e0 = result.lowest_energies[0];
    const double tol = 1e-12 * std::max(1.0, std::abs(e0));
    for (const auto& sector : result.sectors) {
        if (sector.energy - e0 <= tol) {
            result.ground_filling = sector.filling;
            result.ground = sector.observables;
            break;
        }
    }
    return result;
}

double extrapolate_to_zero(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size() || xs.empty())
        throw InvalidArgument("extrapolation needs matching, non-empty samples");
    // Neville's scheme evaluated at x = 0
    std::vector<double> p(ys.begin(), ys.end());
    const std::size_t n = xs.size();
    for (std::size_t level = 1; level < n; ++level)
        for (std::size_t i = 0; i + level < n; ++i)
            p[i] = (xs[i + level] * p[i] - xs[i] * p[i + 1]) / (xs[i + level] - xs[i]);
    return p[0];
}

ProbeResult symmetry_breaking_probe(EDConfig cfg, std::span<const double> eps_schedule) {
    if (eps_schedule.empty()) throw InvalidArgument("empty symmetry-breaking schedule");
    ProbeResult out;
    std::vector<double> xs, sz, nb, disp;
    for (double eps : eps_schedule) {
        cfg.eps_sb = eps;
        const auto res = ed_ground(cfg, 2);
        out.points.push_back({eps, res.lowest_energies[0], res.ground_filling, res.ground});
        xs.push_back(eps);
        sz.push_back(res.ground.sigma_z_total);
        nb.push_back(res.ground.boson_number);
        disp.push_back(res.ground.displacement);
    }
    out.extrapolated = {extrapolate_to_zero(xs, sz), extrapolate_to_zero(xs, nb),
                        extrapolate_to_zero(xs, disp)};
    return out;
}

SectorCheckReport xx_sector_check(int n_spins, double tol) {
    if (n_spins < 4 || n_spins > 8 || n_spins % 2 != 0)
        throw InvalidArgument("sector check supports even 4 <= N <= 8");
    SectorCheckReport report;
    report.n_spins = n_spins;

    // free-fermion assembly
    std::vector<SectorLevel> assembled;
    const ChainSpec spec{n_spins, 1.0, 0.0, Boundary::Ring};
    for (Parity sector : {Parity::Even, Parity::Odd}) {
        std::vector<int> momenta;
        for (const auto& mode : dispersion(n_spins, sector)) momenta.push_back(mode.twice_k);
        std::sort(momenta.begin(), momenta.end());
        for (unsigned mask = 0; mask < (1u << n_spins); ++mask) {
            if (parity_of_filling(popcount(mask)) != sector) continue;
            OccupationConfig config{sector, {}};
            for (int j = 0; j < n_spins; ++j)
                if (mask & (1u << j)) config.occupied_twice_k.push_back(momenta[j]);
            assembled.push_back({config_energy(spec, config), sector, config.filling()});
        }
    }
    std::stable_sort(assembled.begin(), assembled.end(),
                     [](const SectorLevel& a, const SectorLevel& b) { return a.energy < b.energy; });

    // brute-force spectrum
    const Eigen::MatrixXd h = xx_spin_matrix(n_spins, Boundary::Ring);
    const auto pairs = lowest_eigenpairs(h, static_cast<int>(h.rows()));
    report.levels = static_cast<std::size_t>(pairs.values.size());
    if (report.levels != assembled.size())
        throw ComputationError("level count mismatch between ED and sector assembly");
    for (std::size_t i = 0; i < report.levels; ++i) {
        const double dev = std::abs(pairs.values[i] - assembled[i].energy);
        report.max_deviation = std::max(report.max_deviation, dev);
        if (dev > tol) report.unmatched.push_back(assembled[i]);
    }

    // <P> inside each degenerate eigenspace, after diagonalizing P there
    Eigen::VectorXd parity(h.rows());
    for (Eigen::Index s = 0; s < h.rows(); ++s)
        parity[s] = (popcount(static_cast<unsigned>(s)) % 2 == 0) ? 1.0 : -1.0;
    for (Eigen::Index start = 0; start < pairs.values.size();) {
        Eigen::Index end = start + 1;
        while (end < pairs.values.size() && pairs.values[end] - pairs.values[start] < 1e-9) ++end;
        const auto basis = pairs.vectors.middleCols(start, end - start);
        const Eigen::MatrixXd restricted = basis.transpose() * parity.asDiagonal() * basis;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(restricted, Eigen::EigenvaluesOnly);
        for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i)
            report.max_parity_deviation =
                std::max(report.max_parity_deviation, std::abs(std::abs(solver.eigenvalues()[i]) - 1.0));
        start = end;
    }
    report.passed = report.unmatched.empty() && report.max_parity_deviation <= 1e-8;
    return report;
}

std::vector<OracleCase> default_oracle_matrix() {
    std::vector<OracleCase> cases;
    for (int n : {4, 6}) {
        const double lc = critical_coupling(n);
        for (double gamma : {0.5, 1.0, 2.0})
            for (double lambda : {0.2, lc - 0.05, lc + 0.05, 1.0, 2.0})
                cases.push_back({n, gamma, lambda});
    }
    return cases;
}

OracleRecord run_oracle_case(const OracleCase& c) {
    OracleRecord rec;
    rec.input = c;
    rec.lambda_c = critical_coupling(c.n_spins);
    rec.analytic_energy = ground_state({c.n_spins, c.gamma, c.lambda, Boundary::Ring}).energy;

    EDConfig cfg{c.n_spins, c.gamma, c.lambda};
    rec.n_cut = cfg.resolved_n_cut();
    const auto res = ed_ground(cfg, 2);
    rec.ed_energy = res.lowest_energies[0];
    rec.gap = res.gap;
    rec.observables = res.ground;

    rec.energy_ok = std::abs(rec.ed_energy - rec.analytic_energy) <= 1e-8;
    if (c.lambda > rec.lambda_c) {
        rec.gap_rule = "degenerate";
        rec.gap_ok = rec.gap <= 1e-8;
    } else if (c.lambda <= 0.9 * rec.lambda_c) {
        rec.gap_rule = "gapped";
        rec.gap_ok = rec.gap >= 0.01;
    } else {
        rec.gap_rule = "none";
        rec.gap_ok = true;
    }
    rec.passed = rec.energy_ok && rec.gap_ok;
    return rec;
}

std::vector<OracleRecord> run_oracle_matrix_serial(std::span<const OracleCase> cases) {
    std::vector<OracleRecord> out;
    out.reserve(cases.size());
    for (const auto& c : cases) out.push_back(run_oracle_case(c));
    return out;
}

std::vector<OracleRecord> run_oracle_matrix(std::span<const OracleCase> cases) {
    std::vector<OracleRecord> out(cases.size());
    const auto total = static_cast<std::ptrdiff_t>(cases.size());
    std::string failure;
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t i = 0; i < total; ++i) {
        try {
            out[i] = run_oracle_case(cases[i]);
        } catch (const std::exception& e) {
#pragma omp critical(oracle_failure)
            if (failure.empty()) failure = e.what();
        }
    }
    if (!failure.empty()) throw ComputationError(failure);
    return out;
}

}  // namespace xyp::ed
