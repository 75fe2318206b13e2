// Brute-force exact diagonalization of the spin + boson Hamiltonian
//
//   H = sum_l [s+_l s-_{l+1} + h.c.] + gamma a^dag a
//       + sqrt(lambda gamma / N) (a^dag + a) sum_l s^z_l + eps (a^dag + a)
//
// in the product basis |spins> (x) |n>, n = 0..n_cut. Basis index is
// spins * (n_cut + 1) + n, spin bit l set meaning s^z_l = -1 (an occupied
// Jordan-Wigner fermion). Nothing here uses the free-fermion solution; it
// is the independent check on core_model.

#pragma once

#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "xyphonon/chain.hpp"

namespace xyp::ed {

inline constexpr std::size_t kMaxDimension = std::size_t{1} << 18;

struct EDConfig {
    int n_spins{4};
    double gamma{1.0};
    double lambda{0.0};
    int n_cut{-1};                 // < 0 selects default_n_cut
    double eps_sb{0.0};            // symmetry-breaking field on (a + a^dag)
    Boundary boundary{Boundary::Ring};
    bool allow_small_cutoff{false};

    /// ceil(a2 + 10 sqrt(a2) + 10) with a2 = lambda N / gamma.
    static int default_n_cut(int n_spins, double gamma, double lambda);

    int resolved_n_cut() const;
    std::size_t dimension() const;
    void validate() const;
};

Eigen::SparseMatrix<double> build_hamiltonian(const EDConfig& cfg);

/// Spin-only XX Hamiltonian plus a uniform field h sum_l s^z_l, dense.
Eigen::MatrixXd xx_spin_matrix(int n_spins, Boundary boundary, double field = 0.0);

/// Basis indices grouped by the number of down spins m (= fermion filling).
/// Throws ComputationError if the matrix couples two groups.
std::vector<std::vector<int>> magnetization_blocks(const EDConfig& cfg,
                                                   const Eigen::SparseMatrix<double>& h);

struct Eigenpairs {
    Eigen::VectorXd values;   // ascending
    Eigen::MatrixXd vectors;  // columns
    double max_residual{0.0}; // max ||H v - E v|| / ||H||_F
};

/// Lowest `count` eigenpairs of a dense symmetric matrix (all when count
/// exceeds the dimension). Throws ComputationError when the residual
/// exceeds 1e-10 ||H||.
Eigenpairs lowest_eigenpairs(const Eigen::MatrixXd& h, int count);

struct Observables {
    double sigma_z_total{0.0};  // <sum_l s^z_l>
    double boson_number{0.0};   // <a^dag a>
    double displacement{0.0};   // <a + a^dag>

    friend bool operator==(const Observables&, const Observables&) = default;
};

struct SectorGround {
    int filling{0};
    double energy{0.0};
    Observables observables;
};

struct EDResult {
    std::vector<double> lowest_energies;  // ascending over all blocks
    std::vector<int> lowest_fillings;     // block of each listed level
    double gap{0.0};                      // E1 - E0
    int ground_filling{0};                // lowest filling among tied ground blocks
    Observables ground;                   // on the ground state of that block
    std::vector<SectorGround> sectors;    // block ground states, m = 0..N
    double max_residual{0.0};
};

EDResult ed_ground(const EDConfig& cfg, int n_levels = 4);

struct ProbePoint {
    double eps{0.0};
    double energy{0.0};
    int filling{0};
    Observables observables;
};

struct ProbeResult {
    std::vector<ProbePoint> points;
    Observables extrapolated;  // polynomial extrapolation to eps = 0
};

/// Ground-state observables under a vanishing symmetry-breaking field.
ProbeResult symmetry_breaking_probe(EDConfig cfg, std::span<const double> eps_schedule);

/// Value at x = 0 of the interpolating polynomial through (xs, ys).
double extrapolate_to_zero(std::span<const double> xs, std::span<const double> ys);

struct SectorLevel {
    double energy{0.0};
    Parity sector{Parity::Even};
    int filling{0};
};

struct SectorCheckReport {
    int n_spins{0};
    std::size_t levels{0};
    double max_deviation{0.0};
    double max_parity_deviation{0.0};  // max | |<P>| - 1 | after degenerate rotation
    std::vector<SectorLevel> unmatched;
    bool passed{false};
};

/// Compares the free-fermion sector assembly (even fillings on the
/// antiperiodic grid, odd fillings on the periodic one) with the full ED
/// spectrum of the XX ring at lambda = 0.
SectorCheckReport xx_sector_check(int n_spins, double tol = 1e-10);

struct OracleCase {
    int n_spins{4};
    double gamma{1.0};
    double lambda{0.0};

    friend bool operator==(const OracleCase&, const OracleCase&) = default;
};

struct OracleRecord {
    OracleCase input;
    int n_cut{0};
    double lambda_c{0.0};
    double analytic_energy{0.0};
    double ed_energy{0.0};
    double gap{0.0};
    Observables observables;
    std::string gap_rule;  // "degenerate", "gapped" or "none"
    bool energy_ok{false};
    bool gap_ok{false};
    bool passed{false};

    friend bool operator==(const OracleRecord&, const OracleRecord&) = default;
};

/// N in {4, 6}, gamma in {0.5, 1, 2}, lambda in {0.2, lc - 0.05, lc + 0.05, 1, 2}.
std::vector<OracleCase> default_oracle_matrix();

OracleRecord run_oracle_case(const OracleCase& c);
std::vector<OracleRecord> run_oracle_matrix_serial(std::span<const OracleCase> cases);
std::vector<OracleRecord> run_oracle_matrix(std::span<const OracleCase> cases);

}  // namespace xyp::ed
