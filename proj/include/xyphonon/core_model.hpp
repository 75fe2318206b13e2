// Exact solution of the single-mode XX ring coupled to one phonon
//
// After Jordan-Wigner fermionization and a fermion-number dependent boson
// displacement, every eigenstate is labelled by a parity sector and a set of
// occupied momenta. Its energy is
//
//   E = -lambda (N - 2m)^2 / N + sum_{k occupied} eps_k,   eps_k = -2 cos(2 pi k / N)
//
// with the boson left in the vacuum of the displaced mode.

#pragma once

#include <span>
#include <vector>

#include "xyphonon/chain.hpp"

namespace xyp {

/// A single-particle mode. Momentum is stored doubled so that half-integer
/// labels stay integral: k = twice_k / 2.
struct Mode {
    int twice_k{0};
    double eps{0.0};

    double k() const { return 0.5 * twice_k; }
};

/// Sector momentum set with eps_k = -2 cos(2 pi k / N), sorted ascending by
/// eps with ties broken by ascending k.
std::vector<Mode> dispersion(int n_spins, Parity sector);
std::vector<Mode> dispersion(const ChainSpec& spec, Parity sector);

/// Single-particle levels of the open chain (unit hopping, no wrap bond),
/// ascending. Jordan-Wigner is exact here so there is no sector split.
std::vector<double> open_chain_levels(const ChainSpec& spec);

/// Fermionic eigenstate label: parity sector plus occupied momenta.
struct OccupationConfig {
    Parity sector{Parity::Even};
    std::vector<int> occupied_twice_k;  // ascending, no duplicates

    int filling() const { return static_cast<int>(occupied_twice_k.size()); }

    friend bool operator==(const OccupationConfig&, const OccupationConfig&) = default;
};

/// Throws InvalidArgument if the config does not belong to a ring of n_spins.
void validate_config(int n_spins, const OccupationConfig& config);

double config_energy(const ChainSpec& spec, const OccupationConfig& config);

struct FillingEnergy {
    double energy{0.0};
    OccupationConfig config;
};

/// Lowest energy among states with m fermions: fill the m lowest modes of the
/// parity-matching sector.
FillingEnergy best_energy_at_filling(const ChainSpec& spec, int m);

/// Number of distinct m-subsets of the sector that reach the minimal kinetic
/// energy (greater than one only when the Fermi level sits on a degenerate pair).
int optimal_subset_count(int n_spins, int m, double tol = 1e-12);

/// Sum of the m lowest eps_k in the parity-correct sector.
double band_energy(int n_spins, int m);

struct GroundStateReport {
    double energy{0.0};
    std::vector<int> fillings;             // ascending
    int degeneracy{0};
    std::vector<OccupationConfig> configs;  // one per filling

    friend bool operator==(const GroundStateReport&, const GroundStateReport&) = default;
};

/// tie_eps < 0 selects the default absolute tolerance 1e-12 * N.
GroundStateReport ground_state(const ChainSpec& spec, double tie_eps = -1.0);

/// Coupling at which the m-fermion optimum meets E0 = -N lambda.
/// Valid for 1 <= m <= N/2.
double crossing_lambda(int n_spins, int m);

/// First ground-state level crossing. For N divisible by 4 this is the
/// cosine sum over the antiperiodic half-filled sea; for N = 2 mod 4 the
/// half-filled state lives in the periodic sector and crossing_lambda(N, N/2)
/// is used instead.
double critical_coupling(int n_spins);
/// Infinite-chain limit 2/pi.
double critical_coupling_thermodynamic();
/// 2 / (N sin(pi/N)); equal to critical_coupling for every even N.
double critical_coupling_closed_form(int n_spins);

struct OrderParameters {
    int magnetization_total{0};  // N - 2m
    double alpha{0.0};           // coherent amplitude of the displaced mode
    double phonon_number{0.0};   // alpha^2
    double displacement{0.0};    // <a + a^dagger> = 2 alpha

    friend bool operator==(const OrderParameters&, const OrderParameters&) = default;
};

OrderParameters order_parameters(const ChainSpec& spec, int m);

struct SpectrumRow {
    double lambda{0.0};
    int m{0};
    double energy{0.0};

    friend bool operator==(const SpectrumRow&, const SpectrumRow&) = default;
};

/// Lowest level per filling m = 0..max_filling for every lambda on the grid.
/// max_filling < 0 selects N/2.
std::vector<SpectrumRow> spectrum_scan(int n_spins, std::span<const double> lambda_grid,
                                       int max_filling = -1);

}  // namespace xyp
