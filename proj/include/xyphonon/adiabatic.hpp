// Finite-temperature adiabatic limit
//
// With the phonon treated as a classical coordinate nu the chain becomes an
// XX ring in a uniform field. Integrating out the fermions gives the
// adiabatic potential
//
//   V(nu, beta) = nu^2 / (4 lambda) + nu sqrt(N) - ln Z0(nu, beta) / beta,
//   Z0 = prod_k (1 + exp(-beta eps_k(nu))),  eps_k(nu) = -2 [cos(2 pi k / N) + nu / sqrt(N)].
//
// V is even in nu. A symmetric single well means the phonon stays
// undisplaced; a double well means it is displaced.

#pragma once

#include <vector>

#include "xyphonon/core_model.hpp"

namespace xyp {

enum class MomentumGrid {
    Periodic,      // k = 1..N (odd-parity sector), the default
    Antiperiodic,  // k = 1/2..N-1/2 (even-parity sector)
};

enum class TraceMode {
    Unrestricted,     // trace over every occupation pattern of one grid
    ParityProjected,  // even patterns on the antiperiodic grid + odd on the periodic one
};

struct AdiabaticOptions {
    MomentumGrid grid{MomentumGrid::Periodic};
    TraceMode trace{TraceMode::Unrestricted};
};

/// Overflow-safe ln(1 + e^x).
double softplus(double x);

/// Fermi occupation 1 / (1 + e^{beta eps}).
double fermi(double beta, double eps);

/// eps_k(nu) over the chosen grid, in grid order (k ascending).
std::vector<Mode> adiabatic_single_particle(int n_spins, double nu,
                                            MomentumGrid grid = MomentumGrid::Periodic);

double log_partition_fermions(int n_spins, double nu, double beta,
                              const AdiabaticOptions& options = {});

double adiabatic_potential(int n_spins, double lambda, double nu, double beta,
                           const AdiabaticOptions& options = {});

/// Analytic dV/dnu and d2V/dnu2 for the unrestricted trace.
double adiabatic_potential_slope(int n_spins, double lambda, double nu, double beta,
                                 MomentumGrid grid = MomentumGrid::Periodic);
double adiabatic_potential_curvature(int n_spins, double lambda, double nu, double beta,
                                     MomentumGrid grid = MomentumGrid::Periodic);

/// V''(0) = 1/(2 lambda) - (4 beta / N) sum_k n_F (1 - n_F).
double curvature_at_origin(int n_spins, double lambda, double beta,
                           MomentumGrid grid = MomentumGrid::Periodic);

/// Coupling at which V''(0) changes sign at fixed beta; +inf when the
/// thermal susceptibility underflows to zero.
double curvature_zero_lambda(int n_spins, double beta,
                             MomentumGrid grid = MomentumGrid::Periodic);

enum class WellShape { SingleWell, DoubleWell };

inline const char* to_string(WellShape s) {
    return s == WellShape::SingleWell ? "single" : "double";
}

struct WellScan {
    int points{801};            // odd so that nu = 0 is a grid node
    double refine_tol{1e-10};   // golden-section bracket width
    double origin_tol{1e-7};    // refined minima closer than this to 0 sit at the origin
    double merge_tol{1e-6};     // refined minima closer than this are the same minimum
    AdiabaticOptions options{};
};

struct Minimum {
    double nu{0.0};
    double value{0.0};
};

struct WellReport {
    std::vector<Minimum> minima;  // ascending in nu
    WellShape classification{WellShape::SingleWell};
    double curvature_at_origin{0.0};
    bool coexistence{false};  // more than one symmetric set of local minima

    /// Location and value of the global minimum (nu >= 0 member for a double well).
    Minimum global() const;
};

/// Scan half-width 3 lambda sqrt(N) + 1.
double well_scan_range(int n_spins, double lambda);

/// Local minima of V on [-R, R], refined by golden-section search.
/// The classification follows the global minimum: DoubleWell when it sits
/// away from the origin. At low temperature the origin and several
/// displaced pairs can coexist as local minima. Only nu >= 0 is scanned;
/// the negative half is the mirror image.
WellReport find_wells(int n_spins, double lambda, double beta, const WellScan& scan = {});

}  // namespace xyp
