// (lambda, T) phase diagram of the adiabatic potential
//
// Every grid point is an independent find_wells call. The OpenMP kernels
// write each result into its own slot, so output does not depend on the
// thread count or schedule; the serial versions are kept as the reference
// the parallel ones are tested against.

#pragma once

#include <span>
#include <vector>

#include "xyphonon/adiabatic.hpp"

namespace xyp {

struct PhasePoint {
    double lambda{0.0};
    double temperature{0.0};  // 1 / beta, units of J / k_B
    WellShape phase{WellShape::SingleWell};
    double nu_star{0.0};      // |nu| of the global minimum
    double value{0.0};        // V at the global minimum
    bool coexistence{false};

    friend bool operator==(const PhasePoint&, const PhasePoint&) = default;
};

/// Points are stored temperature-major: index = it * lambdas.size() + il.
struct PhaseGrid {
    std::vector<double> lambdas;
    std::vector<double> temperatures;
    std::vector<PhasePoint> points;

    const PhasePoint& at(std::size_t it, std::size_t il) const {
        return points[it * lambdas.size() + il];
    }
};

struct BoundaryPoint {
    double temperature{0.0};
    double lambda{0.0};            // minima-structure boundary from bisection
    double lambda_curvature{0.0};  // zero of V''(0) at the same temperature
    std::size_t lower_index{0};    // grid lambda index just below the boundary

    friend bool operator==(const BoundaryPoint&, const BoundaryPoint&) = default;
};

struct PhaseDiagram {
    PhaseGrid grid;
    std::vector<BoundaryPoint> boundary;
};

struct PhaseOptions {
    WellScan scan{};
    double bisection_tol{1e-4};
};

PhasePoint classify_point(int n_spins, double lambda, double temperature, const WellScan& scan);

PhaseGrid classify_grid_serial(int n_spins, std::span<const double> lambdas,
                               std::span<const double> temperatures, const WellScan& scan = {});
PhaseGrid classify_grid(int n_spins, std::span<const double> lambdas,
                        std::span<const double> temperatures, const WellScan& scan = {});

/// Bisects in lambda between every pair of neighbouring grid points whose
/// classification differs, down to options.bisection_tol.
std::vector<BoundaryPoint> trace_boundary_serial(int n_spins, const PhaseGrid& grid,
                                                 const PhaseOptions& options = {});
std::vector<BoundaryPoint> trace_boundary(int n_spins, const PhaseGrid& grid,
                                          const PhaseOptions& options = {});

PhaseDiagram phase_boundary(int n_spins, std::span<const double> lambdas,
                            std::span<const double> temperatures, const PhaseOptions& options = {});

/// Number of 4-connected regions of equal phase on the grid.
int count_phase_regions(const PhaseGrid& grid);

}  // namespace xyp
