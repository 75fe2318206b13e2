#include "xyphonon/phase_grid.hpp"

#include <cmath>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace xyp {

namespace {

void require_grids(std::span<const double> lambdas, std::span<const double> temperatures) {
    if (lambdas.empty() || temperatures.empty()) throw InvalidArgument("phase grid is empty");
    for (double l : lambdas)
        if (!(l > 0.0)) throw InvalidArgument("lambda grid values must be positive");
    for (double t : temperatures)
        if (!(t > 0.0)) throw InvalidArgument("temperature grid values must be positive");
}

PhaseGrid empty_grid(std::span<const double> lambdas, std::span<const double> temperatures) {
    PhaseGrid grid;
    grid.lambdas.assign(lambdas.begin(), lambdas.end());
    grid.temperatures.assign(temperatures.begin(), temperatures.end());
    grid.points.resize(lambdas.size() * temperatures.size());
    return grid;
}

// All boundary brackets in one temperature row.
std::vector<BoundaryPoint> trace_row(int n_spins, const PhaseGrid& grid, std::size_t it,
                                     const PhaseOptions& options) {
    std::vector<BoundaryPoint> out;
    const double temperature = grid.temperatures[it];
    const double beta = 1.0 / temperature;
    for (std::size_t il = 0; il + 1 < grid.lambdas.size(); ++il) {
        const WellShape left = grid.at(it, il).phase;
        if (left == grid.at(it, il + 1).phase) continue;
        double lo = grid.lambdas[il], hi = grid.lambdas[il + 1];
        while (hi - lo > options.bisection_tol) {
            const double mid = 0.5 * (lo + hi);
            if (find_wells(n_spins, mid, beta, options.scan).classification == left)
                lo = mid;
            else
                hi = mid;
        }
        out.push_back({temperature, 0.5 * (lo + hi),
                       curvature_zero_lambda(n_spins, beta, options.scan.options.grid), il});
    }
    return out;
}

}  // namespace

PhasePoint classify_point(int n_spins, double lambda, double temperature, const WellScan& scan) {
    const auto wells = find_wells(n_spins, lambda, 1.0 / temperature, scan);
    const auto best = wells.global();
    return {lambda, temperature, wells.classification, best.nu, best.value, wells.coexistence};
}

PhaseGrid classify_grid_serial(int n_spins, std::span<const double> lambdas,
                               std::span<const double> temperatures, const WellScan& scan) {
    require_grids(lambdas, temperatures);
    auto grid = empty_grid(lambdas, temperatures);
    for (std::size_t it = 0; it < temperatures.size(); ++it)
        for (std::size_t il = 0; il < lambdas.size(); ++il)
            grid.points[it * lambdas.size() + il] =
                classify_point(n_spins, lambdas[il], temperatures[it], scan);
    return grid;
}

PhaseGrid classify_grid(int n_spins, std::span<const double> lambdas,
                        std::span<const double> temperatures, const WellScan& scan) {
    require_grids(lambdas, temperatures);
    auto grid = empty_grid(lambdas, temperatures);
    const auto total = static_cast<std::ptrdiff_t>(grid.points.size());
    const std::size_t width = lambdas.size();
    std::string failure;
#pragma omp parallel for schedule(dynamic, 4)
    for (std::ptrdiff_t idx = 0; idx < total; ++idx) {
        try {
            const auto it = static_cast<std::size_t>(idx) / width;
            const auto il = static_cast<std::size_t>(idx) % width;
            grid.points[idx] = classify_point(n_spins, lambdas[il], temperatures[it], scan);
        } catch (const std::exception& e) {
#pragma omp critical(phase_grid_failure)
            if (failure.empty()) failure = e.what();
        }
    }
    if (!failure.empty()) throw ComputationError(failure);
    return grid;
}

std::vector<BoundaryPoint> trace_boundary_serial(int n_spins, const PhaseGrid& grid,
                                                 const PhaseOptions& options) {
    std::vector<BoundaryPoint> out;
    for (std::size_t it = 0; it < grid.temperatures.size(); ++it) {
        auto row = trace_row(n_spins, grid, it, options);
        out.insert(out.end(), row.begin(), row.end());
    }
    return out;
}

std::vector<BoundaryPoint> trace_boundary(int n_spins, const PhaseGrid& grid,
                                          const PhaseOptions& options) {
    const auto rows = static_cast<std::ptrdiff_t>(grid.temperatures.size());
    std::vector<std::vector<BoundaryPoint>> per_row(grid.temperatures.size());
    std::string failure;
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t it = 0; it < rows; ++it) {
        try {
            per_row[it] = trace_row(n_spins, grid, static_cast<std::size_t>(it), options);
        } catch (const std::exception& e) {
#pragma omp critical(phase_boundary_failure)
            if (failure.empty()) failure = e.what();
        }
    }
    if (!failure.empty()) throw ComputationError(failure);
    std::vector<BoundaryPoint> out;
    for (auto& row : per_row) out.insert(out.end(), row.begin(), row.end());
    return out;
}

PhaseDiagram phase_boundary(int n_spins, std::span<const double> lambdas,
                            std::span<const double> temperatures, const PhaseOptions& options) {
    if (!(options.bisection_tol > 0.0)) throw InvalidArgument("bisection tolerance must be positive");
    PhaseDiagram diagram;
    diagram.grid = classify_grid(n_spins, lambdas, temperatures, options.scan);
    diagram.boundary = trace_boundary(n_spins, diagram.grid, options);
    return diagram;
}

int count_phase_regions(const PhaseGrid& grid) {
    const std::size_t rows = grid.temperatures.size(), cols = grid.lambdas.size();
    std::vector<int> label(rows * cols, -1);
    int regions = 0;
    std::vector<std::size_t> stack;
    for (std::size_t start = 0; start < label.size(); ++start) {
        if (label[start] >= 0) continue;
        label[start] = regions;
        stack.push_back(start);
        while (!stack.empty()) {
            const std::size_t idx = stack.back();
            stack.pop_back();
            const std::size_t r = idx / cols, c = idx % cols;
            const auto visit = [&](std::size_t n) {
                if (label[n] < 0 && grid.points[n].phase == grid.points[idx].phase) {
                    label[n] = regions;
                    stack.push_back(n);
                }
            };
            if (r > 0) visit(idx - cols);
            if (r + 1 < rows) visit(idx + cols);
            if (c > 0) visit(idx - 1);
            if (c + 1 < cols) visit(idx + 1);
        }
        ++regions;
    }
    return regions;
}

}  // namespace xyp
