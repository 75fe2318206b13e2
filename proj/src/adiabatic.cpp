#include "xyphonon/adiabatic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace xyp {

namespace {

void require_params(int n_spins, double beta) {
    if (n_spins < 4 || n_spins % 2 != 0)
        throw InvalidArgument("adiabatic model requires an even number of spins >= 4, got " +
                              std::to_string(n_spins));
    if (!(beta > 0.0)) throw InvalidArgument("beta must be positive");
}

void require_lambda(double lambda) {
    if (!(lambda > 0.0)) throw InvalidArgument("lambda must be positive in the adiabatic limit");
}

std::vector<double> grid_energies(int n_spins, double nu, MomentumGrid grid) {
    std::vector<double> eps;
    eps.reserve(n_spins);
    for (const auto& mode : adiabatic_single_particle(n_spins, nu, grid)) eps.push_back(mode.eps);
    return eps;
}

// ln|prod_k (1 + sign * e^{t_k})| and the sign of the product, t_k = -beta eps_k.
struct SignedLog {
    double log_abs{0.0};
    int sign{1};
};

SignedLog log_product(const std::vector<double>& eps, double beta, int sign) {
    SignedLog out;
    for (double e : eps) {
        const double t = -beta * e;
        if (sign > 0) {
            out.log_abs += softplus(t);
        } else if (t == 0.0) {
            return {-std::numeric_limits<double>::infinity(), 0};
        } else if (t < 0.0) {
            out.log_abs += std::log(-std::expm1(t));  // 1 - e^t in (0, 1)
        } else {
            out.log_abs += t + std::log1p(-std::exp(-t));  // e^t - 1 > 0
            out.sign = -out.sign;
        }
    }
    return out;
}

double projected_log_partition(int n_spins, double nu, double beta) {
    const auto anti = grid_energies(n_spins, nu, MomentumGrid::Antiperiodic);
    const auto peri = grid_energies(n_spins, nu, MomentumGrid::Periodic);
    // even patterns: (A+ + A-)/2, odd patterns: (P+ - P-)/2
    const SignedLog terms[4] = {log_product(anti, beta, +1), log_product(anti, beta, -1),
                                log_product(peri, beta, +1), log_product(peri, beta, -1)};
    const int coeff[4] = {+1, +1, +1, -1};
    double top = -std::numeric_limits<double>::infinity();
    for (const auto& t : terms)
        if (t.sign != 0) top = std::max(top, t.log_abs);
    double sum = 0.0;
    for (int i = 0; i < 4; ++i)
        if (terms[i].sign != 0) sum += coeff[i] * terms[i].sign * std::exp(terms[i].log_abs - top);
    if (!(sum > 0.0)) throw ComputationError("parity-projected trace lost all precision");
    return top + std::log(0.5 * sum);
}

// Grid energies at nu = 0 in k order; eps_k(nu) = base_k - 2 nu / sqrt(N).
std::vector<double> base_energies(int n_spins, MomentumGrid grid) {
    return grid_energies(n_spins, 0.0, grid);
}

double unrestricted_log_partition(const std::vector<double>& base, double nu, double beta) {
    const double shift = -2.0 * nu / std::sqrt(static_cast<double>(base.size()));
    double sum = 0.0;
    for (double e : base) sum += softplus(-beta * (e + shift));
    return sum;
}

double golden_section(const auto& f, double a, double b, double tol) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > tol) {
        if (fc <= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

}  // namespace

double softplus(double x) { return std::max(x, 0.0) + std::log1p(std::exp(-std::abs(x))); }

double fermi(double beta, double eps) {
    const double x = beta * eps;
    if (x >= 0.0) {
        const double e = std::exp(-x);
        return e / (1.0 + e);
    }
    return 1.0 / (1.0 + std::exp(x));
}

std::vector<Mode> adiabatic_single_particle(int n_spins, double nu, MomentumGrid grid) {
    const Parity sector = grid == MomentumGrid::Periodic ? Parity::Odd : Parity::Even;
    auto modes = dispersion(n_spins, sector);
    std::sort(modes.begin(), modes.end(),
              [](const Mode& a, const Mode& b) { return a.twice_k < b.twice_k; });
    const double shift = -2.0 * nu / std::sqrt(static_cast<double>(n_spins));
    for (auto& mode : modes) mode.eps += shift;
    return modes;
}

double log_partition_fermions(int n_spins, double nu, double beta,
                              const AdiabaticOptions& options) {
    require_params(n_spins, beta);
    if (options.trace == TraceMode::ParityProjected)
        return projected_log_partition(n_spins, nu, beta);
    return unrestricted_log_partition(base_energies(n_spins, options.grid), nu, beta);
}

double adiabatic_potential(int n_spins, double lambda, double nu, double beta,
                           const AdiabaticOptions& options) {
    require_lambda(lambda);
    const double root_n = std::sqrt(static_cast<double>(n_spins));
    return nu * nu / (4.0 * lambda) + nu * root_n -
           log_partition_fermions(n_spins, nu, beta, options) / beta;
}

double adiabatic_potential_slope(int n_spins, double lambda, double nu, double beta,
                                 MomentumGrid grid) {
    require_params(n_spins, beta);
    require_lambda(lambda);
    const double root_n = std::sqrt(static_cast<double>(n_spins));
    double occupied = 0.0;
    for (double e : grid_energies(n_spins, nu, grid)) occupied += fermi(beta, e);
    return nu / (2.0 * lambda) + root_n - 2.0 * occupied / root_n;
}

double adiabatic_potential_curvature(int n_spins, double lambda, double nu, double beta,
                                     MomentumGrid grid) {
    require_params(n_spins, beta);
    require_lambda(lambda);
    double fluctuation = 0.0;
    for (double e : grid_energies(n_spins, nu, grid)) {
        const double n = fermi(beta, e);
        fluctuation += n * (1.0 - n);
    }
    return 1.0 / (2.0 * lambda) - 4.0 * beta * fluctuation / n_spins;
}

double curvature_at_origin(int n_spins, double lambda, double beta, MomentumGrid grid) {
    return adiabatic_potential_curvature(n_spins, lambda, 0.0, beta, grid);
}

double curvature_zero_lambda(int n_spins, double beta, MomentumGrid grid) {
    require_params(n_spins, beta);
    double fluctuation = 0.0;
    for (double e : grid_energies(n_spins, 0.0, grid)) {
        const double n = fermi(beta, e);
        fluctuation += n * (1.0 - n);
    }
    if (fluctuation == 0.0) return std::numeric_limits<double>::infinity();
    return n_spins / (8.0 * beta * fluctuation);
}

Minimum WellReport::global() const {
    Minimum best = minima.front();
    for (const auto& m : minima)
        if (m.value < best.value || (m.value == best.value && m.nu > best.nu)) best = m;
    if (classification == WellShape::DoubleWell) best.nu = std::abs(best.nu);
    return best;
}

double well_scan_range(int n_spins, double lambda) {
    return 3.0 * lambda * std::sqrt(static_cast<double>(n_spins)) + 1.0;
}

WellReport find_wells(int n_spins, double lambda, double beta, const WellScan& scan) {
    require_params(n_spins, beta);
    require_lambda(lambda);
    if (scan.points < 5 || scan.points % 2 == 0)
        throw InvalidArgument("well scan needs an odd number of points >= 5");

    const bool projected = scan.options.trace == TraceMode::ParityProjected;
    const auto base = base_energies(n_spins, scan.options.grid);
    const double root_n = std::sqrt(static_cast<double>(n_spins));
    const auto potential = [&](double nu) {
        if (projected) return adiabatic_potential(n_spins, lambda, nu, beta, scan.options);
        return nu * nu / (4.0 * lambda) + nu * root_n -
               unrestricted_log_partition(base, nu, beta) / beta;
    };
    const double range = well_scan_range(n_spins, lambda);
    const int half = scan.points / 2;
    const double step = range / half;
    // V is even in nu, so only nu >= 0 is evaluated and the scan is
    // mirrored; this keeps the discrete minimum search exactly symmetric
    std::vector<double> nu(scan.points), v(scan.points);
    for (int j = 0; j <= half; ++j) {
        nu[half + j] = j * step;
        nu[half - j] = -nu[half + j];
        v[half + j] = v[half - j] = potential(nu[half + j]);
    }

    std::vector<Minimum> found;
    const double at_origin = v[half];
    // golden section on V cannot resolve a flat minimum below ~sqrt(machine eps);
    // with the unrestricted trace the analytic slope is bisected instead
    const auto slope = [&](double x) {
        return adiabatic_potential_slope(n_spins, lambda, x, beta, scan.options.grid);
    };
    const auto bisect_slope = [&](double a, double b) {
        while (b - a > scan.refine_tol) {
            const double mid = 0.5 * (a + b);
            if (mid <= a || mid >= b) break;
            (slope(mid) < 0.0 ? a : b) = mid;
        }
        return 0.5 * (a + b);
    };
    const auto locate = [&](double a, double b) {
        if (!projected && slope(a) < 0.0 && slope(b) > 0.0) return bisect_slope(a, b);
        return golden_section(potential, a, b, scan.refine_tol);
    };
    // value differences this small are rounding noise in V
    const double noise = 64.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(at_origin));
    const auto keep = [&](double x, double value) {
        if (x <= std::max(scan.origin_tol, scan.merge_tol)) return false;
        return value < at_origin - noise;
    };
    const auto refine = [&](double a, double b) {
        const double x = locate(a, b);
        const double value = potential(x);
        found.push_back(x <= scan.origin_tol ? Minimum{0.0, at_origin} : Minimum{x, value});
    };
    // the half-interval next to the origin can hide a displaced minimum
    // closer to 0 than one grid step
    const auto refine_origin = [&](double b) {
        if (!projected) {
            // slope(0) vanishes, so sign changes of the slope are located
            // on a sub-grid instead of trusting V differences near 0
            const int sub = 64;
            double prev = 0.0;
            bool falling = curvature_at_origin(n_spins, lambda, beta, scan.options.grid) < 0.0;
            for (int j = 1; j <= sub; ++j) {
                const double x = b * j / sub;
                const double s = slope(x);
                if (falling && s > 0.0) {
                    const double root = bisect_slope(prev, x);
                    const double value = potential(root);
                    if (keep(root, value)) {
                        found.push_back({root, value});
                        return;
                    }
                    break;
                }
                falling = falling || s < 0.0;
                prev = x;
            }
            found.push_back({0.0, at_origin});
            return;
        }
        const double x = golden_section(potential, 0.0, b, scan.refine_tol);
        const double value = potential(x);
        found.push_back(keep(x, value) ? Minimum{x, value} : Minimum{0.0, at_origin});
    };
    for (int i = half; i + 1 < scan.points; ++i) {
        const bool is_min = v[i] <= v[i - 1] && v[i] <= v[i + 1] && (v[i] < v[i - 1] || v[i] < v[i + 1]);
        if (!is_min) continue;
        if (i == half)
            refine_origin(nu[i + 1]);
        else
            refine(nu[i - 1], nu[i + 1]);
    }
    if (v.back() < v[scan.points - 2])
        throw ComputationError("adiabatic potential decreases at the edge of the scan range");
    if (found.empty()) throw ComputationError("no minimum of the adiabatic potential found");

    std::sort(found.begin(), found.end(),
              [](const Minimum& a, const Minimum& b) { return a.nu < b.nu; });
    std::vector<Minimum> half_line;
    for (const auto& m : found) {
        if (!half_line.empty() && m.nu - half_line.back().nu <= scan.merge_tol) {
            if (m.value < half_line.back().value) half_line.back() = m;
            continue;
        }
        half_line.push_back(m);
    }

    WellReport report;
    for (auto it = half_line.rbegin(); it != half_line.rend(); ++it)
        if (it->nu > 0.0) report.minima.push_back({-it->nu, it->value});
    report.minima.insert(report.minima.end(), half_line.begin(), half_line.end());
    report.curvature_at_origin = curvature_at_origin(n_spins, lambda, beta, scan.options.grid);

    // At low temperature the gapped finite ring leaves one local minimum per
    // filling branch, so several displaced pairs can coexist with the origin.
    const bool has_origin = half_line.front().nu == 0.0;
    double side = std::numeric_limits<double>::infinity();
    for (const auto& m : half_line)
        if (m.nu > 0.0) side = std::min(side, m.value);
    const auto pairs = half_line.size() - (has_origin ? 1 : 0);
    if (pairs == 0) {
        report.classification = WellShape::SingleWell;
    } else {
        report.classification = (!has_origin || side < half_line.front().value)
                                    ? WellShape::DoubleWell
                                    : WellShape::SingleWell;
        report.coexistence = has_origin || pairs > 1;
    }
    return report;
}

}  // namespace xyp
