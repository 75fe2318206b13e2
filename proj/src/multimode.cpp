#include "xyphonon/multimode.hpp"

#include <cmath>
#include <string>

namespace xyp {

Bath::Bath(std::vector<BathMode> modes) : modes_(std::move(modes)) {
    if (modes_.empty()) throw InvalidArgument("bath must contain at least one mode");
    for (std::size_t i = 0; i < modes_.size(); ++i) {
        const auto& m = modes_[i];
        if (!(m.gamma > 0.0))
            throw InvalidArgument("bath mode " + std::to_string(i) + ": gamma must be positive");
        if (!(m.lambda >= 0.0))
            throw InvalidArgument("bath mode " + std::to_string(i) +
                                  ": lambda must be non-negative");
        lambda_total_ += m.lambda;
    }
}

Bath Bath::from_physical(const std::vector<double>& g, const std::vector<double>& omega,
                         double j) {
    if (g.size() != omega.size())
        throw InvalidArgument("g and omega lists differ in length");
    if (!(j > 0.0)) throw InvalidArgument("J must be positive");
    std::vector<BathMode> modes;
    modes.reserve(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (!(omega[i] > 0.0))
            throw InvalidArgument("bath mode " + std::to_string(i) + ": omega must be positive");
        modes.push_back({omega[i] / j, g[i] * g[i] / (j * omega[i])});
    }
    return Bath(std::move(modes));
}

std::vector<double> mode_amplitudes(int n_spins, const Bath& bath, int m) {
    if (m < 0 || m > n_spins) throw InvalidArgument("filling must lie in [0, N]");
    const int mz = n_spins - 2 * m;
    std::vector<double> alpha;
    alpha.reserve(bath.size());
    for (const auto& mode : bath.modes())
        alpha.push_back(-std::sqrt(mode.lambda / (mode.gamma * n_spins)) * mz + 0.0);
    return alpha;
}

MultimodeReport multimode_ground_state(int n_spins, const Bath& bath) {
    // gamma does not enter the ground-state energy; the first mode's value
    // only keeps the spec valid.
    const ChainSpec spec{n_spins, bath.modes().front().gamma, bath.effective_coupling(),
                         Boundary::Ring};
    MultimodeReport report;
    report.base = ground_state(spec);
    for (int m : report.base.fillings)
        report.amplitudes.push_back({m, mode_amplitudes(n_spins, bath, m)});
    return report;
}

}  // namespace xyp
