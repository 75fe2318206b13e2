// XX ring coupled uniformly to several bosonic modes
//
// Displacing every mode by its own fermion-number dependent amplitude leaves
// the same spectrum as the single-mode model with lambda replaced by the
// effective coupling Lambda = sum_n lambda_n.

#pragma once

#include <vector>

#include "xyphonon/core_model.hpp"

namespace xyp {

struct BathMode {
    double gamma{1.0};   // omega_n / J
    double lambda{0.0};  // g_n^2 / (J omega_n)
};

class Bath {
public:
    explicit Bath(std::vector<BathMode> modes);

    /// Build from physical couplings g_n, frequencies omega_n and hopping J.
    static Bath from_physical(const std::vector<double>& g, const std::vector<double>& omega,
                              double j);

    const std::vector<BathMode>& modes() const { return modes_; }
    std::size_t size() const { return modes_.size(); }
    double effective_coupling() const { return lambda_total_; }

private:
    std::vector<BathMode> modes_;
    double lambda_total_{0.0};
};

inline double effective_coupling(const Bath& bath) { return bath.effective_coupling(); }

struct ModeAmplitudes {
    int filling{0};
    std::vector<double> alpha;  // one per bath mode
};

struct MultimodeReport {
    GroundStateReport base;                   // single-mode solution at lambda = Lambda
    std::vector<ModeAmplitudes> amplitudes;   // one entry per winning filling
};

/// Coherent amplitude of each mode for a given filling:
/// alpha_n = -sqrt(lambda_n / (gamma_n N)) (N - 2m).
std::vector<double> mode_amplitudes(int n_spins, const Bath& bath, int m);

MultimodeReport multimode_ground_state(int n_spins, const Bath& bath);

}  // namespace xyp
