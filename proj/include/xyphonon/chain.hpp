// Problem definition shared by every module
//
// Energies are measured in units of the XX hopping J; gamma = omega/J and
// lambda = g^2/(J omega) are the reduced phonon frequency and coupling.

#pragma once

#include <stdexcept>
#include <string>

namespace xyp {

/// Precondition violation on user-supplied parameters.
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Failure inside a computation (non-convergence, unexpected structure).
class ComputationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Boundary { Ring, OpenChain };

/// Fermion-number parity. Even (P=+1) uses antiperiodic momenta
/// k = 1/2, 3/2, ..., N-1/2; Odd (P=-1) uses periodic k = 1, ..., N.
enum class Parity { Even, Odd };

inline Parity parity_of_filling(int m) { return (m % 2 == 0) ? Parity::Even : Parity::Odd; }

inline const char* to_string(Parity p) { return p == Parity::Even ? "even" : "odd"; }
inline const char* to_string(Boundary b) { return b == Boundary::Ring ? "ring" : "open"; }

struct ChainSpec {
    int n_spins{8};
    double gamma{1.0};
    double lambda{0.0};
    Boundary boundary{Boundary::Ring};

    /// Throws InvalidArgument when the spec is unusable.
    void validate() const {
        if (boundary == Boundary::Ring) {
            if (n_spins < 4 || n_spins % 2 != 0)
                throw InvalidArgument("ring requires an even number of spins >= 4, got " +
                                      std::to_string(n_spins));
        } else if (n_spins < 2) {
            throw InvalidArgument("open chain requires at least 2 spins, got " +
                                  std::to_string(n_spins));
        }
        if (!(gamma > 0.0))
            throw InvalidArgument("gamma must be positive");
        if (!(lambda >= 0.0))
            throw InvalidArgument("lambda must be non-negative");
    }
};

}  // namespace xyp
