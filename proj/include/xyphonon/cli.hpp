// Command-line front end
//
// Exit codes: 0 success, 1 computation error, 2 invalid parameters.

#pragma once

#include <iosfwd>
#include <optional>
#include <string>

namespace xyp::cli {

enum class Command { Spectrum, GroundState, Critical, OrderParams, Multimode, PhaseDiagram, OracleCheck };
enum class Format { Csv, Json };

struct RunConfig {
    Command command{Command::Critical};
    Format format{Format::Csv};
    std::string output_path;           // empty: standard output
    std::string boundary_output_path;  // phase-diagram only; derived when empty
    int threads{0};                    // 0: OpenMP default

    int n_spins{8};
    double gamma{1.0};
    double lambda{0.0};
    std::optional<int> filling;

    double lambda_min{0.0};
    double lambda_max{1.0};
    int steps{200};
    bool all_fillings{false};

    bool thermodynamic{false};
    std::string bath_path;

    std::string lambda_grid{"0.1:2.0:64"};
    std::string temperature_grid{"0.05:2.0:64"};
    int scan_points{801};
    double bisection_tol{1e-4};

    /// Throws InvalidArgument when parameters violate the target module's preconditions.
    void validate() const;
};

/// Validates, dispatches and writes the artifact(s). Errors are reported on
/// `err` as a one-line JSON record.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv into a RunConfig and calls run().
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace xyp::cli
