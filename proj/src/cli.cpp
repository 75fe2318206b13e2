#include "xyphonon/cli.hpp"

#include <filesystem>
#include <fstream>
#include <ostream>

#include <CLI11.hpp>
#include <json.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "xyphonon/io.hpp"

namespace xyp::cli {

namespace {

using nlohmann::json;

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

void write_artifact(const std::string& path, const std::string& content, std::ostream& out) {
    if (path.empty()) {
        out << content;
        return;
    }
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) throw ComputationError("cannot open output file " + path);
    file << content;
    if (!file) throw ComputationError("failed writing output file " + path);
}

std::string derived_boundary_path(const std::string& grid_path, Format format) {
    const std::filesystem::path p(grid_path);
    auto ext = p.extension().string();
    if (ext.empty()) ext = format == Format::Json ? ".json" : ".csv";
    return (p.parent_path() / (p.stem().string() + "_boundary" + ext)).string();
}

std::string run_spectrum(const RunConfig& c) {
    const auto grid = io::linspace(c.lambda_min, c.lambda_max, c.steps);
    const auto rows = spectrum_scan(c.n_spins, grid, c.all_fillings ? c.n_spins : -1);
    if (c.format == Format::Csv) return io::spectrum_csv(rows);
    return dump(json{{"n", c.n_spins}, {"rows", rows}});
}

std::string run_ground_state(const RunConfig& c) {
    const ChainSpec spec{c.n_spins, c.gamma, c.lambda, Boundary::Ring};
    const auto report = ground_state(spec);
    if (c.format == Format::Json) {
        json order = json::array();
        for (int m : report.fillings) {
            json entry = order_parameters(spec, m);
            entry["m"] = m;
            order.push_back(entry);
        }
        return dump(json{{"n", c.n_spins},
                         {"gamma", c.gamma},
                         {"lambda", c.lambda},
                         {"report", report},
                         {"order_parameters", order}});
    }
    std::string out = "m,energy,degeneracy,magnetization,alpha,phonon_number,displacement,occupied\n";
    for (std::size_t i = 0; i < report.fillings.size(); ++i) {
        const int m = report.fillings[i];
        const auto op = order_parameters(spec, m);
        std::string occupied;
        for (int twice_k : report.configs[i].occupied_twice_k) {
            if (!occupied.empty()) occupied += ' ';
            occupied += io::momentum_label(twice_k);
        }
        out += std::to_string(m) + "," + io::format_double(report.energy) + "," +
               std::to_string(report.degeneracy) + "," + std::to_string(op.magnetization_total) +
               "," + io::format_double(op.alpha) + "," + io::format_double(op.phonon_number) + "," +
               io::format_double(op.displacement) + "," + occupied + "\n";
    }
    return out;
}

std::string run_critical(const RunConfig& c) {
    const std::string n = c.thermodynamic ? "thermodynamic" : std::to_string(c.n_spins);
    const double value = c.thermodynamic ? critical_coupling_thermodynamic() : critical_coupling(c.n_spins);
    const double closed =
        c.thermodynamic ? critical_coupling_thermodynamic() : critical_coupling_closed_form(c.n_spins);
    if (c.format == Format::Json)
        return dump(json{{"n", n}, {"lambda_c", value}, {"closed_form", closed}});
    return "n,lambda_c,closed_form\n" + n + "," + io::format_double(value) + "," +
           io::format_double(closed) + "\n";
}

std::string run_order_params(const RunConfig& c) {
    const ChainSpec spec{c.n_spins, c.gamma, c.lambda, Boundary::Ring};
    const std::vector<int> fillings =
        c.filling ? std::vector<int>{*c.filling} : ground_state(spec).fillings;
    if (c.format == Format::Json) {
        json rows = json::array();
        for (int m : fillings) {
            json entry = order_parameters(spec, m);
            entry["m"] = m;
            rows.push_back(entry);
        }
        return dump(json{{"n", c.n_spins}, {"gamma", c.gamma}, {"lambda", c.lambda}, {"rows", rows}});
    }
    std::string out = "m,magnetization,alpha,phonon_number,displacement\n";
    for (int m : fillings) {
        const auto op = order_parameters(spec, m);
        out += std::to_string(m) + "," + std::to_string(op.magnetization_total) + "," +
               io::format_double(op.alpha) + "," + io::format_double(op.phonon_number) + "," +
               io::format_double(op.displacement) + "\n";
    }
    return out;
}

std::string run_multimode(const RunConfig& c) {
    const Bath bath = io::load_bath(c.bath_path);
    const auto report = multimode_ground_state(c.n_spins, bath);
    if (c.format == Format::Json) {
        json modes = json::array();
        for (const auto& m : bath.modes()) modes.push_back({{"gamma", m.gamma}, {"lambda", m.lambda}});
        json amps = json::array();
        for (const auto& a : report.amplitudes) amps.push_back({{"m", a.filling}, {"alpha", a.alpha}});
        return dump(json{{"n", c.n_spins},
                         {"Lambda", bath.effective_coupling()},
                         {"modes", modes},
                         {"report", report.base},
                         {"amplitudes", amps}});
    }
    std::string out = "m,energy,degeneracy,Lambda,mode,gamma,lambda,alpha\n";
    for (const auto& a : report.amplitudes) {
        for (std::size_t i = 0; i < bath.size(); ++i) {
            out += std::to_string(a.filling) + "," + io::format_double(report.base.energy) + "," +
                   std::to_string(report.base.degeneracy) + "," +
                   io::format_double(bath.effective_coupling()) + "," + std::to_string(i) + "," +
                   io::format_double(bath.modes()[i].gamma) + "," +
                   io::format_double(bath.modes()[i].lambda) + "," + io::format_double(a.alpha[i]) +
                   "\n";
        }
    }
    return out;
}

void run_phase_diagram(const RunConfig& c, std::ostream& out) {
    const auto lambdas = io::parse_grid(c.lambda_grid);
    const auto temps = io::parse_grid(c.temperature_grid);
    PhaseOptions options;
    options.scan.points = c.scan_points;
    options.bisection_tol = c.bisection_tol;
    const auto diagram = phase_boundary(c.n_spins, lambdas, temps, options);

    const std::string grid_path =
        c.output_path.empty() ? (c.format == Format::Json ? "phase_diagram.json" : "phase_diagram.csv")
                              : c.output_path;
    const std::string boundary_path = c.boundary_output_path.empty()
                                          ? derived_boundary_path(grid_path, c.format)
                                          : c.boundary_output_path;
    if (c.format == Format::Json) {
        write_artifact(grid_path, dump(json{{"n", c.n_spins}, {"points", diagram.grid.points}}), out);
        write_artifact(boundary_path, dump(json{{"n", c.n_spins}, {"boundary", diagram.boundary}}), out);
    } else {
        write_artifact(grid_path, io::phase_grid_csv(diagram.grid), out);
        write_artifact(boundary_path, io::boundary_csv(diagram.boundary), out);
    }
}

std::string run_oracle_check(const RunConfig& c, bool& all_passed) {
    const auto cases = ed::default_oracle_matrix();
    const auto records = ed::run_oracle_matrix(cases);
    all_passed = true;
    for (const auto& r : records) all_passed = all_passed && r.passed;
    json sectors = json::array();
    for (int n : {4, 6}) {
        const auto s = ed::xx_sector_check(n);
        all_passed = all_passed && s.passed;
        sectors.push_back({{"n", n},
                           {"levels", s.levels},
                           {"max_deviation", s.max_deviation},
                           {"max_parity_deviation", s.max_parity_deviation},
                           {"passed", s.passed}});
    }
    if (c.format == Format::Csv) return io::oracle_csv(records);
    return dump(json{{"cases", records}, {"sector_checks", sectors}, {"passed", all_passed}});
}

void report_error(std::ostream& err, int code, const std::string& kind, const std::string& message) {
    err << json{{"error", {{"code", code}, {"kind", kind}, {"message", message}}}}.dump() << "\n";
}

}  // namespace

void RunConfig::validate() const {
    if (threads < 0) throw InvalidArgument("--threads must be >= 0");
    switch (command) {
        case Command::Spectrum:
            ChainSpec{n_spins, 1.0, 0.0, Boundary::Ring}.validate();
            if (!(lambda_min >= 0.0)) throw InvalidArgument("--lambda-min must be >= 0");
            if (!(lambda_max > lambda_min) && !(steps == 1 && lambda_max == lambda_min))
                throw InvalidArgument("--lambda-max must exceed --lambda-min");
            if (steps < 1) throw InvalidArgument("--steps must be >= 1");
            break;
        case Command::GroundState:
            ChainSpec{n_spins, gamma, lambda, Boundary::Ring}.validate();
            break;
        case Command::Critical:
            if (!thermodynamic) ChainSpec{n_spins, 1.0, 0.0, Boundary::Ring}.validate();
            break;
        case Command::OrderParams:
            ChainSpec{n_spins, gamma, lambda, Boundary::Ring}.validate();
            if (filling && (*filling < 0 || *filling > n_spins))
                throw InvalidArgument("--m must lie in [0, N]");
            break;
        case Command::Multimode:
            ChainSpec{n_spins, 1.0, 0.0, Boundary::Ring}.validate();
            if (bath_path.empty()) throw InvalidArgument("--bath is required");
            io::load_bath(bath_path);
            break;
        case Command::PhaseDiagram: {
            ChainSpec{n_spins, 1.0, 0.0, Boundary::Ring}.validate();
            for (double l : io::parse_grid(lambda_grid))
                if (!(l > 0.0)) throw InvalidArgument("--lambda grid values must be positive");
            for (double t : io::parse_grid(temperature_grid))
                if (!(t > 0.0)) throw InvalidArgument("--temp grid values must be positive");
            if (scan_points < 5 || scan_points % 2 == 0)
                throw InvalidArgument("--scan-points must be odd and >= 5");
            if (!(bisection_tol > 0.0)) throw InvalidArgument("--bisection-tol must be positive");
            break;
        }
        case Command::OracleCheck:
            break;
    }
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        config.validate();
    } catch (const std::exception& e) {
        report_error(err, 2, "usage", e.what());
        return 2;
    }
#ifdef _OPENMP
    if (config.threads > 0) omp_set_num_threads(config.threads);
#endif
    try {
        switch (config.command) {
            case Command::Spectrum:
                write_artifact(config.output_path, run_spectrum(config), out);
                break;
            case Command::GroundState:
                write_artifact(config.output_path, run_ground_state(config), out);
                break;
            case Command::Critical:
                write_artifact(config.output_path, run_critical(config), out);
                break;
            case Command::OrderParams:
                write_artifact(config.output_path, run_order_params(config), out);
                break;
            case Command::Multimode:
                write_artifact(config.output_path, run_multimode(config), out);
                break;
            case Command::PhaseDiagram:
                run_phase_diagram(config, out);
                break;
            case Command::OracleCheck: {
                bool passed = false;
                write_artifact(config.output_path, run_oracle_check(config, passed), out);
                if (!passed) {
                    report_error(err, 1, "oracle", "oracle check failed");
                    return 1;
                }
                break;
            }
        }
    } catch (const std::exception& e) {
        report_error(err, 1, "computation", e.what());
        return 1;
    }
    return 0;
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"xyphonon: XX spin ring coupled to phonons, exact solution and checks"};
    app.require_subcommand(1);
    RunConfig cfg;
    std::string format = "csv";

    const auto common = [&](CLI::App* sub) {
        sub->add_option("-o,--output", cfg.output_path, "output file (default: stdout)");
        sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--threads", cfg.threads, "cap on worker threads");
    };

    auto* spectrum = app.add_subcommand("spectrum", "lowest level per filling over a lambda grid");
    spectrum->add_option("--n", cfg.n_spins, "number of spins")->required();
    spectrum->add_option("--lambda-min", cfg.lambda_min);
    spectrum->add_option("--lambda-max", cfg.lambda_max);
    spectrum->add_option("--steps", cfg.steps, "number of grid points, endpoints included");
    spectrum->add_flag("--all-fillings", cfg.all_fillings, "emit m = 0..N instead of 0..N/2");
    common(spectrum);

    auto* ground = app.add_subcommand("ground-state", "ground state, degeneracy and order parameters");
    ground->add_option("--n", cfg.n_spins)->required();
    ground->add_option("--lambda", cfg.lambda)->required();
    ground->add_option("--gamma", cfg.gamma);
    common(ground);

    auto* critical = app.add_subcommand("critical", "critical coupling");
    auto* n_opt = critical->add_option("--n", cfg.n_spins);
    auto* thermo = critical->add_flag("--thermodynamic", cfg.thermodynamic, "infinite chain");
    n_opt->excludes(thermo);
    common(critical);

    auto* order = app.add_subcommand("order-params", "coherent amplitude and phonon number");
    order->add_option("--n", cfg.n_spins)->required();
    order->add_option("--lambda", cfg.lambda)->required();
    order->add_option("--gamma", cfg.gamma);
    order->add_option("--m", cfg.filling, "filling (default: ground-state fillings)");
    common(order);

    auto* multi = app.add_subcommand("multimode", "ground state with a bath of modes");
    multi->add_option("--n", cfg.n_spins)->required();
    multi->add_option("--bath", cfg.bath_path, "JSON mode list")->required();
    common(multi);

    auto* phase = app.add_subcommand("phase-diagram", "adiabatic (lambda, T) phase diagram");
    phase->add_option("--n", cfg.n_spins)->required();
    phase->add_option("--lambda", cfg.lambda_grid, "min:max:count");
    phase->add_option("--temp", cfg.temperature_grid, "min:max:count");
    phase->add_option("--scan-points", cfg.scan_points, "nu grid points per well search");
    phase->add_option("--bisection-tol", cfg.bisection_tol);
    phase->add_option("--boundary-output", cfg.boundary_output_path);
    common(phase);

    auto* oracle = app.add_subcommand("oracle-check", "exact diagonalization comparison report");
    common(oracle);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            app.exit(e, out, err);
            return 0;
        }
        report_error(err, 2, "usage", e.what());
        return 2;
    }

    if (critical->parsed() && !cfg.thermodynamic && n_opt->count() == 0) {
        report_error(err, 2, "usage", "critical needs --n or --thermodynamic");
        return 2;
    }
    if (spectrum->parsed()) cfg.command = Command::Spectrum;
    else if (ground->parsed()) cfg.command = Command::GroundState;
    else if (critical->parsed()) cfg.command = Command::Critical;
    else if (order->parsed()) cfg.command = Command::OrderParams;
    else if (multi->parsed()) cfg.command = Command::Multimode;
    else if (phase->parsed()) cfg.command = Command::PhaseDiagram;
    else cfg.command = Command::OracleCheck;
    cfg.format = format == "json" ? Format::Json : Format::Csv;
    return run(cfg, out, err);
}

}  // namespace xyp::cli
