#include "xyphonon/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace xyp::io {

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

std::string momentum_label(int twice_k) {
    if (twice_k % 2 == 0) return std::to_string(twice_k / 2);
    return std::to_string(twice_k) + "/2";
}

int parse_momentum_label(std::string_view label) {
    const auto slash = label.find('/');
    const auto head = label.substr(0, slash);
    int value = 0;
    const auto [ptr, ec] = std::from_chars(head.data(), head.data() + head.size(), value);
    if (ec != std::errc{} || ptr != head.data() + head.size())
        throw InvalidArgument("malformed momentum label '" + std::string(label) + "'");
    if (slash == std::string_view::npos) return 2 * value;
    if (label.substr(slash + 1) != "2")
        throw InvalidArgument("momentum label denominator must be 2: '" + std::string(label) + "'");
    return value;
}

namespace {

double parse_number(std::string_view text, std::string_view what) {
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        throw InvalidArgument("malformed " + std::string(what) + " '" + std::string(text) + "'");
    return value;
}

}  // namespace

std::vector<double> linspace(double lo, double hi, int count) {
    if (count < 1) throw InvalidArgument("grid count must be >= 1");
    if (count == 1) {
        if (lo != hi) throw InvalidArgument("a one-point grid needs min == max");
        return {lo};
    }
    if (!(hi > lo)) throw InvalidArgument("grid needs max > min");
    std::vector<double> grid(count);
    const double step = (hi - lo) / (count - 1);
    for (int i = 0; i < count; ++i) grid[i] = lo + i * step;
    grid.back() = hi;
    return grid;
}

std::vector<double> parse_grid(std::string_view text) {
    const auto first = text.find(':');
    const auto second = first == std::string_view::npos ? first : text.find(':', first + 1);
    if (second == std::string_view::npos || text.find(':', second + 1) != std::string_view::npos)
        throw InvalidArgument("grid must have the form min:max:count, got '" + std::string(text) + "'");
    const double lo = parse_number(text.substr(0, first), "grid minimum");
    const double hi = parse_number(text.substr(first + 1, second - first - 1), "grid maximum");
    const auto count_text = text.substr(second + 1);
    int count = 0;
    const auto [ptr, ec] =
        std::from_chars(count_text.data(), count_text.data() + count_text.size(), count);
    if (ec != std::errc{} || ptr != count_text.data() + count_text.size())
        throw InvalidArgument("malformed grid count '" + std::string(count_text) + "'");
    return linspace(lo, hi, count);
}

Bath parse_bath(std::string_view json_text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw InvalidArgument(std::string("bath file is not valid JSON: ") + e.what());
    }
    if (!doc.is_array()) throw InvalidArgument("bath file must hold a JSON array of modes");
    if (doc.empty()) throw InvalidArgument("bath must contain at least one mode");

    enum class Schema { Unknown, Reduced, Physical } schema = Schema::Unknown;
    std::vector<BathMode> reduced;
    std::vector<double> g, omega, j_values;
    for (std::size_t i = 0; i < doc.size(); ++i) {
        const auto& entry = doc[i];
        const std::string where = "bath entry " + std::to_string(i);
        if (!entry.is_object()) throw InvalidArgument(where + ": expected an object");
        const bool is_reduced = entry.contains("gamma") || entry.contains("lambda");
        const bool is_physical = entry.contains("g") || entry.contains("omega") || entry.contains("j");
        if (is_reduced && is_physical)
            throw InvalidArgument(where + ": mixes reduced and physical fields");
        const Schema here = is_reduced ? Schema::Reduced : is_physical ? Schema::Physical : Schema::Unknown;
        if (here == Schema::Unknown)
            throw InvalidArgument(where + ": expected {gamma, lambda} or {g, omega, j}");
        if (schema != Schema::Unknown && here != schema)
            throw InvalidArgument(where + ": mixed schemas in one bath file");
        schema = here;

        const auto field = [&](const char* name) {
            if (!entry.contains(name))
                throw InvalidArgument(where + ": missing field '" + name + "'");
            const auto& v = entry.at(name);
            if (!v.is_number())
                throw InvalidArgument(where + ": field '" + name + "' must be a number");
            return v.get<double>();
        };
        if (schema == Schema::Reduced) {
            const double gamma = field("gamma"), lambda = field("lambda");
            if (!(gamma > 0.0)) throw InvalidArgument(where + ": field 'gamma' must be positive");
            if (!(lambda >= 0.0))
                throw InvalidArgument(where + ": field 'lambda' must be non-negative");
            reduced.push_back({gamma, lambda});
        } else {
            const double gi = field("g"), wi = field("omega"), ji = field("j");
            if (!(wi > 0.0)) throw InvalidArgument(where + ": field 'omega' must be positive");
            if (!(ji > 0.0)) throw InvalidArgument(where + ": field 'j' must be positive");
            reduced.push_back({wi / ji, gi * gi / (ji * wi)});
        }
    }
    return Bath(std::move(reduced));
}

Bath load_bath(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open bath file " + path.string());
    std::ostringstream text;
    text << in.rdbuf();
    return parse_bath(text.str());
}

std::string spectrum_csv(const std::vector<SpectrumRow>& rows) {
    std::string out = "lambda,m,energy\n";
    for (const auto& r : rows)
        out += format_double(r.lambda) + "," + std::to_string(r.m) + "," + format_double(r.energy) + "\n";
    return out;
}

std::string phase_grid_csv(const PhaseGrid& grid) {
    std::string out = "lambda,T,phase,nu_star,V,coexistence\n";
    for (const auto& p : grid.points)
        out += format_double(p.lambda) + "," + format_double(p.temperature) + "," +
               to_string(p.phase) + "," + format_double(p.nu_star) + "," + format_double(p.value) +
               "," + (p.coexistence ? "1" : "0") + "\n";
    return out;
}

std::string boundary_csv(const std::vector<BoundaryPoint>& boundary) {
    std::string out = "T,lambda,lambda_curvature\n";
    for (const auto& b : boundary)
        out += format_double(b.temperature) + "," + format_double(b.lambda) + "," +
               format_double(b.lambda_curvature) + "\n";
    return out;
}

std::string oracle_csv(const std::vector<ed::OracleRecord>& records) {
    std::string out =
        "n,gamma,lambda,n_cut,lambda_c,analytic_energy,ed_energy,gap,sigma_z,boson_number,"
        "displacement,gap_rule,energy_ok,gap_ok,passed\n";
    for (const auto& r : records)
        out += std::to_string(r.input.n_spins) + "," + format_double(r.input.gamma) + "," +
               format_double(r.input.lambda) + "," + std::to_string(r.n_cut) + "," +
               format_double(r.lambda_c) + "," + format_double(r.analytic_energy) + "," +
               format_double(r.ed_energy) + "," + format_double(r.gap) + "," +
               format_double(r.observables.sigma_z_total) + "," +
               format_double(r.observables.boson_number) + "," +
               format_double(r.observables.displacement) + "," + r.gap_rule + "," +
               (r.energy_ok ? "1" : "0") + "," + (r.gap_ok ? "1" : "0") + "," +
               (r.passed ? "1" : "0") + "\n";
    return out;
}

}  // namespace xyp::io

namespace xyp {

using nlohmann::json;

void to_json(json& j, const SpectrumRow& r) {
    j = json{{"lambda", r.lambda}, {"m", r.m}, {"energy", r.energy}};
}
void from_json(const json& j, SpectrumRow& r) {
    j.at("lambda").get_to(r.lambda);
    j.at("m").get_to(r.m);
    j.at("energy").get_to(r.energy);
}

void to_json(json& j, const OccupationConfig& c) {
    json occupied = json::array();
    for (int twice_k : c.occupied_twice_k) occupied.push_back(io::momentum_label(twice_k));
    j = json{{"sector", to_string(c.sector)}, {"occupied", occupied}};
}
void from_json(const json& j, OccupationConfig& c) {
    const auto sector = j.at("sector").get<std::string>();
    if (sector != "even" && sector != "odd") throw InvalidArgument("unknown sector '" + sector + "'");
    c.sector = sector == "even" ? Parity::Even : Parity::Odd;
    c.occupied_twice_k.clear();
    for (const auto& label : j.at("occupied"))
        c.occupied_twice_k.push_back(io::parse_momentum_label(label.get<std::string>()));
}

void to_json(json& j, const OrderParameters& o) {
    j = json{{"magnetization", o.magnetization_total},
             {"alpha", o.alpha},
             {"phonon_number", o.phonon_number},
             {"displacement", o.displacement}};
}
void from_json(const json& j, OrderParameters& o) {
    j.at("magnetization").get_to(o.magnetization_total);
    j.at("alpha").get_to(o.alpha);
    j.at("phonon_number").get_to(o.phonon_number);
    j.at("displacement").get_to(o.displacement);
}

void to_json(json& j, const GroundStateReport& r) {
    j = json{{"energy", r.energy},
             {"fillings", r.fillings},
             {"degeneracy", r.degeneracy},
             {"configs", r.configs}};
}
void from_json(const json& j, GroundStateReport& r) {
    j.at("energy").get_to(r.energy);
    j.at("fillings").get_to(r.fillings);
    j.at("degeneracy").get_to(r.degeneracy);
    j.at("configs").get_to(r.configs);
}

void to_json(json& j, const PhasePoint& p) {
    j = json{{"lambda", p.lambda},   {"T", p.temperature}, {"phase", to_string(p.phase)},
             {"nu_star", p.nu_star}, {"V", p.value},       {"coexistence", p.coexistence}};
}
void from_json(const json& j, PhasePoint& p) {
    j.at("lambda").get_to(p.lambda);
    j.at("T").get_to(p.temperature);
    const auto phase = j.at("phase").get<std::string>();
    if (phase != "single" && phase != "double") throw InvalidArgument("unknown phase '" + phase + "'");
    p.phase = phase == "single" ? WellShape::SingleWell : WellShape::DoubleWell;
    j.at("nu_star").get_to(p.nu_star);
    j.at("V").get_to(p.value);
    j.at("coexistence").get_to(p.coexistence);
}

void to_json(json& j, const BoundaryPoint& b) {
    j = json{{"T", b.temperature},
             {"lambda", b.lambda},
             {"lambda_curvature", b.lambda_curvature},
             {"lower_index", b.lower_index}};
}
void from_json(const json& j, BoundaryPoint& b) {
    j.at("T").get_to(b.temperature);
    j.at("lambda").get_to(b.lambda);
    j.at("lambda_curvature").get_to(b.lambda_curvature);
    j.at("lower_index").get_to(b.lower_index);
}

}  // namespace xyp

namespace xyp::ed {

using nlohmann::json;

void to_json(json& j, const Observables& o) {
    j = json{{"sigma_z", o.sigma_z_total},
             {"boson_number", o.boson_number},
             {"displacement", o.displacement}};
}
void from_json(const json& j, Observables& o) {
    j.at("sigma_z").get_to(o.sigma_z_total);
    j.at("boson_number").get_to(o.boson_number);
    j.at("displacement").get_to(o.displacement);
}

void to_json(json& j, const OracleRecord& r) {
    j = json{{"n", r.input.n_spins},
             {"gamma", r.input.gamma},
             {"lambda", r.input.lambda},
             {"n_cut", r.n_cut},
             {"lambda_c", r.lambda_c},
             {"analytic_energy", r.analytic_energy},
             {"ed_energy", r.ed_energy},
             {"gap", r.gap},
             {"observables", r.observables},
             {"gap_rule", r.gap_rule},
             {"energy_ok", r.energy_ok},
             {"gap_ok", r.gap_ok},
             {"passed", r.passed}};
}
void from_json(const json& j, OracleRecord& r) {
    j.at("n").get_to(r.input.n_spins);
    j.at("gamma").get_to(r.input.gamma);
    j.at("lambda").get_to(r.input.lambda);
    j.at("n_cut").get_to(r.n_cut);
    j.at("lambda_c").get_to(r.lambda_c);
    j.at("analytic_energy").get_to(r.analytic_energy);
    j.at("ed_energy").get_to(r.ed_energy);
    j.at("gap").get_to(r.gap);
    j.at("observables").get_to(r.observables);
    j.at("gap_rule").get_to(r.gap_rule);
    j.at("energy_ok").get_to(r.energy_ok);
    j.at("gap_ok").get_to(r.gap_ok);
    j.at("passed").get_to(r.passed);
}

}  // namespace xyp::ed
