// Number formatting, grid syntax, bath files and report serialization

#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "xyphonon/core_model.hpp"
#include "xyphonon/ed_oracle.hpp"
#include "xyphonon/multimode.hpp"
#include "xyphonon/phase_grid.hpp"

namespace xyp::io {

/// Shortest representation that round-trips (never more than 17 significant digits).
std::string format_double(double x);

/// k = twice_k / 2 written as "p/2" for half-integers and as an integer otherwise.
std::string momentum_label(int twice_k);
int parse_momentum_label(std::string_view label);

/// Inclusive grid "min:max:count"; count = 1 requires min == max.
std::vector<double> parse_grid(std::string_view text);
std::vector<double> linspace(double lo, double hi, int count);

/// JSON array of {"gamma", "lambda"} or of {"g", "omega", "j"} entries.
Bath parse_bath(std::string_view json_text);
Bath load_bath(const std::filesystem::path& path);

// CSV emitters: fixed header, one record per line, LF endings.
std::string spectrum_csv(const std::vector<SpectrumRow>& rows);
std::string phase_grid_csv(const PhaseGrid& grid);
std::string boundary_csv(const std::vector<BoundaryPoint>& boundary);
std::string oracle_csv(const std::vector<ed::OracleRecord>& records);

}  // namespace xyp::io

// nlohmann ADL hooks; field names mirror the CSV headers.
namespace xyp {
void to_json(nlohmann::json& j, const SpectrumRow& r);
void from_json(const nlohmann::json& j, SpectrumRow& r);
void to_json(nlohmann::json& j, const OccupationConfig& c);
void from_json(const nlohmann::json& j, OccupationConfig& c);
void to_json(nlohmann::json& j, const OrderParameters& o);
void from_json(const nlohmann::json& j, OrderParameters& o);
void to_json(nlohmann::json& j, const GroundStateReport& r);
void from_json(const nlohmann::json& j, GroundStateReport& r);
void to_json(nlohmann::json& j, const PhasePoint& p);
void from_json(const nlohmann::json& j, PhasePoint& p);
void to_json(nlohmann::json& j, const BoundaryPoint& b);
void from_json(const nlohmann::json& j, BoundaryPoint& b);
}  // namespace xyp

namespace xyp::ed {
void to_json(nlohmann::json& j, const Observables& o);
void from_json(const nlohmann::json& j, Observables& o);
void to_json(nlohmann::json& j, const OracleRecord& r);
void from_json(const nlohmann::json& j, OracleRecord& r);
}  // namespace xyp::ed
