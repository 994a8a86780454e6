#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "hawkesmf/lab.hpp"
#include "hawkesmf/population.hpp"
#include "hawkesmf/sde.hpp"
#include "hawkesmf/sim.hpp"

namespace hawkesmf {

inline constexpr const char* kToolVersion = "0.1.0";

// Invalid or ill-typed configuration; the message names the offending field
// as a JSON-pointer-style path.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& message)
      : std::runtime_error(message) {}
};

// Strict JSON: rejects duplicate object keys (nlohmann would silently keep
// the last) and syntax errors, both as ConfigError.
nlohmann::json parse_json_strict(const std::string& text);

PopulationConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const PopulationConfig& config);

ExperimentPlan plan_from_json(const nlohmann::json& j);
nlohmann::json plan_to_json(const ExperimentPlan& plan);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path,
                     const std::string& text);

// CSV exports. All floating-point fields are written with 17 significant
// digits so values round-trip exactly.
std::string events_to_csv(const EventData& events);
std::string grid_to_csv(const GridPath& path);
std::string paired_grid_to_csv(const GridPath& k, const GridPath& g);
std::string report_to_csv(const ConvergenceReport& report);

nlohmann::json report_to_json(const ConvergenceReport& report);

// FNV-1a 64-bit over a file's bytes, as 16 hex digits.
std::string fnv1a64_hex(const std::filesystem::path& path);

// manifest.json: resolved config, root seed, tool version, and a checksum
// per emitted data file. The embedded config is a valid input document;
// rerunning with it (plus any `extras` echoed as flags, e.g. dt) reproduces
// the data files byte for byte, wall-clock report fields excepted.
void write_manifest(const std::filesystem::path& out_dir,
                    const std::string& subcommand,
                    const nlohmann::json& resolved_config,
                    std::uint64_t root_seed,
                    const std::vector<std::string>& data_files,
                    const nlohmann::json& extras = nlohmann::json::object());

}  // namespace hawkesmf
