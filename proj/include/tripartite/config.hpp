#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "tripartite/params.hpp"

namespace tripartite {

/// Configuration document, schema "v1" (JSON). See docs/config-schema.md.
///
///   {
///     "version": "v1",
///     "description": "...",                      optional, free text
///     "device": { SI raw parameters },            optional
///     "system": { GHz / MHz direct values },      required without "device"
///     "environment": { kappa_MHz, gamma_MHz, gamma_q_MHz, sigma_z }
///   }
///
/// Rates and couplings given in MHz or GHz are ordinary frequencies X/2pi;
/// they are converted to rad/ns on load. Unknown keys are errors.
struct LoadedConfig
{
    SystemConfig system;
    std::optional<DeviceParameters> device;
    ConversionOptions conversion;
    Environment environment;
    double dispersive_threshold = default_dispersive_threshold;
    std::vector<std::string> warnings;
    nlohmann::json document; // the input document as read
};

/// Throws ConfigError for schema problems and InvalidParameter /
/// InvalidConfiguration for physics invariants.
LoadedConfig parse_config(const nlohmann::json &doc);

/// Reads a config file, or the "input" section of a run manifest.
LoadedConfig load_config(const std::filesystem::path &path);

/// Recomputes the system with a different magnetic field. Requires a device
/// section whose g_m is not overridden.
SystemConfig with_magnetic_field(const LoadedConfig &cfg, double field_tesla);

/// Parameter echo in both ordinary (GHz/MHz) and angular (rad/ns) units.
nlohmann::ordered_json describe(const SystemConfig &cfg);

} // namespace tripartite
