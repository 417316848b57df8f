#include "tripartite/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "tripartite/errors.hpp"
#include "tripartite/units.hpp"

namespace tripartite {

namespace {

using json = nlohmann::json;

void reject_unknown(const json &section, const std::string &where, const std::set<std::string> &known)
{
    if (!section.is_object())
        throw ConfigError("'" + where + "' must be an object");
    for (const auto &item : section.items()) {
        if (!known.contains(item.key()))
            throw ConfigError("unknown key '" + item.key() + "' in " + where);
    }
}

std::optional<double> number(const json &section, const std::string &where, const char *key)
{
    if (!section.contains(key))
        return std::nullopt;
    const json &value = section.at(key);
    if (!value.is_number())
        throw ConfigError(where + "." + key + " must be a number");
    return value.get<double>();
}

double required(const json &section, const std::string &where, const char *key)
{
    const auto value = number(section, where, key);
    if (!value)
        throw ConfigError("missing required key " + where + "." + key);
    return *value;
}

bool flag(const json &section, const std::string &where, const char *key)
{
    if (!section.contains(key))
        return false;
    if (!section.at(key).is_boolean())
        throw ConfigError(where + "." + key + " must be a boolean");
    return section.at(key).get<bool>();
}

DeviceParameters parse_device(const json &dev, ConversionOptions &conversion)
{
    const std::string where = "device";
    reject_unknown(dev, where,
                   {"persistent_current_A", "external_flux_Wb", "external_flux_quanta", "mutual_inductance_H",
                    "resonator_inductance_H", "magnetic_field_T", "namr_length_m", "mode_factor", "namr_mass_kg",
                    "f_c_Hz", "f_m_Hz", "f_q_Hz", "current_convention", "allow_off_degeneracy"});

    DeviceParameters out;
    out.persistent_current = required(dev, where, "persistent_current_A");
    const auto flux_wb = number(dev, where, "external_flux_Wb");
    const auto flux_quanta = number(dev, where, "external_flux_quanta");
    if (flux_wb && flux_quanta)
        throw ConfigError("give either device.external_flux_Wb or device.external_flux_quanta, not both");
    if (!flux_wb && !flux_quanta)
        throw ConfigError("missing required key device.external_flux_Wb (or external_flux_quanta)");
    out.external_flux = flux_wb ? *flux_wb : *flux_quanta * units::flux_quantum;
    out.mutual_inductance = required(dev, where, "mutual_inductance_H");
    out.resonator_inductance = required(dev, where, "resonator_inductance_H");
    out.magnetic_field = required(dev, where, "magnetic_field_T");
    out.namr_length = required(dev, where, "namr_length_m");
    out.mode_factor = number(dev, where, "mode_factor").value_or(1.0);
    out.namr_mass = required(dev, where, "namr_mass_kg");
    out.f_c = required(dev, where, "f_c_Hz");
    out.f_m = required(dev, where, "f_m_Hz");
    out.f_q = required(dev, where, "f_q_Hz");

    if (dev.contains("current_convention")) {
        const json &conv = dev.at("current_convention");
        if (conv == "paper_literal")
            conversion.convention = CurrentConvention::paper_literal;
        else if (conv == "textbook")
            conversion.convention = CurrentConvention::textbook;
        else
            throw ConfigError("device.current_convention must be \"paper_literal\" or \"textbook\"");
    }
    conversion.allow_off_degeneracy = flag(dev, where, "allow_off_degeneracy");
    return out;
}

} // namespace

LoadedConfig parse_config(const json &doc)
{
    reject_unknown(doc, "document", {"version", "description", "device", "system", "environment"});
    if (!doc.contains("version") || doc.at("version") != "v1")
        throw ConfigError("document must declare \"version\": \"v1\"");
    if (doc.contains("description") && !doc.at("description").is_string())
        throw ConfigError("description must be a string");
    if (!doc.contains("environment"))
        throw ConfigError("missing required section 'environment'");

    LoadedConfig out;
    out.document = doc;

    const json &env = doc.at("environment");
    reject_unknown(env, "environment", {"kappa_MHz", "gamma_MHz", "gamma_q_MHz", "sigma_z"});
    out.environment.kappa = units::mhz_to_angular(required(env, "environment", "kappa_MHz"));
    out.environment.gamma = units::mhz_to_angular(required(env, "environment", "gamma_MHz"));
    out.environment.gamma_q = units::mhz_to_angular(number(env, "environment", "gamma_q_MHz").value_or(0.0));
    out.environment.sigma_z = number(env, "environment", "sigma_z").value_or(-1.0);

    const json empty = json::object();
    const json &sys = doc.contains("system") ? doc.at("system") : empty;
    reject_unknown(sys, "system", {"f_c_GHz", "f_m_GHz", "f_q_GHz", "g_c_MHz", "g_m_MHz", "dispersive_threshold"});
    out.dispersive_threshold = number(sys, "system", "dispersive_threshold").value_or(default_dispersive_threshold);
    if (!(out.dispersive_threshold > 0.0))
        throw ConfigError("system.dispersive_threshold must be positive");

    const auto f_c = number(sys, "system", "f_c_GHz");
    const auto f_m = number(sys, "system", "f_m_GHz");
    const auto f_q = number(sys, "system", "f_q_GHz");
    if (const auto g = number(sys, "system", "g_c_MHz"))
        out.conversion.g_c = units::mhz_to_angular(*g);
    if (const auto g = number(sys, "system", "g_m_MHz"))
        out.conversion.g_m = units::mhz_to_angular(*g);

    if (doc.contains("device")) {
        DeviceParameters dev = parse_device(doc.at("device"), out.conversion);
        auto override_frequency = [&](std::optional<double> ghz, double &hz, const char *name) {
            if (!ghz)
                return;
            const double value = *ghz * 1e9;
            if (std::abs(value - hz) > 1e-12 * std::max(std::abs(value), std::abs(hz))) {
                std::ostringstream msg;
                msg << name << ": system value " << *ghz << " GHz overrides device value " << hz << " Hz";
                out.warnings.push_back(msg.str());
            }
            hz = value;
        };
        override_frequency(f_c, dev.f_c, "f_c");
        override_frequency(f_m, dev.f_m, "f_m");
        override_frequency(f_q, dev.f_q, "f_q");
        out.system = to_system_config(dev, out.environment, out.conversion, &out.warnings);
        out.device = dev;
    } else {
        if (!f_c || !f_m || !f_q || !out.conversion.g_c || !out.conversion.g_m)
            throw ConfigError("without a device section, system needs f_c_GHz, f_m_GHz, f_q_GHz, g_c_MHz and g_m_MHz");
        SystemConfig cfg;
        cfg.omega_c = units::ghz_to_angular(*f_c);
        cfg.omega_m = units::ghz_to_angular(*f_m);
        cfg.omega_q = units::ghz_to_angular(*f_q);
        cfg.g_c = *out.conversion.g_c;
        cfg.g_m = *out.conversion.g_m;
        cfg.kappa = out.environment.kappa;
        cfg.gamma = out.environment.gamma;
        cfg.gamma_q = out.environment.gamma_q;
        cfg.sigma_z = out.environment.sigma_z;
        cfg.validate();
        out.system = cfg;
    }
    return out;
}

LoadedConfig load_config(const std::filesystem::path &path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file " + path.string());
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error &e) {
        throw ConfigError("config " + path.string() + " is not valid JSON: " + e.what());
    }
    // A run manifest carries the document it was produced from under "input".
    if (doc.is_object() && doc.contains("manifest") && doc.contains("input"))
        return parse_config(doc.at("input"));
    return parse_config(doc);
}

SystemConfig with_magnetic_field(const LoadedConfig &cfg, double field_tesla)
{
    if (!cfg.device)
        throw ConfigError("a magnetic-field sweep needs a device section");
    if (cfg.conversion.g_m)
        throw ConfigError("a magnetic-field sweep needs g_m derived from the device (remove system.g_m_MHz)");
    DeviceParameters dev = *cfg.device;
    dev.magnetic_field = field_tesla;
    return to_system_config(dev, cfg.environment, cfg.conversion);
}

nlohmann::ordered_json describe(const SystemConfig &cfg)
{
    nlohmann::ordered_json out;
    out["f_c_GHz"] = units::angular_to_ghz(cfg.omega_c);
    out["f_m_GHz"] = units::angular_to_ghz(cfg.omega_m);
    out["f_q_GHz"] = units::angular_to_ghz(cfg.omega_q);
    out["g_c_MHz"] = units::angular_to_mhz(cfg.g_c);
    out["g_m_MHz"] = units::angular_to_mhz(cfg.g_m);
    out["kappa_MHz"] = units::angular_to_mhz(cfg.kappa);
    out["gamma_MHz"] = units::angular_to_mhz(cfg.gamma);
    out["gamma_q_MHz"] = units::angular_to_mhz(cfg.gamma_q);
    out["sigma_z"] = cfg.sigma_z;
    out["angular_rad_per_ns"] = {
        {"omega_c", cfg.omega_c}, {"omega_m", cfg.omega_m}, {"omega_q", cfg.omega_q},
        {"g_c", cfg.g_c},         {"g_m", cfg.g_m},         {"kappa", cfg.kappa},
        {"gamma", cfg.gamma},     {"gamma_q", cfg.gamma_q},
    };
    return out;
}

} // namespace tripartite
