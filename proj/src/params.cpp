#include "tripartite/params.hpp"

#include <cmath>
#include <sstream>

#include "tripartite/errors.hpp"
#include "tripartite/units.hpp"

namespace tripartite {

namespace {

void require_positive(double value, const char *name)
{
    if (!(value > 0.0) || !std::isfinite(value)) {
        std::ostringstream msg;
        msg << name << " must be strictly positive (got " << value << ")";
        throw InvalidParameter(msg.str());
    }
}

void require_non_negative(double value, const char *name)
{
    if (!(value >= 0.0) || !std::isfinite(value)) {
        std::ostringstream msg;
        msg << name << " must be non-negative (got " << value << ")";
        throw InvalidParameter(msg.str());
    }
}

void require_config(bool condition, const std::string &what)
{
    if (!condition)
        throw InvalidConfiguration(what);
}

} // namespace

void DeviceParameters::validate() const
{
    require_positive(persistent_current, "persistent_current");
    require_non_negative(external_flux, "external_flux");
    require_non_negative(mutual_inductance, "mutual_inductance");
    require_positive(resonator_inductance, "resonator_inductance");
    require_non_negative(magnetic_field, "magnetic_field");
    require_positive(namr_length, "namr_length");
    require_positive(namr_mass, "namr_mass");
    require_positive(f_c, "f_c");
    require_positive(f_m, "f_m");
    require_positive(f_q, "f_q");
    if (!(mode_factor > 0.0 && mode_factor <= 1.0))
        throw InvalidParameter("mode_factor must lie in (0, 1]");
}

void SystemConfig::validate() const
{
    for (double w : {omega_c, omega_m, omega_q})
        require_config(std::isfinite(w) && w > 0.0, "mode frequencies must be positive and finite");
    require_config(detuning_c() > 0.0, "Delta_c = omega_q - omega_c must be > 0");
    require_config(detuning_m() > 0.0, "Delta_m = omega_q - omega_m must be > 0");
    require_config(g_c >= 0.0 && std::isfinite(g_c), "g_c must be >= 0");
    require_config(g_m >= 0.0 && std::isfinite(g_m), "g_m must be >= 0");
    require_config(kappa >= 0.0 && std::isfinite(kappa), "kappa must be >= 0");
    require_config(gamma >= 0.0 && std::isfinite(gamma), "gamma must be >= 0");
    require_config(gamma_q >= 0.0 && std::isfinite(gamma_q), "gamma_q must be >= 0");
    require_config(sigma_z >= -1.0 && sigma_z < 0.0, "sigma_z must lie in [-1, 0)");
}

double zero_point_current(const DeviceParameters &dev, CurrentConvention convention)
{
    require_positive(dev.resonator_inductance, "resonator_inductance");
    require_positive(dev.f_c, "f_c");
    const double omega_c = units::two_pi * dev.f_c; // rad/s
    double energy_per_inductance = units::hbar * omega_c / dev.resonator_inductance;
    if (convention == CurrentConvention::textbook)
        energy_per_inductance *= 0.5;
    return std::sqrt(energy_per_inductance);
}

double zero_point_motion(const DeviceParameters &dev)
{
    require_positive(dev.namr_mass, "namr_mass");
    require_positive(dev.f_m, "f_m");
    const double omega_m = units::two_pi * dev.f_m;
    return std::sqrt(units::hbar / (2.0 * dev.namr_mass * omega_m));
}

double derive_coupling_gc(const DeviceParameters &dev, CurrentConvention convention)
{
    const double i0 = zero_point_current(dev, convention);
    const double rate = dev.mutual_inductance * dev.persistent_current * i0 / units::hbar;
    return units::per_second_to_per_ns(rate);
}

double derive_coupling_gm(const DeviceParameters &dev)
{
    const double effective_length = dev.mode_factor * dev.namr_length;
    const double rate = dev.magnetic_field * dev.persistent_current * effective_length *
                        zero_point_motion(dev) / units::hbar;
    return units::per_second_to_per_ns(rate);
}

double epsilon_bias(const DeviceParameters &dev)
{
    const double rate =
        dev.persistent_current * (2.0 * dev.external_flux - units::flux_quantum) / units::hbar;
    return units::per_second_to_per_ns(rate);
}

SystemConfig to_system_config(const DeviceParameters &dev,
                              const Environment &env,
                              const ConversionOptions &options,
                              std::vector<std::string> *warnings)
{
    dev.validate();

    SystemConfig cfg;
    cfg.omega_c = units::hz_to_angular(dev.f_c);
    cfg.omega_m = units::hz_to_angular(dev.f_m);
    cfg.omega_q = units::hz_to_angular(dev.f_q);

    const double eps = epsilon_bias(dev);
    if (!options.allow_off_degeneracy &&
        std::abs(eps) > options.degeneracy_tolerance * cfg.omega_q) {
        std::ostringstream msg;
        msg << "qubit is not biased at its degeneracy point: |epsilon| = " << std::abs(eps)
            << " rad/ns exceeds " << options.degeneracy_tolerance << " * omega_q";
        throw InvalidConfiguration(msg.str());
    }

    auto resolve = [&](std::optional<double> direct, double derived, const char *name) {
        if (!direct)
            return derived;
        const double scale = std::max(std::abs(*direct), std::abs(derived));
        if (warnings && scale > 0.0 && std::abs(*direct - derived) > 1e-9 * scale) {
            std::ostringstream msg;
            msg << name << ": direct value " << *direct << " rad/ns overrides derived value "
                << derived << " rad/ns";
            warnings->push_back(msg.str());
        }
        return *direct;
    };
    cfg.g_c = resolve(options.g_c, derive_coupling_gc(dev, options.convention), "g_c");
    cfg.g_m = resolve(options.g_m, derive_coupling_gm(dev), "g_m");

    cfg.kappa = env.kappa;
    cfg.gamma = env.gamma;
    cfg.gamma_q = env.gamma_q;
    cfg.sigma_z = env.sigma_z;
    cfg.validate();
    return cfg;
}

ValidityReport validate_dispersive(const SystemConfig &cfg, double threshold)
{
    ValidityReport report;
    report.threshold = threshold;
    report.eta_c = cfg.g_c / cfg.detuning_c();
    report.eta_m = cfg.g_m / cfg.detuning_m();
    // Ratios are built from rounded rad/ns values; a few ulps of slack keeps a
    // ratio that is exactly at the threshold in decimal from failing.
    const double limit = threshold * (1.0 + 1e-12);
    report.pass_c = std::isfinite(report.eta_c) && report.eta_c >= 0.0 && report.eta_c <= limit;
    report.pass_m = std::isfinite(report.eta_m) && report.eta_m >= 0.0 && report.eta_m <= limit;
    return report;
}

double thermal_sigma_z(double omega_q, double temperature_kelvin)
{
    if (!(temperature_kelvin > 0.0))
        return -1.0;
    const double energy = units::hbar * units::per_ns_to_per_second(omega_q);
    return -std::tanh(energy / (2.0 * units::boltzmann * temperature_kelvin));
}

} // namespace tripartite
