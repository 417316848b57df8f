#pragma once

#include <optional>
#include <string>
#include <vector>

namespace tripartite {

/// How the resonator zero-point current is written.
///
/// `paper_literal` uses I0 = sqrt(hbar * omega_c / L_c); `textbook` uses the
/// quantized-LC value I0 = sqrt(hbar * omega_c / (2 L_c)).
enum class CurrentConvention
{
    paper_literal,
    textbook,
};

/// Raw device quantities in SI units. Frequencies are ordinary (Hz).
struct DeviceParameters
{
    double persistent_current = 0.0;   // I_p [A]
    double external_flux = 0.0;        // Phi_e [Wb]
    double mutual_inductance = 0.0;    // M [H]
    double resonator_inductance = 0.0; // L_c [H]
    double magnetic_field = 0.0;       // B [T]
    double namr_length = 0.0;          // l_0 [m]
    double mode_factor = 1.0;          // chi, in (0, 1]
    double namr_mass = 0.0;            // m [kg]
    double f_c = 0.0;                  // [Hz]
    double f_m = 0.0;                  // [Hz]
    double f_q = 0.0;                  // [Hz]

    /// Throws InvalidParameter naming the first offending field. M and B may
    /// be zero: they are the switches that turn the couplings off.
    void validate() const;
};

/// Canonical model. All frequencies and rates are angular, in rad/ns.
struct SystemConfig
{
    double omega_c = 0.0;
    double omega_m = 0.0;
    double omega_q = 0.0;
    double g_c = 0.0;
    double g_m = 0.0;
    double kappa = 0.0;
    double gamma = 0.0;
    double gamma_q = 0.0;
    double sigma_z = -1.0; // stationary qubit inversion, in [-1, 0)

    double detuning_c() const { return omega_q - omega_c; }
    double detuning_m() const { return omega_q - omega_m; }

    /// Throws InvalidConfiguration naming the violated inequality.
    void validate() const;
};

struct Environment
{
    double kappa = 0.0;
    double gamma = 0.0;
    double gamma_q = 0.0;
    double sigma_z = -1.0;
};

struct ConversionOptions
{
    CurrentConvention convention = CurrentConvention::paper_literal;
    // Direct couplings (rad/ns). When present they replace the derived value.
    std::optional<double> g_c;
    std::optional<double> g_m;
    // |epsilon| must not exceed degeneracy_tolerance * omega_q unless
    // allow_off_degeneracy is set.
    double degeneracy_tolerance = 1e-6;
    bool allow_off_degeneracy = false;
};

struct ValidityReport
{
    double eta_c = 0.0;
    double eta_m = 0.0;
    double threshold = 0.0;
    bool pass_c = false;
    bool pass_m = false;

    bool ok() const { return pass_c && pass_m; }
};

inline constexpr double default_dispersive_threshold = 0.15;

double zero_point_current(const DeviceParameters &dev,
                          CurrentConvention convention = CurrentConvention::paper_literal);
double zero_point_motion(const DeviceParameters &dev);

/// Cavity-qubit coupling g_c = M I_p I_0 / hbar, in rad/ns.
double derive_coupling_gc(const DeviceParameters &dev,
                          CurrentConvention convention = CurrentConvention::paper_literal);

/// NAMR-qubit coupling g_m = B I_p (chi l_0) delta_zpm / hbar, in rad/ns.
double derive_coupling_gm(const DeviceParameters &dev);

/// Qubit bias epsilon = I_p (2 Phi_e - Phi_0) / hbar, in rad/ns.
double epsilon_bias(const DeviceParameters &dev);

SystemConfig to_system_config(const DeviceParameters &dev,
                              const Environment &env,
                              const ConversionOptions &options = {},
                              std::vector<std::string> *warnings = nullptr);

ValidityReport validate_dispersive(const SystemConfig &cfg,
                                   double threshold = default_dispersive_threshold);

/// -tanh(hbar omega_q / 2 k_B T) for a qubit in thermal equilibrium. Not used by
/// any reflection or spectrum formula; it only seeds sigma_z sweeps.
double thermal_sigma_z(double omega_q, double temperature_kelvin);

} // namespace tripartite
