#pragma once

#include <numbers>

// Physical constants (SI, exact 2019 definitions) and conversions into the
// library's canonical unit: angular frequency in rad/ns.
namespace tripartite::units {

inline constexpr double two_pi = 2.0 * std::numbers::pi;

inline constexpr double planck = 6.62607015e-34;            // J s
inline constexpr double hbar = planck / two_pi;             // J s
inline constexpr double elementary_charge = 1.602176634e-19; // C
inline constexpr double flux_quantum = planck / (2.0 * elementary_charge); // Wb
inline constexpr double boltzmann = 1.380649e-23;           // J/K

constexpr double ghz_to_angular(double f_ghz) { return two_pi * f_ghz; }
constexpr double mhz_to_angular(double f_mhz) { return two_pi * f_mhz * 1e-3; }
constexpr double hz_to_angular(double f_hz) { return two_pi * f_hz * 1e-9; }

constexpr double angular_to_ghz(double omega) { return omega / two_pi; }
constexpr double angular_to_mhz(double omega) { return omega / two_pi * 1e3; }
constexpr double angular_to_hz(double omega) { return omega / two_pi * 1e9; }

// rad/s -> rad/ns
constexpr double per_second_to_per_ns(double rate) { return rate * 1e-9; }
constexpr double per_ns_to_per_second(double rate) { return rate * 1e9; }

} // namespace tripartite::units
