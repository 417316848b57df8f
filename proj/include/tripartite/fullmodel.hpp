#pragma once

#include <array>
#include <complex>
#include <utility>
#include <vector>

#include "tripartite/params.hpp"
#include "tripartite/series.hpp"
#include "tripartite/spectra.hpp"

namespace tripartite {

/// Inverse bare-mode responses at one frequency. Bare (unshifted) frequencies.
struct Susceptibilities
{
    std::complex<double> cavity;    // kappa/2 - i(omega - omega_c)
    std::complex<double> mechanics; // gamma/2 - i(omega - omega_m)
    std::complex<double> qubit;     // gamma_q/2 - i(omega - omega_q)
};

Susceptibilities susceptibilities(double omega, const SystemConfig &cfg);

/// Reflection of the three-mode model with the qubit inversion frozen at
/// cfg.sigma_z. Requires kappa > 0; throws SingularityError if the
/// denominator vanishes.
std::complex<double> reflection_full(double omega, const SystemConfig &cfg);

/// Eigenvalues (ascending) of the RWA Hamiltonian restricted to one excitation,
/// basis {photon, phonon, qubit}. Closed-form trigonometric solution.
std::array<double, 3> single_excitation_eigenvalues(const SystemConfig &cfg);

struct DipPair
{
    double effective = 0.0; // rad/ns
    double full = 0.0;      // rad/ns
    double offset = 0.0;    // full - effective, rad/ns
};

struct ComparisonReport
{
    std::vector<double> grid;
    std::vector<double> reflectance_effective;
    std::vector<double> reflectance_full;
    PeakReport dips_effective; // heights are depths 1 - |r|^2
    PeakReport dips_full;
    bool paired = false;
    std::vector<DipPair> pairs;
    double max_deviation = 0.0;
    double band_threshold = 0.0;
    std::vector<std::pair<double, double>> deviation_bands; // [lo, hi] rad/ns
    ValidityReport validity;
    SystemConfig config;

    /// Offsets in MHz (offset / 2pi), parameter echo, max deviation.
    nlohmann::ordered_json to_json() const;
};

/// Evaluates |r|^2 of both models on the grid, locates and pairs their dips.
/// The effective model is reduced with `force`, and the dispersive verdict is
/// recorded in `validity` rather than thrown.
ComparisonReport compare_models(const SystemConfig &cfg, const GridSpec &grid, double band_threshold = 0.01);

} // namespace tripartite
