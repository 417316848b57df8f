#pragma once

#include <array>
#include <complex>
#include <utility>

#include "tripartite/params.hpp"

namespace tripartite {

/// Two-resonator model left after eliminating the qubit to second order in
/// g/Delta, with the qubit in its ground state.
struct EffectiveModel
{
    double omega_c = 0.0;  // red-shifted cavity frequency, rad/ns
    double omega_m = 0.0;  // red-shifted NAMR frequency, rad/ns
    double coupling = 0.0; // signed resonator-resonator coupling, rad/ns (<= 0)
    double eta_c = 0.0;
    double eta_m = 0.0;
    SystemConfig source;
};

struct ReduceOptions
{
    double threshold = default_dispersive_threshold;
    bool force = false; // skip the dispersive check
};

/// Throws RegimeError (carrying both eta values) when the dispersive check
/// fails and `force` is not set.
EffectiveModel reduce(const SystemConfig &cfg, const ReduceOptions &options = {});

/// Eigenvalues of [[omega_c', g], [g, omega_m']], ascending.
std::pair<double, double> polariton_frequencies(const EffectiveModel &em);

/// Doublet positions written as closed functions of g_c, g_m and the common
/// detuning. Valid only for omega_c == omega_m.
struct PeakFormula
{
    double lower = 0.0;     // omega_-
    double upper = 0.0;     // omega_+
    double splitting = 0.0; // omega_+ - omega_-
};

/// Throws DomainError when the cavity and NAMR are not degenerate.
PeakFormula dispersive_peak_formula(const SystemConfig &cfg);

/// Splitting between the two poles of the effective model (g_c^2 + g_m^2)/Delta
/// at resonance; here computed from the eigenvalues for any configuration.
double polariton_splitting(const EffectiveModel &em);

/// t_n = (2n + 1) pi / (2 |g|), in ns. Throws NoCouplingError when g == 0.
double transfer_time(const EffectiveModel &em, unsigned n);

enum class Mode
{
    cavity,
    mechanics,
};

/// Single-excitation amplitudes {a_cavity, a_mechanics} after time t (ns),
/// starting from one quantum in `initial`.
std::array<std::complex<double>, 2> evolve_single_excitation(const EffectiveModel &em,
                                                             double t,
                                                             Mode initial);

} // namespace tripartite
