#pragma once

#include <complex>
#include <functional>
#include <string_view>
#include <vector>

#include "tripartite/effective.hpp"
#include "tripartite/series.hpp"

namespace tripartite {

/// d(omega) = kappa/2 - i(omega - omega_c') + g^2 / (gamma/2 - i(omega - omega_m')).
/// Throws SingularityError on the NAMR pole (gamma == 0, omega == omega_m', g != 0)
/// and DomainError for negative rates.
std::complex<double> response_d(double omega, const EffectiveModel &em, double kappa, double gamma);

/// Voltage-fluctuation spectrum 2 Re(1/d(omega)), arbitrary units. Requires
/// kappa > 0 (DomainError otherwise).
double voltage_spectrum(double omega, const EffectiveModel &em, double kappa, double gamma);

/// kappa / ((kappa/2)^2 + (omega - center)^2). Requires kappa > 0.
double lorentzian(double omega, double center, double kappa);

/// Columns: omega_norm (omega / bare omega_c), S_V.
SweepSeries sweep_spectrum(const EffectiveModel &em, const GridSpec &grid, double kappa, double gamma);

struct Peak
{
    double position = 0.0; // rad/ns
    double height = 0.0;
    double fwhm = 0.0;     // rad/ns, NaN when half height is not bracketed on both sides
    bool refined = false;
    bool fwhm_bracketed = false;
};

struct PeakReport
{
    std::vector<Peak> peaks;

    nlohmann::ordered_json to_json(double normalization) const;
};

using RealFunction = std::function<double(double)>;

/// Interior local maxima of `column`, each refined by golden-section search
/// on `evaluate` over its bracketing grid cells. FWHM is found by bisection on
/// `evaluate` when the half height is crossed inside the grid. Needs >= 5 points.
/// Refined peaks no higher than `min_height` are dropped.
PeakReport find_peaks(const SweepSeries &series,
                      std::string_view column,
                      const RealFunction &evaluate,
                      double min_height = 0.0);

/// Peaks of the S_V column of a series produced by sweep_spectrum.
PeakReport find_spectrum_peaks(const SweepSeries &series, const EffectiveModel &em, double kappa, double gamma);

/// Golden-section maximization of f on [lo, hi] down to a bracket of `tolerance`.
double golden_section_maximize(const RealFunction &f, double lo, double hi, double tolerance);

} // namespace tripartite
