#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "tripartite/effective.hpp"
#include "tripartite/series.hpp"
#include "tripartite/spectra.hpp"

namespace tripartite {

using ReflectionFunction = std::function<std::complex<double>(double)>;

/// Single-port reflection of the effective two-mode model. Requires kappa > 0.
std::complex<double> reflection_eff(double omega, const EffectiveModel &em, double kappa, double gamma);

/// (kappa/2 + i x) / (kappa/2 - i x), x = omega - center. Unimodular.
std::complex<double> reflection_bare(double omega, double center, double kappa);

/// Principal argument in (-pi, pi]. Throws UndefinedPhaseError for r == 0.
double phase(std::complex<double> r);

/// Central difference of the locally unwrapped phase over [omega - h, omega + h].
/// Throws DipProximityError when |r| vanishes on the stencil or the phase
/// jumps by more than pi/2 between neighbouring stencil points.
double group_delay(const ReflectionFunction &reflection, double omega, double step);
double group_delay(const EffectiveModel &em, double kappa, double gamma, double omega, double step);

/// h = 1e-4 kappa.
double default_group_delay_step(double kappa);

struct TransportPoint
{
    double omega = 0.0;
    std::complex<double> r;
    double reflectance = 0.0;   // |r|^2
    double transmittance = 0.0; // 1 - |r|^2
    double phase = 0.0;         // NaN at an exact zero of r
    double group_delay = 0.0;   // NaN when the stencil touches a dip
    bool group_delay_valid = false;
};

TransportPoint transport_point(const ReflectionFunction &reflection, double omega, double step);

/// Dips shallower than this are rounding noise on a unimodular |r|.
inline constexpr double dip_noise_floor = 1e-9;

/// Minima of |r|^2 on `grid`, found as peaks of the depth 1 - |r|^2 and
/// refined on the continuous reflection. Peak heights are depths.
PeakReport find_dips(const std::vector<double> &grid, const ReflectionFunction &reflection);

struct ZeroReflection
{
    // True when the model is in the symmetric case (omega_c' == omega_m',
    // kappa == gamma) with g^2 >= kappa gamma / 4, where |r| vanishes exactly.
    bool exact = false;
    std::vector<double> frequencies; // rad/ns, ascending
    std::vector<double> reflectance; // |r|^2 at each frequency
};

/// Exact zeros omega_c' +- sqrt(g^2 - kappa gamma/4) in the symmetric case;
/// otherwise numerically located minima of |r|^2.
ZeroReflection zero_reflection_points(const EffectiveModel &em, double kappa, double gamma);

/// Columns: omega_norm (omega / normalization), re_r, im_r, abs_r2, abs_t2,
/// phase, tau_d, tau_d_valid.
SweepSeries sweep_transport(const ReflectionFunction &reflection,
                            const GridSpec &grid,
                            double normalization,
                            double step,
                            nlohmann::json provenance = {});

/// Effective model sweep, normalized by the bare NAMR frequency.
SweepSeries sweep_transport(const EffectiveModel &em, double kappa, double gamma, const GridSpec &grid);

} // namespace tripartite
