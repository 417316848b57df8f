#include "tripartite/effective.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "tripartite/errors.hpp"

namespace tripartite {

EffectiveModel reduce(const SystemConfig &cfg, const ReduceOptions &options)
{
    cfg.validate();
    const ValidityReport validity = validate_dispersive(cfg, options.threshold);
    if (!validity.ok() && !options.force) {
        std::ostringstream msg;
        msg << "outside the dispersive regime: eta_c = " << validity.eta_c
            << ", eta_m = " << validity.eta_m << " (threshold " << options.threshold << ")";
        throw RegimeError(msg.str(), validity.eta_c, validity.eta_m);
    }

    const double delta_c = cfg.detuning_c();
    const double delta_m = cfg.detuning_m();

    EffectiveModel em;
    em.omega_c = cfg.omega_c - cfg.g_c * cfg.g_c / delta_c;
    em.omega_m = cfg.omega_m - cfg.g_m * cfg.g_m / delta_m;
    em.coupling = -0.5 * cfg.g_c * cfg.g_m * (1.0 / delta_c + 1.0 / delta_m);
    em.eta_c = validity.eta_c;
    em.eta_m = validity.eta_m;
    em.source = cfg;
    return em;
}

std::pair<double, double> polariton_frequencies(const EffectiveModel &em)
{
    const double mean = 0.5 * (em.omega_c + em.omega_m);
    const double half_gap = 0.5 * (em.omega_c - em.omega_m);
    const double radius = std::hypot(half_gap, em.coupling);
    return {mean - radius, mean + radius};
}

double polariton_splitting(const EffectiveModel &em)
{
    return 2.0 * std::hypot(0.5 * (em.omega_c - em.omega_m), em.coupling);
}

PeakFormula dispersive_peak_formula(const SystemConfig &cfg)
{
    const double scale = std::max(std::abs(cfg.omega_c), std::abs(cfg.omega_m));
    if (std::abs(cfg.omega_c - cfg.omega_m) > 1e-12 * scale)
        throw DomainError("peak formula requires omega_c == omega_m");

    const double omega0 = cfg.omega_c;
    const double delta0 = cfg.detuning_c();
    const double gc2 = cfg.g_c * cfg.g_c;
    const double gm2 = cfg.g_m * cfg.g_m;
    const double root = std::sqrt(gc2 * gc2 - gc2 * gm2 + gm2 * gm2);

    PeakFormula out;
    out.upper = omega0 - (0.5 * (gc2 + gm2) - root) / delta0;
    out.lower = omega0 - (0.5 * (gc2 + gm2) + root) / delta0;
    out.splitting = 2.0 * root / delta0;
    return out;
}

double transfer_time(const EffectiveModel &em, unsigned n)
{
    if (em.coupling == 0.0)
        throw NoCouplingError("state transfer needs a nonzero effective coupling");
    return (2.0 * n + 1.0) * std::numbers::pi / (2.0 * std::abs(em.coupling));
}

std::array<std::complex<double>, 2> evolve_single_excitation(const EffectiveModel &em,
                                                             double t,
                                                             Mode initial)
{
    using cd = std::complex<double>;
    // H = mean * 1 + half_gap * sigma_z + g * sigma_x on {cavity, mechanics}.
    const double mean = 0.5 * (em.omega_c + em.omega_m);
    const double half_gap = 0.5 * (em.omega_c - em.omega_m);
    const double g = em.coupling;
    const double rabi = std::hypot(half_gap, g);

    const double c = std::cos(rabi * t);
    // sin(rabi t) / rabi, continuous at rabi -> 0
    const double s_over = rabi > 0.0 ? std::sin(rabi * t) / rabi : t;
    const cd global = std::exp(cd(0.0, -mean * t));
    const cd i(0.0, 1.0);

    // exp(-i H t) = e^{-i mean t} [cos - i sin/rabi * (half_gap sz + g sx)]
    const cd u00 = global * (c - i * s_over * half_gap);
    const cd u11 = global * (c + i * s_over * half_gap);
    const cd u01 = global * (-i * s_over * g);

    if (initial == Mode::cavity)
        return {u00, u01};
    return {u01, u11};
}

} // namespace tripartite
