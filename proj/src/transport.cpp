#include "tripartite/transport.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "tripartite/errors.hpp"
#include "tripartite/spectra.hpp"

namespace tripartite {

namespace {

constexpr double nan = std::numeric_limits<double>::quiet_NaN();

double wrap(double angle)
{
    constexpr double pi = std::numbers::pi;
    while (angle > pi)
        angle -= 2.0 * pi;
    while (angle <= -pi)
        angle += 2.0 * pi;
    return angle;
}

} // namespace

std::complex<double> reflection_eff(double omega, const EffectiveModel &em, double kappa, double gamma)
{
    using cd = std::complex<double>;
    if (!(kappa > 0.0))
        throw DomainError("reflection needs a cavity port: kappa > 0");
    if (!(gamma >= 0.0))
        throw DomainError("gamma must be non-negative");
    const double g2 = em.coupling * em.coupling;
    const cd mechanics(0.5 * gamma, -(omega - em.omega_m));
    const cd num = cd(0.5 * kappa, omega - em.omega_c) * mechanics - g2;
    const cd den = cd(0.5 * kappa, -(omega - em.omega_c)) * mechanics + g2;
    if (std::abs(den) < 1e-300) {
        std::ostringstream msg;
        msg << "reflection denominator vanishes at omega = " << omega << " rad/ns";
        throw SingularityError(msg.str(), omega);
    }
    return num / den;
}

std::complex<double> reflection_bare(double omega, double center, double kappa)
{
    if (!(kappa > 0.0))
        throw DomainError("reflection needs a cavity port: kappa > 0");
    const double x = omega - center;
    return std::complex<double>(0.5 * kappa, x) / std::complex<double>(0.5 * kappa, -x);
}

double phase(std::complex<double> r)
{
    if (r == std::complex<double>(0.0, 0.0))
        throw UndefinedPhaseError("phase of a vanishing reflection coefficient is undefined");
    const double angle = std::arg(r);
    // arg(-1 - 0i) is -pi; keep the branch half-open at -pi.
    return angle <= -std::numbers::pi ? std::numbers::pi : angle;
}

double default_group_delay_step(double kappa) { return 1e-4 * kappa; }

double group_delay(const ReflectionFunction &reflection, double omega, double step)
{
    if (!(step > 0.0))
        throw DomainError("group-delay step must be positive");
    const std::complex<double> r_minus = reflection(omega - step);
    const std::complex<double> r_center = reflection(omega);
    const std::complex<double> r_plus = reflection(omega + step);

    constexpr double dip_floor = 1e-9;
    if (std::min({std::abs(r_minus), std::abs(r_center), std::abs(r_plus)}) < dip_floor) {
        std::ostringstream msg;
        msg << "reflection vanishes on the group-delay stencil at omega = " << omega << " rad/ns";
        throw DipProximityError(msg.str(), omega);
    }
    const double left = wrap(std::arg(r_center) - std::arg(r_minus));
    const double right = wrap(std::arg(r_plus) - std::arg(r_center));
    if (std::abs(left) > 0.5 * std::numbers::pi || std::abs(right) > 0.5 * std::numbers::pi) {
        std::ostringstream msg;
        msg << "phase jumps across a reflection dip near omega = " << omega << " rad/ns";
        throw DipProximityError(msg.str(), omega);
    }
    return (left + right) / (2.0 * step);
}

double group_delay(const EffectiveModel &em, double kappa, double gamma, double omega, double step)
{
    return group_delay([&](double w) { return reflection_eff(w, em, kappa, gamma); }, omega, step);
}

TransportPoint transport_point(const ReflectionFunction &reflection, double omega, double step)
{
    TransportPoint point;
    point.omega = omega;
    point.r = reflection(omega);
    point.reflectance = std::norm(point.r);
    point.transmittance = 1.0 - point.reflectance;
    point.phase = point.r == std::complex<double>(0.0, 0.0) ? nan : phase(point.r);
    try {
        point.group_delay = group_delay(reflection, omega, step);
        point.group_delay_valid = true;
    } catch (const DipProximityError &) {
        point.group_delay = nan;
        point.group_delay_valid = false;
    }
    return point;
}

SweepSeries sweep_transport(const ReflectionFunction &reflection,
                            const GridSpec &grid,
                            double normalization,
                            double step,
                            nlohmann::json provenance)
{
    std::vector<double> omegas = grid.values();
    const std::size_t n = omegas.size();
    std::vector<double> norm(n), re(n), im(n), r2(n), t2(n), phi(n), tau(n), valid(n);
    for (std::size_t i = 0; i < n; ++i) {
        const TransportPoint p = transport_point(reflection, omegas[i], step);
        norm[i] = omegas[i] / normalization;
        re[i] = p.r.real();
        im[i] = p.r.imag();
        r2[i] = p.reflectance;
        t2[i] = p.transmittance;
        phi[i] = p.phase;
        tau[i] = p.group_delay;
        valid[i] = p.group_delay_valid ? 1.0 : 0.0;
    }
    provenance["normalization"] = normalization;
    provenance["group_delay_step"] = step;
    SweepSeries series(std::move(omegas), std::move(provenance));
    series.add_column("omega_norm", std::move(norm));
    series.add_column("re_r", std::move(re));
    series.add_column("im_r", std::move(im));
    series.add_column("abs_r2", std::move(r2));
    series.add_column("abs_t2", std::move(t2));
    series.add_column("phase", std::move(phi));
    series.add_column("tau_d", std::move(tau));
    series.add_column("tau_d_valid", std::move(valid));
    return series;
}

SweepSeries sweep_transport(const EffectiveModel &em, double kappa, double gamma, const GridSpec &grid)
{
    nlohmann::json provenance = {
        {"kind", "transport_effective"},
        {"omega_c_eff", em.omega_c},
        {"omega_m_eff", em.omega_m},
        {"coupling", em.coupling},
        {"kappa", kappa},
        {"gamma", gamma},
    };
    return sweep_transport([&](double w) { return reflection_eff(w, em, kappa, gamma); },
                           grid,
                           em.source.omega_m,
                           default_group_delay_step(kappa),
                           std::move(provenance));
}

PeakReport find_dips(const std::vector<double> &grid, const ReflectionFunction &reflection)
{
    std::vector<double> depth(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
        depth[i] = 1.0 - std::norm(reflection(grid[i]));
    SweepSeries series(grid);
    series.add_column("depth", std::move(depth));
    return find_peaks(
        series, "depth", [&](double w) { return 1.0 - std::norm(reflection(w)); }, dip_noise_floor);
}

ZeroReflection zero_reflection_points(const EffectiveModel &em, double kappa, double gamma)
{
    const double g2 = em.coupling * em.coupling;
    const double product = 0.25 * kappa * gamma;
    const double freq_scale = std::max(std::abs(em.omega_c), std::abs(em.omega_m));
    const bool degenerate_modes = std::abs(em.omega_c - em.omega_m) <= 1e-12 * freq_scale;
    const bool equal_rates = std::abs(kappa - gamma) <= 1e-12 * std::max(kappa, gamma);
    const auto r2 = [&](double w) { return std::norm(reflection_eff(w, em, kappa, gamma)); };

    ZeroReflection out;
    if (degenerate_modes && equal_rates && g2 > 0.0) {
        const double radicand = g2 - product;
        if (std::abs(radicand) <= 1e-12 * g2) {
            out.exact = true;
            out.frequencies = {em.omega_c};
        } else if (radicand > 0.0) {
            out.exact = true;
            const double offset = std::sqrt(radicand);
            out.frequencies = {em.omega_c - offset, em.omega_c + offset};
        }
        if (out.exact) {
            for (double w : out.frequencies)
                out.reflectance.push_back(r2(w));
            return out;
        }
    }

    // No exact zero: locate the |r|^2 minima numerically around the two modes.
    const double reach = 3.0 * std::abs(em.coupling) + 10.0 * (kappa + gamma);
    GridSpec window{std::min(em.omega_c, em.omega_m) - reach, std::max(em.omega_c, em.omega_m) + reach, 20001};
    const PeakReport dips = find_dips(window.values(), [&](double w) { return reflection_eff(w, em, kappa, gamma); });
    for (const Peak &dip : dips.peaks) {
        out.frequencies.push_back(dip.position);
        out.reflectance.push_back(r2(dip.position));
    }
    return out;
}

} // namespace tripartite
