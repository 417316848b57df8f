#include "tripartite/spectra.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "tripartite/errors.hpp"

namespace tripartite {

namespace {

void require_rates(double kappa, double gamma)
{
    if (!(kappa >= 0.0) || !(gamma >= 0.0))
        throw DomainError("decay rates must be non-negative");
}

} // namespace

std::complex<double> response_d(double omega, const EffectiveModel &em, double kappa, double gamma)
{
    using cd = std::complex<double>;
    require_rates(kappa, gamma);
    const cd cavity(0.5 * kappa, -(omega - em.omega_c));
    const double g2 = em.coupling * em.coupling;
    if (g2 == 0.0)
        return cavity;
    const cd mechanics(0.5 * gamma, -(omega - em.omega_m));
    if (mechanics == cd(0.0, 0.0)) {
        std::ostringstream msg;
        msg << "d(omega) is singular at the lossless NAMR pole omega = " << omega << " rad/ns";
        throw SingularityError(msg.str(), omega);
    }
    return cavity + g2 / mechanics;
}

double voltage_spectrum(double omega, const EffectiveModel &em, double kappa, double gamma)
{
    if (!(kappa > 0.0))
        throw DomainError("voltage spectrum requires kappa > 0");
    const std::complex<double> d = response_d(omega, em, kappa, gamma);
    return 2.0 * (1.0 / d).real();
}

double lorentzian(double omega, double center, double kappa)
{
    if (!(kappa > 0.0))
        throw DomainError("Lorentzian requires kappa > 0");
    const double x = omega - center;
    return kappa / (0.25 * kappa * kappa + x * x);
}

SweepSeries sweep_spectrum(const EffectiveModel &em, const GridSpec &grid, double kappa, double gamma)
{
    if (!(kappa > 0.0))
        throw DomainError("voltage spectrum requires kappa > 0");
    std::vector<double> omegas = grid.values();
    if (gamma == 0.0 && em.coupling != 0.0 && em.omega_m >= grid.min && em.omega_m <= grid.max) {
        std::ostringstream msg;
        msg << "grid spans the lossless NAMR pole at omega = " << em.omega_m << " rad/ns";
        throw SingularityError(msg.str(), em.omega_m);
    }

    std::vector<double> norm(omegas.size());
    std::vector<double> spectrum(omegas.size());
    for (std::size_t i = 0; i < omegas.size(); ++i) {
        norm[i] = omegas[i] / em.source.omega_c;
        spectrum[i] = voltage_spectrum(omegas[i], em, kappa, gamma);
    }

    nlohmann::json provenance = {
        {"kind", "voltage_spectrum"},
        {"omega_c_eff", em.omega_c},
        {"omega_m_eff", em.omega_m},
        {"coupling", em.coupling},
        {"kappa", kappa},
        {"gamma", gamma},
        {"normalization", em.source.omega_c},
    };
    SweepSeries series(std::move(omegas), std::move(provenance));
    series.add_column("omega_norm", std::move(norm));
    series.add_column("S_V", std::move(spectrum));
    return series;
}

double golden_section_maximize(const RealFunction &f, double lo, double hi, double tolerance)
{
    constexpr double inv_phi = 0.6180339887498948482;
    double a = lo;
    double b = hi;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = f(x1);
    double f2 = f(x2);
    for (int iter = 0; iter < 200 && (b - a) > tolerance; ++iter) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        }
    }
    return f1 >= f2 ? x1 : x2;
}

namespace {

// Bisection for f(x) == level between `inside` (f > level) and `outside` (f < level).
double bisect_level(const RealFunction &f, double level, double inside, double outside, double tolerance)
{
    for (int iter = 0; iter < 200 && std::abs(outside - inside) > tolerance; ++iter) {
        const double mid = 0.5 * (inside + outside);
        if (f(mid) > level)
            inside = mid;
        else
            outside = mid;
    }
    return 0.5 * (inside + outside);
}

} // namespace

PeakReport find_peaks(const SweepSeries &series,
                      std::string_view column,
                      const RealFunction &evaluate,
                      double min_height)
{
    if (series.size() < 5)
        throw DomainError("peak finding needs at least 5 grid points");
    const auto &x = series.grid();
    const auto &y = series.column(column);
    const double span = x.back() - x.front();
    // Stated refinement target is 1e-6 of the span; iterate further so refined
    // positions do not depend on the grid they were seeded from.
    const double tolerance = 1e-13 * span + 4.0 * std::numeric_limits<double>::epsilon() * std::abs(x.back());

    PeakReport report;
    for (std::size_t i = 1; i + 1 < x.size(); ++i) {
        if (!(y[i] > y[i - 1] && y[i] >= y[i + 1]))
            continue;

        Peak peak;
        peak.position = golden_section_maximize(evaluate, x[i - 1], x[i + 1], tolerance);
        peak.refined = true;
        peak.height = evaluate(peak.position);
        if (!(peak.height > std::max(min_height, 0.0)))
            continue;

        const double half = 0.5 * peak.height;
        double left = std::numeric_limits<double>::quiet_NaN();
        double right = std::numeric_limits<double>::quiet_NaN();
        for (std::size_t j = i; j-- > 0;) {
            if (y[j] < half) {
                left = bisect_level(evaluate, half, std::min(peak.position, x[j + 1]), x[j], tolerance);
                break;
            }
        }
        for (std::size_t j = i + 1; j < x.size(); ++j) {
            if (y[j] < half) {
                right = bisect_level(evaluate, half, std::max(peak.position, x[j - 1]), x[j], tolerance);
                break;
            }
        }
        peak.fwhm_bracketed = std::isfinite(left) && std::isfinite(right);
        peak.fwhm = peak.fwhm_bracketed ? right - left : std::numeric_limits<double>::quiet_NaN();
        report.peaks.push_back(peak);
    }
    return report;
}

PeakReport find_spectrum_peaks(const SweepSeries &series, const EffectiveModel &em, double kappa, double gamma)
{
    return find_peaks(series, "S_V", [&](double omega) { return voltage_spectrum(omega, em, kappa, gamma); });
}

nlohmann::ordered_json PeakReport::to_json(double normalization) const
{
    nlohmann::ordered_json out = nlohmann::ordered_json::array();
    for (const Peak &p : peaks) {
        nlohmann::ordered_json entry;
        entry["position"] = p.position;
        entry["position_norm"] = p.position / normalization;
        entry["height"] = p.height;
        entry["fwhm"] = p.fwhm_bracketed ? nlohmann::ordered_json(p.fwhm) : nlohmann::ordered_json(nullptr);
        entry["refined"] = p.refined;
        entry["fwhm_bracketed"] = p.fwhm_bracketed;
        out.push_back(std::move(entry));
    }
    return out;
}

} // namespace tripartite
