#include "tripartite/fullmodel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "tripartite/effective.hpp"
#include "tripartite/errors.hpp"
#include "tripartite/transport.hpp"
#include "tripartite/units.hpp"

namespace tripartite {

Susceptibilities susceptibilities(double omega, const SystemConfig &cfg)
{
    return {
        {0.5 * cfg.kappa, -(omega - cfg.omega_c)},
        {0.5 * cfg.gamma, -(omega - cfg.omega_m)},
        {0.5 * cfg.gamma_q, -(omega - cfg.omega_q)},
    };
}

std::complex<double> reflection_full(double omega, const SystemConfig &cfg)
{
    if (!(cfg.kappa > 0.0))
        throw DomainError("reflection needs a cavity port: kappa > 0");
    if (!(cfg.sigma_z >= -1.0 && cfg.sigma_z < 0.0))
        throw InvalidConfiguration("sigma_z must lie in [-1, 0)");
    const Susceptibilities a = susceptibilities(omega, cfg);
    const double s = cfg.sigma_z;
    const std::complex<double> dressed = a.mechanics * a.qubit - cfg.g_m * cfg.g_m * s;
    const std::complex<double> cross = cfg.g_c * cfg.g_c * a.mechanics * s;
    const std::complex<double> num = dressed * std::conj(a.cavity) + cross;
    const std::complex<double> den = dressed * a.cavity - cross;
    if (std::abs(den) < 1e-300) {
        std::ostringstream msg;
        msg << "full-model reflection denominator vanishes at omega = " << omega << " rad/ns";
        throw SingularityError(msg.str(), omega);
    }
    return num / den;
}

std::array<double, 3> single_excitation_eigenvalues(const SystemConfig &cfg)
{
    // Symmetric 3x3 [[wc, 0, gc], [0, wm, gm], [gc, gm, wq]]; eigenvalues of the
    // shifted, scaled matrix B = (A - q I) / p via the trigonometric cubic.
    const double a11 = cfg.omega_c, a22 = cfg.omega_m, a33 = cfg.omega_q;
    const double a12 = 0.0, a13 = cfg.g_c, a23 = cfg.g_m;

    const double off = a12 * a12 + a13 * a13 + a23 * a23;
    std::array<double, 3> eig;
    if (off == 0.0) {
        eig = {a11, a22, a33};
        std::sort(eig.begin(), eig.end());
        return eig;
    }
    const double q = (a11 + a22 + a33) / 3.0;
    const double b11 = a11 - q, b22 = a22 - q, b33 = a33 - q;
    const double p = std::sqrt((b11 * b11 + b22 * b22 + b33 * b33 + 2.0 * off) / 6.0);
    const double c11 = b11 / p, c22 = b22 / p, c33 = b33 / p;
    const double c12 = a12 / p, c13 = a13 / p, c23 = a23 / p;
    const double det = c11 * (c22 * c33 - c23 * c23) - c12 * (c12 * c33 - c23 * c13) +
                       c13 * (c12 * c23 - c22 * c13);
    const double half_det = std::clamp(0.5 * det, -1.0, 1.0);
    const double phi = std::acos(half_det) / 3.0;
    const double e_max = q + 2.0 * p * std::cos(phi);
    const double e_min = q + 2.0 * p * std::cos(phi + 2.0 * std::numbers::pi / 3.0);
    const double e_mid = 3.0 * q - e_max - e_min;
    eig = {e_min, e_mid, e_max};
    std::sort(eig.begin(), eig.end());
    return eig;
}

ComparisonReport compare_models(const SystemConfig &cfg, const GridSpec &grid, double band_threshold)
{
    cfg.validate();
    ComparisonReport report;
    report.validity = validate_dispersive(cfg);
    report.band_threshold = band_threshold;
    report.config = cfg;

    const EffectiveModel em = reduce(cfg, {.force = true});
    const auto r_eff = [&](double w) { return reflection_eff(w, em, cfg.kappa, cfg.gamma); };
    const auto r_full = [&](double w) { return reflection_full(w, cfg); };

    report.grid = grid.values();
    const std::size_t n = report.grid.size();
    report.reflectance_effective.resize(n);
    report.reflectance_full.resize(n);
    std::vector<bool> above(n);
    for (std::size_t i = 0; i < n; ++i) {
        report.reflectance_effective[i] = std::norm(r_eff(report.grid[i]));
        report.reflectance_full[i] = std::norm(r_full(report.grid[i]));
        const double dev = std::abs(report.reflectance_effective[i] - report.reflectance_full[i]);
        report.max_deviation = std::max(report.max_deviation, dev);
        above[i] = dev > band_threshold;
    }
    for (std::size_t i = 0; i < n;) {
        if (!above[i]) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j + 1 < n && above[j + 1])
            ++j;
        report.deviation_bands.emplace_back(report.grid[i], report.grid[j]);
        i = j + 1;
    }

    report.dips_effective = find_dips(report.grid, r_eff);
    report.dips_full = find_dips(report.grid, r_full);

    const auto &de = report.dips_effective.peaks;
    const auto &df = report.dips_full.peaks;
    if (!de.empty() && de.size() == df.size()) {
        // Nearest-neighbour pairing, rejected if any partner lies further than
        // half the smallest separation between effective-model dips.
        double min_sep = std::numeric_limits<double>::infinity();
        for (std::size_t i = 1; i < de.size(); ++i)
            min_sep = std::min(min_sep, de[i].position - de[i - 1].position);
        const double limit = 0.5 * min_sep;
        bool ok = true;
        std::vector<DipPair> pairs;
        std::vector<bool> used(df.size(), false);
        for (const Peak &e : de) {
            std::size_t best = df.size();
            double best_dist = std::numeric_limits<double>::infinity();
            for (std::size_t k = 0; k < df.size(); ++k) {
                const double dist = std::abs(df[k].position - e.position);
                if (!used[k] && dist < best_dist) {
                    best = k;
                    best_dist = dist;
                }
            }
            if (best == df.size() || best_dist > limit) {
                ok = false;
                break;
            }
            used[best] = true;
            pairs.push_back({e.position, df[best].position, df[best].position - e.position});
        }
        if (ok) {
            report.paired = true;
            report.pairs = std::move(pairs);
        }
    }
    return report;
}

nlohmann::ordered_json ComparisonReport::to_json() const
{
    nlohmann::ordered_json doc;
    doc["parameters"] = {
        {"omega_c", config.omega_c},
        {"omega_m", config.omega_m},
        {"omega_q", config.omega_q},
        {"g_c", config.g_c},
        {"g_m", config.g_m},
        {"kappa", config.kappa},
        {"gamma", config.gamma},
        {"gamma_q", config.gamma_q},
        {"sigma_z", config.sigma_z},
    };
    doc["dispersive"] = {
        {"eta_c", validity.eta_c},
        {"eta_m", validity.eta_m},
        {"threshold", validity.threshold},
        {"ok", validity.ok()},
    };
    doc["grid"] = {{"min", grid.front()}, {"max", grid.back()}, {"points", grid.size()}};
    auto dips = [](const PeakReport &r) {
        nlohmann::ordered_json out = nlohmann::ordered_json::array();
        for (const Peak &p : r.peaks)
            out.push_back({{"omega", p.position}, {"reflectance", 1.0 - p.height}});
        return out;
    };
    doc["dips_effective"] = dips(dips_effective);
    doc["dips_full"] = dips(dips_full);
    doc["paired"] = paired;
    nlohmann::ordered_json offsets = nlohmann::ordered_json::array();
    for (const DipPair &p : pairs) {
        offsets.push_back({
            {"omega_effective", p.effective},
            {"omega_full", p.full},
            {"offset_MHz", units::angular_to_mhz(p.offset)},
        });
    }
    doc["offsets"] = std::move(offsets);
    doc["max_abs_reflectance_deviation"] = max_deviation;
    doc["band_threshold"] = band_threshold;
    nlohmann::ordered_json bands = nlohmann::ordered_json::array();
    for (const auto &[lo, hi] : deviation_bands)
        bands.push_back({lo, hi});
    doc["deviation_bands"] = std::move(bands);
    return doc;
}

} // namespace tripartite
