#include "tripartite/verify.hpp"

#include <algorithm>
#include <cmath>

#include "tripartite/config.hpp"
#include "tripartite/errors.hpp"
#include "tripartite/fullmodel.hpp"
#include "tripartite/spectra.hpp"
#include "tripartite/transport.hpp"
#include "tripartite/units.hpp"

namespace tripartite::verify {

using cd = std::complex<double>;

oracle::LinearNetwork effective_network(const EffectiveModel &em, double kappa, double gamma)
{
    oracle::LinearNetwork net;
    net.frequencies = {em.omega_c, em.omega_m};
    net.decay_rates = {kappa, gamma};
    net.couplings = {0.0, em.coupling, em.coupling, 0.0};
    net.port = 0;
    return net;
}

oracle::LinearNetwork full_network(const SystemConfig &cfg)
{
    const double scale = std::sqrt(-cfg.sigma_z);
    const double gc = cfg.g_c * scale;
    const double gm = cfg.g_m * scale;
    oracle::LinearNetwork net;
    net.frequencies = {cfg.omega_c, cfg.omega_m, cfg.omega_q};
    net.decay_rates = {cfg.kappa, cfg.gamma, cfg.gamma_q};
    net.couplings = {
        0.0, 0.0, gc,  //
        0.0, 0.0, gm,  //
        gc,  gm,  0.0, //
    };
    net.port = 0;
    return net;
}

ClosedForms ClosedForms::library()
{
    ClosedForms forms;
    forms.reflection_eff = [](double w, const EffectiveModel &em, double k, double g) {
        return tripartite::reflection_eff(w, em, k, g);
    };
    forms.reflection_full = [](double w, const SystemConfig &cfg) { return tripartite::reflection_full(w, cfg); };
    forms.response_d = [](double w, const EffectiveModel &em, double k, double g) {
        return tripartite::response_d(w, em, k, g);
    };
    forms.polaritons = [](const EffectiveModel &em) { return polariton_frequencies(em); };
    forms.eigenvalues = [](const SystemConfig &cfg) { return single_excitation_eigenvalues(cfg); };
    return forms;
}

ClosedForms ClosedForms::with_fault(std::string_view name)
{
    constexpr double bump = 1.0 + 1e-6;
    ClosedForms forms = library();
    if (name == "reflection_eff") {
        forms.reflection_eff = [](double w, const EffectiveModel &em, double k, double g) {
            EffectiveModel bent = em;
            bent.coupling *= bump;
            return tripartite::reflection_eff(w, bent, k, g);
        };
    } else if (name == "reflection_full") {
        forms.reflection_full = [](double w, const SystemConfig &cfg) {
            SystemConfig bent = cfg;
            bent.g_c *= bump;
            return tripartite::reflection_full(w, bent);
        };
    } else if (name == "response_d") {
        forms.response_d = [](double w, const EffectiveModel &em, double k, double g) {
            return tripartite::response_d(w, em, k * bump, g);
        };
    } else if (name == "polaritons") {
        forms.polaritons = [](const EffectiveModel &em) {
            auto [lo, hi] = polariton_frequencies(em);
            return std::pair{lo, hi * bump};
        };
    } else if (name == "eigenvalues") {
        forms.eigenvalues = [](const SystemConfig &cfg) {
            auto eig = single_excitation_eigenvalues(cfg);
            eig[0] *= bump;
            return eig;
        };
    } else {
        throw DomainError("unknown fault target '" + std::string(name) + "'");
    }
    return forms;
}

bool Report::ok() const
{
    return std::all_of(checks.begin(), checks.end(), [](const Check &c) { return c.pass; });
}

nlohmann::ordered_json Report::to_json() const
{
    nlohmann::ordered_json doc;
    doc["configs"] = configs;
    doc["ok"] = ok();
    nlohmann::ordered_json list = nlohmann::ordered_json::array();
    for (const Check &c : checks) {
        nlohmann::ordered_json entry;
        entry["name"] = c.name;
        entry["max_deviation"] = c.max_deviation;
        entry["tolerance"] = c.tolerance;
        entry["evaluations"] = c.evaluations;
        entry["pass"] = c.pass;
        if (!c.pass)
            entry["failing_case"] = c.failing_case;
        list.push_back(std::move(entry));
    }
    doc["checks"] = std::move(list);
    return doc;
}

double relative_deviation(cd value, cd reference, double floor)
{
    return std::abs(value - reference) / std::max(std::abs(reference), floor);
}

SystemConfig random_config(std::mt19937_64 &rng)
{
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    auto between = [&](double lo, double hi) { return lo + (hi - lo) * unit(rng); };
    const double two_pi = units::two_pi;

    SystemConfig cfg;
    cfg.omega_c = two_pi * between(0.5, 1.5);
    cfg.omega_m = two_pi * between(0.5, 1.5);
    cfg.omega_q = std::max(cfg.omega_c, cfg.omega_m) + two_pi * between(0.5, 2.0);
    cfg.g_c = between(0.0, 0.15) * cfg.detuning_c();
    cfg.g_m = between(0.0, 0.15) * cfg.detuning_m();
    cfg.kappa = two_pi * between(1e-4, 1e-2);
    cfg.gamma = unit(rng) < 0.1 ? 0.0 : two_pi * between(0.0, 1e-2);
    cfg.gamma_q = unit(rng) < 0.1 ? 0.0 : two_pi * between(0.0, 1e-2);
    cfg.sigma_z = -between(0.01, 1.0);
    return cfg;
}

std::pair<double, double> analysis_window(const SystemConfig &cfg)
{
    const double shifted_c = cfg.omega_c - cfg.g_c * cfg.g_c / cfg.detuning_c();
    const double shifted_m = cfg.omega_m - cfg.g_m * cfg.g_m / cfg.detuning_m();
    const double lo = std::min({cfg.omega_c, cfg.omega_m, shifted_c, shifted_m});
    const double hi = std::max({cfg.omega_c, cfg.omega_m, shifted_c, shifted_m});
    const double margin = 0.02 * hi + 10.0 * (cfg.kappa + cfg.gamma);
    return {lo - margin, hi + margin};
}

namespace {

nlohmann::json case_json(const SystemConfig &cfg, double omega)
{
    nlohmann::json doc;
    doc["version"] = "v1";
    doc["system"] = {
        {"f_c_GHz", units::angular_to_ghz(cfg.omega_c)}, {"f_m_GHz", units::angular_to_ghz(cfg.omega_m)},
        {"f_q_GHz", units::angular_to_ghz(cfg.omega_q)}, {"g_c_MHz", units::angular_to_mhz(cfg.g_c)},
        {"g_m_MHz", units::angular_to_mhz(cfg.g_m)},
    };
    doc["environment"] = {
        {"kappa_MHz", units::angular_to_mhz(cfg.kappa)},
        {"gamma_MHz", units::angular_to_mhz(cfg.gamma)},
        {"gamma_q_MHz", units::angular_to_mhz(cfg.gamma_q)},
        {"sigma_z", cfg.sigma_z},
    };
    return {{"config", doc}, {"omega", omega}};
}

void record(Check &check, double deviation, const SystemConfig &cfg, double omega)
{
    ++check.evaluations;
    if (std::isnan(deviation) || deviation > check.max_deviation)
        check.max_deviation = deviation;
    if (!(deviation <= check.tolerance) && check.pass) {
        check.pass = false;
        check.failing_case = case_json(cfg, omega);
    }
}

std::vector<double> sorted_eigenvalues(const std::vector<double> &matrix, std::size_t n)
{
    return oracle::dense_symmetric_eigenvalues(matrix, n);
}

} // namespace

Report run(const std::optional<SystemConfig> &base, const Options &options, const ClosedForms &forms)
{
    Check eff{"reflection_eff vs 2-mode network", 0.0, options.tolerance, 0, true, {}};
    Check spec{"1/d vs 2-mode cavity resolvent", 0.0, options.tolerance, 0, true, {}};
    Check full{"reflection_full vs 3-mode network", 0.0, options.tolerance, 0, true, {}};
    Check pol{"polariton frequencies vs Jacobi", 0.0, 1e-12, 0, true, {}};
    Check eig{"single-excitation eigenvalues vs Jacobi", 0.0, 1e-12, 0, true, {}};

    std::vector<SystemConfig> configs;
    if (base)
        configs.push_back(*base);
    std::mt19937_64 rng(options.seed);
    for (std::size_t i = 0; i < options.samples; ++i)
        configs.push_back(random_config(rng));

    for (const SystemConfig &cfg : configs) {
        const EffectiveModel em = reduce(cfg, {.force = true});
        const oracle::LinearNetwork two = effective_network(em, cfg.kappa, cfg.gamma);
        const oracle::LinearNetwork three = full_network(cfg);
        const auto [lo, hi] = analysis_window(cfg);
        const GridSpec grid{lo, hi, options.grid_points};

        for (double w : grid.values()) {
            record(eff, relative_deviation(forms.reflection_eff(w, em, cfg.kappa, cfg.gamma),
                                           oracle::scattering_response(two, w)),
                   cfg, w);
            if (!(cfg.gamma == 0.0 && w == em.omega_m && em.coupling != 0.0)) {
                const cd inverse_d = 1.0 / forms.response_d(w, em, cfg.kappa, cfg.gamma);
                record(spec, relative_deviation(inverse_d, oracle::port_resolvent(two, w), 0.0), cfg, w);
            }
            record(full, relative_deviation(forms.reflection_full(w, cfg), oracle::scattering_response(three, w)),
                   cfg, w);
        }

        const auto [p_lo, p_hi] = forms.polaritons(em);
        const std::vector<double> m2 = {em.omega_c, em.coupling, em.coupling, em.omega_m};
        const auto j2 = sorted_eigenvalues(m2, 2);
        record(pol, std::max(std::abs(p_lo - j2[0]) / std::abs(j2[0]), std::abs(p_hi - j2[1]) / std::abs(j2[1])),
               cfg, 0.0);

        const auto e3 = forms.eigenvalues(cfg);
        const std::vector<double> m3 = {cfg.omega_c, 0.0,         cfg.g_c, //
                                        0.0,         cfg.omega_m, cfg.g_m, //
                                        cfg.g_c,     cfg.g_m,     cfg.omega_q};
        const auto j3 = sorted_eigenvalues(m3, 3);
        double worst = 0.0;
        for (std::size_t k = 0; k < 3; ++k)
            worst = std::max(worst, std::abs(e3[k] - j3[k]) / std::abs(j3[k]));
        record(eig, worst, cfg, 0.0);
    }

    Report report;
    report.configs = configs.size();
    report.checks = {eff, spec, full, pol, eig};
    return report;
}

} // namespace tripartite::verify
