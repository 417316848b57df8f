#include <doctest.h>

#include <cmath>
#include <random>

#include "support/precise.hpp"
#include "tripartite/effective.hpp"
#include "tripartite/errors.hpp"
#include "tripartite/fullmodel.hpp"
#include "tripartite/oracle.hpp"
#include "tripartite/transport.hpp"
#include "tripartite/units.hpp"
#include "tripartite/verify.hpp"

using namespace tripartite;

namespace {

constexpr double two_pi = units::two_pi;

SystemConfig resonant(double gc_fraction, double gm_fraction, double gamma_q_mhz = 0.0)
{
    SystemConfig cfg;
    cfg.omega_c = two_pi;
    cfg.omega_m = two_pi;
    cfg.omega_q = 2.0 * two_pi;
    cfg.g_c = gc_fraction * two_pi;
    cfg.g_m = gm_fraction * two_pi;
    cfg.kappa = 1e-3 * two_pi;
    cfg.gamma = 1e-3 * two_pi;
    cfg.gamma_q = units::mhz_to_angular(gamma_q_mhz);
    return cfg;
}

GridSpec window(double lo, double hi, std::size_t n) { return {lo * two_pi, hi * two_pi, n}; }

// Largest | |r_full|^2 - |r_eff|^2 | with the two effective modes degenerate
// at eta = g/Delta, rates and window scaled with |g_eff| = eta g.
double limit_deviation(double eta)
{
    SystemConfig cfg;
    const double g = 0.1 * two_pi;
    cfg.omega_c = two_pi;
    cfg.omega_m = two_pi;
    cfg.omega_q = two_pi + g / eta;
    cfg.g_c = g;
    cfg.g_m = g;
    const double geff = eta * g;
    cfg.kappa = 0.1 * geff;
    cfg.gamma = 0.1 * geff;
    const EffectiveModel em = reduce(cfg, {.threshold = 1.0, .force = true});
    double worst = 0.0;
    for (double w : GridSpec{em.omega_c - 5.0 * geff, em.omega_c + 5.0 * geff, 4001}.values()) {
        const double full = std::norm(reflection_full(w, cfg));
        const double eff = std::norm(reflection_eff(w, em, cfg.kappa, cfg.gamma));
        worst = std::max(worst, std::abs(full - eff));
    }
    return worst;
}

} // namespace

TEST_CASE("susceptibilities")
{
    const SystemConfig cfg = resonant(0.1, 0.05);
    const Susceptibilities at_c = susceptibilities(cfg.omega_c, cfg);
    CHECK(at_c.cavity == std::complex<double>(0.5 * cfg.kappa, 0.0));
    const Susceptibilities at_q = susceptibilities(cfg.omega_q, cfg);
    CHECK(at_q.qubit == std::complex<double>(0.0, 0.0));

    const SystemConfig lossy = resonant(0.1, 0.05, 2.0);
    for (double w : window(0.9, 1.1, 101).values()) {
        const Susceptibilities a = susceptibilities(w, lossy);
        REQUIRE(a.cavity.real() == 0.5 * lossy.kappa);
        REQUIRE(a.mechanics.real() == 0.5 * lossy.gamma);
        REQUIRE(a.qubit.real() == 0.5 * lossy.gamma_q);
        const precise::real pw(w);
        const precise::cplx ref = precise::diag(pw, precise::real(lossy.omega_q), precise::real(lossy.gamma_q));
        REQUIRE(precise::relative_error(a.qubit, ref) <= 1e-15);
    }
}

TEST_CASE("full reflection")
{
    SUBCASE("qubit decoupled from the cavity leaves the bare resonator")
    {
        const SystemConfig cfg = resonant(0.0, 0.1, 2.0);
        for (double w : window(0.95, 1.05, 501).values()) {
            const auto a = susceptibilities(w, cfg);
            REQUIRE(std::abs(reflection_full(w, cfg) - std::conj(a.cavity) / a.cavity) <= 1e-14);
        }
    }
    SUBCASE("50-digit three-mode solution on both qubit-decay fixtures")
    {
        for (double gq : {0.0, 2.0}) {
            const SystemConfig cfg = resonant(0.1, 0.05, gq);
            for (double w : window(0.95, 1.05, 401).values()) {
                const auto exact = precise::reflection_three_mode(w, cfg);
                REQUIRE(precise::relative_error(reflection_full(w, cfg), exact) <= 1e-10);
            }
        }
    }
    SUBCASE("partial inversion against the 3-mode network")
    {
        SystemConfig cfg = resonant(0.1, 0.1, 2.0);
        for (double s : {-1.0, -0.6, -0.2, -0.01}) {
            cfg.sigma_z = s;
            const auto net = verify::full_network(cfg);
            for (double w : window(0.95, 1.05, 401).values()) {
                const auto ref = oracle::scattering_response(net, w);
                REQUIRE(std::abs(reflection_full(w, cfg) - ref) <= 1e-10 * std::max(std::abs(ref), 1e-6));
            }
        }
    }
    SUBCASE("vanishing inversion decouples the matter")
    {
        SystemConfig cfg = resonant(0.1, 0.1, 2.0);
        cfg.sigma_z = -1e-12;
        for (double w : window(0.95, 1.05, 1001).values()) {
            const auto a = susceptibilities(w, cfg);
            REQUIRE(std::abs(reflection_full(w, cfg) - std::conj(a.cavity) / a.cavity) <= 1e-10);
        }
    }
    SUBCASE("inversion outside [-1, 0) is rejected")
    {
        SystemConfig cfg = resonant(0.1, 0.1);
        cfg.sigma_z = 0.0;
        CHECK_THROWS_AS(reflection_full(two_pi, cfg), InvalidConfiguration);
        cfg.sigma_z = -1.5;
        CHECK_THROWS_AS(reflection_full(two_pi, cfg), InvalidConfiguration);
    }
    SUBCASE("passivity over random configurations")
    {
        std::mt19937_64 rng(31);
        double worst = 0.0;
        for (int k = 0; k < 1000; ++k) {
            const SystemConfig cfg = verify::random_config(rng);
            const auto [lo, hi] = verify::analysis_window(cfg);
            for (double w : GridSpec{lo, hi, 101}.values())
                worst = std::max(worst, std::norm(reflection_full(w, cfg)) - 1.0);
        }
        CHECK(worst <= 1e-12);
    }
}

TEST_CASE("single-excitation eigenvalues")
{
    SUBCASE("uncoupled")
    {
        SystemConfig cfg = resonant(0.0, 0.0);
        cfg.omega_m = 0.9 * two_pi;
        const auto e = single_excitation_eigenvalues(cfg);
        CHECK(e[0] == cfg.omega_m);
        CHECK(e[1] == cfg.omega_c);
        CHECK(e[2] == cfg.omega_q);
    }
    SUBCASE("random configurations against Jacobi")
    {
        std::mt19937_64 rng(37);
        double worst = 0.0;
        for (int k = 0; k < 1000; ++k) {
            const SystemConfig cfg = verify::random_config(rng);
            const auto e = single_excitation_eigenvalues(cfg);
            const std::vector<double> m{cfg.omega_c, 0.0, cfg.g_c, 0.0, cfg.omega_m, cfg.g_m,
                                        cfg.g_c,     cfg.g_m, cfg.omega_q};
            const auto j = oracle::dense_symmetric_eigenvalues(m, 3);
            for (std::size_t i = 0; i < 3; ++i)
                worst = std::max(worst, std::abs(e[i] / j[i] - 1.0));
        }
        CHECK(worst <= 1e-12);
    }
    SUBCASE("lower pair approaches the polaritons at fourth order")
    {
        // Measured gaps for g_m = 0.7 g_c: 1.35e-3, 8.65e-5, 5.44e-6 rad/ns at
        // eta = 0.1, 0.05, 0.025, i.e. about 2.2 eta^4 Delta.
        double previous = 0.0;
        for (double eta : {0.1, 0.05, 0.025}) {
            SystemConfig cfg = resonant(eta, 0.7 * eta);
            const auto e = single_excitation_eigenvalues(cfg);
            const auto [lo, hi] = polariton_frequencies(reduce(cfg));
            const double gap = std::max(std::abs(e[0] - lo), std::abs(e[1] - hi));
            const double delta = cfg.detuning_c();
            CHECK(gap <= std::pow(eta, 3) * delta);
            CHECK(gap <= 3.0 * std::pow(eta, 4) * delta);
            if (previous > 0.0)
                CHECK(previous / gap == doctest::Approx(16.0).epsilon(0.1));
            previous = gap;
        }
    }
    SUBCASE("device estimates reproduce the red shifts")
    {
        const SystemConfig cfg = resonant(0.1, 0.1);
        const auto e = single_excitation_eigenvalues(cfg);
        const EffectiveModel em = reduce(cfg);
        // Lowest two: omega' -+ |g| with corrections beyond second order.
        const double eta = 0.1;
        CHECK(std::abs(e[0] - (em.omega_c - std::abs(em.coupling))) <= std::pow(eta, 3) * cfg.detuning_c());
        CHECK(std::abs(e[1] - (em.omega_c + std::abs(em.coupling))) <= std::pow(eta, 3) * cfg.detuning_c());
    }
}

TEST_CASE("effective against full model")
{
    SUBCASE("no coupling at all")
    {
        const ComparisonReport r = compare_models(resonant(0.0, 0.0), window(0.95, 1.05, 2001));
        CHECK(r.max_deviation <= 1e-14);
        CHECK(r.dips_effective.peaks.empty());
        CHECK(r.dips_full.peaks.empty());
    }
    SUBCASE("frozen offsets for the weak doublet, no qubit decay")
    {
        const ComparisonReport r = compare_models(resonant(0.1, 0.05, 0.0), window(0.95, 1.05, 4001));
        REQUIRE(r.paired);
        REQUIRE(r.pairs.size() == 2);
        CHECK(r.pairs[0].offset == doctest::Approx(0.00095796645454981899).epsilon(1e-6));
        CHECK(r.pairs[1].offset == doctest::Approx(-2.5395285874196816e-09).epsilon(1e-3));
        CHECK(r.max_deviation == doctest::Approx(0.13367703382704837).epsilon(1e-6));
        CHECK(r.pairs[0].offset != 0.0);
        // Order eta^2 |g_eff|: eta = 0.1, |g_eff| = 0.005 omega_c.
        const double scale = 0.01 * 0.005 * two_pi;
        CHECK(std::abs(r.pairs[0].offset) < 10.0 * scale);
        CHECK(std::abs(r.pairs[0].offset) > 0.1 * scale);
        CHECK(r.validity.ok());
    }
    SUBCASE("qubit decay moves dips by less than a linewidth")
    {
        const SystemConfig lossless = resonant(0.1, 0.05, 0.0);
        const SystemConfig lossy = resonant(0.1, 0.05, 2.0);
        const ComparisonReport a = compare_models(lossless, window(0.95, 1.05, 4001));
        const ComparisonReport b = compare_models(lossy, window(0.95, 1.05, 4001));
        REQUIRE(a.dips_full.peaks.size() == 2);
        REQUIRE(b.dips_full.peaks.size() == 2);
        const double linewidth = lossless.kappa;
        for (std::size_t i = 0; i < 2; ++i)
            CHECK(std::abs(a.dips_full.peaks[i].position - b.dips_full.peaks[i].position) < linewidth);
        // Frozen depths (|r|^2 at the dip). Qubit decay deepens both dips here.
        CHECK(1.0 - a.dips_full.peaks[0].height == doctest::Approx(0.36).epsilon(1e-9));
        CHECK(1.0 - a.dips_full.peaks[1].height == doctest::Approx(0.36).epsilon(1e-9));
        CHECK(1.0 - b.dips_full.peaks[0].height == doctest::Approx(0.31579344369867801).epsilon(1e-8));
        CHECK(1.0 - b.dips_full.peaks[1].height == doctest::Approx(0.35992308389594196).epsilon(1e-8));
    }
    SUBCASE("strong doublet")
    {
        const ComparisonReport r = compare_models(resonant(0.1, 0.15, 0.0), window(0.95, 1.05, 4001));
        REQUIRE(r.paired);
        CHECK(r.pairs[0].offset == doctest::Approx(0.0062374223907015747).epsilon(1e-6));
        CHECK(r.validity.pass_m);
    }
    SUBCASE("json report")
    {
        const auto doc = compare_models(resonant(0.1, 0.05, 2.0), window(0.95, 1.05, 2001)).to_json();
        CHECK(doc.contains("max_abs_reflectance_deviation"));
        REQUIRE(doc["offsets"].size() == 2);
        CHECK(doc["offsets"][0].contains("offset_MHz"));
        CHECK(doc["parameters"].contains("gamma_q"));
    }
    SUBCASE("second-order convergence to the effective model")
    {
        const double d1 = limit_deviation(0.1);
        const double d2 = limit_deviation(0.05);
        const double d4 = limit_deviation(0.025);
        CAPTURE(d1);
        CAPTURE(d2);
        CAPTURE(d4);
        CHECK(d2 / d1 >= 0.125);
        CHECK(d2 / d1 <= 0.5);
        CHECK(d4 / d2 >= 0.125);
        CHECK(d4 / d2 <= 0.5);
    }
}
