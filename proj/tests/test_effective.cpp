#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "support/precise.hpp"
#include "tripartite/effective.hpp"
#include "tripartite/errors.hpp"
#include "tripartite/oracle.hpp"
#include "tripartite/spectra.hpp"
#include "tripartite/units.hpp"

using namespace tripartite;

namespace {

constexpr double two_pi = units::two_pi;

// omega_c = omega_m = 2 pi, omega_q = 4 pi, couplings as fractions of omega_c.
SystemConfig resonant(double gc_fraction, double gm_fraction)
{
    SystemConfig cfg;
    cfg.omega_c = two_pi;
    cfg.omega_m = two_pi;
    cfg.omega_q = 2.0 * two_pi;
    cfg.g_c = gc_fraction * two_pi;
    cfg.g_m = gm_fraction * two_pi;
    cfg.kappa = 1e-3 * two_pi;
    cfg.gamma = 1e-3 * two_pi;
    return cfg;
}

std::pair<double, double> jacobi_pair(const EffectiveModel &em)
{
    const std::vector<double> m{em.omega_c, em.coupling, em.coupling, em.omega_m};
    const auto values = oracle::dense_symmetric_eigenvalues(m, 2);
    return {values[0], values[1]};
}

} // namespace

TEST_CASE("effective coupling at the device estimates")
{
    const EffectiveModel em = reduce(resonant(0.1, 0.1));
    CHECK(std::abs(std::abs(units::angular_to_mhz(em.coupling)) * 1e-3 / 0.010 - 1.0) <= 1e-12);
    CHECK(em.coupling < 0.0);
    CHECK(em.eta_c == doctest::Approx(0.1));
    CHECK(em.eta_m == doctest::Approx(0.1));
}

TEST_CASE("decoupled NAMR keeps its frequency")
{
    const EffectiveModel em = reduce(resonant(0.1, 0.0));
    CHECK(em.coupling == 0.0);
    CHECK(em.omega_m == two_pi);
    CHECK(em.omega_c == doctest::Approx(0.99 * two_pi).epsilon(1e-15));
}

TEST_CASE("strong-doublet shifts against 50-digit arithmetic")
{
    const SystemConfig cfg = resonant(0.1, 0.15);
    const EffectiveModel em = reduce(cfg);
    const precise::Reduced ref = precise::reduce(cfg);

    CHECK(std::abs(em.omega_c / static_cast<double>(ref.omega_c) - 1.0) <= 1e-15);
    CHECK(std::abs(em.omega_m / static_cast<double>(ref.omega_m) - 1.0) <= 1e-15);
    CHECK(std::abs(em.coupling / static_cast<double>(ref.coupling) - 1.0) <= 1e-15);

    // Frozen in units of omega_c.
    CHECK(em.omega_c / two_pi == doctest::Approx(0.99).epsilon(1e-14));
    CHECK(em.omega_m / two_pi == doctest::Approx(0.9775).epsilon(1e-14));
    CHECK(em.coupling / two_pi == doctest::Approx(-0.015).epsilon(1e-14));
}

TEST_CASE("regime check")
{
    SystemConfig cfg = resonant(0.1, 0.2);
    try {
        reduce(cfg);
        FAIL("expected a regime error");
    } catch (const RegimeError &e) {
        CHECK(e.eta_c() == doctest::Approx(0.1));
        CHECK(e.eta_m() == doctest::Approx(0.2));
    }
    CHECK_NOTHROW(reduce(cfg, {.threshold = default_dispersive_threshold, .force = true}));
    CHECK_NOTHROW(reduce(cfg, {.threshold = 0.25, .force = false}));
}

TEST_CASE("polariton frequencies")
{
    SUBCASE("uncoupled modes come back sorted")
    {
        const EffectiveModel em = reduce(resonant(0.1, 0.0));
        const auto [lo, hi] = polariton_frequencies(em);
        CHECK(lo == em.omega_c);
        CHECK(hi == em.omega_m);
    }
    SUBCASE("degenerate modes split by twice the coupling")
    {
        const EffectiveModel em = reduce(resonant(0.1, 0.1));
        const auto [lo, hi] = polariton_frequencies(em);
        CHECK(lo == doctest::Approx(em.omega_c - std::abs(em.coupling)).epsilon(1e-15));
        CHECK(hi == doctest::Approx(em.omega_c + std::abs(em.coupling)).epsilon(1e-15));
    }
    SUBCASE("doublet fixtures agree with the Jacobi oracle")
    {
        for (double gm : {0.05, 0.15}) {
            const EffectiveModel em = reduce(resonant(0.1, gm));
            const auto [lo, hi] = polariton_frequencies(em);
            const auto [jlo, jhi] = jacobi_pair(em);
            CHECK(std::abs(lo / jlo - 1.0) <= 1e-12);
            CHECK(std::abs(hi / jhi - 1.0) <= 1e-12);
        }
    }
    SUBCASE("random configurations agree with the Jacobi oracle")
    {
        std::mt19937_64 rng(7);
        std::uniform_real_distribution<double> freq(0.5 * two_pi, 1.5 * two_pi);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        double worst = 0.0;
        for (int k = 0; k < 1000; ++k) {
            SystemConfig cfg;
            cfg.omega_c = freq(rng);
            cfg.omega_m = freq(rng);
            cfg.omega_q = std::max(cfg.omega_c, cfg.omega_m) + two_pi * (0.5 + unit(rng));
            cfg.g_c = 0.15 * cfg.detuning_c() * unit(rng);
            cfg.g_m = 0.15 * cfg.detuning_m() * unit(rng);
            const EffectiveModel em = reduce(cfg);
            const auto [lo, hi] = polariton_frequencies(em);
            const auto [jlo, jhi] = jacobi_pair(em);
            worst = std::max({worst, std::abs(lo / jlo - 1.0), std::abs(hi / jhi - 1.0)});
        }
        CHECK(worst <= 1e-12);
    }
}

TEST_CASE("printed peak formula against the poles")
{
    SUBCASE("identical couplings: formula splitting equals pole splitting")
    {
        const SystemConfig cfg = resonant(0.1, 0.1);
        const PeakFormula f = dispersive_peak_formula(cfg);
        const double pole = polariton_splitting(reduce(cfg));
        CHECK(std::abs(f.splitting / pole - 1.0) <= 1e-12);
        CHECK(f.splitting == doctest::Approx(2.0 * 0.01 * two_pi).epsilon(1e-14));
    }
    SUBCASE("qubit-only cavity: formula is twice the pole splitting")
    {
        const SystemConfig cfg = resonant(0.1, 0.0);
        const PeakFormula f = dispersive_peak_formula(cfg);
        const double pole = polariton_splitting(reduce(cfg));
        CHECK(f.splitting == doctest::Approx(2.0 * 0.01 * two_pi).epsilon(1e-14));
        CHECK(pole == doctest::Approx(0.01 * two_pi).epsilon(1e-12));
    }
    SUBCASE("strong doublet: formula, poles and spectrum maxima")
    {
        const SystemConfig cfg = resonant(0.1, 0.15);
        const PeakFormula f = dispersive_peak_formula(cfg);
        const EffectiveModel em = reduce(cfg);
        const auto [lo, hi] = polariton_frequencies(em);

        CHECK(f.lower / two_pi == doctest::Approx(0.9642243758102334).epsilon(1e-13));
        CHECK(f.upper / two_pi == doctest::Approx(1.0032756241897666).epsilon(1e-13));
        CHECK(f.splitting / two_pi == doctest::Approx(0.03905124837953327).epsilon(1e-13));
        CHECK(lo / two_pi == doctest::Approx(0.9675).epsilon(1e-13));
        CHECK(hi / two_pi == doctest::Approx(1.0).epsilon(1e-13));

        const SweepSeries s = sweep_spectrum(em, {0.95 * two_pi, 1.05 * two_pi, 4001}, cfg.kappa, cfg.gamma);
        const PeakReport peaks = find_spectrum_peaks(s, em, cfg.kappa, cfg.gamma);
        REQUIRE(peaks.peaks.size() == 2);
        // The spectrum follows the poles, not the printed formula.
        const double linewidth = cfg.kappa + cfg.gamma;
        CHECK(std::abs(peaks.peaks[0].position - lo) < 0.1 * linewidth);
        CHECK(std::abs(peaks.peaks[1].position - hi) < 0.1 * linewidth);
        CHECK(std::abs(peaks.peaks[0].position - f.lower) > linewidth);
        CHECK(std::abs(peaks.peaks[1].position - f.upper) > linewidth);
    }
    SUBCASE("weak doublet")
    {
        const PeakFormula f = dispersive_peak_formula(resonant(0.1, 0.05));
        CHECK(f.splitting / two_pi == doctest::Approx(0.01802775637731995).epsilon(1e-13));
        CHECK(polariton_splitting(reduce(resonant(0.1, 0.05))) / two_pi == doctest::Approx(0.0125).epsilon(1e-12));
    }
    SUBCASE("non-resonant input is rejected")
    {
        SystemConfig cfg = resonant(0.1, 0.1);
        cfg.omega_m *= 1.01;
        CHECK_THROWS_AS(dispersive_peak_formula(cfg), DomainError);
    }
}

TEST_CASE("transfer time")
{
    const EffectiveModel em = reduce(resonant(0.1, 0.1));
    CHECK(transfer_time(em, 0) == doctest::Approx(25.0).epsilon(1e-12));
    CHECK(transfer_time(em, 1) == doctest::Approx(75.0).epsilon(1e-12));

    EffectiveModel stronger = em;
    stronger.coupling *= 2.0;
    CHECK(transfer_time(stronger, 0) == doctest::Approx(12.5).epsilon(1e-12));

    CHECK_THROWS_AS(transfer_time(reduce(resonant(0.1, 0.0)), 0), NoCouplingError);
}

TEST_CASE("single-excitation evolution")
{
    SUBCASE("identity at t = 0")
    {
        const EffectiveModel em = reduce(resonant(0.1, 0.15));
        const auto a = evolve_single_excitation(em, 0.0, Mode::cavity);
        CHECK(a[0] == std::complex<double>(1.0, 0.0));
        CHECK(a[1] == std::complex<double>(0.0, 0.0));
        const auto b = evolve_single_excitation(em, 0.0, Mode::mechanics);
        CHECK(b[0] == std::complex<double>(0.0, 0.0));
        CHECK(b[1] == std::complex<double>(1.0, 0.0));
    }
    SUBCASE("complete transfer between degenerate modes")
    {
        const EffectiveModel em = reduce(resonant(0.1, 0.1));
        const auto a = evolve_single_excitation(em, transfer_time(em, 0), Mode::cavity);
        CHECK(std::abs(std::norm(a[1]) - 1.0) <= 1e-10);
        const auto b = evolve_single_excitation(em, transfer_time(em, 3), Mode::mechanics);
        CHECK(std::abs(std::norm(b[0]) - 1.0) <= 1e-10);
    }
    SUBCASE("detuned modes against a matrix exponential from the Jacobi oracle")
    {
        const EffectiveModel em = reduce(resonant(0.1, 0.15));
        const std::vector<double> h{em.omega_c, em.coupling, em.coupling, em.omega_m};
        const auto sys = oracle::dense_symmetric_eigensystem(h, 2);
        for (double t : {transfer_time(em, 0), 3.7, 41.0, 250.0}) {
            const auto a = evolve_single_excitation(em, t, Mode::cavity);
            for (std::size_t row = 0; row < 2; ++row) {
                std::complex<double> ref = 0.0;
                for (std::size_t k = 0; k < 2; ++k)
                    ref += sys.vectors[row * 2 + k] * std::exp(std::complex<double>(0.0, -sys.values[k] * t)) *
                           sys.vectors[0 * 2 + k];
                CHECK(std::abs(a[row] - ref) <= 1e-11);
            }
        }
    }
    SUBCASE("norm is conserved")
    {
        const EffectiveModel em = reduce(resonant(0.1, 0.15));
        for (int k = 0; k <= 2000; ++k) {
            const double t = 0.5 * k;
            const auto a = evolve_single_excitation(em, t, Mode::cavity);
            REQUIRE(std::abs(std::norm(a[0]) + std::norm(a[1]) - 1.0) <= 1e-12);
        }
    }
}

TEST_CASE("red shift grows with the mechanical coupling")
{
    double previous = reduce(resonant(0.1, 0.0)).omega_m;
    for (int k = 1; k <= 30; ++k) {
        const double shifted = reduce(resonant(0.1, 0.005 * k)).omega_m;
        CHECK(shifted < previous);
        previous = shifted;
    }
}
