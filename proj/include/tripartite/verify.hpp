#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "tripartite/effective.hpp"
#include "tripartite/oracle.hpp"
#include "tripartite/params.hpp"

// Cross-checks of the closed forms against the brute-force oracles.
namespace tripartite::verify {

/// Two-mode network {cavity, NAMR} of the effective model, port on the cavity.
oracle::LinearNetwork effective_network(const EffectiveModel &em, double kappa, double gamma);

/// Three-mode network {cavity, NAMR, qubit} with sigma_z frozen. The qubit
/// amplitude is rescaled by sqrt(-sigma_z), which makes the couplings
/// g_c sqrt(-sigma_z), g_m sqrt(-sigma_z) symmetric.
oracle::LinearNetwork full_network(const SystemConfig &cfg);

/// The closed forms under test. Defaults are the library functions; the
/// verification harness can be handed corrupted versions.
struct ClosedForms
{
    std::function<std::complex<double>(double, const EffectiveModel &, double, double)> reflection_eff;
    std::function<std::complex<double>(double, const SystemConfig &)> reflection_full;
    std::function<std::complex<double>(double, const EffectiveModel &, double, double)> response_d;
    std::function<std::pair<double, double>(const EffectiveModel &)> polaritons;
    std::function<std::array<double, 3>(const SystemConfig &)> eigenvalues;

    static ClosedForms library();
    /// Library forms with one of them perturbed at the 1e-6 level. Names:
    /// reflection_eff, reflection_full, response_d, polaritons, eigenvalues.
    static ClosedForms with_fault(std::string_view name);
};

struct Options
{
    std::size_t samples = 100;
    std::uint64_t seed = 20140521;
    std::size_t grid_points = 2001;
    double tolerance = 1e-10;
};

struct Check
{
    std::string name;
    double max_deviation = 0.0;
    double tolerance = 0.0;
    std::size_t evaluations = 0;
    bool pass = true;
    nlohmann::json failing_case; // config + frequency of the worst breach
};

struct Report
{
    std::vector<Check> checks;
    std::size_t configs = 0;

    bool ok() const;
    nlohmann::ordered_json to_json() const;
};

/// Relative deviation |value - reference| / max(|reference|, floor).
double relative_deviation(std::complex<double> value, std::complex<double> reference, double floor = 1e-6);

/// A random configuration inside the dispersive regime with kappa > 0.
SystemConfig random_config(std::mt19937_64 &rng);

/// Frequency window covering bare and shifted modes plus a few linewidths.
std::pair<double, double> analysis_window(const SystemConfig &cfg);

/// Runs every oracle-equivalence check on `base` (if given) plus
/// `options.samples` random configurations.
Report run(const std::optional<SystemConfig> &base, const Options &options,
           const ClosedForms &forms = ClosedForms::library());

} // namespace tripartite::verify
