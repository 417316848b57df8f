#include "tripartite/cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "tripartite/config.hpp"
#include "tripartite/effective.hpp"
#include "tripartite/errors.hpp"
#include "tripartite/fullmodel.hpp"
#include "tripartite/oracle.hpp"
#include "tripartite/spectra.hpp"
#include "tripartite/transport.hpp"
#include "tripartite/units.hpp"
#include "tripartite/verify.hpp"

namespace tripartite::cli {

namespace {

using ojson = nlohmann::ordered_json;
constexpr double nan = std::numeric_limits<double>::quiet_NaN();

double parse_double(std::string_view text, std::string_view what)
{
    double value = 0.0;
    const char *first = text.data();
    const char *last = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || !std::isfinite(value))
        throw ConfigError("cannot parse " + std::string(what) + " from '" + std::string(text) + "'");
    return value;
}

// The sidecar of an earlier run, when --config points at one.
std::optional<ojson> read_manifest(const std::string &path)
{
    std::ifstream file(path);
    if (!file)
        return std::nullopt;
    const ojson doc = ojson::parse(file, nullptr, false);
    if (doc.is_discarded() || !doc.is_object() || !doc.contains("manifest") || !doc.contains("input"))
        return std::nullopt;
    return doc;
}

struct CommonOptions
{
    std::string config;
    std::string grid;
    std::string out;
    bool force = false;
};

GridSpec scaled_grid(const RangeSpec &range, double unit)
{
    GridSpec grid{range.min * unit, range.max * unit, range.points};
    grid.validate();
    return grid;
}

void write_text(const std::string &path, const std::string &text)
{
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file)
        throw ConfigError("cannot open output file " + path);
    file << text;
    if (!file)
        throw ConfigError("failed writing output file " + path);
}

ojson manifest(const std::string &subcommand, const LoadedConfig &cfg, const RangeSpec &grid,
               const char *grid_units, const std::vector<std::string> &outputs)
{
    ojson m;
    m["tool"] = tool_name;
    m["version"] = tool_version;
    m["subcommand"] = subcommand;
    m["grid"] = {{"min", grid.min}, {"max", grid.max}, {"points", grid.points}, {"units", grid_units}};
    m["outputs"] = outputs;
    m["warnings"] = cfg.warnings;
    return m;
}

ojson sidecar(ojson manifest_doc, const LoadedConfig &cfg)
{
    ojson doc;
    doc["manifest"] = std::move(manifest_doc);
    doc["input"] = cfg.document;
    doc["resolved"] = describe(cfg.system);
    return doc;
}

ojson effective_json(const EffectiveModel &em)
{
    return {
        {"omega_c_eff", em.omega_c},
        {"omega_m_eff", em.omega_m},
        {"coupling", em.coupling},
        {"coupling_MHz", units::angular_to_mhz(em.coupling)},
        {"eta_c", em.eta_c},
        {"eta_m", em.eta_m},
    };
}

ojson dips_json(const PeakReport &dips, double normalization)
{
    ojson out = ojson::array();
    for (const Peak &p : dips.peaks) {
        out.push_back({{"omega", p.position},
                       {"omega_norm", p.position / normalization},
                       {"reflectance", 1.0 - p.height}});
    }
    return out;
}

void report_warnings(const LoadedConfig &cfg, std::ostream &err)
{
    for (const auto &w : cfg.warnings)
        err << "warning: " << w << '\n';
}

int cmd_spectrum(const CommonOptions &opt, std::ostream &out, std::ostream &err)
{
    const LoadedConfig cfg = load_config(opt.config);
    report_warnings(cfg, err);
    const RangeSpec range = parse_range(opt.grid);
    const SystemConfig &sys = cfg.system;
    const EffectiveModel em = reduce(sys, {.threshold = cfg.dispersive_threshold, .force = opt.force});
    const SweepSeries series = sweep_spectrum(em, scaled_grid(range, sys.omega_c), sys.kappa, sys.gamma);
    const PeakReport peaks = find_spectrum_peaks(series, em, sys.kappa, sys.gamma);

    const std::string sidecar_path = opt.out + ".json";
    write_text(opt.out, series.to_csv());

    ojson doc = sidecar(manifest("spectrum", cfg, range, "omega/omega_c", {opt.out, sidecar_path}), cfg);
    doc["effective"] = effective_json(em);
    doc["peaks"] = peaks.to_json(sys.omega_c);
    const auto poles = oracle::d_poles(em.omega_c, em.omega_m, em.coupling, sys.kappa, sys.gamma);
    doc["poles"] = ojson::array();
    for (const auto &p : poles)
        doc["poles"].push_back({{"omega", p.real()}, {"omega_norm", p.real() / sys.omega_c}, {"half_width", -p.imag()}});
    try {
        const PeakFormula formula = dispersive_peak_formula(sys);
        doc["peak_formula"] = {{"lower", formula.lower},
                               {"upper", formula.upper},
                               {"splitting", formula.splitting},
                               {"pole_splitting", polariton_splitting(em)}};
    } catch (const DomainError &) {
        doc["peak_formula"] = nullptr;
    }
    write_text(sidecar_path, doc.dump(2) + "\n");
    out << "spectrum: " << series.size() << " points, " << peaks.peaks.size() << " peak(s) -> " << opt.out << '\n';
    return exit_ok;
}

int cmd_transport(const CommonOptions &opt, const std::string &model, std::ostream &out, std::ostream &err)
{
    const LoadedConfig cfg = load_config(opt.config);
    report_warnings(cfg, err);
    const RangeSpec range = parse_range(opt.grid);
    const SystemConfig &sys = cfg.system;
    const GridSpec grid = scaled_grid(range, sys.omega_m);

    ReflectionFunction reflection;
    std::optional<EffectiveModel> em;
    if (model == "effective") {
        em = reduce(sys, {.threshold = cfg.dispersive_threshold, .force = opt.force});
        reflection = [&](double w) { return reflection_eff(w, *em, sys.kappa, sys.gamma); };
    } else {
        reflection = [&](double w) { return reflection_full(w, sys); };
    }
    const SweepSeries series = sweep_transport(reflection, grid, sys.omega_m, default_group_delay_step(sys.kappa),
                                               {{"kind", "transport_" + model}});
    const PeakReport dips = find_dips(series.grid(), reflection);

    const std::string sidecar_path = opt.out + ".json";
    write_text(opt.out, series.to_csv());

    ojson doc = sidecar(manifest("transport", cfg, range, "omega/omega_m", {opt.out, sidecar_path}), cfg);
    doc["model"] = model;
    doc["dips"] = dips_json(dips, sys.omega_m);
    if (em) {
        doc["effective"] = effective_json(*em);
        const ZeroReflection zeros = zero_reflection_points(*em, sys.kappa, sys.gamma);
        ojson z;
        z["exact"] = zeros.exact;
        z["omega"] = zeros.frequencies;
        ojson norm = ojson::array();
        for (double w : zeros.frequencies)
            norm.push_back(w / sys.omega_m);
        z["omega_norm"] = std::move(norm);
        z["reflectance"] = zeros.reflectance;
        doc["zero_reflection"] = std::move(z);
    }
    write_text(sidecar_path, doc.dump(2) + "\n");
    out << "transport (" << model << "): " << series.size() << " points, " << dips.peaks.size() << " dip(s) -> "
        << opt.out << '\n';
    return exit_ok;
}

struct SweepOptions
{
    std::string variable;
    std::string range;
    std::string observable = "peaks";
    std::string model = "effective";
    double at = 1.0;
};

int cmd_sweep(const CommonOptions &opt, const SweepOptions &sw, std::ostream &out, std::ostream &err)
{
    const LoadedConfig cfg = load_config(opt.config);
    report_warnings(cfg, err);
    const RangeSpec values_range = parse_range(sw.range);
    const RangeSpec inner = parse_range(opt.grid);

    if (sw.variable == "sigma_z" && sw.model != "full")
        throw ConfigError("sigma_z only enters the full model; use --model full");
    if (sw.observable == "peaks" && sw.model != "effective")
        throw ConfigError("the peaks observable is defined on the effective-model spectrum");

    auto config_at = [&](double value) {
        SystemConfig sys = cfg.system;
        if (sw.variable == "g_m") {
            sys.g_m = units::mhz_to_angular(value);
        } else if (sw.variable == "B") {
            sys = with_magnetic_field(cfg, value);
        } else {
            sys.sigma_z = value;
        }
        sys.validate();
        return sys;
    };

    const std::string var_label = sw.variable == "g_m" ? "g_m_MHz" : sw.variable == "B" ? "B_T" : "sigma_z";
    const GridSpec values_grid{values_range.min, values_range.max, values_range.points};
    const std::vector<double> values = values_grid.values();
    const std::size_t n = values.size();

    std::vector<std::pair<std::string, std::vector<double>>> columns;
    auto column = [&](const std::string &label) -> std::vector<double> & {
        for (auto &c : columns)
            if (c.first == label)
                return c.second;
        columns.emplace_back(label, std::vector<double>(n, nan));
        return columns.back().second;
    };
    column(var_label) = values;

    for (std::size_t i = 0; i < n; ++i) {
        const SystemConfig sys = config_at(values[i]);
        const ReduceOptions reduce_opts{.threshold = cfg.dispersive_threshold, .force = opt.force};
        if (sw.observable == "peaks") {
            const EffectiveModel em = reduce(sys, reduce_opts);
            const SweepSeries series = sweep_spectrum(em, scaled_grid(inner, sys.omega_c), sys.kappa, sys.gamma);
            const PeakReport peaks = find_spectrum_peaks(series, em, sys.kappa, sys.gamma);
            const auto poles = oracle::d_poles(em.omega_c, em.omega_m, em.coupling, sys.kappa, sys.gamma);
            column("g_eff_MHz")[i] = units::angular_to_mhz(em.coupling);
            column("n_peaks")[i] = static_cast<double>(peaks.peaks.size());
            column("peak_lower_norm")[i] = peaks.peaks.empty() ? nan : peaks.peaks.front().position / sys.omega_c;
            column("peak_upper_norm")[i] = peaks.peaks.size() < 2 ? nan : peaks.peaks.back().position / sys.omega_c;
            column("splitting_norm")[i] = peaks.peaks.size() < 2
                                              ? nan
                                              : (peaks.peaks.back().position - peaks.peaks.front().position) / sys.omega_c;
            column("pole_lower_norm")[i] = poles[0].real() / sys.omega_c;
            column("pole_upper_norm")[i] = poles[1].real() / sys.omega_c;
            column("pole_splitting_norm")[i] = (poles[1].real() - poles[0].real()) / sys.omega_c;
            continue;
        }

        ReflectionFunction reflection;
        std::optional<EffectiveModel> em;
        if (sw.model == "effective") {
            em = reduce(sys, reduce_opts);
            reflection = [&](double w) { return reflection_eff(w, *em, sys.kappa, sys.gamma); };
        } else {
            reflection = [&](double w) { return reflection_full(w, sys); };
        }

        if (sw.observable == "dips") {
            const PeakReport dips = find_dips(scaled_grid(inner, sys.omega_m).values(), reflection);
            column("n_dips")[i] = static_cast<double>(dips.peaks.size());
            auto &lower = column("dip_lower_norm");
            auto &lower_r2 = column("r2_lower");
            auto &upper = column("dip_upper_norm");
            auto &upper_r2 = column("r2_upper");
            if (!dips.peaks.empty()) {
                lower[i] = dips.peaks.front().position / sys.omega_m;
                lower_r2[i] = 1.0 - dips.peaks.front().height;
            }
            if (dips.peaks.size() >= 2) {
                upper[i] = dips.peaks.back().position / sys.omega_m;
                upper_r2[i] = 1.0 - dips.peaks.back().height;
            }
        } else {
            const double omega = sw.at * sys.omega_m;
            const std::complex<double> r = reflection(omega);
            column("omega_norm")[i] = sw.at;
            column("abs_r2")[i] = std::norm(r);
            column("phase")[i] = r == std::complex<double>(0.0, 0.0) ? nan : phase(r);
        }
    }

    SweepSeries table(values, {{"kind", "sweep"}, {"variable", sw.variable}, {"observable", sw.observable}});
    for (auto &[label, data] : columns)
        table.add_column(label, std::move(data));

    const std::string sidecar_path = opt.out + ".json";
    write_text(opt.out, table.to_csv());
    ojson m = manifest("sweep", cfg, inner, sw.observable == "peaks" ? "omega/omega_c" : "omega/omega_m",
                       {opt.out, sidecar_path});
    m["sweep"] = {{"variable", sw.variable},
                  {"min", values_range.min},
                  {"max", values_range.max},
                  {"points", values_range.points},
                  {"observable", sw.observable},
                  {"model", sw.model}};
    if (sw.observable == "phase")
        m["sweep"]["at"] = sw.at;
    write_text(sidecar_path, sidecar(std::move(m), cfg).dump(2) + "\n");
    out << "sweep over " << sw.variable << ": " << n << " rows -> " << opt.out << '\n';
    return exit_ok;
}

struct VerifyCliOptions
{
    std::string config;
    std::size_t samples = 100;
    std::uint64_t seed = verify::Options{}.seed;
    std::string out;
    std::string fault;
};

int cmd_verify(const VerifyCliOptions &opt, std::ostream &out, std::ostream &err)
{
    std::optional<SystemConfig> base;
    std::optional<LoadedConfig> cfg;
    if (!opt.config.empty()) {
        cfg = load_config(opt.config);
        report_warnings(*cfg, err);
        base = cfg->system;
    }
    verify::Options options;
    options.samples = opt.samples;
    options.seed = opt.seed;
    const verify::ClosedForms forms =
        opt.fault.empty() ? verify::ClosedForms::library() : verify::ClosedForms::with_fault(opt.fault);
    const verify::Report report = verify::run(base, options, forms);

    for (const verify::Check &c : report.checks) {
        out << (c.pass ? "PASS " : "FAIL ") << c.name << ": max deviation " << format_number(c.max_deviation)
            << " (tolerance " << c.tolerance << ", " << c.evaluations << " evaluations)\n";
        if (!c.pass)
            err << "failing case for '" << c.name << "': " << c.failing_case.dump() << '\n';
    }
    out << (report.ok() ? "verification passed" : "verification FAILED") << " over " << report.configs
        << " configuration(s)\n";

    if (!opt.out.empty()) {
        ojson doc;
        ojson m;
        m["tool"] = tool_name;
        m["version"] = tool_version;
        m["subcommand"] = "verify";
        m["samples"] = opt.samples;
        m["seed"] = opt.seed;
        m["outputs"] = {opt.out};
        doc["manifest"] = std::move(m);
        doc["input"] = cfg ? cfg->document : nlohmann::json(nullptr);
        doc["verification"] = report.to_json();
        write_text(opt.out, doc.dump(2) + "\n");
    }
    return report.ok() ? exit_ok : exit_verification_failed;
}

} // namespace

RangeSpec parse_range(std::string_view text)
{
    const auto first = text.find(':');
    const auto second = first == std::string_view::npos ? first : text.find(':', first + 1);
    if (text.empty() || second == std::string_view::npos || text.find(':', second + 1) != std::string_view::npos)
        throw ConfigError("range must look like MIN:MAX:POINTS (got '" + std::string(text) + "')");
    RangeSpec range;
    range.min = parse_double(text.substr(0, first), "range minimum");
    range.max = parse_double(text.substr(first + 1, second - first - 1), "range maximum");
    const std::string_view count = text.substr(second + 1);
    unsigned long long points = 0;
    const auto [ptr, ec] = std::from_chars(count.data(), count.data() + count.size(), points);
    if (ec != std::errc() || ptr != count.data() + count.size())
        throw ConfigError("cannot parse point count from '" + std::string(count) + "'");
    range.points = static_cast<std::size_t>(points);
    if (!(range.min < range.max))
        throw ConfigError("range must ascend (MIN < MAX)");
    if (range.points < 2)
        throw ConfigError("range needs at least 2 points");
    return range;
}

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err)
{
    CLI::App app{"Frequency-domain spectra and single-photon transport of a CPW resonator, "
                 "flux qubit and nanomechanical resonator",
                 tool_name};
    app.set_version_flag("--version", tool_version);
    app.require_subcommand(1);

    CommonOptions common;
    auto add_common = [&](CLI::App *sub, const char *default_grid) {
        common.grid = default_grid;
        sub->add_option("--config", common.config, "Configuration file (JSON, schema v1) or run manifest")
            ->required();
        sub->add_option("--grid", common.grid, "Frequency grid MIN:MAX:POINTS in units of the normalization frequency")
            ->capture_default_str();
        sub->add_option("--out", common.out, "Output CSV path; a JSON sidecar is written next to it")->required();
        sub->add_flag("--force", common.force, "Reduce to the effective model even outside the dispersive regime");
    };

    CLI::App *spectrum = app.add_subcommand("spectrum", "Voltage-fluctuation spectrum of the cavity");
    add_common(spectrum, "0.95:1.05:4001");

    std::string model = "effective";
    CLI::App *transport = app.add_subcommand("transport", "Reflection, transmittance, phase and group delay");
    add_common(transport, "0.95:1.05:4001");
    transport->add_option("--model", model, "effective | full")
        ->check(CLI::IsMember({"effective", "full"}))
        ->capture_default_str();

    SweepOptions sw;
    CLI::App *sweep = app.add_subcommand("sweep", "Summary observables over a parameter sweep");
    add_common(sweep, "0.95:1.05:4001");
    sweep->add_option("--var", sw.variable, "g_m (MHz) | B (T) | sigma_z")
        ->required()
        ->check(CLI::IsMember({"g_m", "B", "sigma_z"}));
    sweep->add_option("--range", sw.range, "Sweep values MIN:MAX:POINTS")->required();
    sweep->add_option("--observable", sw.observable, "peaks | dips | phase")
        ->check(CLI::IsMember({"peaks", "dips", "phase"}))
        ->capture_default_str();
    sweep->add_option("--model", sw.model, "effective | full")
        ->check(CLI::IsMember({"effective", "full"}))
        ->capture_default_str();
    sweep->add_option("--at", sw.at, "Probe frequency omega/omega_m for the phase observable")->capture_default_str();

    VerifyCliOptions vopt;
    CLI::App *verify_cmd = app.add_subcommand("verify", "Check closed forms against brute-force oracles");
    verify_cmd->add_option("--config", vopt.config, "Configuration to include alongside random samples");
    verify_cmd->add_option("--verify-samples", vopt.samples, "Number of random configurations")->capture_default_str();
    verify_cmd->add_option("--seed", vopt.seed, "Random seed")->capture_default_str();
    verify_cmd->add_option("--out", vopt.out, "Write the verification report (JSON) here");
    verify_cmd->add_option("--inject-fault", vopt.fault, "Corrupt one closed form (harness self-test)")->group("");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success &e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError &e) {
        app.exit(e, out, err);
        return exit_config_error;
    }

    try {
        // Replaying a sidecar restores the grid and model it was produced with,
        // unless they are given again on the command line.
        for (CLI::App *sub : {spectrum, transport}) {
            if (!*sub)
                continue;
            const auto previous = read_manifest(common.config);
            if (!previous)
                break;
            const ojson &m = previous->at("manifest");
            if (sub->count("--grid") == 0 && m.contains("grid")) {
                const ojson &g = m.at("grid");
                common.grid = format_number(g.at("min").get<double>()) + ":" + format_number(g.at("max").get<double>()) +
                              ":" + std::to_string(g.at("points").get<std::size_t>());
            }
            if (sub == transport && sub->count("--model") == 0 && previous->contains("model"))
                model = previous->at("model").get<std::string>();
        }

        if (*spectrum)
            return cmd_spectrum(common, out, err);
        if (*transport)
            return cmd_transport(common, model, out, err);
        if (*sweep) {
            sw.model = sw.model.empty() ? "effective" : sw.model;
            return cmd_sweep(common, sw, out, err);
        }
        return cmd_verify(vopt, out, err);
    } catch (const SingularityError &e) {
        err << "error: numerical singularity: " << e.what() << '\n';
        return exit_singularity;
    } catch (const Error &e) {
        err << "error: " << e.what() << '\n';
        return exit_config_error;
    } catch (const nlohmann::json::exception &e) {
        err << "error: " << e.what() << '\n';
        return exit_config_error;
    }
}

} // namespace tripartite::cli
