#pragma once
// Subcommands and the argument parser. Exit codes: 0 ok, 1 validation or
// numerical failure, 2 bad input.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <string>
#include <vector>

#include "../acceptance.hpp"
#include "../figures.hpp"
#include "config.hpp"

namespace casimir_duomode::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitBadInput = 2;

struct Streams {
    std::ostream& out;
    std::ostream& err;
};

namespace detail {

inline void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw InvalidParameter("cannot write " + path.string());
    f << content;
    if (!f) throw InvalidParameter("cannot write " + path.string());
}

inline void emit(const RunConfig& c, const std::string& stem, const io::CsvTable& csv, const std::string& svg, Streams s) {
    std::error_code ec;
    std::filesystem::create_directories(c.output_dir, ec);
    if (ec) throw InvalidParameter("cannot create output directory " + c.output_dir + ": " + ec.message());
    const std::filesystem::path dir(c.output_dir);
    if (c.wants_csv()) {
        std::ostringstream os;
        csv.write(os);
        write_file(dir / (stem + ".csv"), os.str());
        s.out << "wrote " << (dir / (stem + ".csv")).string() << '\n';
    }
    if (c.wants_svg()) {
        write_file(dir / (stem + ".svg"), svg);
        s.out << "wrote " << (dir / (stem + ".svg")).string() << '\n';
    }
}

inline std::string complex_text(cplx z) {
    std::ostringstream os;
    os << std::setprecision(12) << z.real() << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i";
    return os.str();
}

}  // namespace detail

inline int cmd_eigen(const RunConfig& c, Streams s) {
    const ModelParams& p = c.model;
    const EigenSet e = eigenvalues(p);
    s.out << std::setprecision(12);
    s.out << "epsilon = " << p.epsilon << ", delta~ = " << p.delta_t() << ", Delta~ = " << p.big_delta_t()
          << ", nu = " << p.nu << '\n';
    s.out << "lambda_plus = " << detail::complex_text(e.lambda_plus) << '\n';
    s.out << "lambda_minus = " << detail::complex_text(e.lambda_minus) << '\n';
    s.out << "a = " << e.a << "\nb = " << e.b << "\nc = " << e.c << '\n';
    s.out << "increment = " << e.lambda_plus.real() / p.epsilon << " eps\n";
    if (p.nu > 1.0) {
        const RegionVerdict v = classify({p.delta_t(), p.big_delta_t()}, p.nu, p.epsilon);
        s.out << "region = " << to_string(v.kind) << '\n';
    } else {
        s.out << "region = unclassified (nu <= 1)\n";
    }
    if (is_exact_resonance(p)) s.out << "regime = exact resonance, rho = " << std::sqrt(2.0 * p.nu - 1.0) << '\n';
    if (is_asymmetric_regime(p)) {
        const auto [R, J] = asymmetric_rates(p.nu);
        s.out << "regime = asymmetric generation, R ~ " << R << ", J ~ " << J << " (units of eps)\n";
    }
    return kExitOk;
}

inline int cmd_evolve(const RunConfig& c, Streams s) {
    const ModelParams& p = c.model;
    std::vector<std::string> warnings = c.warnings;
    std::vector<double> taus = tau_grid(c.tau_max, c.steps);
    if (c.layer != Layer::Analytic) taus = snap_stroboscopic(taus, p);

    std::optional<std::vector<Sample>> analytic, oracle;
    Route route = analytic_route(p);
    if (c.layer != Layer::Oracle) {
        if (route == Route::Generic)
            warnings.push_back("no closed form at these parameters; analytic layer uses the generic fundamental matrix");
        analytic = evolve(p, taus, route);
    }
    if (c.layer != Layer::Analytic) oracle = evolve(p, taus, Route::Oracle, c.oracle);

    const std::string route_name = c.layer == Layer::Oracle  ? "oracle"
                                   : c.layer == Layer::Both ? std::string(to_string(route)) + "+oracle"
                                                            : std::string(to_string(route));
    const auto table = evolve_table(p, analytic ? &*analytic : nullptr, oracle ? &*oracle : nullptr, route_name, warnings);
    const auto svg = evolve_svg(analytic ? *analytic : *oracle, analytic && oracle ? &*oracle : nullptr);
    for (const auto& w : warnings) s.err << "warning: " << w << '\n';
    detail::emit(c, "evolve", table, svg, s);
    return kExitOk;
}

inline int cmd_pdf(const RunConfig& c, Streams s) {
    const ModelParams& p = c.model;
    double tau;
    if (c.tau) {
        tau = *c.tau;
    } else {
        if (!(p.nu > 0.5)) throw InvalidParameter("default pdf time needs nu > 1/2; give --tau");
        tau = figure_pdf_time(p.nu);
    }
    const Mode mode = c.mode == 3 ? Mode::Third : Mode::First;
    const ModeObservables obs = observables_at(tau, p, mode);
    require_feasible(obs);
    const auto table = pdf_table(obs, c.n_max, tau);
    detail::emit(c, "pdf", table, pdf_svg(table, "Photon distribution, mode " + std::to_string(c.mode)), s);
    return kExitOk;
}

inline int cmd_map(const RunConfig& c, Streams s) {
    const SweepGrid g = sweep_grid(c.map_delta, c.map_big_delta, c.model.nu, c.model.epsilon);
    detail::emit(c, "map", map_table(g), map_svg(g), s);
    s.out << "symmetric components: " << count_components(g, RegionKind::SymmetricResonance)
          << ", asymmetric components: " << count_components(g, RegionKind::AsymmetricResonance) << '\n';
    return kExitOk;
}

inline int cmd_figure(const RunConfig& c, int number, Streams s) {
    FigureOptions o;
    o.epsilon = c.model.epsilon;
    const Artifact a = figure(number, o);
    detail::emit(c, a.stem, a.csv, a.svg, s);
    return kExitOk;
}

inline int cmd_validate(const RunConfig& c, int only, Streams s) {
    acceptance::Options opt;
    opt.seed = c.seed;
    std::vector<acceptance::CriterionResult> results;
    if (only > 0)
        results.push_back(acceptance::run_one(only, opt));
    else
        results = acceptance::run_all(opt);
    bool all = true;
    for (const auto& r : results) {
        s.out << std::setw(2) << r.id << "  " << (r.pass ? "PASS" : "FAIL") << "  " << r.name << '\n';
        for (const auto& d : r.details) s.out << "        " << d << '\n';
        all = all && r.pass;
    }
    if (!all) {
        s.out << "failing:";
        for (const auto& r : results)
            if (!r.pass) s.out << ' ' << r.id;
        s.out << '\n';
    }
    return all ? kExitOk : kExitValidation;
}

/// Parses argv and runs one subcommand.
inline int run(int argc, const char* const* argv, Streams s) {
    CLI::App app{"Two-mode parametric resonance in a vibrating cavity", "casimir_duomode"};
    app.require_subcommand(1);
    app.fallthrough();

    KeyValues flags;
    std::string config_path;
    app.add_option("--config", config_path, "flat key = value config file");
    auto flag = [&](const std::string& name, const std::string& key, const std::string& help) {
        return app.add_option_function<std::string>(name, [&flags, key](const std::string& v) { flags[key] = v; }, help);
    };
    flag("--epsilon", "epsilon", "modulation amplitude");
    flag("--delta-t", "delta_t", "drive detuning / epsilon");
    flag("--big-delta-t", "big_delta_t", "upper-mode detuning / epsilon");
    auto* nu = flag("--nu", "nu", "coupling nu = 96 mu^2");
    auto* mu = flag("--mu", "mu", "coupling mu");
    auto* pair = flag("--mode-pair", "mode_pair", "resonant pair KX,JX");
    nu->excludes(mu)->excludes(pair);
    mu->excludes(pair);
    auto* t1 = flag("--theta1", "theta1", "thermal parameter of mode 1");
    auto* t3 = flag("--theta3", "theta3", "thermal parameter of mode 3");
    auto* beta = flag("--beta", "beta", "common inverse temperature (sets both thetas)");
    beta->excludes(t1)->excludes(t3);
    flag("--tau-max", "tau_max", "final slow time");
    flag("--steps", "steps", "number of time steps");
    flag("--layer", "layer", "analytic, oracle or both");
    flag("--out", "out", "output directory");
    flag("--format", "format", "csv, svg or both");
    flag("--epsilon-tilde", "epsilon_tilde", "upper-mode modulation for the oracle");
    flag("--dt", "dt", "oracle step in fast time");
    flag("--seed", "seed", "seed for randomized checks");

    auto* eigen = app.add_subcommand("eigen", "eigenvalues and region of the slow-amplitude matrix");
    auto* evolve_cmd = app.add_subcommand("evolve", "energies, uncertainty products, purity and squeezing over time");
    auto* pdf = app.add_subcommand("pdf", "photon-number distribution");
    pdf->add_option_function<std::string>("--tau", [&flags](const std::string& v) { flags["tau"] = v; }, "slow time");
    pdf->add_option_function<std::string>("--mode", [&flags](const std::string& v) { flags["mode"] = v; }, "1 or 3");
    pdf->add_option_function<std::string>("--n-max", [&flags](const std::string& v) { flags["n_max"] = v; }, "largest n");
    auto* map = app.add_subcommand("map", "region map in the detuning plane");
    map->add_option_function<std::vector<std::string>>(
           "--delta-range", [&flags](const std::vector<std::string>& v) { flags["delta_t_min"] = v[0], flags["delta_t_max"] = v[1]; },
           "MIN,MAX of delta~")
        ->expected(2)
        ->delimiter(',');
    map->add_option_function<std::vector<std::string>>(
           "--big-delta-range",
           [&flags](const std::vector<std::string>& v) { flags["big_delta_t_min"] = v[0], flags["big_delta_t_max"] = v[1]; },
           "MIN,MAX of Delta~")
        ->expected(2)
        ->delimiter(',');
    map->add_option_function<std::string>("--resolution", [&flags](const std::string& v) { flags["resolution"] = v; },
                                          "grid points per axis");
    auto* validate_cmd = app.add_subcommand("validate", "run the acceptance checks");
    int only = 0;
    validate_cmd->add_option("--criterion", only, "run a single criterion 1..12")->check(CLI::Range(1, 12));
    auto* figure_cmd = app.add_subcommand("figure", "regenerate a standard figure dataset");
    int figure_number = 0;
    figure_cmd->add_option("number", figure_number, "1..5")->required()->check(CLI::Range(1, 5));
    for (auto* sub : {eigen, evolve_cmd, pdf, map, validate_cmd, figure_cmd}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        s.out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp& e) {
        s.out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        s.err << "error: " << e.what() << '\n';
        return kExitBadInput;
    }

    RunConfig config;
    try {
        std::vector<KeyValues> layers;
        if (!config_path.empty()) layers.push_back(read_config_file(config_path));
        layers.push_back(flags);
        config = resolve(merge_layers(layers));
    } catch (const std::exception& e) {
        s.err << "error: " << e.what() << '\n';
        return kExitBadInput;
    }

    try {
        if (eigen->parsed()) return cmd_eigen(config, s);
        if (evolve_cmd->parsed()) return cmd_evolve(config, s);
        if (pdf->parsed()) return cmd_pdf(config, s);
        if (map->parsed()) return cmd_map(config, s);
        if (validate_cmd->parsed()) return cmd_validate(config, only, s);
        if (figure_cmd->parsed()) return cmd_figure(config, figure_number, s);
    } catch (const InvalidParameter& e) {
        s.err << "error: " << e.what() << '\n';
        return kExitBadInput;
    } catch (const RegimeError& e) {
        s.err << "error: " << e.what() << '\n';
        return kExitBadInput;
    } catch (const std::exception& e) {
        s.err << "error: " << e.what() << '\n';
        return kExitValidation;
    }
    return kExitBadInput;
}

}  // namespace casimir_duomode::cli
