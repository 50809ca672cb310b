#pragma once
// Tables and plots for the evolve/pdf/map outputs and the five standard figures.

#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "evolution.hpp"
#include "io/csv.hpp"
#include "io/svg.hpp"
#include "photon_distribution.hpp"
#include "resmap.hpp"

namespace casimir_duomode {

struct Artifact {
    std::string stem;  ///< file name without extension
    io::CsvTable csv;
    std::string svg;
};

inline const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

// ---------------------------------------------------------------------------
// evolve

inline std::vector<std::string> evolve_columns() {
    return {"tau", "E1", "E3", "D1", "D3", "purity1", "purity3", "s1", "s3"};
}

inline std::vector<io::Cell> evolve_cells(const Sample& s) {
    return {s.tau, s.energy1, s.energy3, s.mode1.iup, s.mode3.iup, s.purity1(), s.purity3(), s.squeezing1(), s.squeezing3()};
}

inline double relative_difference(double reference, double other) {
    const double scale = std::abs(reference);
    return scale > 0.0 ? std::abs(other - reference) / scale : std::abs(other - reference);
}

/// analytic and/or oracle samples on the same grid; both present adds *_oracle and rel_* columns.
inline io::CsvTable evolve_table(const ModelParams& p, const std::vector<Sample>* analytic, const std::vector<Sample>* oracle,
                                 const std::string& route_name, const std::vector<std::string>& warnings) {
    io::CsvTable t;
    t.meta("route", route_name);
    t.meta("epsilon", p.epsilon);
    t.meta("delta_t", p.delta_t());
    t.meta("big_delta_t", p.big_delta_t());
    t.meta("nu", p.nu);
    t.meta("theta1", p.theta1);
    t.meta("theta3", p.theta3);
    for (const auto& w : warnings) t.meta("warning", w);
    t.columns = evolve_columns();
    if (analytic && oracle) {
        for (const auto& c : evolve_columns())
            if (c != "tau") t.columns.push_back(c + "_oracle");
        for (const char* c : {"E1", "E3", "D1", "D3"}) t.columns.push_back(std::string("rel_") + c);
        for (std::size_t k = 0; k < analytic->size(); ++k) {
            const Sample& a = (*analytic)[k];
            const Sample& o = (*oracle)[k];
            auto row = evolve_cells(a);
            auto orow = evolve_cells(o);
            row.insert(row.end(), orow.begin() + 1, orow.end());
            row.push_back(relative_difference(a.energy1, o.energy1));
            row.push_back(relative_difference(a.energy3, o.energy3));
            row.push_back(relative_difference(a.mode1.iup, o.mode1.iup));
            row.push_back(relative_difference(a.mode3.iup, o.mode3.iup));
            t.rows.push_back(std::move(row));
        }
    } else {
        for (const auto& s : analytic ? *analytic : *oracle) t.rows.push_back(evolve_cells(s));
    }
    return t;
}

inline std::string evolve_svg(const std::vector<Sample>& samples, const std::vector<Sample>* oracle) {
    io::Series e1{"E1", {}, {}, kPalette[0]}, e3{"E3", {}, {}, kPalette[1]};
    io::Series o1{"E1 oracle", {}, {}, kPalette[0], true}, o3{"E3 oracle", {}, {}, kPalette[1], true};
    for (const auto& s : samples) {
        e1.x.push_back(s.tau), e1.y.push_back(s.energy1);
        e3.x.push_back(s.tau), e3.y.push_back(s.energy3);
    }
    std::vector<io::Series> series{e1, e3};
    if (oracle) {
        for (const auto& s : *oracle) {
            o1.x.push_back(s.tau), o1.y.push_back(s.energy1);
            o3.x.push_back(s.tau), o3.y.push_back(s.energy3);
        }
        series.push_back(o1);
        series.push_back(o3);
    }
    return io::render_line_plot({"Mean mode energies", "slow time tau", "E_k"}, series);
}

// ---------------------------------------------------------------------------
// pdf

inline io::CsvTable pdf_table(const ModeObservables& obs, std::optional<std::size_t> n_max, double tau) {
    const PhotonDistribution dist = pdf_exact(obs, n_max);
    const bool asym_ok = obs.e_tilde * obs.e_tilde >= 20.0 * obs.iup;
    io::CsvTable t;
    t.meta("tau", tau);
    t.meta("mode", std::to_string(harmonic(obs.mode)));
    t.meta("E_tilde", obs.e_tilde);
    t.meta("D", obs.iup);
    const double total = dist.total();
    t.meta("sum_p", total);
    t.meta("normalization_error", std::abs(total - 1.0));
    t.meta("tail_mass_bound", dist.tail_mass_bound);
    t.columns = {"n", "p_exact", "p_asymptotic"};
    for (std::size_t n = 0; n <= dist.n_max; ++n) {
        std::vector<io::Cell> row{static_cast<long long>(n), dist.probs[n]};
        if (asym_ok && n >= 10)
            row.emplace_back(pdf_asymptotic(obs, n));
        else
            row.emplace_back(std::string());
        t.rows.push_back(std::move(row));
    }
    return t;
}

inline std::string pdf_svg(const io::CsvTable& t, const std::string& title) {
    io::Series exact{"exact", {}, {}, kPalette[0]};
    exact.stems = true;
    io::Series asym{"asymptotic", {}, {}, kPalette[1], true};
    for (const auto& row : t.rows) {
        const double n = static_cast<double>(std::get<long long>(row[0]));
        exact.x.push_back(n), exact.y.push_back(std::get<double>(row[1]));
        if (const auto* v = std::get_if<double>(&row[2])) asym.x.push_back(n), asym.y.push_back(*v);
    }
    std::vector<io::Series> series{exact};
    if (!asym.x.empty()) series.push_back(asym);
    return io::render_line_plot({title, "n", "P(n)"}, series);
}

inline ModeObservables observables_at(double tau, const ModelParams& p, Mode mode) {
    const Route route = analytic_route(p);
    const double taus[] = {tau};
    const Sample s = evolve(p, taus, route).front();
    return mode == Mode::First ? s.mode1 : s.mode3;
}

// ---------------------------------------------------------------------------
// map

inline io::CsvTable map_table(const SweepGrid& g) {
    io::CsvTable t;
    t.meta("nu", g.nu);
    t.meta("rows", std::to_string(g.rows.count));
    t.meta("cols", std::to_string(g.cols.count));
    t.columns = {"delta_t", "big_delta_t", "kind", "increment", "a", "b", "c"};
    for (std::size_t i = 0; i < g.points.size(); ++i) {
        const auto& v = g.verdicts[i];
        t.rows.push_back({g.points[i].delta_t, g.points[i].big_delta_t, std::string(to_string(v.kind)), v.increment, v.a,
                          v.b, v.c});
    }
    return t;
}

inline std::string map_svg(const SweepGrid& g) {
    io::CellMap cells{g.cols.min, g.cols.max, g.rows.min, g.rows.max, g.rows.count, g.cols.count, {}, {}, {}};
    cells.fills = {"#9ecae1", "#fdae6b"};
    cells.fill_names = {"symmetric", "asymmetric"};
    cells.classes.reserve(g.verdicts.size());
    for (const auto& v : g.verdicts)
        cells.classes.push_back(v.kind == RegionKind::SymmetricResonance    ? 0
                                : v.kind == RegionKind::AsymmetricResonance ? 1
                                                                            : -1);

    // Approximate boundaries: band edges Delta~ = 4 delta~ +- eta_c(delta~) dashed,
    // hyperbolas gamma = nu/(2(1 - delta~)) and gamma = -nu/(2(1 + delta~)) solid.
    const std::size_t n = 801;
    std::vector<io::Series> overlays;
    io::Series up{"band edge (approx.)", {}, {}, "#08519c", true}, down{"", {}, {}, "#08519c", true};
    io::Series h1{"hyperbolas", {}, {}, "#a63603"}, h2{"", {}, {}, "#a63603"};
    for (std::size_t k = 0; k < n; ++k) {
        const double d = g.cols.min + (g.cols.max - g.cols.min) * static_cast<double>(k) / static_cast<double>(n - 1);
        const double eta = std::sqrt(g.nu / (g.nu + 2.0 * d * d));
        up.x.push_back(d), up.y.push_back(4.0 * d + eta);
        down.x.push_back(d), down.y.push_back(4.0 * d - eta);
        const double nan = std::nan("");
        const double g1 = std::abs(1.0 - d) < 1e-9 ? nan : g.nu / (2.0 * (1.0 - d));
        const double g2 = std::abs(1.0 + d) < 1e-9 ? nan : -g.nu / (2.0 * (1.0 + d));
        // Break the curve across the pole.
        auto push = [&](io::Series& s, double gamma, double pole) {
            if (!s.x.empty() && (s.x.back() - pole) * (d - pole) < 0.0) s.x.push_back(nan), s.y.push_back(nan);
            s.x.push_back(d), s.y.push_back(gamma + 3.0 * d);
        };
        push(h1, g1, 1.0);
        push(h2, g2, -1.0);
    }
    overlays = {up, down, h1, h2};
    return io::render_region_plot({"Regions of photon generation", "delta~", "Delta~"}, cells, overlays);
}

// ---------------------------------------------------------------------------
// Standard figures. All at nu = 50/3; eps only fixes the fast/slow time ratio.

struct FigureOptions {
    double epsilon = 1e-3;
    double nu = 50.0 / 3.0;
    std::size_t steps = 200;
    std::size_t map_resolution = 121;
};

/// Slow time at which sin(rho tau) = 1 for the fifth time-quarter: 5 pi / (2 rho).
inline double figure_pdf_time(double nu) { return 5.0 * std::numbers::pi / (2.0 * std::sqrt(2.0 * nu - 1.0)); }

inline Artifact figure1(const FigureOptions& o) {
    const auto taus = tau_grid(2.0, o.steps);
    struct Curve {
        const char* column;
        const char* label;
        double theta1, theta3;
        Mode mode;
    };
    // High-temperature curves: theta3/theta1 = 1/3 for mode 1 and theta1/theta3 = 3 for mode 3.
    const Curve curves[] = {{"E1_theta31_1_3", "mode 1, theta31 = 1/3", 3.0, 1.0, Mode::First},
                            {"E1_vacuum", "mode 1, vacuum", 1.0, 1.0, Mode::First},
                            {"E3_vacuum", "mode 3, vacuum", 1.0, 1.0, Mode::Third},
                            {"E3_theta13_3", "mode 3, theta13 = 3", 3.0, 1.0, Mode::Third}};
    Artifact a{"figure1", {}, {}};
    a.csv.meta("nu", o.nu);
    a.csv.meta("normalization", "E_k(tau)/E_k(0)");
    a.csv.columns = {"tau"};
    std::vector<std::vector<double>> cols;
    std::vector<io::Series> series;
    int color = 0;
    for (const auto& c : curves) {
        a.csv.columns.push_back(c.column);
        const auto p = ModelParams{o.epsilon, 0.0, 0.0, o.nu, c.theta1, c.theta3};
        const double e0 = energy_exact_resonance(0.0, p, c.mode);
        std::vector<double> ys;
        for (double tau : taus) ys.push_back(energy_exact_resonance(tau, p, c.mode) / e0);
        series.push_back({c.label, taus, ys, kPalette[color++]});
        cols.push_back(std::move(ys));
    }
    for (std::size_t k = 0; k < taus.size(); ++k) {
        std::vector<io::Cell> row{taus[k]};
        for (const auto& c : cols) row.emplace_back(c[k]);
        a.csv.rows.push_back(std::move(row));
    }
    a.svg = io::render_line_plot({"Normalized mean energies, exact resonance", "slow time tau", "E_k(tau) / E_k(0)"}, series);
    return a;
}

inline Artifact figure_pdf(int number, double theta1, double theta3, const FigureOptions& o) {
    const double tau = figure_pdf_time(o.nu);
    const ModelParams p{o.epsilon, 0.0, 0.0, o.nu, theta1, theta3};
    Artifact a{"figure" + std::to_string(number), pdf_table(observables_at(tau, p, Mode::First), std::nullopt, tau), {}};
    a.csv.metadata.insert(a.csv.metadata.begin(), {{"nu", io::format_number(o.nu)},
                                                   {"theta1", io::format_number(theta1)},
                                                   {"theta3", io::format_number(theta3)}});
    a.svg = pdf_svg(a.csv, theta1 == 1.0 ? "Photon distribution, mode 1, vacuum start"
                                         : "Photon distribution, mode 1, thermal start");
    return a;
}

inline Artifact figure4(const FigureOptions& o) {
    const AxisRange axis{-6.0, 6.0, o.map_resolution};
    const SweepGrid g = sweep_grid(axis, axis, o.nu);
    return {"figure4", map_table(g), map_svg(g)};
}

/// Thermal partner of theta1 = 5 at a common temperature.
inline double figure_theta3_for(double theta1) { return theta1 * theta31_from_theta1(theta1); }

inline Artifact figure5(const FigureOptions& o) {
    const auto taus = tau_grid(3.0, o.steps);
    const ModelParams vac = ModelParams::normalized(o.epsilon, 1.0, 3.0 - 0.5 * o.nu, o.nu, 1.0, 1.0);
    const ModelParams hot = ModelParams::normalized(o.epsilon, 1.0, 3.0 - 0.5 * o.nu, o.nu, 5.0, figure_theta3_for(5.0));
    const auto sv = evolve(vac, taus, Route::Generic);
    const auto sh = evolve(hot, taus, Route::Generic);
    const auto cv = evolve(vac, taus, Route::Asymmetric);
    const auto ch = evolve(hot, taus, Route::Asymmetric);

    Artifact a{"figure5", {}, {}};
    a.csv.meta("nu", o.nu);
    a.csv.meta("delta_t", 1.0);
    a.csv.meta("gamma", -0.5 * o.nu);
    a.csv.meta("theta3_thermal", hot.theta3);
    a.csv.meta("asymptote_vacuum", 2.0 * vac.theta3 / o.nu);
    a.csv.meta("asymptote_thermal", 2.0 * hot.theta3 / o.nu);
    a.csv.columns = {"tau", "s1_vacuum", "s1_thermal", "s1_vacuum_closed", "s1_thermal_closed"};
    io::Series s1{"theta1 = 1", {}, {}, kPalette[0]}, s2{"theta1 = 5", {}, {}, kPalette[1]};
    for (std::size_t k = 0; k < taus.size(); ++k) {
        a.csv.rows.push_back({taus[k], sv[k].squeezing1(), sh[k].squeezing1(), cv[k].squeezing1(), ch[k].squeezing1()});
        s1.x.push_back(taus[k]), s1.y.push_back(sv[k].squeezing1());
        s2.x.push_back(taus[k]), s2.y.push_back(sh[k].squeezing1());
    }
    io::Series a1{"2 theta3 / nu", {0.0, 3.0}, {2.0 * vac.theta3 / o.nu, 2.0 * vac.theta3 / o.nu}, kPalette[0], true};
    io::Series a2{"", {0.0, 3.0}, {2.0 * hot.theta3 / o.nu, 2.0 * hot.theta3 / o.nu}, kPalette[1], true};
    a.svg = io::render_line_plot({"Squeezing coefficient, mode 1, asymmetric generation", "slow time tau", "s1"},
                                 {s1, s2, a1, a2});
    return a;
}

inline Artifact figure(int number, const FigureOptions& o = {}) {
    switch (number) {
        case 1: return figure1(o);
        case 2: return figure_pdf(2, 1.0, 1.0, o);
        case 3: return figure_pdf(3, 5.0, figure_theta3_for(5.0), o);
        case 4: return figure4(o);
        case 5: return figure5(o);
    }
    throw InvalidParameter("figure number must be 1..5");
}

}  // namespace casimir_duomode
