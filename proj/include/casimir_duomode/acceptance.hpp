#pragma once
// End-to-end acceptance checks, one function per criterion.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "evolution.hpp"
#include "figures.hpp"
#include "photon_distribution.hpp"
#include "resmap.hpp"
#include "slowamp.hpp"

namespace casimir_duomode::acceptance {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::vector<std::string> details;
};

struct Options {
    std::uint64_t seed = 20240229;
};

namespace detail {

inline std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

struct Check {
    CriterionResult& r;
    void operator()(bool ok, const std::string& what) {
        r.details.push_back(std::string(ok ? "ok   " : "FAIL ") + what);
        r.pass = r.pass && ok;
    }
    void note(const std::string& what) { r.details.push_back("info " + what); }
};

inline CriterionResult start(int id, std::string name) { return {id, std::move(name), true, {}}; }

inline constexpr double kNu = 50.0 / 3.0;
inline constexpr double kEps = 1e-3;

// Oracle vs closed form at exact resonance, vacuum start, for one eps~.
struct OracleRun {
    std::vector<Sample> theory, oracle;
};

inline OracleRun oracle_run(std::optional<double> eps_tilde) {
    const ModelParams p{kEps, 0.0, 0.0, kNu, 1.0, 1.0};
    const auto taus = snap_stroboscopic(tau_grid(2.0, 40), p);
    OracleOptions o;
    o.dt = 2.0 * std::numbers::pi / 600.0;
    o.epsilon_tilde = eps_tilde;
    return {evolve(p, taus, Route::ExactResonance), evolve(p, taus, Route::Oracle, o)};
}

inline const OracleRun& baseline_oracle_run() {
    static const OracleRun run = oracle_run(std::nullopt);
    return run;
}

}  // namespace detail

inline CriterionResult criterion1(const Options& opt) {
    auto r = detail::start(1, "eigenvalue closed forms vs numeric spectrum");
    detail::Check check{r};
    std::mt19937_64 rng(opt.seed);
    std::uniform_real_distribution<double> log_eps(std::log(1e-4), std::log(0.1));
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::uniform_real_distribution<double> nu_dist(0.0, 100.0);
    double worst_lambda = 0.0, worst_c = 0.0;
    for (int k = 0; k < 1000; ++k) {
        const double eps = std::exp(log_eps(rng));
        // Detunings up to several eps, capped by the smallness bound.
        const double dt = std::clamp(6.0 * unit(rng), -0.45 / eps, 0.45 / eps);
        const double bdt = std::clamp(30.0 * unit(rng), -0.45 / eps, 0.45 / eps);
        const ModelParams p = ModelParams::normalized(eps, dt, bdt, nu_dist(rng));
        validate(p);
        const EigenSet e = eigenvalues(p);
        auto numeric = numeric_eigenvalues(build_matrix(p));
        const auto analytic = e.spectrum();
        double scale = 0.0;
        for (const auto& z : numeric) scale = std::max(scale, std::abs(z));
        // Greedy nearest matching of the two spectra.
        std::array<bool, 4> used{};
        double err = 0.0;
        for (const auto& z : analytic) {
            int best = -1;
            for (int j = 0; j < 4; ++j)
                if (!used[j] && (best < 0 || std::abs(numeric[j] - z) < std::abs(numeric[best] - z))) best = j;
            used[best] = true;
            err = std::max(err, std::abs(numeric[best] - z));
        }
        worst_lambda = std::max(worst_lambda, err / scale);
        const double c_scale = std::max({e.a * e.a, std::abs(e.b), std::abs(e.c)});
        worst_c = std::max(worst_c, std::abs(e.a * e.a - e.b - e.c) / c_scale);
    }
    check(worst_lambda <= 1e-10, "max relative eigenvalue mismatch " + detail::fmt(worst_lambda) + " <= 1e-10");
    check(worst_c <= 1e-12, "max relative |a^2 - b - c| " + detail::fmt(worst_c) + " <= 1e-12");
    return r;
}

inline CriterionResult criterion2(const Options&) {
    auto r = detail::start(2, "exact-resonance increment");
    detail::Check check{r};
    for (double eps : {1e-3, 1e-2}) {
        const ModelParams p{eps, 0.0, 0.0, detail::kNu};
        const double re = eigenvalues(p).lambda_plus.real();
        check(std::abs(re - 0.5 * eps) <= 1e-14 * eps, "nu=50/3, eps=" + detail::fmt(eps) + ": Re lambda_+ = " +
                                                            detail::fmt(re / eps) + " eps");
        const ModelParams q{eps, 0.0, 0.0, 0.0};
        const cplx l = eigenvalues(q).lambda_plus;
        check(std::abs(l - cplx(eps, 0.0)) <= 1e-14 * eps, "nu=0, eps=" + detail::fmt(eps) + ": lambda_+ = " +
                                                                detail::fmt(l.real() / eps) + " eps");
    }
    return r;
}

inline CriterionResult criterion3(const Options&) {
    auto r = detail::start(3, "oracle vs closed-form energies");
    detail::Check check{r};
    const auto& run = detail::baseline_oracle_run();
    double worst = 0.0;
    for (std::size_t k = 0; k < run.theory.size(); ++k) {
        worst = std::max(worst, relative_difference(run.theory[k].energy1, run.oracle[k].energy1));
        worst = std::max(worst, relative_difference(run.theory[k].energy3, run.oracle[k].energy3));
    }
    check(worst <= 5.0 * detail::kEps, "max relative energy error " + detail::fmt(worst) + " <= 5 eps");
    return r;
}

inline CriterionResult criterion4(const Options&) {
    auto r = detail::start(4, "upper-mode modulation irrelevance");
    detail::Check check{r};
    const auto& base = detail::baseline_oracle_run();
    for (double factor : {0.0, 1.0, 2.0}) {
        const auto run = detail::oracle_run(factor * detail::kEps);
        double worst = 0.0;
        for (std::size_t k = 0; k < run.oracle.size(); ++k) {
            worst = std::max(worst, relative_difference(base.oracle[k].energy1, run.oracle[k].energy1));
            worst = std::max(worst, relative_difference(base.oracle[k].energy3, run.oracle[k].energy3));
        }
        check(worst < 10.0 * detail::kEps,
              "eps~ = " + detail::fmt(factor) + " eps: max relative energy change " + detail::fmt(worst) + " < 10 eps");
    }
    return r;
}

inline CriterionResult criterion5(const Options&) {
    auto r = detail::start(5, "fundamental-matrix path equivalence");
    detail::Check check{r};
    const ModelParams res{detail::kEps, 0.0, 0.0, detail::kNu};
    const ModelParams asym = ModelParams::normalized(detail::kEps, 1.0, 3.0 - 0.5 * detail::kNu, detail::kNu);
    double worst_res = 0.0, worst_asym = 0.0, worst_asym_tau = 0.0;
    for (int k = 0; k <= 300; ++k) {
        const double tau = 0.01 * k;
        const double t = fast_time(tau, detail::kEps);
        worst_res = std::max(worst_res, (fundamental_matrix_generic(t, res).entries -
                                         fundamental_matrix_exact_resonance(t, res).entries)
                                            .cwiseAbs()
                                            .maxCoeff());
        const double e = (fundamental_matrix_generic(t, asym).entries - fundamental_matrix_asymmetric(t, asym).entries)
                             .cwiseAbs()
                             .maxCoeff();
        if (e > worst_asym) worst_asym = e, worst_asym_tau = tau;
    }
    check(worst_res <= 1e-9, "generic vs exact resonance, tau <= 3: max entry difference " + detail::fmt(worst_res));
    const double bound = 10.0 / (detail::kNu * detail::kNu) + 1e-9;
    check(worst_asym <= bound, "generic vs asymmetric, tau <= 3: max entry difference " + detail::fmt(worst_asym) +
                                   " at tau=" + detail::fmt(worst_asym_tau) + " (bound " + detail::fmt(bound) + ")");
    return r;
}

inline CriterionResult criterion6(const Options&) {
    auto r = detail::start(6, "purity exchange at sin(rho tau) = +-1");
    detail::Check check{r};
    const ModelParams p{detail::kEps, 0.0, 0.0, detail::kNu, 5.0, 9.0 / 7.0};
    const double rho = std::sqrt(2.0 * p.nu - 1.0);
    const double tol = 2.0 / p.nu;
    for (double quarter : {1.0, 3.0}) {
        const double tau = quarter * std::numbers::pi / (2.0 * rho);
        const double p1 = purity(iup_exact_resonance(tau, p, Mode::First));
        const double p3 = purity(iup_exact_resonance(tau, p, Mode::Third));
        const double e1 = relative_difference(1.0 / p.theta3, p1);
        const double e3 = relative_difference(1.0 / p.theta1, p3);
        check(e1 <= tol, "tau=" + detail::fmt(tau) + ": purity1 " + detail::fmt(p1) + " vs 1/theta3, rel " + detail::fmt(e1));
        check(e3 <= tol, "tau=" + detail::fmt(tau) + ": purity3 " + detail::fmt(p3) + " vs 1/theta1, rel " + detail::fmt(e3));
    }
    // Pairs that do share one temperature, reported without gating.
    for (const ThetaPair tp : {ThetaPair{5.0, figure_theta3_for(5.0)}, ThetaPair{3.0, 9.0 / 7.0}}) {
        const ModelParams q{detail::kEps, 0.0, 0.0, detail::kNu, tp.theta1, tp.theta3};
        const double tau = std::numbers::pi / (2.0 * rho);
        check.note("theta1=" + detail::fmt(tp.theta1) + ", theta3=" + detail::fmt(tp.theta3) + ": rel " +
                   detail::fmt(relative_difference(1.0 / tp.theta3, purity(iup_exact_resonance(tau, q, Mode::First)))) +
                   ", " + detail::fmt(relative_difference(1.0 / tp.theta1, purity(iup_exact_resonance(tau, q, Mode::Third)))));
    }
    return r;
}

inline CriterionResult criterion7(const Options&) {
    auto r = detail::start(7, "vacuum near-purity");
    detail::Check check{r};
    const ModelParams p{detail::kEps, 0.0, 0.0, detail::kNu};
    const double rho = std::sqrt(2.0 * p.nu - 1.0);
    double dmax = 0.0;
    const int n = 200000;
    for (int k = 0; k <= n; ++k) {
        const double tau = std::numbers::pi / rho * k / n;  // one period of the iup
        dmax = std::max(dmax, iup_exact_resonance(tau, p, Mode::First));
    }
    const double formula = 0.25 * (1.0 + 8.0 * p.nu / ((2.0 * p.nu - 1.0) * (2.0 * p.nu - 1.0)));
    check(std::abs(dmax - formula) <= 1e-9 * formula,
          "max D over tau " + detail::fmt(dmax) + " equals (1/4)[1 + 8nu/(2nu-1)^2] = " + detail::fmt(formula));
    const double min_purity = purity(dmax);
    check(min_purity >= 0.97, "minimum purity " + detail::fmt(min_purity) + " >= 0.97 (D <= 0.2575)");
    return r;
}

inline CriterionResult criterion8(const Options&) {
    auto r = detail::start(8, "photon distribution integrity");
    detail::Check check{r};
    double worst_mass = 0.0, worst_mean = 0.0, worst_var = 0.0;
    int cases = 0;
    for (double e : {0.5, 0.6, 1.0, 2.0, 5.0, 10.0, 20.0, 35.0, 50.0}) {
        for (double frac : {0.0, 0.001, 0.01, 0.1, 0.5, 0.9, 1.0}) {
            const double d = 0.25 + frac * (e * e - 0.25);
            const ModeObservables obs{e, d};
            const auto dist = pdf_exact(obs, static_cast<std::size_t>(std::ceil(80.0 * e)) + 20);
            double s = 0.0, m = 0.0, m2 = 0.0;
            for (std::size_t k = 0; k < dist.probs.size(); ++k) {
                const double kk = static_cast<double>(k);
                s += dist.probs[k];
                m += kk * dist.probs[k];
                m2 += kk * kk * dist.probs[k];
            }
            worst_mass = std::max(worst_mass, 1.0 - s);
            worst_mean = std::max(worst_mean, std::abs(m - mean_photon_number(obs)));
            worst_var = std::max(worst_var, std::abs(m2 - m * m - photon_variance(obs)));
            ++cases;
        }
    }
    check(worst_mass <= 1e-6, std::to_string(cases) + " grid points: max missing mass " + detail::fmt(worst_mass));
    check(worst_mean <= 1e-6, "max |mean - (E~ - 1/2)| " + detail::fmt(worst_mean));
    check(worst_var <= 1e-6, "max |variance - (2E~^2 - D - 1/4)| " + detail::fmt(worst_var));

    const auto thermal = pdf_exact({1.5, 2.25}, 60);
    double worst_geo = 0.0;
    for (std::size_t k = 0; k <= 60; ++k)
        worst_geo = std::max(worst_geo, relative_difference(std::ldexp(1.0, -static_cast<int>(k) - 1), thermal.probs[k]));
    check(worst_geo <= 1e-14, "theta=3: P_n = 2^-(n+1), max rel error " + detail::fmt(worst_geo));

    double worst_odd = 0.0;
    for (double e : {0.75, 3.0, 20.0}) {
        const auto sq = pdf_exact({e, 0.25});
        for (std::size_t k = 1; k < sq.probs.size(); k += 2) worst_odd = std::max(worst_odd, sq.probs[k]);
    }
    check(worst_odd == 0.0, "squeezed vacuum: max odd P_n " + detail::fmt(worst_odd));
    return r;
}

inline CriterionResult criterion9(const Options&) {
    auto r = detail::start(9, "asymptotic photon distribution");
    detail::Check check{r};
    const double e = 50.0;
    for (double d : {0.5, 1.0, 2.0}) {
        const ModeObservables obs{e, d};
        const auto dist = pdf_exact(obs);
        bool alternates = true;
        double worst = 0.0;
        for (std::size_t n = 10; n <= static_cast<std::size_t>(e); ++n) {
            const double prev = dist.probs[n - 1], cur = dist.probs[n], next = dist.probs[n + 1];
            const bool peak = cur > prev && cur > next;
            const bool dip = cur < prev && cur < next;
            alternates = alternates && (n % 2 == 0 ? peak : dip);
            worst = std::max(worst, relative_difference(cur, pdf_asymptotic(obs, n)));
        }
        check(alternates, "E~=50, D=" + detail::fmt(d) + ": even/odd oscillation on n in [10, 50]");
        check(worst <= 0.2, "E~=50, D=" + detail::fmt(d) + ": uniform asymptotic vs exact, max rel " + detail::fmt(worst));
    }
    for (double en : {10.0, 20.0, 50.0}) {
        const std::size_t n = static_cast<std::size_t>(8.0 * en);
        const double ref = pdf_asymptotic({en, 0.25}, n, AsymptoticForm::Tail);
        double worst = 0.0;
        for (double d : {0.25, 0.5, 1.0, 2.0, 4.0})
            worst = std::max(worst, relative_difference(ref, pdf_asymptotic({en, d}, n, AsymptoticForm::Tail)));
        check(worst <= 1e-3, "tail form at E~=" + detail::fmt(en) + ", n=" + std::to_string(n) +
                                 " independent of D in [1/4, 4]: rel " + detail::fmt(worst));
    }
    return r;
}

inline CriterionResult criterion10(const Options&) {
    auto r = detail::start(10, "asymmetric generation");
    detail::Check check{r};
    const double nu = detail::kNu;
    const double R = asymmetric_rates(nu).R;
    auto params = [&](double theta1, double theta3) {
        return ModelParams::normalized(detail::kEps, 1.0, 3.0 - 0.5 * nu, nu, theta1, theta3);
    };
    const double t2[] = {2.0};
    const double t3[] = {3.0};
    {
        const auto p = params(1.0, 1.0);
        const auto s = evolve(p, t2, Route::Generic).front();
        const auto c = evolve(p, t2, Route::Asymmetric).front();
        const double ratio = s.energy3 / s.energy1;
        const double err = relative_difference(6.0 / nu, ratio);
        check(err <= 0.15, "E3/E1 at tau=2 = " + detail::fmt(ratio) + " vs 6/nu, rel " + detail::fmt(err) +
                               " (closed form " + detail::fmt(c.energy3 / c.energy1) + ")");
    }
    for (double theta1 : {1.0, 5.0}) {
        const double theta3 = theta1 == 1.0 ? 1.0 : figure_theta3_for(theta1);
        const auto p = params(theta1, theta3);
        const auto s = evolve(p, t3, Route::Generic).front();
        const auto c = evolve(p, t3, Route::Asymmetric).front();
        const double target = 2.0 * theta3 / nu;
        const double err = relative_difference(target, s.squeezing1());
        check(err <= 0.10, "theta1=" + detail::fmt(theta1) + ": s1(3) = " + detail::fmt(s.squeezing1()) + " vs 2 theta3/nu = " +
                               detail::fmt(target) + ", rel " + detail::fmt(err) + " (closed form " +
                               detail::fmt(c.squeezing1()) + ")");
        const double dref = theta1 * theta3 * std::exp(4.0 * R * 3.0) / (2.0 * nu);
        const double e1 = relative_difference(dref, s.mode1.iup);
        const double e3 = relative_difference(dref, s.mode3.iup);
        check(e1 <= 0.15 && e3 <= 0.15, "theta1=" + detail::fmt(theta1) + ": D1, D3 at tau=3 vs theta1 theta3 e^{4R tau}/(2nu), rel " +
                                            detail::fmt(e1) + ", " + detail::fmt(e3));
    }
    return r;
}

inline CriterionResult criterion11(const Options& opt) {
    auto r = detail::start(11, "resonance map");
    detail::Check check{r};
    const double nu = detail::kNu;
    std::mt19937_64 rng(opt.seed + 11);
    std::uniform_real_distribution<double> d(-6.0, 6.0), bd(-30.0, 30.0);
    int disagreements = 0;
    for (int k = 0; k < 10000; ++k) {
        const DetuningPoint pt{d(rng), bd(rng)};
        const RegionVerdict v = classify(pt, nu);
        const double re = eigenvalues(ModelParams::normalized(1.0, pt.delta_t, pt.big_delta_t, nu)).lambda_plus.real();
        if ((v.kind != RegionKind::NoGeneration) != (re > 1e-12)) ++disagreements;
    }
    check(disagreements == 0, "classifier vs Re lambda_+ > 0 on 10^4 random points: " + std::to_string(disagreements) +
                                  " disagreements");

    const EtaCritical ec = eta_critical(0.0, nu);
    const double root = std::sqrt(std::sqrt(nu * nu + 4.0 * nu) - nu - 1.0);
    const bool have = ec.exact.has_value();
    check(have && std::abs(*ec.exact - root) <= 1e-10 && std::abs(*ec.exact - 0.946) <= 2e-3,
          "eta_c exact at delta~=0: " + (have ? detail::fmt(*ec.exact) : std::string("absent")) + " (root " +
              detail::fmt(root) + ")");
    check(have && std::abs(*ec.exact - ec.approx) <= 5.0 / nu,
          "|eta_c exact - approx| = " + (have ? detail::fmt(std::abs(*ec.exact - ec.approx)) : std::string("-")) +
              " <= 5/nu");

    double worst_sum = 0.0;
    for (int k = -200; k <= 200; ++k) {
        const auto w = resonance_widths({0.0, 0.5 * k}, nu);
        worst_sum = std::max(worst_sum, std::abs(w.left + w.right - 2.0));
    }
    check(worst_sum <= 1e-12, "Gamma_l + Gamma_r = 2, max deviation " + detail::fmt(worst_sum));

    const AxisRange axis{-6.0, 6.0, 241};
    const SweepGrid g = sweep_grid(axis, axis, nu);
    const auto bands = count_components(g, RegionKind::SymmetricResonance);
    const auto lobes = count_components(g, RegionKind::AsymmetricResonance);
    check(bands == 1 && lobes == 2, "[-6,6]^2 sweep: " + std::to_string(bands) + " symmetric band(s), " +
                                        std::to_string(lobes) + " asymmetric lobe(s)");
    return r;
}

inline CriterionResult criterion12(const Options&) {
    auto r = detail::start(12, "figure regeneration");
    detail::Check check{r};
    auto serialize = [](const Artifact& a) {
        std::ostringstream os;
        a.csv.write(os);
        return os.str() + a.svg;
    };
    for (int k = 1; k <= 5; ++k) {
        const std::string once = serialize(figure(k));
        const std::string twice = serialize(figure(k));
        check(once == twice && !once.empty(), "figure " + std::to_string(k) + " output deterministic");
    }
    // Bottom-to-top order in tau in [1.4, 1.6]: E1 hot, E1 vacuum, E3 vacuum, E3 hot.
    const Artifact f1 = figure(1);
    bool ordered = true;
    int rows = 0;
    for (const auto& row : f1.csv.rows) {
        const double tau = std::get<double>(row[0]);
        if (tau < 1.4 - 1e-12 || tau > 1.6 + 1e-12) continue;
        ++rows;
        for (int c = 1; c < 4; ++c) ordered = ordered && std::get<double>(row[c]) < std::get<double>(row[c + 1]);
    }
    check(ordered && rows > 0, "figure 1 curve order on tau in [1.4, 1.6] (" + std::to_string(rows) + " rows)");
    const double tau_pdf = figure_pdf_time(detail::kNu);
    for (int k : {2, 3}) {
        const Artifact a = figure(k);
        bool at_tau = false;
        for (const auto& [key, value] : a.csv.metadata)
            if (key == "tau") at_tau = std::abs(std::stod(value) - tau_pdf) <= 1e-15 * tau_pdf;
        check(at_tau, "figure " + std::to_string(k) + " computed at tau = 5 pi/(2 rho) = " + detail::fmt(tau_pdf));
    }
    return r;
}

using CriterionFn = CriterionResult (*)(const Options&);

inline const std::array<CriterionFn, 12>& criteria() {
    static const std::array<CriterionFn, 12> all{criterion1, criterion2, criterion3, criterion4,  criterion5,  criterion6,
                                                 criterion7, criterion8, criterion9, criterion10, criterion11, criterion12};
    return all;
}

/// Runs criterion `id` (1..12); an escaping exception counts as a failure.
inline CriterionResult run_one(int id, const Options& opt = {}) {
    try {
        return criteria().at(static_cast<std::size_t>(id - 1))(opt);
    } catch (const std::exception& e) {
        return {id, "criterion " + std::to_string(id), false, {std::string("FAIL exception: ") + e.what()}};
    }
}

inline std::vector<CriterionResult> run_all(const Options& opt = {}) {
    std::vector<CriterionResult> out;
    for (int id = 1; id <= 12; ++id) out.push_back(run_one(id, opt));
    return out;
}

}  // namespace casimir_duomode::acceptance
