#pragma once
// Time series of both modes' observables from a thermal product state, by
// closed form, by propagating moments with the slow-amplitude fundamental
// matrix, or by direct integration.

#include <span>
#include <string>
#include <vector>

#include "cavity.hpp"
#include "gaussian.hpp"
#include "oracle.hpp"
#include "slowamp.hpp"

namespace casimir_duomode {

enum class Route { ExactResonance, Asymmetric, Generic, Oracle };

inline const char* to_string(Route r) {
    switch (r) {
        case Route::ExactResonance: return "exact-resonance";
        case Route::Asymmetric: return "asymmetric";
        case Route::Generic: return "generic";
        case Route::Oracle: return "oracle";
    }
    return "?";
}

struct Sample {
    double tau = 0.0;
    double energy1 = 0.0, energy3 = 0.0;  ///< E_k, not divided by k
    ModeObservables mode1, mode3;

    double purity1() const { return purity(mode1.iup); }
    double purity3() const { return purity(mode3.iup); }
    double squeezing1() const { return squeezing(mode1); }
    double squeezing3() const { return squeezing(mode3); }
};

/// Closed form when the parameters sit on a solvable point, else the generic matrix.
inline Route analytic_route(const ModelParams& p) {
    if (is_exact_resonance(p)) return Route::ExactResonance;
    if (is_asymmetric_regime(p)) return Route::Asymmetric;
    return Route::Generic;
}

inline Sample sample_from_covariance(double tau, const CovarianceState& s) {
    Sample out;
    out.tau = tau;
    out.mode1 = observables_from_covariance(s, Mode::First);
    out.mode3 = observables_from_covariance(s, Mode::Third);
    out.energy1 = out.mode1.e_tilde;
    out.energy3 = 3.0 * out.mode3.e_tilde;
    return out;
}

inline Sample sample_closed_form(double tau, const ModelParams& p, Route route) {
    Sample out;
    out.tau = tau;
    if (route == Route::ExactResonance) {
        out.energy1 = energy_exact_resonance(tau, p, Mode::First);
        out.energy3 = energy_exact_resonance(tau, p, Mode::Third);
        out.mode1 = {out.energy1, iup_exact_resonance(tau, p, Mode::First), Mode::First};
        out.mode3 = {out.energy3 / 3.0, iup_exact_resonance(tau, p, Mode::Third), Mode::Third};
    } else {
        out.energy1 = energy_asymmetric(tau, p, Mode::First);
        out.energy3 = energy_asymmetric(tau, p, Mode::Third);
        out.mode1 = {out.energy1, iup_asymmetric(tau, p, Mode::First), Mode::First};
        out.mode3 = {out.energy3 / 3.0, iup_asymmetric(tau, p, Mode::Third), Mode::Third};
    }
    return out;
}

inline std::vector<Sample> evolve(const ModelParams& p, std::span<const double> taus, Route route,
                                  const OracleOptions& oracle = {}) {
    const CovarianceState s0 = thermal_covariance(p.theta1, p.theta3);
    std::vector<Sample> out;
    out.reserve(taus.size());
    switch (route) {
        case Route::ExactResonance:
        case Route::Asymmetric:
            for (double tau : taus) out.push_back(sample_closed_form(tau, p, route));
            break;
        case Route::Generic:
            for (double tau : taus) {
                const auto m = fundamental_matrix_generic(fast_time(tau, p.epsilon), p);
                out.push_back(sample_from_covariance(tau, propagate_covariance(m, s0)));
            }
            break;
        case Route::Oracle: {
            std::vector<double> times;
            times.reserve(taus.size());
            for (double tau : taus) times.push_back(fast_time(tau, p.epsilon));
            const auto ms = oracle_fundamental_matrices(times, p, oracle);
            for (std::size_t k = 0; k < ms.size(); ++k)
                out.push_back(sample_from_covariance(taus[k], propagate_covariance(ms[k], s0)));
            break;
        }
    }
    return out;
}

/// tau_max * k / steps for k = 0..steps.
inline std::vector<double> tau_grid(double tau_max, std::size_t steps) {
    if (!(tau_max > 0.0)) throw InvalidParameter("tau_max must be > 0");
    if (steps < 1) throw InvalidParameter("steps must be >= 1");
    std::vector<double> out(steps + 1);
    for (std::size_t k = 0; k <= steps; ++k) out[k] = tau_max * static_cast<double>(k) / static_cast<double>(steps);
    return out;
}

/// Each tau replaced by the slow time of the nearest stroboscopic instant.
inline std::vector<double> snap_stroboscopic(std::span<const double> taus, const ModelParams& p) {
    std::vector<double> out;
    out.reserve(taus.size());
    for (double tau : taus) out.push_back(slow_time(stroboscopic_time(tau, p), p.epsilon));
    return out;
}

}  // namespace casimir_duomode
