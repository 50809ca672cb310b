#pragma once
/*
 * gaussian.hpp: single-mode observables of zero-mean Gaussian states and their
 * closed-form time dependence in the two solvable regimes.
 *
 * For mode k (frequency k) with reduced moments <x^2>, <p^2>, <(xp+px)/2>:
 *   E~ = (<p^2> + k^2 <x^2>) / (2k)            dimensionless mean energy
 *   D  = <x^2><p^2> - <(xp+px)/2>^2             invariant uncertainty product
 *   purity = (4 D)^{-1/2}
 *   s  = 2 D / (E~ + sqrt(E~^2 - D))            squeezing coefficient
 *   sigma_n = 2 E~^2 - D - 1/4                  photon-number variance
 */

#include <algorithm>
#include <cmath>

#include "cavity.hpp"
#include "errors.hpp"
#include "oracle.hpp"
#include "slowamp.hpp"

namespace casimir_duomode {

enum class Mode { First = 1, Third = 3 };

inline int harmonic(Mode m) { return static_cast<int>(m); }

struct ModeObservables {
    double e_tilde = 0.5;
    double iup = 0.25;
    Mode mode = Mode::First;
};

inline ModeObservables observables_from_covariance(const CovarianceState& s, Mode mode) {
    const int k = harmonic(mode);
    const int r = (mode == Mode::First) ? 0 : 2;
    const double xx = s.sigma(r, r);
    const double pp = s.sigma(r + 1, r + 1);
    const double xp = s.sigma(r, r + 1);
    return {(pp + k * k * xx) / (2.0 * k), xx * pp - xp * xp, mode};
}

// ---------------------------------------------------------------------------
// Exact resonance (delta = Delta = 0, nu > 1/2), rho = sqrt(2 nu - 1).

/// Mean energy E_k (not divided by k) at slow time tau.
inline double energy_exact_resonance(double tau, const ModelParams& p, Mode mode) {
    require_exact_resonance(p);
    const double rho = std::sqrt(2.0 * p.nu - 1.0);
    const double s = std::sin(rho * tau);
    const double c = std::cos(rho * tau);
    const double cross = std::sinh(2.0 * tau) * std::sin(2.0 * rho * tau) / rho;
    if (mode == Mode::First) {
        const double body = s * s / (rho * rho) * (1.0 + 2.0 * p.nu * p.theta31()) + c * c;
        return 0.5 * p.theta1 * (std::cosh(2.0 * tau) * body + cross);
    }
    const double body = s * s / (rho * rho) * (1.0 + 2.0 * p.nu * p.theta13()) + c * c;
    return 1.5 * p.theta3 * (std::cosh(2.0 * tau) * body - cross);
}

/// Invariant uncertainty product; mode 3 follows by exchanging the thermal parameters.
inline double iup_exact_resonance(double tau, const ModelParams& p, Mode mode) {
    require_exact_resonance(p);
    const double own = (mode == Mode::First) ? p.theta1 : p.theta3;
    const double ratio = (mode == Mode::First) ? p.theta31() : p.theta13();
    const double rho2 = 2.0 * p.nu - 1.0;
    const double s = std::sin(std::sqrt(rho2) * tau);
    const double c = std::cos(std::sqrt(rho2) * tau);
    const double s2r = 2.0 * s * c;
    const double q = (2.0 * p.nu * ratio + 1.0) / rho2;
    return 0.25 * own * own *
           (c * c * c * c + s2r * s2r * (2.0 * p.nu * ratio - 1.0) / (2.0 * rho2) + s * s * s * s * q * q);
}

// ---------------------------------------------------------------------------
// Asymmetric generation (delta~ = 1, gamma = -nu/2), kept to O(1/nu).
// psi(tau) = cosh(2 R tau) cos(2 J tau).

inline double asymmetric_psi(double tau, double nu) {
    const auto [R, J] = asymmetric_rates(nu);
    return std::cosh(2.0 * R * tau) * std::cos(2.0 * J * tau);
}

inline double energy_asymmetric(double tau, const ModelParams& p, Mode mode) {
    require_asymmetric_regime(p);
    const double nu = p.nu;
    const double R = asymmetric_rates(nu).R;
    const double psi = asymmetric_psi(tau, nu);
    const double grow = std::cosh(4.0 * R * tau) + 1.0 - 2.0 * psi;
    if (mode == Mode::First)
        return 0.5 * p.theta1 * ((1.0 - 4.0 / nu) * std::cosh(4.0 * R * tau) + 4.0 / nu * psi) + p.theta3 / nu * grow;
    return 1.5 * p.theta3 * (1.0 - 4.0 / nu + 4.0 / nu * psi) + 3.0 * p.theta1 / nu * grow;
}

inline double iup_asymmetric(double tau, const ModelParams& p, Mode mode) {
    require_asymmetric_regime(p);
    const double nu = p.nu;
    const double R = asymmetric_rates(nu).R;
    const double psi = asymmetric_psi(tau, nu);
    const double own = (mode == Mode::First) ? p.theta1 : p.theta3;
    return 0.25 * own * own * (1.0 - 8.0 / nu + 8.0 / nu * psi) +
           p.theta1 * p.theta3 / nu * (std::cosh(4.0 * R * tau) + 1.0 - 2.0 * psi);
}

// ---------------------------------------------------------------------------

inline double purity(double iup) {
    // Round-off below the Heisenberg floor (propagated pure states) maps to purity 1.
    if (!(iup >= 0.25 * (1.0 - 1e-10))) throw InvalidParameter("invariant uncertainty product must be >= 1/4");
    return std::min(1.0, 1.0 / std::sqrt(4.0 * iup));
}

inline double squeezing(const ModeObservables& obs) {
    double disc = obs.e_tilde * obs.e_tilde - obs.iup;
    if (disc < -1e-12 * obs.iup) throw InvalidParameter("infeasible Gaussian observables: E~^2 < D");
    disc = std::max(disc, 0.0);
    return 2.0 * obs.iup / (obs.e_tilde + std::sqrt(disc));
}

inline double photon_variance(const ModeObservables& obs) {
    return 2.0 * obs.e_tilde * obs.e_tilde - obs.iup - 0.25;
}

inline double mean_photon_number(const ModeObservables& obs) { return obs.e_tilde - 0.5; }

/// Throws InvalidParameter unless (E~, D) describe a zero-mean Gaussian state.
/// A relative slack of 1e-12 absorbs round-off on the thermal line.
inline void require_feasible(const ModeObservables& obs) {
    if (!std::isfinite(obs.e_tilde) || !std::isfinite(obs.iup))
        throw InvalidParameter("observables must be finite");
    if (obs.iup < 0.25 * (1.0 - 1e-12)) throw InvalidParameter("infeasible observables: D < 1/4");
    if (obs.e_tilde * obs.e_tilde < obs.iup * (1.0 - 1e-12))
        throw InvalidParameter("infeasible observables: E~^2 < D");
}

}  // namespace casimir_duomode
