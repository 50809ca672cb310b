#pragma once
/*
 * cavity.hpp: physical parameterization of the two-mode cavity.
 *
 * Frequencies are normalized so that the lower resonant mode has unperturbed
 * frequency 1.  The wall vibrates at 2(1+delta); the upper mode sits at 3+Delta.
 *
 *   epsilon    modulation amplitude of the lower-mode frequency
 *   delta      drive detuning           (omega_bar = 1 + delta)
 *   big_delta  upper-mode detuning
 *   nu         intermode coupling, nu = 96 mu^2
 *   theta_k    thermal parameter coth(k beta / 2); 1 is vacuum
 *
 * Slow time is tau = epsilon t / 2, with t the fast (physical) time.
 */

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"

namespace casimir_duomode {

struct ModelParams {
    double epsilon = 1e-3;
    double delta = 0.0;
    double big_delta = 0.0;
    double nu = 50.0 / 3.0;
    double theta1 = 1.0;
    double theta3 = 1.0;

    /// Builds parameters from normalized detunings delta/epsilon and Delta/epsilon.
    static ModelParams normalized(double epsilon, double delta_t, double big_delta_t, double nu,
                                  double theta1 = 1.0, double theta3 = 1.0) {
        return {epsilon, epsilon * delta_t, epsilon * big_delta_t, nu, theta1, theta3};
    }

    double mu() const { return std::sqrt(nu / 96.0); }
    double omega_bar() const { return 1.0 + delta; }
    double delta_t() const { return delta / epsilon; }
    double big_delta_t() const { return big_delta / epsilon; }
    /// gamma = Delta~ - 3 delta~
    double gamma_t() const { return (big_delta - 3.0 * delta) / epsilon; }
    /// eta = Delta~ - 4 delta~
    double eta_t() const { return (big_delta - 4.0 * delta) / epsilon; }
    double theta31() const { return theta3 / theta1; }
    double theta13() const { return theta1 / theta3; }
};

inline double slow_time(double t, double epsilon) { return 0.5 * epsilon * t; }
inline double fast_time(double tau, double epsilon) { return 2.0 * tau / epsilon; }

/// Bounds for the "small parameter" checks on epsilon, |delta|, |Delta|.
struct SmallnessLimits {
    double soft = 0.1;  ///< exceeding it produces a warning
    double hard = 0.5;  ///< exceeding it is rejected
};

/// Validates parameters. Throws InvalidParameter on hard violations and returns
/// human-readable warnings for soft ones.
inline std::vector<std::string> validate(const ModelParams& p, const SmallnessLimits& limits = {}) {
    std::vector<std::string> warnings;
    auto finite = [](double v) { return std::isfinite(v); };
    if (!finite(p.epsilon) || !finite(p.delta) || !finite(p.big_delta) || !finite(p.nu) ||
        !finite(p.theta1) || !finite(p.theta3)) {
        throw InvalidParameter("model parameters must be finite");
    }
    if (!(p.epsilon > 0.0)) throw InvalidParameter("epsilon must be > 0");
    if (p.nu < 0.0) throw InvalidParameter("nu must be >= 0");
    if (p.theta1 < 1.0) throw InvalidParameter("theta1 must be >= 1");
    if (p.theta3 < 1.0) throw InvalidParameter("theta3 must be >= 1");

    const struct {
        const char* name;
        double value;
    } small[] = {{"epsilon", p.epsilon}, {"delta", p.delta}, {"big_delta", p.big_delta}};
    for (const auto& s : small) {
        const double mag = std::abs(s.value);
        if (mag > limits.hard) {
            std::ostringstream os;
            os << "|" << s.name << "| = " << mag << " exceeds hard limit " << limits.hard;
            throw InvalidParameter(os.str());
        }
        if (mag > limits.soft) {
            std::ostringstream os;
            os << "|" << s.name << "| = " << mag << " exceeds " << limits.soft
               << "; the slow-amplitude theory assumes it is small";
            warnings.push_back(os.str());
        }
    }
    return warnings;
}

/// Labels a rectangular-cavity eigenmode by its three sine-function indices.
struct ModeIndex3D {
    int kx = 1;
    int ky = 1;
    int kz = 1;

    friend bool operator==(const ModeIndex3D&, const ModeIndex3D&) = default;
};

inline void require_valid(const ModeIndex3D& k) {
    if (k.kx < 1 || k.ky < 1 || k.kz < 1) throw InvalidParameter("mode indices must be >= 1");
}

/// Coupling coefficient m_kj for a rectangular cavity whose wall normal to x moves.
/// Antisymmetric in (k, j); zero unless the y and z indices coincide.
inline double mode_coupling_coefficient(const ModeIndex3D& k, const ModeIndex3D& j) {
    require_valid(k);
    require_valid(j);
    if (k == j) throw InvalidParameter("coupling coefficient undefined for identical modes");
    if (k.ky != j.ky || k.kz != j.kz) return 0.0;
    const double kx = k.kx;
    const double jx = j.kx;
    const double sign = ((k.kx + j.kx) % 2 == 0) ? 1.0 : -1.0;
    return sign * 2.0 * kx * jx / (jx * jx - kx * kx);
}

/// mu for a resonant pair {kx,m,n}, {jx,m,n}. Appends a warning when jx != 3 kx,
/// i.e. when the pair is not in 1:3 frequency resonance along x.
inline double mu_from_resonant_pair(int kx, int jx, std::vector<std::string>* warnings = nullptr) {
    if (kx < 1 || jx < 1) throw InvalidParameter("mode indices must be positive integers");
    if (warnings && jx != 3 * kx) {
        std::ostringstream os;
        os << "mode pair (" << kx << ", " << jx << ") is not a 1:3 pair along x";
        warnings->push_back(os.str());
    }
    return static_cast<double>(jx) / (12.0 * kx);
}

inline double nu_from_mu(double mu) { return 96.0 * mu * mu; }

/// coth(x) for x > 0, written as 1 + 2/(e^{2x} - 1) so large x returns exactly 1.
inline double stable_coth(double x) {
    if (std::isinf(x) && x > 0) return 1.0;
    return 1.0 + 2.0 / std::expm1(2.0 * x);
}

struct ThetaPair {
    double theta1 = 1.0;
    double theta3 = 1.0;
};

/// Thermal parameters of both modes at one inverse temperature beta (+inf is vacuum).
inline ThetaPair theta_pair_from_beta(double beta) {
    if (std::isnan(beta) || !(beta > 0.0)) throw InvalidParameter("beta must be > 0");
    return {stable_coth(0.5 * beta), stable_coth(1.5 * beta)};
}

/// theta3 / theta1 implied by a common temperature.
inline double theta31_from_theta1(double theta1) {
    const double t2 = theta1 * theta1;
    return (t2 + 3.0) / (3.0 * t2 + 1.0);
}

}  // namespace casimir_duomode
