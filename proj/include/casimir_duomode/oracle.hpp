#pragma once
/*
 * oracle.hpp: direct integration of the full equations of motion
 *
 *   x1'' = -[1 + 4 eps cos(2wt)] x1 + 24 mu eps [cos(2wt) x3 + sin(2wt) x3']
 *   x3'' = -[9 + 6 Delta + eps~ cos(2wt)] x3 - 24 mu eps [cos(2wt) x1 + sin(2wt) x1']
 *
 * with fixed-step classical RK4, plus second-moment propagation of Gaussian
 * states. Used as ground truth for the slow-amplitude results.
 */

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <span>
#include <sstream>
#include <vector>

#include "cavity.hpp"
#include "errors.hpp"
#include "slowamp.hpp"

namespace casimir_duomode {

enum class IntegrationMethod { RK4 };

struct OracleOptions {
    double dt = 0.0;                      ///< fast-time step; 0 selects the default
    std::optional<double> epsilon_tilde;  ///< upper-mode modulation; unset means eps~ = eps
    IntegrationMethod method = IntegrationMethod::RK4;
};

/// 200 steps per period of the fastest mode (frequency 3w).
inline double default_dt(const ModelParams& p) { return 2.0 * std::numbers::pi / (3.0 * p.omega_bar() * 200.0); }

/// Largest accepted step: 100 steps per period of the fastest mode.
inline double max_dt(const ModelParams& p) { return 2.0 * std::numbers::pi / (3.0 * p.omega_bar() * 100.0); }

inline double resolved_dt(const ModelParams& p, const OracleOptions& o) { return o.dt > 0.0 ? o.dt : default_dt(p); }

inline double resolved_epsilon_tilde(const ModelParams& p, const OracleOptions& o) {
    return o.epsilon_tilde.value_or(p.epsilon);
}

inline void validate(const OracleOptions& o, const ModelParams& p) {
    if (o.dt < 0.0 || !std::isfinite(o.dt)) throw InvalidParameter("oracle dt must be a positive finite number");
    // Small relative slack so that exactly 2*pi/(3w*100) passes despite rounding.
    if (resolved_dt(p, o) > max_dt(p) * (1.0 + 1e-12)) {
        std::ostringstream os;
        os << "step-size violation: dt = " << resolved_dt(p, o) << " exceeds 2*pi/(3*omega_bar*100) = " << max_dt(p);
        throw InvalidParameter(os.str());
    }
    if (o.epsilon_tilde && (*o.epsilon_tilde < 0.0 || !std::isfinite(*o.epsilon_tilde)))
        throw InvalidParameter("epsilon_tilde must be >= 0");
}

using PhaseVector = std::array<double, 4>;  // (x1, x1', x3, x3')

namespace detail {

struct DriveCoefficients {
    double k11, k13, v13, k33, k31, v31;
};

inline DriveCoefficients drive_at(double t, const ModelParams& p, double eps_tilde) {
    const double ph = 2.0 * p.omega_bar() * t;
    const double c = std::cos(ph);
    const double s = std::sin(ph);
    const double g = 24.0 * p.mu() * p.epsilon;
    return {-(1.0 + 4.0 * p.epsilon * c), g * c, g * s, -(9.0 + 6.0 * p.big_delta + eps_tilde * c), -g * c, -g * s};
}

inline PhaseVector apply(const DriveCoefficients& d, const PhaseVector& s) {
    return {s[1], d.k11 * s[0] + d.k13 * s[2] + d.v13 * s[3], s[3], d.k33 * s[2] + d.k31 * s[0] + d.v31 * s[1]};
}

inline Eigen::Matrix4d generator(const DriveCoefficients& d) {
    Eigen::Matrix4d g;
    g << 0.0, 1.0, 0.0, 0.0,          //
        d.k11, 0.0, d.k13, d.v13,     //
        0.0, 0.0, 0.0, 1.0,           //
        d.k31, d.v31, d.k33, 0.0;
    return g;
}

}  // namespace detail

/// Time derivative of (x1, x1', x3, x3').
inline PhaseVector rhs(double t, const PhaseVector& state, const ModelParams& p, const OracleOptions& o) {
    return detail::apply(detail::drive_at(t, p, resolved_epsilon_tilde(p, o)), state);
}

/// Integrates the four basis columns from time 0 and samples the fundamental
/// matrix at each requested time (must be nondecreasing, >= 0). Each segment
/// uses equal steps no longer than the configured dt.
inline std::vector<FundamentalMatrix> oracle_fundamental_matrices(std::span<const double> times, const ModelParams& p,
                                                                  const OracleOptions& o) {
    validate(o, p);
    const double dt = resolved_dt(p, o);
    const double eps_tilde = resolved_epsilon_tilde(p, o);
    std::vector<FundamentalMatrix> out;
    out.reserve(times.size());

    Eigen::Matrix4d y = Eigen::Matrix4d::Identity();
    double t0 = 0.0;
    for (double target : times) {
        if (!(target >= t0)) throw InvalidParameter("oracle sample times must be nondecreasing and >= 0");
        const double span = target - t0;
        const auto steps = static_cast<long long>(std::ceil(span / dt));
        const double h = steps > 0 ? span / static_cast<double>(steps) : 0.0;
        for (long long n = 0; n < steps; ++n) {
            const double t = t0 + static_cast<double>(n) * h;
            const Eigen::Matrix4d g0 = detail::generator(detail::drive_at(t, p, eps_tilde));
            const Eigen::Matrix4d gm = detail::generator(detail::drive_at(t + 0.5 * h, p, eps_tilde));
            const Eigen::Matrix4d g1 = detail::generator(detail::drive_at(t + h, p, eps_tilde));
            const Eigen::Matrix4d k1 = g0 * y;
            const Eigen::Matrix4d k2 = gm * (y + 0.5 * h * k1);
            const Eigen::Matrix4d k3 = gm * (y + 0.5 * h * k2);
            const Eigen::Matrix4d k4 = g1 * (y + h * k3);
            y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        }
        t0 = target;
        out.push_back({y, target});
    }
    return out;
}

inline FundamentalMatrix oracle_fundamental_matrix(double t_end, const ModelParams& p, const OracleOptions& o) {
    if (t_end < 0.0) throw InvalidParameter("t_end must be >= 0");
    const double times[] = {t_end};
    return oracle_fundamental_matrices(times, p, o).front();
}

/// Nearest stroboscopic instant t = m pi / w to the requested slow time.
inline double stroboscopic_time(double tau, const ModelParams& p) {
    const double period = std::numbers::pi / p.omega_bar();
    return std::round(fast_time(tau, p.epsilon) / period) * period;
}

// ---------------------------------------------------------------------------
// Second moments.

/// Symmetrized second moments of u = (x1, p1, x3, p3); first moments are zero.
struct CovarianceState {
    Eigen::Matrix4d sigma = Eigen::Matrix4d::Zero();
};

/// Product thermal state: <x_k^2> = theta_k/(2k), <p_k^2> = k theta_k / 2.
inline CovarianceState thermal_covariance(double theta1, double theta3) {
    if (theta1 < 1.0 || theta3 < 1.0) throw InvalidParameter("thermal parameters must be >= 1");
    CovarianceState s;
    s.sigma.diagonal() << 0.5 * theta1, 0.5 * theta1, theta3 / 6.0, 1.5 * theta3;
    return s;
}

inline CovarianceState propagate_covariance(const FundamentalMatrix& m, const CovarianceState& s0) {
    CovarianceState s{m.entries * s0.sigma * m.entries.transpose()};
    s.sigma = 0.5 * (s.sigma + s.sigma.transpose()).eval();
    return s;
}

}  // namespace casimir_duomode
