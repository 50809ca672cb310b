#pragma once
/*
 * photon_distribution.hpp: photon-number distribution of a zero-mean Gaussian
 * mode as a function of (E~, D) only:
 *
 *   P_n = 2 / sqrt(1 + 4E~ + 4D) * q^{n/2} * P_n(z),
 *   q   = (1 + 4D - 4E~) / (1 + 4D + 4E~),
 *   z   = (4D - 1) / sqrt((4D + 1)^2 - 16 E~^2).
 *
 * Writing H_n = v^{n/2} P_n(u / sqrt v) with u = 4D - 1 and
 * v = (4D + 1)^2 - 16E~^2 turns the Legendre recurrence into a real one,
 *   (m+1) H_{m+1} = (2m+1) u H_m - m v H_{m-1},
 * and P_n = 2 / sqrt(s) * H_n / s^n with s = 1 + 4D + 4E~. The imaginary
 * powers of q and of z cancel identically, so no complex arithmetic is needed
 * even when z is imaginary (E~ > D + 1/4, the squeezing regime). The scaled
 * recurrence runs in extended precision with a running log scale and sign.
 */

#include <cmath>
#include <cstddef>
#include <numbers>
#include <sstream>
#include <vector>

#include "errors.hpp"
#include "gaussian.hpp"

namespace casimir_duomode {

struct PhotonDistribution {
    std::vector<double> probs;
    std::size_t n_max = 0;
    double tail_mass_bound = 0.0;  ///< bound on 1 - sum(probs)

    double total() const {
        double s = 0.0;
        for (double p : probs) s += p;
        return s;
    }
};

inline std::size_t default_n_max(const ModeObservables& obs) {
    return static_cast<std::size_t>(std::ceil(40.0 * obs.e_tilde));
}

namespace detail {

// Geometric envelope exp(-n/(2E)) / sqrt(2 pi n E) summed over n > n_max, plus
// an allowance for summation round-off.
inline double tail_envelope_bound(double e_tilde, std::size_t n_max) {
    const double n1 = static_cast<double>(n_max) + 1.0;
    const double ratio = std::exp(-1.0 / (2.0 * e_tilde));
    const double first = std::exp(-n1 / (2.0 * e_tilde)) / std::sqrt(2.0 * std::numbers::pi * n1 * e_tilde);
    return first / (1.0 - ratio) + 1e-12;
}

inline double clip_probability(double p, std::size_t n) {
    if (p < 0.0) {
        if (p < -1e-12) {
            std::ostringstream os;
            os << "negative photon probability " << p << " at n = " << n;
            throw NumericalError(os.str());
        }
        return 0.0;
    }
    return p;
}

}  // namespace detail

/// Photon-number probabilities for n = 0..n_max (default ceil(40 E~)).
inline PhotonDistribution pdf_exact(const ModeObservables& obs, std::optional<std::size_t> n_max_opt = std::nullopt) {
    require_feasible(obs);
    const double e = obs.e_tilde;
    const double d = obs.iup;
    const std::size_t n_max = n_max_opt.value_or(default_n_max(obs));

    PhotonDistribution out;
    out.n_max = n_max;
    out.probs.resize(n_max + 1);
    out.tail_mass_bound = detail::tail_envelope_bound(e, n_max);

    // Thermal line: geometric law, sidestepping the 0/0 Legendre argument at E~ = 1/2.
    if (std::abs(e * e - d) <= 1e-12 * d) {
        const double theta = 2.0 * e;
        const double log_r = std::log(theta - 1.0) - std::log(theta + 1.0);
        for (std::size_t n = 0; n <= n_max; ++n) {
            out.probs[n] = (n == 0) ? 2.0 / (theta + 1.0)
                                    : std::exp(std::log(2.0 / (theta + 1.0)) + static_cast<double>(n) * log_r);
        }
        return out;
    }

    using ld = long double;
    const ld s = 1.0L + 4.0L * d + 4.0L * e;
    const ld u = (4.0L * d - 1.0L) / s;
    const ld v = (1.0L + 4.0L * d - 4.0L * e) / s;  // ((4D+1)^2 - 16E^2) / s^2
    const ld log_front = std::log(2.0L) - 0.5L * std::log(s);

    ld prev = 1.0L;  // scaled H_0
    ld cur = u;      // scaled H_1
    ld log_scale = 0.0L;
    auto emit = [&](std::size_t n, ld g) {
        double p = 0.0;
        if (g != 0.0L) {
            const ld logp = log_front + log_scale + std::log(std::abs(g));
            p = static_cast<double>((g < 0 ? -1.0L : 1.0L) * std::exp(logp));
        }
        out.probs[n] = detail::clip_probability(p, n);
    };
    emit(0, prev);
    if (n_max >= 1) emit(1, cur);
    for (std::size_t m = 1; m < n_max; ++m) {
        const ld next = (static_cast<ld>(2 * m + 1) * u * cur - static_cast<ld>(m) * v * prev) / static_cast<ld>(m + 1);
        prev = cur;
        cur = next;
        const ld mag = std::abs(cur);
        if (mag > 1e300L || (mag < 1e-300L && mag > 0.0L)) {
            prev /= mag;
            cur /= mag;
            log_scale += std::log(mag);
        }
        emit(m + 1, cur);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Large-n asymptotics.

enum class AsymptoticForm {
    General,         ///< uniform form with cosh/sinh parity factor, real or imaginary Legendre argument
    QuasiGeometric,  ///< moderate E~/D: geometric law times n^{-1/2}
    Oscillating,     ///< E~ >> D: even/odd oscillation typical of squeezed states
    Tail,            ///< far tail, independent of D
};

namespace detail {

inline double log_cosh(double x) {
    const double a = std::abs(x);
    return a + std::log1p(std::exp(-2.0 * a)) - std::numbers::ln2;
}

// log|sinh x| (x != 0)
inline double log_abs_sinh(double x) {
    const double a = std::abs(x);
    return a + std::log1p(-std::exp(-2.0 * a)) - std::numbers::ln2;
}

inline double parity_factor(std::size_t n, double x, double log_rest) {
    if (n % 2 == 0) return std::exp(log_rest + log_cosh(x));
    if (x == 0.0) return 0.0;
    return (x > 0 ? 1.0 : -1.0) * std::exp(log_rest + log_abs_sinh(x));
}

}  // namespace detail

/// Large-n approximation of P_n. Requires E~^2 >= 20 D and n >= 10.
inline double pdf_asymptotic(const ModeObservables& obs, std::size_t n, AsymptoticForm form = AsymptoticForm::General) {
    require_feasible(obs);
    const double e = obs.e_tilde;
    const double d = obs.iup;
    if (e * e < 20.0 * d) {
        std::ostringstream os;
        os << "asymptotic PDF needs E~^2 >= 20 D (got E~^2 = " << e * e << ", 20 D = " << 20.0 * d << ")";
        throw RegimeError(os.str());
    }
    if (n < 10) {
        std::ostringstream os;
        os << "asymptotic PDF needs n >= 10 (got n = " << n << ")";
        throw RegimeError(os.str());
    }
    const double nn = static_cast<double>(n);
    const double pi = std::numbers::pi;
    const double root = std::sqrt(e * e - d);
    const double big = 1.0 + 4.0 * d + 4.0 * e;

    switch (form) {
        case AsymptoticForm::General: {
            const double minus = std::abs(1.0 + 4.0 * d - 4.0 * e);
            if (minus == 0.0) throw RegimeError("asymptotic PDF undefined at E~ = D + 1/4 (infinite Legendre argument)");
            const double log_chi = std::log(std::abs(4.0 * d - 1.0 + 4.0 * root)) - 0.5 * std::log(minus * big);
            const double log_rest = 0.5 * std::numbers::ln2 + (0.5 * nn + 0.25) * (std::log(minus) - std::log(big)) -
                                    0.5 * std::log(pi * nn * e);
            return detail::parity_factor(n, (nn + 0.5) * log_chi, log_rest);
        }
        case AsymptoticForm::QuasiGeometric: {
            const double base = (4.0 * d - 1.0 + 4.0 * root) / big;
            return std::exp((nn + 0.5) * std::log(base) - 0.5 * std::log(2.0 * pi * nn * e));
        }
        case AsymptoticForm::Oscillating: {
            const double base = 1.0 - (4.0 * d + 1.0) / (2.0 * e);
            if (!(base > 0.0)) throw RegimeError("oscillating asymptotic form needs 2 E~ > 4 D + 1");
            const double log_rest = 0.5 * std::log(2.0 / (pi * nn * e)) + 0.5 * nn * std::log(base);
            return detail::parity_factor(n, nn * (4.0 * d - 1.0) / (4.0 * e), log_rest);
        }
        case AsymptoticForm::Tail:
            return std::exp(-nn / (2.0 * e)) / std::sqrt(2.0 * pi * nn * e);
    }
    throw InvalidParameter("unknown asymptotic form");
}

/// Long-time vacuum distribution at exact resonance (either mode), tau >= 2, nu >= 10, n >= 10.
inline double pdf_vacuum_longtime(double tau, double nu, std::size_t n) {
    if (tau < 2.0) throw RegimeError("vacuum long-time PDF needs tau >= 2");
    if (nu < 10.0) throw RegimeError("vacuum long-time PDF needs nu >= 10");
    if (n < 10) throw RegimeError("vacuum long-time PDF needs n >= 10");
    const double nn = static_cast<double>(n);
    const double rho = std::sqrt(2.0 * nu - 1.0);
    const double s = std::sin(rho * tau);
    const double decay = std::exp(-2.0 * tau);
    const double arg = 2.0 * nn / nu * s * s * s * s * decay;
    const double log_rest = -tau + 0.5 * std::log(8.0 / (std::numbers::pi * nn)) + 0.5 * nn * std::log1p(-4.0 * decay);
    return detail::parity_factor(n, arg, log_rest);
}

}  // namespace casimir_duomode
