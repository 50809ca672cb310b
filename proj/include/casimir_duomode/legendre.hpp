#pragma once
// Legendre polynomials of complex argument by upward three-term recurrence
//   (m+1) P_{m+1} = (2m+1) z P_m - m P_{m-1}
// accumulated in extended precision with a running log scale, so magnitudes far
// outside the double range are still returned as (log|P|, arg P).

#include <cmath>
#include <complex>
#include <limits>

namespace casimir_duomode {

struct LegendreValue {
    double log_magnitude = 0.0;  ///< -inf when the value is exactly zero
    double phase = 0.0;

    bool is_zero() const { return std::isinf(log_magnitude) && log_magnitude < 0; }
    bool representable() const { return log_magnitude < std::log(std::numeric_limits<double>::max()); }
    std::complex<double> value() const {
        if (is_zero()) return {0.0, 0.0};
        return std::polar(std::exp(log_magnitude), phase);
    }
};

inline LegendreValue legendre(unsigned n, std::complex<double> z) {
    using ld = long double;
    using lc = std::complex<ld>;
    const lc x(z.real(), z.imag());
    const bool pure_imag = z.real() == 0.0 && z.imag() != 0.0;
    const bool pure_real = z.imag() == 0.0;

    lc prev(1.0L, 0.0L);
    lc cur = (n == 0) ? prev : x;
    ld log_scale = 0.0L;
    constexpr ld kBig = 1e1000L;
    constexpr ld kSmall = 1e-1000L;
    for (unsigned m = 1; m < n; ++m) {
        const lc next = (static_cast<ld>(2 * m + 1) * x * cur - static_cast<ld>(m) * prev) / static_cast<ld>(m + 1);
        prev = cur;
        cur = next;
        const ld mag = std::abs(cur);
        if (mag > kBig || (mag < kSmall && mag > 0.0L)) {
            prev /= mag;
            cur /= mag;
            log_scale += std::log(mag);
        }
    }

    // The recurrence keeps P_n(i y) in i^n * R and P_n(x) in R; snap residual
    // round-off in the other component.
    if (pure_real) cur.imag(0.0L);
    if (pure_imag) {
        if (n % 2 == 0)
            cur.imag(0.0L);
        else
            cur.real(0.0L);
    }
    const ld mag = std::abs(cur);
    if (mag == 0.0L) return {-std::numeric_limits<double>::infinity(), 0.0};
    return {static_cast<double>(log_scale + std::log(mag)), static_cast<double>(std::arg(cur))};
}

}  // namespace casimir_duomode
