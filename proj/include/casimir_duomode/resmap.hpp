#pragma once
/*
 * resmap.hpp: photon-generation regions in the plane of normalized detunings
 * (delta~, Delta~) = (delta, Delta) / eps.
 *
 * The sign pattern of the characteristic coefficients decides the region
 * (a < 0 whenever nu > 1):
 *   c < 0           symmetric generation (band around Delta~ = 4 delta~)
 *   c >= 0, b < 0   asymmetric generation (lobes between hyperbolas)
 *   otherwise       no generation
 * All quantities are in units of eps (a, b, c in units eps^2, eps^4, eps^4).
 */

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "errors.hpp"
#include "parallel.hpp"
#include "slowamp.hpp"

namespace casimir_duomode {

struct DetuningPoint {
    double delta_t = 0.0;
    double big_delta_t = 0.0;

    double eta() const { return big_delta_t - 4.0 * delta_t; }
    double gamma() const { return big_delta_t - 3.0 * delta_t; }
};

enum class RegionKind { SymmetricResonance, AsymmetricResonance, NoGeneration };

inline const char* to_string(RegionKind k) {
    switch (k) {
        case RegionKind::SymmetricResonance: return "symmetric";
        case RegionKind::AsymmetricResonance: return "asymmetric";
        case RegionKind::NoGeneration: return "none";
    }
    return "?";
}

struct RegionVerdict {
    RegionKind kind = RegionKind::NoGeneration;
    double increment = 0.0;  ///< Re lambda_+ / eps
    double a = 0.0, b = 0.0, c = 0.0;
};

/// Coefficients below this magnitude count as zero (boundary, no generation).
inline constexpr double kBoundaryTolerance = 1e-12;

inline void require_classifier_nu(double nu) {
    if (!(nu > 1.0) || !std::isfinite(nu)) {
        std::ostringstream os;
        os << "region classifier needs nu > 1 (got " << nu << ")";
        throw InvalidParameter(os.str());
    }
}

inline RegionVerdict classify(const DetuningPoint& pt, double nu, double epsilon = 1.0) {
    require_classifier_nu(nu);
    if (!(epsilon > 0.0)) throw InvalidParameter("epsilon must be > 0");
    if (!std::isfinite(pt.delta_t) || !std::isfinite(pt.big_delta_t)) throw InvalidParameter("detunings must be finite");

    // Homogeneous in (eps, delta, Delta): evaluate directly in units of eps.
    const auto [a, b, c] = spectral_coefficients(1.0, pt.delta_t, pt.big_delta_t, nu);
    RegionVerdict v{RegionKind::NoGeneration, 0.0, a, b, c};
    if (c < -kBoundaryTolerance)
        v.kind = RegionKind::SymmetricResonance;
    else if (c > kBoundaryTolerance && b < -kBoundaryTolerance)
        v.kind = RegionKind::AsymmetricResonance;
    if (v.kind == RegionKind::NoGeneration) return v;

    v.increment = lambdas_from_ab(a, b).first.real();
    if (!(v.increment > 0.0)) {
        std::ostringstream os;
        os << "classifier inconsistency at (" << pt.delta_t << ", " << pt.big_delta_t << "): region "
           << to_string(v.kind) << " but Re lambda_+ = " << v.increment;
        throw std::logic_error(os.str());
    }
    return v;
}

// ---------------------------------------------------------------------------
// Symmetric band edge.

struct EtaCritical {
    double approx = 0.0;
    std::optional<double> exact;
};

/// c as a function of eta along a vertical line delta~ = const.
inline double c_of_eta(double eta, double delta_t, double nu) {
    const double inner = 1.0 + (2.0 * delta_t + eta) * eta;
    return 2.0 * nu * (eta * eta - 1.0) + inner * inner;
}

inline EtaCritical eta_critical(double delta_t, double nu) {
    require_classifier_nu(nu);
    EtaCritical out;
    out.approx = std::sqrt(nu / (nu + 2.0 * delta_t * delta_t));

    double lo = 0.0, hi = 1.0;
    double flo = c_of_eta(lo, delta_t, nu);
    const double fhi = c_of_eta(hi, delta_t, nu);
    if (fhi == 0.0) {
        out.exact = hi;
        return out;
    }
    if (!(flo < 0.0 && fhi > 0.0)) return out;
    while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        const double fm = c_of_eta(mid, delta_t, nu);
        if (fm < 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    out.exact = 0.5 * (lo + hi);
    return out;
}

// ---------------------------------------------------------------------------
// Asymmetric lobes: b < 0 between the hyperbolas
//   gamma = nu / (2 (1 - delta~)),   gamma = -nu / (2 (1 + delta~)).

struct HyperbolaBounds {
    enum class Shape { Interval, Rays, HalfLine };
    Shape shape = Shape::Interval;
    double lower = 0.0;  ///< Interval: (lower, upper); Rays: gamma < lower or gamma > upper
    double upper = 0.0;  ///< HalfLine: (lower, upper) with one side infinite
    bool pole = false;   ///< |delta~| = 1, one branch at infinity

    bool contains(double gamma) const {
        if (shape == Shape::Rays) return gamma < lower || gamma > upper;
        return gamma > lower && gamma < upper;
    }
};

inline HyperbolaBounds hyperbola_bounds(double delta_t, double nu) {
    require_classifier_nu(nu);
    const double inf = std::numeric_limits<double>::infinity();
    if (delta_t == 1.0) return {HyperbolaBounds::Shape::HalfLine, -inf, -nu / 4.0, true};
    if (delta_t == -1.0) return {HyperbolaBounds::Shape::HalfLine, nu / 4.0, inf, true};
    const double right = nu / (2.0 * (1.0 - delta_t));
    const double left = -nu / (2.0 * (1.0 + delta_t));
    if (std::abs(delta_t) > 1.0) return {HyperbolaBounds::Shape::Interval, std::min(left, right), std::max(left, right), false};
    return {HyperbolaBounds::Shape::Rays, left, right, false};
}

// ---------------------------------------------------------------------------
// Widths.

struct ResonanceWidths {
    std::optional<double> gamma_width;  ///< width in Delta~ across a lobe; absent for |delta~| <= 1
    double sigma = 0.0;
    double left = 1.0;   ///< width in delta~ of the left lobe on the horizontal line
    double right = 1.0;  ///< width in delta~ of the right lobe
};

inline ResonanceWidths resonance_widths(const DetuningPoint& pt, double nu) {
    require_classifier_nu(nu);
    ResonanceWidths w;
    const double d = pt.big_delta_t;
    w.sigma = (std::sqrt((d + 3.0) * (d + 3.0) + 6.0 * nu) - std::sqrt((d - 3.0) * (d - 3.0) + 6.0 * nu)) / 6.0;
    w.left = 1.0 + w.sigma;
    w.right = 1.0 - w.sigma;
    if (std::abs(pt.delta_t) > 1.0) w.gamma_width = nu / (pt.delta_t * pt.delta_t - 1.0);
    return w;
}

// ---------------------------------------------------------------------------
// Grid sweep.

struct AxisRange {
    double min = -6.0;
    double max = 6.0;
    std::size_t count = 121;

    double at(std::size_t i) const {
        return min + (max - min) * static_cast<double>(i) / static_cast<double>(count - 1);
    }
};

/// Row-major: row r has big_delta_t = rows.at(r), column j has delta_t = cols.at(j).
struct SweepGrid {
    AxisRange cols;  ///< delta~
    AxisRange rows;  ///< Delta~
    double nu = 0.0;
    std::vector<DetuningPoint> points;
    std::vector<RegionVerdict> verdicts;

    const RegionVerdict& at(std::size_t r, std::size_t c) const { return verdicts[r * cols.count + c]; }
};

inline SweepGrid sweep_grid(const AxisRange& delta_range, const AxisRange& big_delta_range, double nu,
                            double epsilon = 1.0, unsigned workers = worker_count_from_env()) {
    require_classifier_nu(nu);
    for (const AxisRange* r : {&delta_range, &big_delta_range}) {
        if (!std::isfinite(r->min) || !std::isfinite(r->max) || !(r->max > r->min))
            throw InvalidParameter("grid range must be finite with max > min");
        if (r->count < 2) throw InvalidParameter("grid resolution must be >= 2 per axis");
    }
    SweepGrid g{delta_range, big_delta_range, nu, {}, {}};
    const std::size_t n = delta_range.count * big_delta_range.count;
    g.points.resize(n);
    for (std::size_t r = 0; r < big_delta_range.count; ++r)
        for (std::size_t c = 0; c < delta_range.count; ++c)
            g.points[r * delta_range.count + c] = {delta_range.at(c), big_delta_range.at(r)};
    g.verdicts = parallel_map(n, [&](std::size_t i) { return classify(g.points[i], nu, epsilon); }, workers);
    return g;
}

/// Number of 4-connected components of cells of the given kind.
inline std::size_t count_components(const SweepGrid& g, RegionKind kind) {
    const std::size_t nr = g.rows.count, nc = g.cols.count;
    std::vector<char> seen(nr * nc, 0);
    std::vector<std::size_t> stack;
    std::size_t components = 0;
    for (std::size_t start = 0; start < nr * nc; ++start) {
        if (seen[start] || g.verdicts[start].kind != kind) continue;
        ++components;
        stack.push_back(start);
        seen[start] = 1;
        while (!stack.empty()) {
            const std::size_t i = stack.back();
            stack.pop_back();
            const std::size_t r = i / nc, c = i % nc;
            auto visit = [&](std::size_t j) {
                if (!seen[j] && g.verdicts[j].kind == kind) {
                    seen[j] = 1;
                    stack.push_back(j);
                }
            };
            if (r > 0) visit(i - nc);
            if (r + 1 < nr) visit(i + nc);
            if (c > 0) visit(i - 1);
            if (c + 1 < nc) visit(i + 1);
        }
    }
    return components;
}

}  // namespace casimir_duomode
