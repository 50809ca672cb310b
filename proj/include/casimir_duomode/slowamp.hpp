#pragma once
/*
 * slowamp.hpp: slowly varying amplitudes of the two resonant modes.
 *
 * With x_k = xi_k^+ e^{i k w t} + xi_k^- e^{-i k w t} (w = 1 + delta) the
 * amplitude vector v = (xi_1^+, xi_1^-, xi_3^+, xi_3^-) obeys dv/dt = A v with
 * a constant 4x4 matrix A. Its spectrum is {+-lambda_+, +-lambda_-}:
 *
 *   lambda_+- = ( sqrt(a + sqrt(b)) +- sqrt(a - sqrt(b)) ) / 2
 *   a = eps^2 (1 - nu) - delta^2 - (Delta - 3 delta)^2
 *   b = [2(delta - eps)(Delta - 3 delta) + nu eps^2] [2(delta + eps)(Delta - 3 delta) + nu eps^2]
 *   c = a^2 - b = 2 eps^2 nu [(Delta - 4 delta)^2 - eps^2] + [eps^2 + (Delta - 2 delta)(Delta - 4 delta)]^2
 *
 * The sum/difference form fixes the branches: Re lambda_+ >= Re lambda_- >= 0.
 *
 * Fundamental matrices map (x1, p1, x3, p3)(0) to (x1, p1, x3, p3)(t) with
 * p identified with dx/dt, and are parameterized by fast time t.
 */

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <complex>
#include <sstream>
#include <unsupported/Eigen/MatrixFunctions>

#include "cavity.hpp"
#include "errors.hpp"

namespace casimir_duomode {

using cplx = std::complex<double>;

struct SlowMatrix {
    Eigen::Matrix4cd entries;
};

struct EigenSet {
    cplx lambda_plus;
    cplx lambda_minus;
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;

    std::array<cplx, 4> spectrum() const { return {lambda_plus, -lambda_plus, lambda_minus, -lambda_minus}; }
};

struct FundamentalMatrix {
    Eigen::Matrix4d entries = Eigen::Matrix4d::Identity();
    double t = 0.0;
};

inline SlowMatrix build_matrix(const ModelParams& p) {
    const cplx i{0.0, 1.0};
    const double eps = p.epsilon;
    const double mu = p.mu();
    const double g = p.big_delta - 3.0 * p.delta;
    Eigen::Matrix4cd a = Eigen::Matrix4cd::Zero();
    a(0, 0) = -i * p.delta;
    a(0, 1) = i * eps;
    a(0, 2) = 12.0 * i * mu * eps;
    a(1, 0) = -i * eps;
    a(1, 1) = i * p.delta;
    a(1, 3) = -12.0 * i * mu * eps;
    a(2, 0) = 4.0 * i * mu * eps;
    a(2, 2) = i * g;
    a(3, 1) = -4.0 * i * mu * eps;
    a(3, 3) = -i * g;
    return {a};
}

/// a, b, c coefficients of the characteristic polynomial, in the units of the inputs.
struct SpectralCoefficients {
    double a, b, c;
};

inline SpectralCoefficients spectral_coefficients(double eps, double delta, double big_delta, double nu) {
    const double e2 = eps * eps;
    const double g = big_delta - 3.0 * delta;
    const double eta = big_delta - 4.0 * delta;
    const double a = e2 * (1.0 - nu) - delta * delta - g * g;
    const double b = (2.0 * (delta - eps) * g + nu * e2) * (2.0 * (delta + eps) * g + nu * e2);
    const double inner = e2 + (big_delta - 2.0 * delta) * eta;
    const double c = 2.0 * e2 * nu * (eta * eta - e2) + inner * inner;
    return {a, b, c};
}

namespace detail {
// Principal square root of a real number as a complex value (never lands on the
// lower side of the branch cut).
inline cplx real_sqrt(double x) { return x >= 0.0 ? cplx(std::sqrt(x), 0.0) : cplx(0.0, std::sqrt(-x)); }
}  // namespace detail

/// lambda_+- from the sum/difference-of-roots form for given a, b.
inline std::pair<cplx, cplx> lambdas_from_ab(double a, double b) {
    cplx s1, s2;
    if (b >= 0.0) {
        const double rb = std::sqrt(b);
        s1 = detail::real_sqrt(a + rb);
        s2 = detail::real_sqrt(a - rb);
    } else {
        s1 = std::sqrt(cplx(a, std::sqrt(-b)));
        s2 = std::conj(s1);
    }
    return {0.5 * (s1 + s2), 0.5 * (s1 - s2)};
}

inline EigenSet eigenvalues(const ModelParams& p) {
    const auto [a, b, c] = spectral_coefficients(p.epsilon, p.delta, p.big_delta, p.nu);
    const auto [lp, lm] = lambdas_from_ab(a, b);
    return {lp, lm, a, b, c};
}

/// Eigenvalues of A by direct numerical diagonalization (cross-check path).
inline std::array<cplx, 4> numeric_eigenvalues(const SlowMatrix& m) {
    Eigen::ComplexEigenSolver<Eigen::Matrix4cd> es(m.entries, /*computeEigenvectors=*/false);
    if (es.info() != Eigen::Success) throw NumericalError("eigenvalue solver did not converge");
    std::array<cplx, 4> out;
    for (int k = 0; k < 4; ++k) out[k] = es.eigenvalues()(k);
    return out;
}

/// lambda / eps along the compensation line Delta~ = 4 delta~ for nu >> 1.
inline cplx increment_symmetric_line(double delta_t, double nu) {
    const double s = nu + 2.0 * delta_t * delta_t;
    return 0.5 * cplx(std::sqrt(nu / s), std::sqrt(2.0 * s));
}

/// lambda_+^2 / eps^2 inside |delta~| <= 1 with gamma = -nu xi / 4. May be negative
/// (no generation); corrections O(1/nu) dropped.
inline double increment_asymmetric_inner(double delta_t, double xi) {
    return 1.0 - delta_t * delta_t + 4.0 * (delta_t * xi - 1.0) / (xi * xi);
}

/// lambda_+ / eps for |delta~| > 1 with gamma = -nu / (2 (delta~ + chi_outer)), |chi_outer| < 1.
inline double increment_asymmetric_outer(double delta_t, double chi_outer, double nu) {
    if (std::abs(chi_outer) >= 1.0) throw RegimeError("|chi_outer| >= 1 lies outside the resonance region");
    return nu * std::sqrt(1.0 - chi_outer * chi_outer) / (nu + 2.0 * delta_t * delta_t);
}

// ---------------------------------------------------------------------------
// Regime guards shared with the closed-form observables.

inline void require_exact_resonance(const ModelParams& p) {
    if (p.delta != 0.0 || p.big_delta != 0.0)
        throw RegimeError("exact-resonance formulas need delta = Delta = 0");
    if (!(p.nu > 0.5)) throw RegimeError("exact-resonance formulas need nu > 1/2");
}

inline constexpr double kAsymmetricTolerance = 1e-9;

inline void require_asymmetric_regime(const ModelParams& p) {
    const double dt = p.delta_t();
    const double gamma = p.gamma_t();
    if (!(p.nu > 4.0)) throw RegimeError("asymmetric-regime formulas need nu > 4");
    if (std::abs(dt - 1.0) > kAsymmetricTolerance) {
        std::ostringstream os;
        os << "asymmetric-regime formulas need delta/eps = 1 (got " << dt << ")";
        throw RegimeError(os.str());
    }
    if (std::abs(gamma + 0.5 * p.nu) > kAsymmetricTolerance * std::max(1.0, p.nu)) {
        std::ostringstream os;
        os << "asymmetric-regime formulas need (Delta - 3 delta)/eps = -nu/2 (got " << gamma << ")";
        throw RegimeError(os.str());
    }
}

inline bool is_exact_resonance(const ModelParams& p) {
    return p.delta == 0.0 && p.big_delta == 0.0 && p.nu > 0.5;
}

inline bool is_asymmetric_regime(const ModelParams& p) {
    try {
        require_asymmetric_regime(p);
        return true;
    } catch (const RegimeError&) {
        return false;
    }
}

/// Growth rate R and oscillation rate J (units of eps) at delta~ = 1, gamma = -nu/2,
/// truncated at O(1/nu^2).
struct AsymmetricRates {
    double R;
    double J;
};

inline AsymmetricRates asymmetric_rates(double nu) { return {1.0 - 2.0 / nu, 0.5 * nu + 1.0}; }

// ---------------------------------------------------------------------------
// Fundamental matrices.

namespace detail {

// C_k^{+-}(T; t) = cosh T cos(k w t) +- sinh T sin(k w t)
// S_k^{+-}(T; t) = sinh T cos(k w t) +- cosh T sin(k w t)
// with fast-time derivatives dC^{+-}/dt = +- k w S^{-+}, dS^{+-}/dt = +- k w C^{-+}
// taken at fixed T.
struct Kernels {
    double ch, sh, cs, sn, kw;

    Kernels(double slow_arg, int k, double w, double t)
        : ch(std::cosh(slow_arg)), sh(std::sinh(slow_arg)), cs(std::cos(k * w * t)), sn(std::sin(k * w * t)),
          kw(k * w) {}

    double C(int s) const { return ch * cs + s * sh * sn; }
    double S(int s) const { return sh * cs + s * ch * sn; }
    double dC(int s) const { return s * kw * S(-s); }
    double dS(int s) const { return s * kw * C(-s); }
};

}  // namespace detail

inline FundamentalMatrix fundamental_matrix_exact_resonance(double t, const ModelParams& p) {
    require_exact_resonance(p);
    const double tau = slow_time(t, p.epsilon);
    const double rho = std::sqrt(2.0 * p.nu - 1.0);
    const double mu = p.mu();
    const double w = p.omega_bar();
    const double c = std::cos(rho * tau);
    const double sr = std::sin(rho * tau) / rho;
    const detail::Kernels k1(tau, 1, w, t);
    const detail::Kernels k3(tau, 3, w, t);

    Eigen::Matrix4d m;
    // x1 row and its fast-time derivative
    m(0, 0) = k1.C(-1) * c + k1.S(-1) * sr;
    m(0, 1) = -(k1.S(-1) * c + k1.C(-1) * sr);
    m(0, 2) = 24.0 * mu * sr * k1.S(-1);
    m(0, 3) = 8.0 * mu * sr * k1.C(-1);
    m(1, 0) = k1.dC(-1) * c + k1.dS(-1) * sr;
    m(1, 1) = -(k1.dS(-1) * c + k1.dC(-1) * sr);
    m(1, 2) = 24.0 * mu * sr * k1.dS(-1);
    m(1, 3) = 8.0 * mu * sr * k1.dC(-1);
    // x3 row and its fast-time derivative
    m(2, 0) = -8.0 * mu * sr * k3.S(+1);
    m(2, 1) = 8.0 * mu * sr * k3.C(+1);
    m(2, 2) = k3.C(+1) * c - k3.S(+1) * sr;
    m(2, 3) = (k3.S(+1) * c - k3.C(+1) * sr) / 3.0;
    m(3, 0) = -8.0 * mu * sr * k3.dS(+1);
    m(3, 1) = 8.0 * mu * sr * k3.dC(+1);
    m(3, 2) = k3.dC(+1) * c - k3.dS(+1) * sr;
    m(3, 3) = (k3.dS(+1) * c - k3.dC(+1) * sr) / 3.0;
    return {m, t};
}

namespace detail {

inline Eigen::Matrix4d asymmetric_entries(double t, const ModelParams& p) {
    const double tau = slow_time(t, p.epsilon);
    const auto [R, J] = asymmetric_rates(p.nu);
    const double mu = p.mu();
    const double w = p.omega_bar();
    const double big = 1.0 - 2.0 / p.nu;
    const double small = 2.0 / p.nu;
    const Kernels k1(2.0 * R * tau, 1, w, t);
    const Kernels k3(2.0 * R * tau, 3, w, t);
    const double ph1 = w * t - 2.0 * J * tau;
    const double ph3 = 3.0 * w * t - 2.0 * J * tau;
    const double c1 = std::cos(ph1), s1 = std::sin(ph1);
    const double c3 = std::cos(ph3), s3 = std::sin(ph3);
    // d(phi_k)/dt at fixed tau is k w.
    const double w1 = w, w3 = 3.0 * w;

    Eigen::Matrix4d m;
    m(0, 0) = big * k1.C(-1) + small * c1;
    m(0, 1) = -(big * k1.S(-1) - small * s1);
    m(0, 2) = (k1.C(-1) - c1) / (4.0 * mu);
    m(0, 3) = -(k1.S(-1) + s1) / (12.0 * mu);
    m(1, 0) = big * k1.dC(-1) - small * w1 * s1;
    m(1, 1) = -(big * k1.dS(-1) - small * w1 * c1);
    m(1, 2) = (k1.dC(-1) + w1 * s1) / (4.0 * mu);
    m(1, 3) = -(k1.dS(-1) + w1 * c1) / (12.0 * mu);

    m(2, 0) = (k3.C(-1) - c3) / (12.0 * mu);
    m(2, 1) = -(k3.S(-1) + s3) / (12.0 * mu);
    m(2, 2) = big * c3 + small * k3.C(-1);
    m(2, 3) = (big * s3 - small * k3.S(-1)) / 3.0;
    m(3, 0) = (k3.dC(-1) + w3 * s3) / (12.0 * mu);
    m(3, 1) = -(k3.dS(-1) + w3 * c3) / (12.0 * mu);
    m(3, 2) = -big * w3 * s3 + small * k3.dC(-1);
    m(3, 3) = (big * w3 * c3 - small * k3.dS(-1)) / 3.0;
    // Momentum columns: initial velocity p_k enters with 1/(k w), not 1/k.
    m.col(1) /= w;
    m.col(3) /= w;
    return m;
}

}  // namespace detail

/// Closed-form solution at delta~ = 1, gamma = -nu/2, kept to O(1/nu).
/// Throws RegimeError outside that point, and NumericalError if the t = 0
/// matrix deviates from identity by more than 10/nu^2 in any entry.
inline FundamentalMatrix fundamental_matrix_asymmetric(double t, const ModelParams& p) {
    require_asymmetric_regime(p);
    const double start_dev = (detail::asymmetric_entries(0.0, p) - Eigen::Matrix4d::Identity()).cwiseAbs().maxCoeff();
    if (start_dev > 10.0 / (p.nu * p.nu)) {
        std::ostringstream os;
        os << "asymmetric closed form deviates from identity at t=0 by " << start_dev;
        throw NumericalError(os.str());
    }
    return {detail::asymmetric_entries(t, p), t};
}

/// Optional report on how a matrix exponential was evaluated.
struct ExpDiagnostics {
    bool used_pade = false;
    double eigvec_condition = 0.0;
};

inline constexpr double kEigvecConditionLimit = 1e8;

/// exp(m) by eigendecomposition, falling back to Padé scaling-and-squaring when
/// the eigenvector matrix is ill conditioned (near-degenerate spectrum).
inline Eigen::Matrix4cd matrix_exponential(const Eigen::Matrix4cd& m, ExpDiagnostics* diag = nullptr) {
    Eigen::ComplexEigenSolver<Eigen::Matrix4cd> es(m);
    double cond = std::numeric_limits<double>::infinity();
    if (es.info() == Eigen::Success) {
        const Eigen::Matrix4cd& v = es.eigenvectors();
        Eigen::JacobiSVD<Eigen::Matrix4cd> svd(v);
        const auto& sv = svd.singularValues();
        if (sv(3) > 0.0) cond = sv(0) / sv(3);
        if (cond <= kEigvecConditionLimit) {
            if (diag) *diag = {false, cond};
            const Eigen::Vector4cd ex = es.eigenvalues().array().exp();
            return v * ex.asDiagonal() * v.partialPivLu().inverse();
        }
    }
    if (diag) *diag = {true, cond};
    return m.exp();
}

/// Fundamental matrix from exp(A t) and the slow-amplitude reconstruction.
/// Valid for any parameters; momenta kept to leading order.
inline FundamentalMatrix fundamental_matrix_generic(double t, const ModelParams& p, ExpDiagnostics* diag = nullptr) {
    const double w = p.omega_bar();
    const cplx i{0.0, 1.0};
    const Eigen::Matrix4cd ea = matrix_exponential(build_matrix(p).entries * t, diag);

    // Columns of `to_slow` send (x1, p1, x3, p3) to (xi1+, xi1-, xi3+, xi3-) at t = 0.
    Eigen::Matrix4cd to_slow = Eigen::Matrix4cd::Zero();
    for (int m = 0; m < 2; ++m) {
        const double kw = (m == 0 ? 1.0 : 3.0) * w;
        const int r = 2 * m;
        to_slow(r, r) = 0.5;
        to_slow(r, r + 1) = -0.5 * i / kw;
        to_slow(r + 1, r) = 0.5;
        to_slow(r + 1, r + 1) = 0.5 * i / kw;
    }
    // Rows of `from_slow` reconstruct (x, p) at time t.
    Eigen::Matrix4cd from_slow = Eigen::Matrix4cd::Zero();
    for (int m = 0; m < 2; ++m) {
        const double kw = (m == 0 ? 1.0 : 3.0) * w;
        const cplx ph = std::polar(1.0, kw * t);
        const int r = 2 * m;
        from_slow(r, r) = ph;
        from_slow(r, r + 1) = std::conj(ph);
        from_slow(r + 1, r) = i * kw * ph;
        from_slow(r + 1, r + 1) = -i * kw * std::conj(ph);
    }
    const Eigen::Matrix4cd full = from_slow * ea * to_slow;
    return {full.real(), t};
}

}  // namespace casimir_duomode
