#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <functional>
#include <complex>
#include <numbers>
#include <numeric>
#include <unsupported/Eigen/MatrixFunctions>

#include "casimir_duomode/gaussian.hpp"
#include "casimir_duomode/legendre.hpp"
#include "casimir_duomode/photon_distribution.hpp"

using namespace casimir_duomode;
using cd = std::complex<double>;

namespace {
constexpr double kNu = 50.0 / 3.0;
const double kPi = std::numbers::pi;

// Photon numbers of a squeezed thermal state, built in a truncated Fock space.
std::vector<double> fock_oracle(double theta, double r, int n_out, int dim = 320) {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(dim, dim);
    for (int k = 1; k < dim; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
    const Eigen::MatrixXd ad = a.transpose();
    const Eigen::MatrixXd gen = 0.5 * r * (a * a - ad * ad);
    const Eigen::MatrixXd s = gen.exp();
    std::vector<double> out(n_out + 1, 0.0);
    const double q = (theta - 1) / (theta + 1);
    for (int m = 0; m < dim / 2; ++m) {
        const double pm = 2.0 / (theta + 1) * std::pow(q, m);
        for (int n = 0; n <= n_out; ++n) out[n] += pm * s(n, m) * s(n, m);
    }
    return out;
}

// Direct evaluation of the Legendre representation in double precision.
double legendre_form(double e, double d, unsigned n) {
    const double s = 1 + 4 * d + 4 * e;
    const cd v = (1 + 4 * d - 4 * e) / s;
    const cd root = std::sqrt(v);
    const cd z = ((4 * d - 1) / s) / root;
    const cd val = 2.0 / std::sqrt(s) * std::pow(root, static_cast<double>(n)) * legendre(n, z).value();
    return val.real();
}

std::vector<ModeObservables> feasible_grid() {
    std::vector<ModeObservables> g;
    for (double e : {0.6, 1.5, 4.0, 12.0, 30.0, 50.0})
        for (double frac : {0.0, 0.3, 0.7, 1.0}) {
            const double d = 0.25 + frac * (e * e - 0.25);
            g.push_back({e, d});
        }
    return g;
}

void expect_message(const std::function<void()>& f, const std::string& needle) {
    try {
        f();
        ADD_FAILURE() << "no exception, expected " << needle;
    } catch (const RegimeError& err) {
        EXPECT_NE(std::string(err.what()).find(needle), std::string::npos) << err.what();
    }
}
}  // namespace

TEST(Legendre, LowOrders) {
    for (cd z : {cd(0.3), cd(-2.0), cd(0.0, 1.7)}) {
        EXPECT_NEAR(std::abs(legendre(0, z).value() - 1.0), 0.0, 1e-15);
        EXPECT_NEAR(std::abs(legendre(1, z).value() - z), 0.0, 1e-15);
    }
    EXPECT_NEAR(legendre(2, 3.0).value().real(), 13.0, 1e-13);
}

TEST(Legendre, ValuesAtZero) {
    EXPECT_TRUE(legendre(5, 0.0).is_zero());
    EXPECT_NEAR(legendre(4, 0.0).value().real(), 3.0 / 8.0, 1e-15);
    // Series for P_n(0), n even: (-1)^{n/2} (n-1)!! / n!!
    double want = 1.0;
    for (unsigned n = 2; n <= 40; n += 2) {
        want *= -static_cast<double>(n - 1) / n;
        EXPECT_NEAR(legendre(n, 0.0).value().real(), want, 1e-14);
    }
}

TEST(Legendre, ImaginaryArgumentParity) {
    for (unsigned n = 0; n <= 60; ++n) {
        const cd v = legendre(n, cd(0.0, 0.8)).value();
        if (n % 2 == 0)
            EXPECT_LE(std::abs(v.imag()), 1e-10 * std::abs(v));
        else
            EXPECT_LE(std::abs(v.real()), 1e-10 * std::abs(v));
    }
}

TEST(Legendre, LargeOrder) {
    EXPECT_NEAR(legendre(10000, 1.0).value().real(), 1.0, 1e-9);
    // Laplace asymptote for z > 1.
    const double z = 3.0, n = 2000;
    const double w = std::sqrt(z * z - 1);
    const double want = (n + 0.5) * std::log(z + w) - 0.5 * std::log(2 * kPi * n * w);
    EXPECT_NEAR(legendre(2000, z).log_magnitude, want, 1e-3);
    // Leading coefficient (2n)! / (2^n n!^2) dominates for z >> n.
    const auto huge = legendre(200, 1e3);
    EXPECT_FALSE(huge.representable());
    EXPECT_NEAR(huge.log_magnitude, std::lgamma(401.0) - 200 * std::log(2.0) - 2 * std::lgamma(201.0) + 200 * std::log(1e3),
                1e-3);
}

TEST(PdfExact, Vacuum) {
    const auto p = pdf_exact({0.5, 0.25}, 20);
    EXPECT_DOUBLE_EQ(p.probs[0], 1.0);
    for (std::size_t n = 1; n <= 20; ++n) EXPECT_EQ(p.probs[n], 0.0);
}

TEST(PdfExact, ThermalGeometric) {
    const auto p = pdf_exact({1.5, 2.25}, 60);
    for (std::size_t n = 0; n <= 60; ++n) EXPECT_NEAR(p.probs[n] / std::ldexp(1.0, -static_cast<int>(n + 1)), 1.0, 1e-12);
}

TEST(PdfExact, SqueezedVacuumHasNoOddCounts) {
    for (double r : {0.3, 1.0, 2.5}) {
        const auto p = pdf_exact({0.5 * std::cosh(2 * r), 0.25}, 200);
        for (std::size_t n = 1; n <= 200; n += 2) EXPECT_EQ(p.probs[n], 0.0);
        EXPECT_GT(p.probs[2], 0.0);
    }
}

TEST(PdfExact, MatchesFockSpaceConstruction) {
    for (double theta : {1.0, 2.0, 3.5})
        for (double r : {0.2, 0.6, 1.0}) {
            const ModeObservables o{0.5 * theta * std::cosh(2 * r), 0.25 * theta * theta};
            const auto p = pdf_exact(o, 30);
            const auto ref = fock_oracle(theta, r, 30);
            for (int n = 0; n <= 30; ++n) EXPECT_NEAR(p.probs[n], ref[n], 1e-10) << theta << " " << r << " " << n;
        }
}

TEST(PdfExact, MatchesLegendreRepresentation) {
    for (const auto& o : {ModeObservables{3.0, 1.0}, ModeObservables{2.0, 3.9}, ModeObservables{1.2, 0.9}}) {
        const auto p = pdf_exact(o, 40);
        for (unsigned n = 0; n <= 40; ++n) EXPECT_NEAR(p.probs[n], legendre_form(o.e_tilde, o.iup, n), 1e-11);
    }
}

TEST(PdfExact, StableAtLargeN) {
    const auto p = pdf_exact({400.0, 2.0});
    EXPECT_EQ(p.n_max, 16000u);
    for (double x : p.probs) {
        EXPECT_TRUE(std::isfinite(x));
        EXPECT_GE(x, 0.0);
        EXPECT_LE(x, 1.0);
    }
    EXPECT_GE(p.total(), 1 - 1e-6);
}

TEST(PdfExact, RejectsInfeasible) {
    EXPECT_THROW(pdf_exact({0.5, 0.3}), InvalidParameter);
    EXPECT_THROW(pdf_exact({1.0, 0.2}), InvalidParameter);
}

TEST(PdfInvariants, NormalizationWithDefaultCutoff) {
    for (const auto& o : feasible_grid()) {
        const auto p = pdf_exact(o);
        EXPECT_EQ(p.n_max, default_n_max(o));
        EXPECT_GE(p.total(), 1 - 1e-6) << o.e_tilde << " " << o.iup;
        EXPECT_LE(p.total(), 1 + 1e-9);
        EXPECT_GE(p.total(), 1 - p.tail_mass_bound - 1e-12);
        for (double x : p.probs) {
            EXPECT_GE(x, 0.0);
            EXPECT_LE(x, 1.0);
        }
    }
}

TEST(PdfInvariants, MomentsMatchObservables) {
    // Moments need a longer cutoff than the probabilities: n^2 weights the tail.
    for (const auto& o : feasible_grid()) {
        const auto p = pdf_exact(o, static_cast<std::size_t>(std::ceil(80 * o.e_tilde)) + 20);
        double mean = 0.0;
        for (std::size_t n = 0; n <= p.n_max; ++n) mean += n * p.probs[n];
        double var = 0.0;
        for (std::size_t n = 0; n <= p.n_max; ++n) var += (n - mean) * (n - mean) * p.probs[n];
        const double want_mean = mean_photon_number(o), want_var = photon_variance(o);
        EXPECT_NEAR(mean, want_mean, 1e-6 * std::max(want_mean, 1e-3)) << o.e_tilde << " " << o.iup;
        EXPECT_NEAR(var, want_var, 1e-6 * std::max(want_var, 1e-3)) << o.e_tilde << " " << o.iup;
    }
}

TEST(PdfAsymptotic, QuasiGeometricRegime) {
    const ModeObservables o{10.0, 4.0};
    const auto ex = pdf_exact(o, 200);
    for (std::size_t n : {50u, 100u, 200u}) {
        const double g = pdf_asymptotic(o, n);
        EXPECT_NEAR(pdf_asymptotic(o, n, AsymptoticForm::QuasiGeometric) / g, 1.0, 1e-3);
        EXPECT_NEAR(g / ex.probs[n], 1.0, 0.2);
    }
}

TEST(PdfAsymptotic, OscillatingRegime) {
    const ModeObservables o{50.0, 0.3};
    const auto ex = pdf_exact(o, 100);
    for (std::size_t n : {20u, 40u}) {
        EXPECT_GT(ex.probs[n] / ex.probs[n + 1], 10.0);
        EXPECT_GT(pdf_asymptotic(o, n) / pdf_asymptotic(o, n + 1), 10.0);
        EXPECT_NEAR(pdf_asymptotic(o, n, AsymptoticForm::Oscillating) / ex.probs[n], 1.0, 0.2);
        EXPECT_NEAR(pdf_asymptotic(o, n) / ex.probs[n], 1.0, 0.2);
    }
    EXPECT_THROW(pdf_asymptotic({20.0, 12.0}, 20, AsymptoticForm::Oscillating), RegimeError);
}

TEST(PdfAsymptotic, TailIgnoresIup) {
    const double e = 20.0;
    for (double d : {5.0, 12.0}) {
        const ModeObservables o{e, d};
        const auto ex = pdf_exact(o, 800);
        for (std::size_t n : {400u, 800u}) {
            ASSERT_GT(n * (4 * d - 1) / (4 * e), 20.0);
            EXPECT_NEAR(pdf_asymptotic(o, n, AsymptoticForm::Tail) / ex.probs[n], 1.0, 0.2) << d << " " << n;
        }
    }
    EXPECT_EQ(pdf_asymptotic({e, 5.0}, 400, AsymptoticForm::Tail), pdf_asymptotic({e, 12.0}, 400, AsymptoticForm::Tail));
}

namespace {
// Mean |asymptotic / exact - 1| over three windows of n in [10, 200].
std::array<double, 3> window_errors(const ModeObservables& o) {
    const auto ex = pdf_exact(o, 200);
    auto err = [&](std::size_t lo, std::size_t hi) {
        double s = 0.0;
        for (std::size_t n = lo; n <= hi; ++n)
            if (ex.probs[n] > 0) s += std::abs(pdf_asymptotic(o, n) / ex.probs[n] - 1);
        return s / static_cast<double>(hi - lo + 1);
    };
    return {err(10, 40), err(80, 120), err(160, 200)};
}
}  // namespace

TEST(PdfAsymptotic, ErrorShrinksWithN) {
    for (const auto& o : {ModeObservables{50.0, 1.0}, ModeObservables{50.0, 0.3}, ModeObservables{100.0, 4.0}}) {
        const auto w = window_errors(o);
        EXPECT_LT(w[1], w[0]) << o.e_tilde << " " << o.iup;
        EXPECT_LT(w[2], w[1]) << o.e_tilde << " " << o.iup;
    }
}

TEST(PdfAsymptotic, ErrorShrinksWithNNearRegimeEdge) {
    // The large-n form carries a fixed relative offset of about -D / (4 E~^2); near E~^2 = 20 D it
    // overtakes the 1/n error before n = 40.
    for (const auto& o : {ModeObservables{10.0, 4.0}, ModeObservables{30.0, 20.0}}) {
        const auto w = window_errors(o);
        EXPECT_LT(w[1], w[0]) << o.e_tilde << " " << o.iup;
        EXPECT_LT(w[2], w[1]) << o.e_tilde << " " << o.iup;
    }
}

TEST(PdfAsymptotic, PreconditionsNamed) {
    expect_message([] { pdf_asymptotic({3.0, 1.0}, 20); }, "E~^2 >= 20 D");
    expect_message([] { pdf_asymptotic({30.0, 1.0}, 9); }, "n >= 10");
    EXPECT_THROW(pdf_asymptotic({0.5, 0.3}, 20), InvalidParameter);
}

TEST(PdfVacuumLongTime, OddCountsVanishAtNodes) {
    const double rho = std::sqrt(2 * kNu - 1);
    const double tau = std::ceil(2 * rho / kPi) * kPi / rho;
    for (std::size_t n = 11; n < 60; n += 2) EXPECT_NEAR(pdf_vacuum_longtime(tau, kNu, n), 0.0, 1e-20);
    for (std::size_t n = 10; n < 60; n += 2) EXPECT_GT(pdf_vacuum_longtime(tau, kNu, n), 0.0);
}

TEST(PdfVacuumLongTime, AgreesWithExact) {
    const ModelParams p{1e-3, 0.0, 0.0, kNu};
    const double tau = 3.0;
    const ModeObservables o{energy_exact_resonance(tau, p, Mode::First), iup_exact_resonance(tau, p, Mode::First)};
    const auto ex = pdf_exact(o);
    for (std::size_t n = 10; n <= static_cast<std::size_t>(o.e_tilde); ++n)
        EXPECT_NEAR(pdf_vacuum_longtime(tau, kNu, n) / ex.probs[n], 1.0, 0.2) << n;
}

TEST(PdfVacuumLongTime, LongTimeLimit) {
    const double tau = 14.0;
    for (std::size_t n = 10; n <= 50; n += 2)
        EXPECT_NEAR(pdf_vacuum_longtime(tau, kNu, n) / (std::exp(-tau) * std::sqrt(8 / (kPi * n))), 1.0, 1e-6);
}

TEST(PdfVacuumLongTime, PreconditionsNamed) {
    expect_message([] { pdf_vacuum_longtime(1.5, kNu, 20); }, "tau >= 2");
    expect_message([] { pdf_vacuum_longtime(3.0, 5.0, 20); }, "nu >= 10");
    expect_message([] { pdf_vacuum_longtime(3.0, kNu, 4); }, "n >= 10");
}
