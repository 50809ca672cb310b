#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "casimir_duomode/evolution.hpp"
#include "casimir_duomode/gaussian.hpp"

using namespace casimir_duomode;

namespace {
constexpr double kNu = 50.0 / 3.0;
const double kPi = std::numbers::pi;

ModelParams resonance(double nu = kNu, double theta1 = 1.0, double theta3 = 1.0) {
    return {1e-3, 0.0, 0.0, nu, theta1, theta3};
}

ModelParams asymmetric(double nu = kNu, double theta1 = 1.0, double theta3 = 1.0) {
    return ModelParams::normalized(1e-3, 1.0, 3.0 - 0.5 * nu, nu, theta1, theta3);
}

double quarter_swing(double nu) { return 0.5 * kPi / std::sqrt(2.0 * nu - 1.0); }

// Rotates mode k's (x, p) by fast phase phi.
CovarianceState rotate(const CovarianceState& s, Mode mode, double phi) {
    const int k = harmonic(mode);
    const int r = mode == Mode::First ? 0 : 2;
    Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
    m(r, r) = std::cos(phi);
    m(r, r + 1) = std::sin(phi) / k;
    m(r + 1, r) = -k * std::sin(phi);
    m(r + 1, r + 1) = std::cos(phi);
    return {m * s.sigma * m.transpose()};
}
}  // namespace

TEST(Observables, Vacuum) {
    const auto o = observables_from_covariance(thermal_covariance(1, 1), Mode::First);
    EXPECT_DOUBLE_EQ(o.e_tilde, 0.5);
    EXPECT_DOUBLE_EQ(o.iup, 0.25);
}

TEST(Observables, ThermalUpperMode) {
    const auto o = observables_from_covariance(thermal_covariance(1, 4.0), Mode::Third);
    EXPECT_DOUBLE_EQ(o.e_tilde, 2.0);
    EXPECT_DOUBLE_EQ(o.iup, 4.0);
}

TEST(Observables, SqueezedSingleMode) {
    const double r = 0.8;
    CovarianceState s;
    s.sigma.diagonal() << 0.5 * std::exp(-2 * r), 0.5 * std::exp(2 * r), 1.0 / 6.0, 1.5;
    const auto o = observables_from_covariance(s, Mode::First);
    EXPECT_NEAR(o.e_tilde, 0.5 * std::cosh(2 * r), 1e-15);
    EXPECT_NEAR(o.iup, 0.25, 1e-15);
}

TEST(EnergyExactResonance, InitialThermal) {
    const auto p = resonance(kNu, 4.0, 2.5);
    EXPECT_DOUBLE_EQ(energy_exact_resonance(0.0, p, Mode::First), 2.0);
    EXPECT_DOUBLE_EQ(energy_exact_resonance(0.0, p, Mode::Third), 3.75);
}

TEST(EnergyExactResonance, VacuumStrongCoupling) {
    const double nu = 1e4;
    const auto p = resonance(nu);
    for (double tau : {0.5, 1.0, 2.5}) {
        EXPECT_NEAR(energy_exact_resonance(tau, p, Mode::First) / (0.5 * std::cosh(2 * tau)), 1.0, 2.0 / std::sqrt(nu));
        EXPECT_NEAR(energy_exact_resonance(tau, p, Mode::Third) / (1.5 * std::cosh(2 * tau)), 1.0, 2.0 / std::sqrt(nu));
    }
}

TEST(EnergyExactResonance, HotLowerModeOscillates) {
    const double nu = 1e4;
    const auto p = resonance(nu, 300.0, 100.0);
    for (double tau : {0.7, 1.3, 2.2}) {
        const double s2 = std::pow(std::sin(std::sqrt(2 * nu - 1) * tau), 2);
        const double base = 150.0 * std::cosh(2 * tau);
        EXPECT_NEAR(energy_exact_resonance(tau, p, Mode::First) / (base * (1 - 2.0 / 3.0 * s2)), 1.0, 0.02);
        EXPECT_NEAR(energy_exact_resonance(tau, p, Mode::Third) / (base * (1 + 2 * s2)), 1.0, 0.02);
    }
}

TEST(EnergyExactResonance, RejectsWeakCoupling) {
    EXPECT_THROW(energy_exact_resonance(1.0, resonance(0.5), Mode::First), RegimeError);
    EXPECT_THROW(iup_exact_resonance(1.0, resonance(0.4), Mode::Third), RegimeError);
}

TEST(EnergyAsymmetric, InitialThermalExact) {
    const auto p = asymmetric(kNu, 3.0, 2.0);
    EXPECT_DOUBLE_EQ(energy_asymmetric(0.0, p, Mode::First), 1.5);
    EXPECT_DOUBLE_EQ(energy_asymmetric(0.0, p, Mode::Third), 3.0);
}

TEST(EnergyAsymmetric, UpperToLowerRatio) {
    for (double nu : {kNu, 50.0, 200.0}) {
        const auto p = asymmetric(nu);
        const double r = energy_asymmetric(8.0, p, Mode::Third) / energy_asymmetric(8.0, p, Mode::First);
        EXPECT_NEAR(r, 6.0 / nu, 3.0 / nu);
    }
    // nu = 50/3: upper mode about three times weaker.
    const auto p = asymmetric();
    const double r = energy_asymmetric(8.0, p, Mode::Third) / energy_asymmetric(8.0, p, Mode::First);
    EXPECT_GT(r, 0.25);
    EXPECT_LT(r, 0.5);
}

TEST(EnergyAsymmetric, RejectsOutsideRegime) {
    EXPECT_THROW(energy_asymmetric(1.0, resonance(), Mode::First), RegimeError);
    EXPECT_THROW(iup_asymmetric(1.0, resonance(), Mode::First), RegimeError);
}

TEST(IupExactResonance, VacuumNodes) {
    const auto p = resonance();
    const double rho = std::sqrt(2 * kNu - 1);
    for (int m : {1, 2, 5}) {
        EXPECT_NEAR(iup_exact_resonance(m * kPi / rho, p, Mode::First), 0.25, 1e-14);
        EXPECT_NEAR(iup_exact_resonance(m * kPi / rho, p, Mode::Third), 0.25, 1e-14);
    }
}

TEST(IupExactResonance, VacuumPeak) {
    const auto p = resonance();
    const double peak = 0.25 * (1 + 8 * kNu / std::pow(2 * kNu - 1, 2));
    EXPECT_NEAR(iup_exact_resonance(quarter_swing(kNu), p, Mode::First), peak, 1e-14);
    EXPECT_NEAR(iup_exact_resonance(quarter_swing(kNu), p, Mode::Third), peak, 1e-14);
}

TEST(IupExactResonance, StrongCouplingMixture) {
    const double nu = 1e4;
    const auto p = resonance(nu, 4.0, 2.0);
    const double rho = std::sqrt(2 * nu - 1);
    for (double tau : {0.1, 0.37, 1.2}) {
        const double c2 = std::pow(std::cos(rho * tau), 2), s2 = 1 - c2;
        EXPECT_NEAR(iup_exact_resonance(tau, p, Mode::First) / (0.25 * std::pow(4 * c2 + 2 * s2, 2)), 1.0, 0.02);
    }
    EXPECT_NEAR(iup_exact_resonance(quarter_swing(nu), p, Mode::First), 1.0, 1e-3);
}

TEST(IupExactResonance, MatchesPropagation) {
    const auto p = resonance(kNu, 2.0, 1.5);
    const auto s0 = thermal_covariance(p.theta1, p.theta3);
    for (double tau : {0.2, 0.9, 1.6}) {
        const auto s = propagate_covariance(fundamental_matrix_exact_resonance(fast_time(tau, p.epsilon), p), s0);
        EXPECT_NEAR(observables_from_covariance(s, Mode::Third).iup / iup_exact_resonance(tau, p, Mode::Third), 1.0, 1e-10);
    }
}

TEST(PurityExchange, ConsistentThermalPairs) {
    for (double theta1 : {3.0, 5.0}) {
        const double theta3 = theta1 * theta31_from_theta1(theta1);
        const auto p = resonance(kNu, theta1, theta3);
        const double tau = quarter_swing(kNu);
        const double pur1 = purity(iup_exact_resonance(tau, p, Mode::First));
        const double pur3 = purity(iup_exact_resonance(tau, p, Mode::Third));
        EXPECT_NEAR(pur1 * theta3, 1.0, 2.0 / kNu) << "theta1 = " << theta1;
        EXPECT_NEAR(pur3 * theta1, 1.0, 2.0 / kNu) << "theta1 = " << theta1;
        // Closed form for the purity at the swing point.
        EXPECT_NEAR(pur1, (2 * kNu - 1) / (2 * kNu * theta3 + theta1), 1e-12);
    }
}

TEST(PurityExchange, LargeNuLimit) {
    const double nu = 1e4;
    const auto p = resonance(nu, 5.0, 2.0);
    const double tau = quarter_swing(nu);
    EXPECT_NEAR(purity(iup_exact_resonance(tau, p, Mode::First)) * 2.0, 1.0, 2.0 / nu);
    EXPECT_NEAR(purity(iup_exact_resonance(tau, p, Mode::Third)) * 5.0, 1.0, 2.0 / nu);
}

TEST(IupAsymmetric, InitialThermal) {
    const auto p = asymmetric(kNu, 3.0, 2.0);
    EXPECT_DOUBLE_EQ(iup_asymmetric(0.0, p, Mode::First), 2.25);
    EXPECT_DOUBLE_EQ(iup_asymmetric(0.0, p, Mode::Third), 1.0);
}

TEST(IupAsymmetric, LongTimeMixedState) {
    const double nu = kNu, tau = 5.0;
    const auto p = asymmetric(nu, 3.0, 2.0);
    const double R = asymmetric_rates(nu).R;
    const double want = 6.0 * std::exp(4 * R * tau) / (2 * nu);
    EXPECT_NEAR(iup_asymmetric(tau, p, Mode::First) / want, 1.0, 1e-3);
    EXPECT_NEAR(iup_asymmetric(tau, p, Mode::Third) / want, 1.0, 1e-3);
}

TEST(IupAsymmetric, MatchesPropagation) {
    const auto p = asymmetric();
    const double tau = 1.0;
    const auto s = propagate_covariance(fundamental_matrix_asymmetric(fast_time(tau, p.epsilon), p), thermal_covariance(1, 1));
    EXPECT_NEAR(observables_from_covariance(s, Mode::First).iup / iup_asymmetric(tau, p, Mode::First), 1.0, 2.0 / kNu);
    EXPECT_NEAR(observables_from_covariance(s, Mode::Third).iup / iup_asymmetric(tau, p, Mode::Third), 1.0, 2.0 / kNu);
}

TEST(Purity, Examples) {
    EXPECT_DOUBLE_EQ(purity(0.25), 1.0);
    EXPECT_DOUBLE_EQ(purity(25.0 / 4.0), 0.2);
    for (double theta : {1.5, 3.0, 40.0}) EXPECT_NEAR(purity(theta * theta / 4), 1 / theta, 1e-15);
    EXPECT_THROW(purity(0.24), InvalidParameter);
}

TEST(Squeezing, ThermalGivesTheta) {
    for (double theta : {1.0, 2.0, 7.5}) EXPECT_DOUBLE_EQ(squeezing({theta / 2, theta * theta / 4}), theta);
}

TEST(Squeezing, LargeEnergyLimit) {
    const ModeObservables o{1e4, 3.0};
    EXPECT_NEAR(squeezing(o) / (o.iup / o.e_tilde), 1.0, 1e-7);
}

TEST(Squeezing, AsymmetricAsymptote) {
    const double nu = 100.0, theta3 = 2.0;
    const auto p = asymmetric(nu, 1.5, theta3);
    const double tau = 6.0;
    const ModeObservables o{energy_asymmetric(tau, p, Mode::First), iup_asymmetric(tau, p, Mode::First)};
    EXPECT_NEAR(squeezing(o) / (2 * theta3 / nu), 1.0, 3.0 / nu);
}

TEST(Squeezing, RejectsInfeasible) {
    EXPECT_THROW(squeezing({0.5, 0.3}), InvalidParameter);
    EXPECT_THROW(require_feasible({0.5, 0.3}), InvalidParameter);
    EXPECT_THROW(require_feasible({0.4, 0.2}), InvalidParameter);
    EXPECT_NO_THROW(require_feasible({1.0, 1.0}));
}

TEST(Squeezing, InvariantUnderFastRotation) {
    const auto p = ModelParams::normalized(1e-3, 0.4, 2.0, kNu, 2.0, 1.0);
    const auto s = propagate_covariance(fundamental_matrix_generic(fast_time(1.3, p.epsilon), p), thermal_covariance(2, 1));
    for (Mode m : {Mode::First, Mode::Third}) {
        const double s0 = squeezing(observables_from_covariance(s, m));
        for (double phi : {0.3, 1.1, 2.9}) {
            const auto r = rotate(s, m, phi);
            const int idx = m == Mode::First ? 0 : 2;
            EXPECT_GT(std::abs(r.sigma(idx, idx) - s.sigma(idx, idx)), 1e-6);
            EXPECT_NEAR(squeezing(observables_from_covariance(r, m)), s0, 1e-12 * s0);
        }
    }
}

TEST(Squeezing, MatchesMinimumQuadratureOverPeriod) {
    // s = min over one fast period of <x^2>, relative to the vacuum value 1/(2k).
    const auto p = ModelParams::normalized(1e-3, 0.0, 0.0, kNu);
    const auto s = propagate_covariance(fundamental_matrix_generic(fast_time(1.7, p.epsilon), p), thermal_covariance(1, 1));
    for (Mode m : {Mode::First, Mode::Third}) {
        const int k = harmonic(m);
        const int idx = m == Mode::First ? 0 : 2;
        auto var = [&](double phi) { return rotate(s, m, phi).sigma(idx, idx); };
        double at = 0.0;
        for (int j = 1; j < 20000; ++j)
            if (var(kPi * j / 20000.0) < var(at)) at = kPi * j / 20000.0;
        double best = var(at);
        // Second pass around the coarse minimum.
        for (int j = -1000; j <= 1000; ++j) best = std::min(best, var(at + kPi * j / 2e7));
        const double want = squeezing(observables_from_covariance(s, m));
        EXPECT_NEAR(best * 2.0 * k / want, 1.0, 1e-6);
    }
}

TEST(PhotonVariance, Examples) {
    EXPECT_DOUBLE_EQ(photon_variance({0.5, 0.25}), 0.0);
    for (double theta : {1.0, 3.0, 11.0}) {
        const double n = (theta - 1) / 2;
        EXPECT_NEAR(photon_variance({theta / 2, theta * theta / 4}), n * (n + 1), 1e-12);
    }
    const auto p = resonance();
    const double tau = 4.0;
    const ModeObservables o{energy_exact_resonance(tau, p, Mode::First), iup_exact_resonance(tau, p, Mode::First)};
    EXPECT_NEAR(photon_variance(o) / mean_photon_number(o) / (2 * o.e_tilde), 1.0, 0.01);
}
