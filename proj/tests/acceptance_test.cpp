#include <gtest/gtest.h>

#include "casimir_duomode/acceptance.hpp"

using namespace casimir_duomode::acceptance;

namespace {
void check(int id) {
    const CriterionResult r = run_one(id);
    for (const auto& d : r.details) std::cout << "    " << d << '\n';
    EXPECT_TRUE(r.pass) << "criterion " << id << ": " << r.name;
}
}  // namespace

TEST(Acceptance, C01_EigenvalueClosedForms) { check(1); }
TEST(Acceptance, C02_ExactResonanceIncrement) { check(2); }
TEST(Acceptance, C03_OracleVsClosedFormEnergies) { check(3); }
TEST(Acceptance, C04_UpperModulationIrrelevance) { check(4); }
TEST(Acceptance, C05_FundamentalMatrixPathEquivalence) { check(5); }
TEST(Acceptance, C06_PurityExchange) { check(6); }
TEST(Acceptance, C07_VacuumNearPurity) { check(7); }
TEST(Acceptance, C08_PhotonDistributionIntegrity) { check(8); }
TEST(Acceptance, C09_AsymptoticPhotonDistribution) { check(9); }
TEST(Acceptance, C10_AsymmetricGeneration) { check(10); }
TEST(Acceptance, C11_ResonanceMap) { check(11); }
TEST(Acceptance, C12_FigureRegeneration) { check(12); }
