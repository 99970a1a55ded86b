#include <cmath>

#include <gtest/gtest.h>

#include "intdist/pipeline.hpp"
#include "intdist/spectra.hpp"

using namespace intdist;

TEST(GroundState, DimerEnergyAndGap) {
  const auto gs = ground_state(hubbard_dimer({}).hamiltonian);
  EXPECT_NEAR(gs.energy, -2 * std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(gs.gap, 2 * std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(gs.vector.norm(), 1.0, 1e-12);
}

TEST(GroundState, DegenerateThrows) {
  const auto op = build_quadratic(OccupationBasis::build(2), Eigen::MatrixXd::Zero(2, 2));
  EXPECT_THROW(ground_state(op), std::runtime_error);
}

TEST(EmbedState, PlacesAmplitudes) {
  const auto sector = OccupationBasis::build(2, Sector{1, {}});
  const auto full = OccupationBasis::build(2);
  const auto out = embed_state(Eigen::Vector2d(0.6, 0.8), sector, full);
  EXPECT_EQ(out(0b01), 0.6);
  EXPECT_EQ(out(0b10), 0.8);
  EXPECT_EQ(out(0), 0.0);
  EXPECT_THROW(embed_state(Eigen::Vector4d::Zero(), full, sector), std::invalid_argument);
}

TEST(DimerPipeline, FreePointDistancesVanish) {
  EXPECT_LE(dimer_thermal_distance({}, 1.0).value, 1e-8);
  EXPECT_LE(dimer_entanglement_distance({}).value, 1e-8);
}

TEST(DimerPipeline, FreePointEntanglementSpectrum) {
  const auto s = dimer_entanglement_spectrum({});
  const double r = std::sqrt(2.0);
  EXPECT_NEAR(s[0], (3 + 2 * r) / 8, 1e-10);
  EXPECT_NEAR(s[1], 0.125, 1e-10);
  EXPECT_NEAR(s[2], 0.125, 1e-10);
  EXPECT_NEAR(s[3], (3 - 2 * r) / 8, 1e-10);
}

TEST(DimerPipeline, ThermalPeakNearCrossing) {
  double best = -1.0, at = 0.0;
  for (int i = 0; i <= 60; ++i) {
    const double v = 0.1 * i;
    const double d = dimer_thermal_distance({1, 1, -1, v}, 1.0).value;
    if (d > best) best = d, at = v;
  }
  EXPECT_GE(at, 1.5);
  EXPECT_LE(at, 3.0);
  EXPECT_LE(best, df_upper_bound());
}

TEST(ChainPipeline, HalfRegion) {
  EXPECT_EQ(chain_half_region(6), (std::vector<int>{0, 1, 2}));
  EXPECT_EQ(chain_half_region(5), (std::vector<int>{0, 1}));
}

TEST(ChainPipeline, FreeChainEntanglementIsFree) {
  const auto h = spinless_chain(ChainParams::uniform(6, 1.0));
  EXPECT_LE(entanglement_distance(h, chain_half_region(6)).value, 1e-6);
  EXPECT_LE(entanglement_distance(h, {0}).value, 1e-6);
}

TEST(ChainPipeline, InteractingChainIsNotFree) {
  const auto h = spinless_chain(ChainParams::uniform(6, 1.0, 0.0, 2.0));
  EXPECT_GT(entanglement_distance(h, chain_half_region(6)).value, 1e-4);
}
