#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "intdist/probability_spectrum.hpp"

using namespace intdist;

TEST(ProbabilitySpectrum, SortsDescending) {
  const auto p = ProbabilitySpectrum::from_probabilities({0.1, 0.6, 0.3}, ThermalOrigin{1.0});
  EXPECT_EQ(p[0], 0.6);
  EXPECT_EQ(p[1], 0.3);
  EXPECT_EQ(p[2], 0.1);
}

TEST(ProbabilitySpectrum, ClampsRoundoffNegatives) {
  const auto p = ProbabilitySpectrum::from_probabilities({1.0, -5e-15}, ThermalOrigin{1.0});
  EXPECT_EQ(p[1], 0.0);
}

TEST(ProbabilitySpectrum, RejectsNegativeAndUnnormalized) {
  EXPECT_THROW(ProbabilitySpectrum::from_probabilities({1.1, -0.1}, ThermalOrigin{1.0}),
               std::invalid_argument);
  EXPECT_THROW(ProbabilitySpectrum::from_probabilities({0.5, 0.4}, ThermalOrigin{1.0}),
               std::invalid_argument);
  EXPECT_THROW(ProbabilitySpectrum::from_probabilities(
                   {std::numeric_limits<double>::quiet_NaN(), 1.0}, ThermalOrigin{1.0}),
               std::invalid_argument);
}

TEST(ProbabilitySpectrum, WeightsAreNormalized) {
  const auto p = ProbabilitySpectrum::from_weights({2.0, 6.0}, EntanglementOrigin{{0}});
  EXPECT_DOUBLE_EQ(p[0], 0.75);
  EXPECT_DOUBLE_EQ(p[1], 0.25);
  EXPECT_TRUE(std::holds_alternative<EntanglementOrigin>(p.origin()));
  EXPECT_THROW(ProbabilitySpectrum::from_weights({0.0, 0.0}, ThermalOrigin{1.0}),
               std::invalid_argument);
}

TEST(ProbabilitySpectrum, EnergiesAreMinusLog) {
  const auto p = ProbabilitySpectrum::from_probabilities({0.5, 0.5, 0.0}, ThermalOrigin{1.0});
  const auto e = p.energies();
  EXPECT_DOUBLE_EQ(e[0], std::log(2.0));
  EXPECT_TRUE(std::isinf(e[2]));
}

TEST(ProbabilitySpectrum, PaddingAppendsZeros) {
  const auto p = ProbabilitySpectrum::from_probabilities({0.7, 0.3}, ThermalOrigin{1.0});
  const auto q = p.padded(2);
  ASSERT_EQ(q.size(), 4u);
  EXPECT_EQ(q[0], 0.7);
  EXPECT_EQ(q[3], 0.0);
  EXPECT_EQ(p.padded(0).size(), 2u);
}
