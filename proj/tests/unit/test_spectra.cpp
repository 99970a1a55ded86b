#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "intdist/fock.hpp"
#include "intdist/spectra.hpp"
#include "jacobi.hpp"
#include "partial_trace.hpp"

using namespace intdist;

namespace {

std::vector<double> random_state(std::size_t dim, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::vector<double> psi(dim);
  double norm = 0.0;
  for (double& x : psi) {
    x = g(rng);
    norm += x * x;
  }
  for (double& x : psi) x /= std::sqrt(norm);
  return psi;
}

}  // namespace

TEST(ExactDiagonalize, MatchesJacobiOracle) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const auto basis = OccupationBasis::build(3);
  Eigen::MatrixXd h(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j <= i; ++j) h(i, j) = h(j, i) = u(rng);
  Eigen::MatrixXd v = Eigen::MatrixXd::Zero(3, 3);
  v(0, 2) = v(2, 0) = 0.8;
  const auto op = build_quadratic(basis, h) + build_density_density(basis, v);
  oracle::Matrix m(8, std::vector<double>(8));
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) m[i][j] = op.matrix(i, j);
  const auto want = oracle::jacobi_eigenvalues(m);
  const auto got = exact_diagonalize(op);
  for (int k = 0; k < 8; ++k) EXPECT_NEAR(got.energies[k], want[k], 1e-12);

  const auto& vec = got.eigenvectors();
  const Eigen::MatrixXd residual = op.matrix * vec - vec * Eigen::Map<const Eigen::VectorXd>(
                                                         got.energies.data(), 8).asDiagonal();
  EXPECT_LT(residual.cwiseAbs().maxCoeff(), 1e-10);
}

TEST(ExactDiagonalize, VectorsOnRequestOnly) {
  const auto op = build_quadratic(OccupationBasis::build(2), Eigen::MatrixXd::Identity(2, 2));
  const auto e = exact_diagonalize(op, false);
  EXPECT_FALSE(e.vectors);
  EXPECT_THROW(e.eigenvectors(), std::logic_error);
}

TEST(ThermalProbabilities, ShiftInvariantAndStable) {
  const std::vector<double> e{1000.0, 1001.0, 1003.0};
  const auto p = thermal_probabilities(e, 50.0);
  EXPECT_NEAR(p[0], 1.0 / (1.0 + std::exp(-50.0) + std::exp(-150.0)), 1e-15);
  const std::vector<double> shifted{0.0, 1.0, 3.0};
  const auto q = thermal_probabilities(shifted, 50.0);
  for (std::size_t k = 0; k < 3; ++k) EXPECT_DOUBLE_EQ(p[k], q[k]);
  EXPECT_THROW(thermal_probabilities(e, 0.0), std::invalid_argument);
  EXPECT_THROW(thermal_probabilities(std::vector<double>{}, 1.0), std::invalid_argument);
}

TEST(ThermalProbabilities, InfiniteTemperatureLimitIsUniform) {
  const std::vector<double> e{-1.0, 0.0, 2.0, 5.0};
  const auto p = thermal_probabilities(e, 1e-12);
  for (double x : p.probs()) EXPECT_NEAR(x, 0.25, 1e-11);
}

TEST(ReducedDensity, MatchesPartialTraceOracleForRandomStates) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 2 + trial % 5;
    const auto basis = OccupationBasis::build(n);
    const auto psi = random_state(basis.size(), rng);
    std::vector<int> modes(n);
    std::iota(modes.begin(), modes.end(), 0);
    std::shuffle(modes.begin(), modes.end(), rng);
    const int size_a = 1 + static_cast<int>(rng() % (n - 1));
    std::vector<int> region(modes.begin(), modes.begin() + size_a);

    const auto got = reduced_density_spectrum(psi, basis, region);
    const std::vector<std::uint32_t> states(basis.states().begin(), basis.states().end());
    const auto want = oracle::entanglement_spectrum(psi, states, n, region);
    ASSERT_EQ(got.size(), want.size());
    for (std::size_t k = 0; k < want.size(); ++k) EXPECT_NEAR(got[k], want[k], 1e-12);
  }
}

TEST(ReducedDensity, ParitySectorStateWithNonPrefixRegion) {
  // Fixed-particle-number states exercise the reordering signs.
  std::mt19937_64 rng(23);
  const auto basis = OccupationBasis::build(6, Sector{3, {}});
  const auto psi = random_state(basis.size(), rng);
  const std::vector<int> region{1, 4, 5};
  const auto got = reduced_density_spectrum(psi, basis, region);
  const std::vector<std::uint32_t> states(basis.states().begin(), basis.states().end());
  const auto want = oracle::entanglement_spectrum(psi, states, 6, region);
  for (std::size_t k = 0; k < want.size(); ++k) EXPECT_NEAR(got[k], want[k], 1e-12);
}

TEST(ReducedDensity, SumsToOneAndPadsToRegionDimension) {
  std::mt19937_64 rng(29);
  const auto basis = OccupationBasis::build(5);
  const auto psi = random_state(basis.size(), rng);
  const auto s = reduced_density_spectrum(psi, basis, {0, 1, 2, 3});
  EXPECT_EQ(s.size(), 16u);
  EXPECT_NEAR(std::accumulate(s.probs().begin(), s.probs().end(), 0.0), 1.0, 1e-12);
}

TEST(ReducedDensity, RejectsBadRegions) {
  const auto basis = OccupationBasis::build(3);
  const std::vector<double> psi(8, 1.0 / std::sqrt(8.0));
  EXPECT_THROW(reduced_density_spectrum(psi, basis, {0, 0}), std::invalid_argument);
  EXPECT_THROW(reduced_density_spectrum(psi, basis, {3}), std::invalid_argument);
  EXPECT_THROW(reduced_density_spectrum(std::vector<double>(4, 0.5), basis, {0}),
               std::invalid_argument);
}

TEST(DiagonalizeBlocks, ParticleSectorsOfAChain) {
  Eigen::MatrixXd hop = Eigen::MatrixXd::Zero(5, 5);
  for (int i = 0; i < 4; ++i) hop(i, i + 1) = hop(i + 1, i) = -1.0;
  const auto op = build_quadratic(OccupationBasis::build(5), hop);
  const auto blocks = diagonalize_blocks(op, false);
  ASSERT_EQ(blocks.size(), 6u);
  std::vector<std::size_t> sizes;
  for (const auto& b : blocks) sizes.push_back(b.indices.size());
  std::sort(sizes.begin(), sizes.end());
  EXPECT_EQ(sizes, (std::vector<std::size_t>{1, 1, 5, 5, 10, 10}));
}

TEST(DiagonalizeBlocks, AgreesWithUnblockedSolve) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const auto basis = OccupationBasis::build(6);
  Eigen::MatrixXd h(6, 6), v = Eigen::MatrixXd::Zero(6, 6);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j <= i; ++j) h(i, j) = h(j, i) = u(rng);
  for (int i = 0; i < 5; ++i) v(i, i + 1) = v(i + 1, i) = 0.7;
  const auto op = build_quadratic(basis, h) + build_density_density(basis, v);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> dense(op.matrix);
  const auto got = exact_diagonalize(op);
  for (std::size_t k = 0; k < got.size(); ++k) EXPECT_NEAR(got.energies[k], dense.eigenvalues()(k), 1e-11);
  const auto& vec = got.eigenvectors();
  EXPECT_LT((vec.transpose() * vec - Eigen::MatrixXd::Identity(64, 64)).cwiseAbs().maxCoeff(), 1e-12);
  const Eigen::MatrixXd residual =
      op.matrix * vec - vec * Eigen::Map<const Eigen::VectorXd>(got.energies.data(), 64).asDiagonal();
  EXPECT_LT(residual.cwiseAbs().maxCoeff(), 1e-10);
}

TEST(DiagonalizeBlocks, CapAndShapeErrors) {
  const auto basis = OccupationBasis::build(15);
  EXPECT_THROW(diagonalize_blocks(ManyBodyOperator{basis, Eigen::MatrixXd()}, false),
               std::invalid_argument);
  const auto small = OccupationBasis::build(2);
  EXPECT_THROW(exact_diagonalize(ManyBodyOperator{small, Eigen::MatrixXd::Zero(3, 3)}),
               std::invalid_argument);
}
