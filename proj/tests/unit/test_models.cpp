#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "dimer.hpp"
#include "intdist/free_fermion.hpp"
#include "intdist/models.hpp"
#include "intdist/pipeline.hpp"
#include "intdist/spectra.hpp"
#include "ket.hpp"

using namespace intdist;

namespace {

constexpr DimerState kNamed[] = {DimerState::EmptyDouble, DimerState::UpDown, DimerState::DownUp,
                                 DimerState::DoubleEmpty};

// Operator matrix in the named order (0X, ud, du, X0).
Eigen::Matrix4d named(const ManyBodyOperator& op) {
  Eigen::Matrix4d m;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c)
      m(r, c) = op.matrix(dimer_basis_index(op.basis, kNamed[r]), dimer_basis_index(op.basis, kNamed[c]));
  return m;
}

}  // namespace

TEST(HubbardDimer, SectorMatrixMatchesClosedForm) {
  for (double v : {0.0, 0.7, 3.0}) {
    const auto m = named(hubbard_dimer({1, 1, -1, v}).hamiltonian);
    const auto want = oracle::dimer_matrix(v);
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) EXPECT_DOUBLE_EQ(m(r, c), want[r][c]) << v;
  }
}

TEST(HubbardDimer, SectorMatrixMatchesKetOracle) {
  const DimerParams p{0.8, 0.3, -1.2, 1.7};
  const auto ops = hubbard_dimer(p);
  const std::vector<std::uint32_t> states(ops.hamiltonian.basis.states().begin(),
                                          ops.hamiltonian.basis.states().end());
  const Eigen::MatrixXd h = dimer_kernel(p);
  oracle::Matrix k(4, std::vector<double>(4));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) k[i][j] = h(i, j);
  auto want = oracle::quadratic_matrix(states, 4, k);
  oracle::Matrix v(4, std::vector<double>(4, 0.0));
  v[0][1] = v[1][0] = v[2][3] = v[3][2] = p.v / 2;
  oracle::add_density_density(want, states, v);
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) EXPECT_NEAR(ops.hamiltonian.matrix(r, c), want[r][c], 1e-15);
}

TEST(HubbardDimer, FreePointSpectrum) {
  const auto e = exact_diagonalize(hubbard_dimer({}).hamiltonian).energies;
  const double r = 2.0 * std::sqrt(2.0);
  EXPECT_NEAR(e[0], -r, 1e-12);
  EXPECT_NEAR(e[1], 0.0, 1e-12);
  EXPECT_NEAR(e[2], 0.0, 1e-12);
  EXPECT_NEAR(e[3], r, 1e-12);
}

TEST(HubbardDimer, GroundStateCoefficients) {
  const auto ops = hubbard_dimer({});
  const auto gs = ground_state(ops.hamiltonian);
  const auto want = oracle::dimer_ground_coefficients();
  double norm = 0.0;
  for (double c : want) norm += c * c;
  const double sign = gs.vector(dimer_basis_index(ops.hamiltonian.basis, DimerState::DoubleEmpty)) > 0 ? 1 : -1;
  for (int k = 0; k < 4; ++k) {
    EXPECT_NEAR(sign * gs.vector(dimer_basis_index(ops.hamiltonian.basis, kNamed[k])),
                want[k] / std::sqrt(norm), 1e-12);
  }
}

TEST(HubbardDimer, InteractionIsDiagonalOnDoubleOccupancy) {
  const auto m = named(hubbard_dimer({1, 1, -1, 2.5}).interaction);
  EXPECT_TRUE(m.isApprox(Eigen::Vector4d(2.5, 0, 0, 2.5).asDiagonal().toDenseMatrix()));
}

TEST(HubbardDimer, FullSpaceConservesSpinAndContainsSector) {
  const DimerParams p{1, 1, -1, 1.3};
  const auto full = hubbard_dimer_full(p).hamiltonian;
  ASSERT_EQ(full.dim(), 16u);
  for (std::size_t r = 0; r < 16; ++r) {
    for (std::size_t c = 0; c < 16; ++c) {
      const State a = full.basis.state(r), b = full.basis.state(c);
      if (full.matrix(r, c) != 0.0) {
        EXPECT_EQ(twice_spin_z(a, 4), twice_spin_z(b, 4));
        EXPECT_EQ(particle_count(a), particle_count(b));
      }
    }
  }
  const auto sector = hubbard_dimer(p).hamiltonian;
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c)
      EXPECT_EQ(sector.matrix(r, c), full.matrix(*full.basis.index_of(sector.basis.state(r)),
                                                 *full.basis.index_of(sector.basis.state(c))));
}

TEST(HubbardDimer, BasisIndexRejectsForeignBasis) {
  EXPECT_THROW(dimer_basis_index(OccupationBasis::build(4, Sector{1, {}}), DimerState::UpDown),
               std::invalid_argument);
}

TEST(SpinlessChain, TwoSiteSpectrum) {
  const auto e = exact_diagonalize(spinless_chain(ChainParams::uniform(2, 1.0)), false).energies;
  ASSERT_EQ(e.size(), 4u);
  EXPECT_NEAR(e[0], -1.0, 1e-12);
  EXPECT_NEAR(e[1], 0.0, 1e-12);
  EXPECT_NEAR(e[2], 0.0, 1e-12);
  EXPECT_NEAR(e[3], 1.0, 1e-12);
}

TEST(SpinlessChain, AllZeroParametersGiveZeroOperator) {
  const auto h = spinless_chain(ChainParams::uniform(4, 0.0));
  EXPECT_EQ(h.matrix.cwiseAbs().maxCoeff(), 0.0);
}

TEST(SpinlessChain, FreeChainMatchesKernelSpectrum) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  auto p = ChainParams::uniform(5, 1.0);
  for (int i = 0; i < 5; ++i) p.potentials[i] = u(rng);
  auto want = free_many_body_spectrum(FreeSpectrumParams(0.0, diagonalize_kernel(chain_kernel(p))));
  std::sort(want.begin(), want.end());
  const auto got = exact_diagonalize(spinless_chain(p), false).energies;
  for (std::size_t k = 0; k < want.size(); ++k) EXPECT_NEAR(got[k], want[k], 1e-9);
}

TEST(SpinlessChain, RandomFreeChainHasZeroThermalDistance) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  auto p = ChainParams::uniform(3, 0.0);
  for (int i = 0; i < 3; ++i) {
    p.potentials[i] = u(rng);
    for (int j = 0; j < i; ++j) p.hopping(i, j) = p.hopping(j, i) = u(rng);
  }
  EXPECT_LE(thermal_distance(spinless_chain(p), 1.0).value, 1e-6);
}

TEST(SpinlessChain, InteractionsAreNearestNeighbour) {
  const auto ops = spinless_chain_parts(ChainParams::uniform(3, 1.0, 0.0, 2.0));
  const auto& m = ops.interaction.matrix;
  EXPECT_DOUBLE_EQ(m(0b011, 0b011), 2.0);
  EXPECT_DOUBLE_EQ(m(0b101, 0b101), 0.0);
  EXPECT_DOUBLE_EQ(m(0b111, 0b111), 4.0);
}

TEST(SpinlessChain, ValidationErrors) {
  EXPECT_THROW(ChainParams::uniform(0, 1.0), std::invalid_argument);
  auto p = ChainParams::uniform(kMaxChainSites + 1, 1.0);
  EXPECT_THROW(spinless_chain(p), std::invalid_argument);
  auto q = ChainParams::uniform(3, 1.0);
  q.hopping(0, 1) = 2.0;
  EXPECT_THROW(spinless_chain(q), std::invalid_argument);
  auto r = ChainParams::uniform(3, 1.0);
  r.potentials.pop_back();
  EXPECT_THROW(spinless_chain(r), std::invalid_argument);
}
