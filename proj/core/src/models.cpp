#include "intdist/models.hpp"

#include <stdexcept>
#include <string>

namespace intdist {

namespace {

constexpr int kDimerModes = 4;

Eigen::MatrixXd dimer_couplings(double v) {
  Eigen::MatrixXd couplings = Eigen::MatrixXd::Zero(kDimerModes, kDimerModes);
  couplings(0, 1) = couplings(1, 0) = 0.5 * v;
  couplings(2, 3) = couplings(3, 2) = 0.5 * v;
  return couplings;
}

ModelOperators dimer_on(const OccupationBasis& basis, const DimerParams& params) {
  auto free_part = build_quadratic(basis, dimer_kernel(params));
  auto interaction = build_density_density(basis, dimer_couplings(params.v));
  auto hamiltonian = free_part + interaction;
  return {std::move(hamiltonian), std::move(free_part), std::move(interaction)};
}

}  // namespace

State dimer_state_bits(DimerState s) noexcept {
  switch (s) {
    case DimerState::EmptyDouble: return 0b1100;
    case DimerState::UpDown: return 0b1001;
    case DimerState::DownUp: return 0b0110;
    case DimerState::DoubleEmpty: return 0b0011;
  }
  return 0;
}

Eigen::MatrixXd dimer_kernel(const DimerParams& params) {
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(kDimerModes, kDimerModes);
  h(0, 0) = h(1, 1) = params.delta1;
  h(2, 2) = h(3, 3) = params.delta2;
  h(0, 2) = h(2, 0) = -params.t;
  h(1, 3) = h(3, 1) = -params.t;
  return h;
}

ModelOperators hubbard_dimer(const DimerParams& params) {
  const auto basis = OccupationBasis::build(kDimerModes, Sector{2, 0});
  return dimer_on(basis, params);
}

ModelOperators hubbard_dimer_full(const DimerParams& params) {
  return dimer_on(OccupationBasis::build(kDimerModes), params);
}

std::size_t dimer_basis_index(const OccupationBasis& sector_basis, DimerState s) {
  const auto index = sector_basis.index_of(dimer_state_bits(s));
  if (!index) throw std::invalid_argument("basis does not contain the requested dimer state");
  return *index;
}

ChainParams ChainParams::uniform(int n_sites, double t, double mu, double v) {
  if (n_sites < 1) throw std::invalid_argument("chain needs at least one site");
  ChainParams p;
  p.n_sites = n_sites;
  p.hopping = Eigen::MatrixXd::Zero(n_sites, n_sites);
  p.interactions = Eigen::MatrixXd::Zero(n_sites, n_sites);
  p.potentials.assign(static_cast<std::size_t>(n_sites), mu);
  for (int i = 0; i + 1 < n_sites; ++i) {
    p.hopping(i, i + 1) = p.hopping(i + 1, i) = t;
    p.interactions(i, i + 1) = p.interactions(i + 1, i) = 0.5 * v;
  }
  return p;
}

void validate(const ChainParams& params) {
  const int n = params.n_sites;
  if (n < 1 || n > kMaxChainSites) {
    throw std::invalid_argument("n_sites must lie in [1, " + std::to_string(kMaxChainSites) +
                                "], got " + std::to_string(n));
  }
  if (params.hopping.rows() != n || params.hopping.cols() != n) {
    throw std::invalid_argument("hopping must be n_sites x n_sites");
  }
  if (params.interactions.rows() != n || params.interactions.cols() != n) {
    throw std::invalid_argument("interactions must be n_sites x n_sites");
  }
  if (params.potentials.size() != static_cast<std::size_t>(n)) {
    throw std::invalid_argument("potentials must have n_sites entries");
  }
  if (hermiticity_defect(params.hopping) > 1e-12) {
    throw std::invalid_argument("hopping is not symmetric");
  }
  if (hermiticity_defect(params.interactions) > 1e-12) {
    throw std::invalid_argument("interactions are not symmetric");
  }
  if (params.hopping.diagonal().cwiseAbs().maxCoeff() != 0.0) {
    throw std::invalid_argument("hopping diagonal must be zero; use potentials");
  }
}

Eigen::MatrixXd chain_kernel(const ChainParams& params) {
  validate(params);
  Eigen::MatrixXd h = -params.hopping;
  for (int i = 0; i < params.n_sites; ++i) h(i, i) = params.potentials[static_cast<std::size_t>(i)];
  return h;
}

ModelOperators spinless_chain_parts(const ChainParams& params) {
  const auto basis = OccupationBasis::build(params.n_sites);
  auto free_part = build_quadratic(basis, chain_kernel(params));
  auto interaction = build_density_density(basis, params.interactions);
  auto hamiltonian = free_part + interaction;
  return {std::move(hamiltonian), std::move(free_part), std::move(interaction)};
}

ManyBodyOperator spinless_chain(const ChainParams& params) {
  return spinless_chain_parts(params).hamiltonian;
}

}  // namespace intdist
