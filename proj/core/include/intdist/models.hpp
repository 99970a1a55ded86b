#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "intdist/fock.hpp"

namespace intdist {

/// Two-site Fermi-Hubbard model. Defaults give t = 1, Delta_1 = -Delta_2 = 1.
struct DimerParams {
  double t = 1.0;
  double delta1 = 1.0;
  double delta2 = -1.0;
  double v = 0.0;
};

/// The four N = 2, S_z = 0 dimer states. X marks a doubly occupied site.
enum class DimerState { EmptyDouble, UpDown, DownUp, DoubleEmpty };

/// Bitstring of a dimer state. Site j owns modes 2j (up) and 2j+1 (down).
State dimer_state_bits(DimerState s) noexcept;

/// Operators for perturbation work: H = free_part + interaction.
struct ModelOperators {
  ManyBodyOperator hamiltonian;
  ManyBodyOperator free_part;
  ManyBodyOperator interaction;
};

/// Dimer restricted to N = 2, S_z = 0. The basis is stored in ascending
/// bitstring order; use dimer_basis_index to address |0X>, |ud>, |du>, |X0>.
ModelOperators hubbard_dimer(const DimerParams& params);

/// Dimer on the full 16-state Fock space.
ModelOperators hubbard_dimer_full(const DimerParams& params);

/// Position of a named dimer state in the sector basis from hubbard_dimer.
std::size_t dimer_basis_index(const OccupationBasis& sector_basis, DimerState s);

/// 4x4 single-particle kernel of the dimer in mode order (1up, 1dn, 2up, 2dn).
Eigen::MatrixXd dimer_kernel(const DimerParams& params);

/// Spinless chain with hopping, on-site potentials and density-density terms.
///
/// H = sum_{i!=j} -t_ij c_i^+ c_j + sum_i mu_i n_i + sum_{ij} V_ij n_i n_j.
/// The V sum runs over ordered pairs, so a bond energy U n_i n_j needs
/// V_ij = V_ji = U/2.
struct ChainParams {
  int n_sites = 0;
  Eigen::MatrixXd hopping;       // t_ij, symmetric, zero diagonal
  std::vector<double> potentials;  // mu_i
  Eigen::MatrixXd interactions;  // V_ij, symmetric

  /// Open chain with uniform nearest-neighbour hopping t, potential mu and
  /// bond interaction v * n_i n_{i+1}.
  static ChainParams uniform(int n_sites, double t, double mu = 0.0, double v = 0.0);
};

inline constexpr int kMaxChainSites = 14;

/// Validates shapes and symmetry; throws std::invalid_argument.
void validate(const ChainParams& params);

/// Single-particle kernel h = -t + diag(mu).
Eigen::MatrixXd chain_kernel(const ChainParams& params);

/// Full Fock-space chain Hamiltonian.
ManyBodyOperator spinless_chain(const ChainParams& params);

/// Chain split into its quadratic part and the density-density part.
ModelOperators spinless_chain_parts(const ChainParams& params);

}  // namespace intdist
