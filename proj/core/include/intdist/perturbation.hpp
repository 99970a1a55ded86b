#pragma once

#include <array>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "intdist/fock.hpp"
#include "intdist/spectra.hpp"

namespace intdist {

/// First-order split of the perturbed spectrum into a free part and a
/// residual: E_k = vacuum_energy + sum_j eps~_j n_j(k) + dE_k.
///
/// All per-level vectors are indexed like the eigenvectors of the adapted
/// unperturbed system (see adapt_degenerate_subspaces).
struct PerturbativeDecomposition {
  double vacuum_energy = 0.0;          // first-order energy of the vacuum
  std::vector<double> epsilons_tilde;  // measured from the perturbed vacuum
  std::vector<double> delta_e;
  std::vector<State> pattern;
  std::vector<double> first_order;     // E_k to first order
  std::vector<double> unperturbed;     // E_k^(0)
};

/// Rotates each degenerate eigenspace of H_0 (levels closer than
/// `degeneracy_tol`) so that V is diagonal inside it, then orders the vectors
/// of each block by ascending <V>. Requires eigenvectors.
EigenSystem adapt_degenerate_subspaces(const EigenSystem& h0, const ManyBodyOperator& v,
                                       double degeneracy_tol = 1e-9);

/// E_k^(0) + lambda <k|V|k>. With `rotate_degenerate` off, throws
/// std::runtime_error if V couples degenerate H_0 states by more than 1e-10.
std::vector<double> first_order_energies(const EigenSystem& h0, const ManyBodyOperator& v,
                                         double lambda, bool rotate_degenerate = true);

/// First-order eigenvector |k> + lambda sum_{m != k} <m|V|k>/(E_k - E_m) |m>,
/// skipping levels degenerate with k. Pass an adapted system.
Eigen::VectorXd first_order_state(const EigenSystem& h0, const ManyBodyOperator& v, double lambda,
                                  std::size_t k, double degeneracy_tol = 1e-9);

/// max_{m != k} |lambda <m|V|k> / (E_k - E_m)| over non-degenerate m.
double first_order_mixing(const EigenSystem& h0, const ManyBodyOperator& v, double lambda,
                          std::size_t k, double degeneracy_tol = 1e-9);

/// True when H_0's ground state is non-degenerate, stays the lowest level to
/// first order, and its first-order mixing is at most 0.5.
bool ground_state_within_first_order_regime(const EigenSystem& h0, const ManyBodyOperator& v,
                                            double lambda);

/// Labels H_0's eigenstates with free occupation patterns and splits the
/// first-order energies into eps~ and dE. Throws std::runtime_error if H_0's
/// spectrum is not free within 1e-8, or if its dimension is not a power of 2.
PerturbativeDecomposition perturbative_free_decomposition(const EigenSystem& h0,
                                                          const ManyBodyOperator& v,
                                                          double lambda);

/// Same, with caller-supplied occupation patterns for the adapted eigenstates.
PerturbativeDecomposition perturbative_free_decomposition(const EigenSystem& h0,
                                                          const ManyBodyOperator& v, double lambda,
                                                          std::span<const State> pattern);

/// Linearized estimate
///   D ~ 1/2 sum_k s_k |beta dE_k - sum_l s_l beta dE_l|,  s_k = e^{-beta E^f_k}/Z_f.
double perturbative_dth(const PerturbativeDecomposition& decomp, double beta);

/// Trace distance between the first-order spectrum and the free spectrum
/// built from eps~, pairing levels by occupation pattern (no linearization).
double perturbative_dth_unexpanded(const PerturbativeDecomposition& decomp, double beta);

/// max_k |beta dE_k|. Above 0.5 the first-order estimate is unreliable.
double max_scaled_residual(const PerturbativeDecomposition& decomp, double beta);

inline bool within_first_order_regime(const PerturbativeDecomposition& decomp, double beta) {
  return max_scaled_residual(decomp, beta) <= 0.5;
}

/// Reduced-density eigenvalues of the dimer ground state to linear order in V,
/// ordered (vacuum, single, single, double).
std::array<double, 4> dimer_perturbative_rdm(double v);

/// eps~_1 = eps~_2 = ln(rho~_1 / rho~_2).
double dimer_perturbative_entanglement_energy(double v);

/// D_ent of the dimer from the linear-order RDM eigenvalues. Throws
/// std::domain_error once V reorders the levels.
double dimer_perturbative_dent(double v);

/// General first-order D_ent: the ground state is corrected to first order,
/// its entanglement levels are paired with the free labeling of the
/// unperturbed ones, and eps~ are read from the single-occupancy levels.
/// eps~ is not optimized, so at weak coupling the result is an upper bound
/// on the exact D_ent. `h0` must carry eigenvectors; its ground state must
/// be non-degenerate.
double perturbative_dent(const EigenSystem& h0, const ManyBodyOperator& v, double lambda,
                         std::vector<int> region_a);

}  // namespace intdist
