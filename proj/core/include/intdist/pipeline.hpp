#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "intdist/distance.hpp"
#include "intdist/fock.hpp"
#include "intdist/models.hpp"
#include "intdist/probability_spectrum.hpp"

namespace intdist {

// Compositions of exact diagonalization, spectrum extraction and the
// interaction-distance search.

struct GroundState {
  double energy = 0.0;
  double gap = 0.0;  // to the next level
  Eigen::VectorXd vector;
};

/// Lowest eigenpair. Throws std::runtime_error if the lowest level is
/// degenerate within `degeneracy_tol`.
GroundState ground_state(const ManyBodyOperator& h, double degeneracy_tol = 1e-10);

/// Re-expresses `amplitudes` on `from` in the larger basis `to`.
Eigen::VectorXd embed_state(const Eigen::VectorXd& amplitudes, const OccupationBasis& from,
                            const OccupationBasis& to);

ProbabilitySpectrum thermal_spectrum(const ManyBodyOperator& h, double beta);

/// D_th: n_free_modes defaults to ceil(log2(dim)).
DistanceResult thermal_distance(const ManyBodyOperator& h, double beta,
                                const OptimizerOptions& options = {},
                                std::optional<int> n_free_modes = std::nullopt);

/// Ground-state entanglement spectrum for a mode region, evaluated on the
/// unconstrained Fock embedding of the ground state.
ProbabilitySpectrum ground_state_entanglement_spectrum(const ManyBodyOperator& h,
                                                       std::vector<int> region_a);

/// D_ent at beta = 1 with one free mode per mode in the region.
DistanceResult entanglement_distance(const ManyBodyOperator& h, std::vector<int> region_a,
                                     const OptimizerOptions& options = {});

/// Sites [0, n_sites/2) of the chain, as modes.
std::vector<int> chain_half_region(int n_sites);

/// Site 1 of the dimer: modes {0, 1}.
std::vector<int> dimer_left_site();

/// D_th of the dimer's N = 2, S_z = 0 sector with two free modes.
DistanceResult dimer_thermal_distance(const DimerParams& params, double beta,
                                      const OptimizerOptions& options = {});

/// Entanglement spectrum of the dimer ground state, site 1 versus site 2.
ProbabilitySpectrum dimer_entanglement_spectrum(const DimerParams& params);

DistanceResult dimer_entanglement_distance(const DimerParams& params,
                                           const OptimizerOptions& options = {});

}  // namespace intdist
