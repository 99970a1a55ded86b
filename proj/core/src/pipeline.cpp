#include "intdist/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "intdist/spectra.hpp"

namespace intdist {

namespace {

constexpr int kDimerFreeModes = 2;

}  // namespace

GroundState ground_state(const ManyBodyOperator& h, double degeneracy_tol) {
  const auto blocks = diagonalize_blocks(h, true);
  std::size_t best = 0;
  for (std::size_t b = 1; b < blocks.size(); ++b) {
    if (blocks[b].energies.front() < blocks[best].energies.front()) best = b;
  }
  GroundState out;
  out.energy = blocks[best].energies.front();
  double next = std::numeric_limits<double>::infinity();
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const auto& e = blocks[b].energies;
    if (b != best) next = std::min(next, e.front());
    else if (e.size() > 1) next = std::min(next, e[1]);
  }
  out.gap = std::isfinite(next) ? next - out.energy : 0.0;
  if (std::isfinite(next) && out.gap <= degeneracy_tol) {
    throw std::runtime_error("ground state is degenerate (gap " + std::to_string(out.gap) + ")");
  }
  out.vector = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(h.dim()));
  const auto& block = blocks[best];
  for (std::size_t r = 0; r < block.indices.size(); ++r) {
    out.vector(static_cast<Eigen::Index>(block.indices[r])) =
        block.vectors(static_cast<Eigen::Index>(r), 0);
  }
  return out;
}

Eigen::VectorXd embed_state(const Eigen::VectorXd& amplitudes, const OccupationBasis& from,
                            const OccupationBasis& to) {
  if (from.n_modes() != to.n_modes()) throw std::invalid_argument("bases differ in mode count");
  if (static_cast<std::size_t>(amplitudes.size()) != from.size()) {
    throw std::invalid_argument("state length does not match its basis");
  }
  Eigen::VectorXd out = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(to.size()));
  for (std::size_t k = 0; k < from.size(); ++k) {
    const auto target = to.index_of(from.state(k));
    if (!target) throw std::invalid_argument("target basis lacks a source state");
    out(static_cast<Eigen::Index>(*target)) = amplitudes(static_cast<Eigen::Index>(k));
  }
  return out;
}

ProbabilitySpectrum thermal_spectrum(const ManyBodyOperator& h, double beta) {
  return thermal_probabilities(exact_diagonalize(h, false).energies, beta);
}

DistanceResult thermal_distance(const ManyBodyOperator& h, double beta,
                                const OptimizerOptions& options, std::optional<int> n_free_modes) {
  const auto rho = thermal_spectrum(h, beta);
  return interaction_distance(rho, n_free_modes.value_or(default_free_modes(rho.size())), beta,
                              options);
}

ProbabilitySpectrum ground_state_entanglement_spectrum(const ManyBodyOperator& h,
                                                       std::vector<int> region_a) {
  const auto gs = ground_state(h);
  const auto full = OccupationBasis::build(h.basis.n_modes());
  Eigen::VectorXd psi = embed_state(gs.vector, h.basis, full);
  psi.normalize();
  return reduced_density_spectrum(psi, full, std::move(region_a));
}

DistanceResult entanglement_distance(const ManyBodyOperator& h, std::vector<int> region_a,
                                     const OptimizerOptions& options) {
  const int modes = static_cast<int>(region_a.size());
  const auto rho = ground_state_entanglement_spectrum(h, std::move(region_a));
  return interaction_distance(rho, modes, 1.0, options);
}

std::vector<int> chain_half_region(int n_sites) {
  std::vector<int> region(static_cast<std::size_t>(std::max(n_sites / 2, 1)));
  std::iota(region.begin(), region.end(), 0);
  return region;
}

std::vector<int> dimer_left_site() { return {0, 1}; }

DistanceResult dimer_thermal_distance(const DimerParams& params, double beta,
                                      const OptimizerOptions& options) {
  return thermal_distance(hubbard_dimer(params).hamiltonian, beta, options, kDimerFreeModes);
}

ProbabilitySpectrum dimer_entanglement_spectrum(const DimerParams& params) {
  return ground_state_entanglement_spectrum(hubbard_dimer(params).hamiltonian, dimer_left_site());
}

DistanceResult dimer_entanglement_distance(const DimerParams& params,
                                           const OptimizerOptions& options) {
  return interaction_distance(dimer_entanglement_spectrum(params), kDimerFreeModes, 1.0, options);
}

}  // namespace intdist
