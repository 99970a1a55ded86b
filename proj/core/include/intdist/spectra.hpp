#pragma once

#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "intdist/fock.hpp"
#include "intdist/probability_spectrum.hpp"

namespace intdist {

inline constexpr std::size_t kMaxDenseDim = std::size_t{1} << 14;

/// Ascending eigenvalues and, optionally, the matching orthonormal eigenvectors
/// as columns.
struct EigenSystem {
  std::vector<double> energies;
  std::optional<Eigen::MatrixXd> vectors;

  std::size_t size() const noexcept { return energies.size(); }
  const Eigen::MatrixXd& eigenvectors() const;
};

/// Eigenpairs of one connected block of an operator's nonzero pattern.
struct SpectralBlock {
  std::vector<std::size_t> indices;  // basis positions, ascending
  std::vector<double> energies;      // ascending
  Eigen::MatrixXd vectors;           // rows follow `indices`; empty without vectors
};

/// Splits the operator into the connected components of its nonzero pattern
/// (e.g. particle-number sectors) and diagonalizes each densely.
std::vector<SpectralBlock> diagonalize_blocks(const ManyBodyOperator& op, bool keep_vectors);

/// Dense symmetric eigendecomposition, block by block. Throws
/// std::invalid_argument above 2^14 basis states.
EigenSystem exact_diagonalize(const ManyBodyOperator& op, bool keep_vectors = true);

/// Boltzmann weights exp(-beta E_k)/Z, computed relative to min(E).
ProbabilitySpectrum thermal_probabilities(std::span<const double> energies, double beta);

/// Spectrum of Tr_B |psi><psi| for the mode subset `region_a`.
///
/// Amplitudes are re-signed so the A modes form a prefix of the creation
/// string, reshaped into (A occupations) x (B occupations) and reduced to
/// squared singular values. The result has 2^|A| entries; values under 1e-14
/// are set to zero. Throws std::invalid_argument for an unnormalized state or
/// an empty/full/invalid region.
ProbabilitySpectrum reduced_density_spectrum(std::span<const double> amplitudes,
                                             const OccupationBasis& basis,
                                             std::vector<int> region_a);

inline ProbabilitySpectrum reduced_density_spectrum(const Eigen::VectorXd& state,
                                                    const OccupationBasis& basis,
                                                    std::vector<int> region_a) {
  return reduced_density_spectrum(std::span<const double>(state.data(), state.size()), basis,
                                  std::move(region_a));
}

}  // namespace intdist
