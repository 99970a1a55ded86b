#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "intdist/fock.hpp"
#include "intdist/probability_spectrum.hpp"

namespace intdist {

inline constexpr int kMaxFreeModes = 20;

/// Reference energy E_0 plus single-particle energies, kept ascending.
class FreeSpectrumParams {
 public:
  FreeSpectrumParams() = default;
  FreeSpectrumParams(double e0, std::vector<double> epsilons);

  double e0() const noexcept { return e0_; }
  std::span<const double> epsilons() const noexcept { return epsilons_; }
  int n_modes() const noexcept { return static_cast<int>(epsilons_.size()); }

 private:
  double e0_ = 0.0;
  std::vector<double> epsilons_;
};

/// Eigenvalues of a real symmetric kernel, ascending.
std::vector<double> diagonalize_kernel(const Eigen::MatrixXd& kernel);

/// E_0 + sum_j eps_j n_j(k), indexed by the occupation bitstring k.
std::vector<double> free_many_body_spectrum(const FreeSpectrumParams& params);

/// Gibbs weights of the free spectrum, descending.
ProbabilitySpectrum free_probabilities(const FreeSpectrumParams& params, double beta);

/// Gibbs weights indexed by occupation bitstring (unsorted). `out` must hold
/// 2^eps.size() entries. Built as a product of per-mode Fermi factors, so it
/// never overflows and is exactly normalized up to rounding.
void free_probabilities_by_pattern(std::span<const double> epsilons, double beta,
                                   std::span<double> out);

/// Z_f = exp(-beta E_0) * prod_j (1 + exp(-beta eps_j)).
double free_partition_function(const FreeSpectrumParams& params, double beta);

/// Occupation patterns read off a spectrum by peeling modes.
struct FreeLabeling {
  double vacuum_energy = 0.0;
  std::vector<double> epsilons;  // in extraction order, nondecreasing
  std::vector<State> patterns;   // per input index; unassigned entries keep 0
  std::vector<bool> assigned;
  bool exact = false;
};

/// Greedy extraction of single-particle energies from a spectrum.
///
/// The lowest level is the vacuum. Each step takes the lowest unassigned
/// level as a new mode eps_j and pairs every already-labeled level g with the
/// unassigned level nearest g + eps_j. Within `tolerance`, ties go to the
/// lowest input index, so callers control how degenerate levels are labeled
/// by ordering them. Stops after `n_modes` modes or when levels run out.
/// Non-finite energies are ignored, and partners that would lie above the
/// highest listed level count as truncated rather than missing. `exact`
/// reports that every listed level was labeled without a stand-in.
FreeLabeling label_free_spectrum(std::span<const double> energies, int n_modes,
                                 double tolerance);

}  // namespace intdist
