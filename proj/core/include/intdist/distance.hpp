#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "intdist/probability_spectrum.hpp"

namespace intdist {

/// Multi-start simplex settings for the interaction-distance search.
struct OptimizerOptions {
  /// Default seed; every random start derives from (seed, restart index).
  static constexpr std::uint64_t kDefaultSeed = 20170531;

  std::uint64_t seed = kDefaultSeed;
  int restarts = 16;
  int max_iter = 5000;
  double tolerance = 1e-12;
};

struct OptimizerInfo {
  int restarts_used = 0;
  int best_restart = -1;
  int iterations = 0;        // simplex iterations of the winning restart
  int total_iterations = 0;  // summed over restarts
  int evaluations = 0;
  double final_simplex_size = 0.0;
  bool converged = false;    // winning restart met the tolerance
  std::vector<double> raw_minimizer;
};

struct DistanceResult {
  double value = 0.0;
  /// |eps_j| sorted ascending. A negative eps_j describes the same spectrum
  /// with mode j's filled/empty roles swapped; the sign is absorbed by E_0.
  std::vector<double> optimal_epsilons;
  OptimizerInfo info;
};

/// Half the L1 distance after sorting both inputs descending and zero-padding
/// the shorter one. This is the trace distance minimized over relative
/// eigenbasis orientation.
double trace_distance_sorted(const ProbabilitySpectrum& p, const ProbabilitySpectrum& q);

/// Raw-vector form. Throws std::invalid_argument if either sum is off by
/// more than 1e-8.
double trace_distance_sorted(std::span<const double> p, std::span<const double> q);

/// Smallest N with 2^N >= size.
int default_free_modes(std::size_t spectrum_size);

/// Distance from rho to the free spectrum generated by `epsilons` at beta.
double free_distance_objective(const ProbabilitySpectrum& rho, std::span<const double> epsilons,
                               double beta);

/// D_F(rho) minimized over n_free_modes single-particle energies.
/// Throws std::invalid_argument if 2^n_free_modes < |rho|.
DistanceResult interaction_distance(const ProbabilitySpectrum& rho, int n_free_modes, double beta,
                                    const OptimizerOptions& options = {});

/// Same, with n_free_modes = default_free_modes(|rho|).
DistanceResult interaction_distance(const ProbabilitySpectrum& rho, double beta,
                                    const OptimizerOptions& options = {});

/// 3 - 2*sqrt(2), the largest value D_F can take.
double df_upper_bound() noexcept;

}  // namespace intdist
