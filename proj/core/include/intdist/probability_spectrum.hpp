#pragma once

#include <cstddef>
#include <span>
#include <variant>
#include <vector>

namespace intdist {

struct ThermalOrigin {
  double beta;
};

struct EntanglementOrigin {
  std::vector<int> region;
};

/// Where a probability spectrum came from.
using SpectrumOrigin = std::variant<ThermalOrigin, EntanglementOrigin>;

/// Normalized eigenvalues of a density matrix, sorted descending.
///
/// Entries in [-1e-14, 0) are clamped to zero; anything more negative, or a
/// total that misses 1 by more than 1e-10, is rejected.
class ProbabilitySpectrum {
 public:
  static constexpr double kNormTolerance = 1e-10;
  static constexpr double kNegativeClamp = 1e-14;

  /// Sorts and validates; throws std::invalid_argument on bad input.
  static ProbabilitySpectrum from_probabilities(std::vector<double> probs, SpectrumOrigin origin);

  /// Divides by the total first. Weights must be nonnegative with positive sum.
  static ProbabilitySpectrum from_weights(std::vector<double> weights, SpectrumOrigin origin);

  std::span<const double> probs() const noexcept { return probs_; }
  std::size_t size() const noexcept { return probs_.size(); }
  double operator[](std::size_t k) const { return probs_[k]; }
  const SpectrumOrigin& origin() const noexcept { return origin_; }

  /// Entanglement energies -ln p_k (infinite for zero entries).
  std::vector<double> energies() const;

  /// Copy with `count` zeros appended.
  ProbabilitySpectrum padded(std::size_t count) const;

 private:
  ProbabilitySpectrum(std::vector<double> probs, SpectrumOrigin origin)
      : probs_(std::move(probs)), origin_(std::move(origin)) {}

  std::vector<double> probs_;
  SpectrumOrigin origin_;
};

}  // namespace intdist
