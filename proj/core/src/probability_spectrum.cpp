#include "intdist/probability_spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace intdist {

ProbabilitySpectrum ProbabilitySpectrum::from_probabilities(std::vector<double> probs,
                                                            SpectrumOrigin origin) {
  if (probs.empty()) throw std::invalid_argument("probability spectrum is empty");
  for (double& p : probs) {
    if (!std::isfinite(p)) throw std::invalid_argument("probability spectrum has non-finite entry");
    if (p < -kNegativeClamp) {
      throw std::invalid_argument("probability spectrum has negative entry " + std::to_string(p));
    }
    if (p < 0.0) p = 0.0;
  }
  const double total = std::accumulate(probs.begin(), probs.end(), 0.0);
  if (std::abs(total - 1.0) > kNormTolerance) {
    throw std::invalid_argument("probability spectrum sums to " + std::to_string(total));
  }
  std::sort(probs.begin(), probs.end(), std::greater<>());
  return ProbabilitySpectrum(std::move(probs), std::move(origin));
}

ProbabilitySpectrum ProbabilitySpectrum::from_weights(std::vector<double> weights,
                                                      SpectrumOrigin origin) {
  if (weights.empty()) throw std::invalid_argument("weight list is empty");
  double total = 0.0;
  for (double w : weights) {
    if (!std::isfinite(w) || w < 0.0) {
      throw std::invalid_argument("weights must be finite and nonnegative");
    }
    total += w;
  }
  if (!(total > 0.0)) throw std::invalid_argument("weights sum to zero");
  for (double& w : weights) w /= total;
  return from_probabilities(std::move(weights), std::move(origin));
}

std::vector<double> ProbabilitySpectrum::energies() const {
  std::vector<double> out(probs_.size());
  std::transform(probs_.begin(), probs_.end(), out.begin(), [](double p) {
    return p > 0.0 ? -std::log(p) : std::numeric_limits<double>::infinity();
  });
  return out;
}

ProbabilitySpectrum ProbabilitySpectrum::padded(std::size_t count) const {
  std::vector<double> out(probs_);
  out.resize(out.size() + count, 0.0);
  return ProbabilitySpectrum(std::move(out), origin_);
}

}  // namespace intdist
