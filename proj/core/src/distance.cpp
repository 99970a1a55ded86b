#include "intdist/distance.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

#include "intdist/free_fermion.hpp"
#include "intdist/simplex.hpp"

namespace intdist {

namespace {

// A restart must beat the incumbent by more than this to replace it, so
// rounding noise never overrides an earlier restart at the same minimum.
constexpr double kRestartMargin = 1e-14;

double sorted_l1_half(std::span<const double> p, std::span<const double> q) {
  const std::size_t common = std::min(p.size(), q.size());
  double sum = 0.0;
  for (std::size_t k = 0; k < common; ++k) sum += std::abs(p[k] - q[k]);
  for (std::size_t k = common; k < p.size(); ++k) sum += std::abs(p[k]);
  for (std::size_t k = common; k < q.size(); ++k) sum += std::abs(q[k]);
  return 0.5 * sum;
}

// Evaluates the objective with a reusable buffer.
class FreeFit {
 public:
  FreeFit(std::span<const double> rho, int n_modes, double beta)
      : rho_(rho), beta_(beta), sigma_(std::size_t{1} << n_modes) {}

  double operator()(std::span<const double> eps) {
    free_probabilities_by_pattern(eps, beta_, sigma_);
    std::sort(sigma_.begin(), sigma_.end(), std::greater<>());
    return sorted_l1_half(rho_, sigma_);
  }

 private:
  std::span<const double> rho_;
  double beta_;
  std::vector<double> sigma_;
};

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

struct StartingPoints {
  std::vector<double> peeled;
  std::vector<double> lowest_gaps;
  double max_gap = 1.0;
};

StartingPoints starting_points(const ProbabilitySpectrum& rho, int n_modes, double beta) {
  std::vector<double> energies;
  for (double p : rho.probs()) {
    if (p > 0.0) energies.push_back(-std::log(p) / beta);
  }
  const double e0 = energies.front();
  for (double& e : energies) e -= e0;

  StartingPoints out;
  out.max_gap = energies.back() > 0.0 ? energies.back() : 1.0;
  // Modes that only generate missing (zero) levels belong far above the rest.
  const double fill = 2.0 * out.max_gap + 10.0 / beta;

  const auto n = static_cast<std::size_t>(n_modes);
  out.lowest_gaps.assign(n, fill);
  for (std::size_t j = 0; j < n && j + 1 < energies.size(); ++j) out.lowest_gaps[j] = energies[j + 1];

  const double tol = 1e-9 * std::max(1.0, out.max_gap);
  auto labeling = label_free_spectrum(energies, n_modes, tol);
  out.peeled = labeling.epsilons;
  out.peeled.resize(n, fill);
  return out;
}

std::vector<double> initial_steps(std::span<const double> x, double scale) {
  std::vector<double> steps(x.size());
  std::transform(x.begin(), x.end(), steps.begin(),
                 [&](double v) { return 0.1 * std::max(std::abs(v), scale); });
  return steps;
}

}  // namespace

double trace_distance_sorted(std::span<const double> p, std::span<const double> q) {
  auto check = [](std::span<const double> v, const char* name) {
    const double total = std::accumulate(v.begin(), v.end(), 0.0);
    if (std::abs(total - 1.0) > 1e-8) {
      throw std::invalid_argument(std::string(name) + " is not normalized (sum = " +
                                  std::to_string(total) + ")");
    }
  };
  check(p, "p");
  check(q, "q");
  std::vector<double> ps(p.begin(), p.end());
  std::vector<double> qs(q.begin(), q.end());
  std::sort(ps.begin(), ps.end(), std::greater<>());
  std::sort(qs.begin(), qs.end(), std::greater<>());
  return sorted_l1_half(ps, qs);
}

double trace_distance_sorted(const ProbabilitySpectrum& p, const ProbabilitySpectrum& q) {
  return sorted_l1_half(p.probs(), q.probs());
}

int default_free_modes(std::size_t spectrum_size) {
  int n = 0;
  while ((std::size_t{1} << n) < spectrum_size) ++n;
  return n;
}

double free_distance_objective(const ProbabilitySpectrum& rho, std::span<const double> epsilons,
                               double beta) {
  if (epsilons.size() > static_cast<std::size_t>(kMaxFreeModes)) {
    throw std::invalid_argument("too many free modes");
  }
  FreeFit fit(rho.probs(), static_cast<int>(epsilons.size()), beta);
  return fit(epsilons);
}

DistanceResult interaction_distance(const ProbabilitySpectrum& rho, int n_free_modes, double beta,
                                    const OptimizerOptions& options) {
  if (!std::isfinite(beta) || beta <= 0.0) {
    throw std::invalid_argument("beta must be finite and positive");
  }
  if (n_free_modes < 0 || n_free_modes > kMaxFreeModes) {
    throw std::invalid_argument("n_free_modes outside [0, " + std::to_string(kMaxFreeModes) + "]");
  }
  if ((std::size_t{1} << n_free_modes) < rho.size()) {
    throw std::invalid_argument(std::to_string(n_free_modes) + " free modes generate " +
                                std::to_string(std::size_t{1} << n_free_modes) +
                                " levels, fewer than the " + std::to_string(rho.size()) +
                                " in the spectrum");
  }
  if (options.restarts < 1) throw std::invalid_argument("restarts must be at least 1");

  const auto starts = starting_points(rho, n_free_modes, beta);
  const double scale = std::max(starts.max_gap / std::max(n_free_modes, 1), 1e-3);
  const SimplexOptions simplex_options{options.max_iter, options.tolerance};

  FreeFit fit(rho.probs(), n_free_modes, beta);
  const Objective objective = [&fit](std::span<const double> eps) { return fit(eps); };

  DistanceResult result;
  result.value = std::numeric_limits<double>::infinity();
  for (int r = 0; r < options.restarts; ++r) {
    std::mt19937_64 rng(splitmix64(options.seed ^ splitmix64(static_cast<std::uint64_t>(r))));
    std::vector<double> x0;
    if (r == 0) {
      x0 = starts.peeled;
    } else if (r == 1) {
      x0 = starts.lowest_gaps;
    } else if (r % 2 == 0) {
      std::normal_distribution<double> noise(0.0, 1.0);
      x0 = starts.peeled;
      for (double& e : x0) e = e * (1.0 + 0.2 * noise(rng)) + 0.1 * scale * noise(rng);
    } else {
      std::uniform_real_distribution<double> uniform(0.0, starts.max_gap);
      x0.resize(static_cast<std::size_t>(n_free_modes));
      for (double& e : x0) e = uniform(rng);
    }

    const auto steps = initial_steps(x0, scale);
    auto run = nelder_mead(objective, std::move(x0), steps, simplex_options);
    result.info.restarts_used = r + 1;
    result.info.total_iterations += run.iterations;
    result.info.evaluations += run.evaluations;
    if (result.info.best_restart < 0 || run.f < result.value - kRestartMargin) {
      result.value = run.f;
      result.info.best_restart = r;
      result.info.iterations = run.iterations;
      result.info.final_simplex_size = run.simplex_size;
      result.info.converged = run.converged;
      result.info.raw_minimizer = std::move(run.x);
    }
  }

  result.optimal_epsilons = result.info.raw_minimizer;
  for (double& e : result.optimal_epsilons) e = std::abs(e);
  std::sort(result.optimal_epsilons.begin(), result.optimal_epsilons.end());
  return result;
}

DistanceResult interaction_distance(const ProbabilitySpectrum& rho, double beta,
                                    const OptimizerOptions& options) {
  return interaction_distance(rho, default_free_modes(rho.size()), beta, options);
}

double df_upper_bound() noexcept { return 3.0 - 2.0 * std::sqrt(2.0); }

}  // namespace intdist
