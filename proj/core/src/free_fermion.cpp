#include "intdist/free_fermion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>

#include "intdist/fock.hpp"

namespace intdist {

namespace {

void check_mode_count(std::size_t n) {
  if (n > static_cast<std::size_t>(kMaxFreeModes)) {
    throw std::invalid_argument("free spectrum enumeration capped at " +
                                std::to_string(kMaxFreeModes) + " modes, got " +
                                std::to_string(n));
  }
}

void check_beta(double beta) {
  if (!std::isfinite(beta) || beta <= 0.0) {
    throw std::invalid_argument("beta must be finite and positive");
  }
}

}  // namespace

FreeSpectrumParams::FreeSpectrumParams(double e0, std::vector<double> epsilons)
    : e0_(e0), epsilons_(std::move(epsilons)) {
  std::sort(epsilons_.begin(), epsilons_.end());
}

std::vector<double> diagonalize_kernel(const Eigen::MatrixXd& kernel) {
  if (kernel.rows() != kernel.cols()) throw std::invalid_argument("kernel must be square");
  if (hermiticity_defect(kernel) > 1e-12) throw std::invalid_argument("kernel is not symmetric");
  if (kernel.rows() == 0) return {};
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(kernel, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw std::runtime_error("kernel eigensolver failed");
  const auto& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

std::vector<double> free_many_body_spectrum(const FreeSpectrumParams& params) {
  const auto eps = params.epsilons();
  check_mode_count(eps.size());
  std::vector<double> out(std::size_t{1} << eps.size());
  out[0] = params.e0();
  for (std::size_t j = 0; j < eps.size(); ++j) {
    const std::size_t half = std::size_t{1} << j;
    for (std::size_t k = 0; k < half; ++k) out[k + half] = out[k] + eps[j];
  }
  return out;
}

void free_probabilities_by_pattern(std::span<const double> epsilons, double beta,
                                   std::span<double> out) {
  out[0] = 1.0;
  for (std::size_t j = 0; j < epsilons.size(); ++j) {
    // Occupied/empty weights of a single mode, exponent kept nonpositive.
    const double x = beta * epsilons[j];
    const double e = std::exp(-std::abs(x));
    const double big = 1.0 / (1.0 + e);
    const double small = e / (1.0 + e);
    const double occupied = x >= 0.0 ? small : big;
    const double empty = x >= 0.0 ? big : small;
    const std::size_t half = std::size_t{1} << j;
    for (std::size_t k = 0; k < half; ++k) {
      out[k + half] = out[k] * occupied;
      out[k] *= empty;
    }
  }
}

ProbabilitySpectrum free_probabilities(const FreeSpectrumParams& params, double beta) {
  check_beta(beta);
  check_mode_count(params.epsilons().size());
  std::vector<double> probs(std::size_t{1} << params.epsilons().size());
  free_probabilities_by_pattern(params.epsilons(), beta, probs);
  return ProbabilitySpectrum::from_probabilities(std::move(probs), ThermalOrigin{beta});
}

double free_partition_function(const FreeSpectrumParams& params, double beta) {
  check_beta(beta);
  double z = std::exp(-beta * params.e0());
  for (double e : params.epsilons()) z *= 1.0 + std::exp(-beta * e);
  return z;
}

FreeLabeling label_free_spectrum(std::span<const double> energies, int n_modes,
                                 double tolerance) {
  FreeLabeling out;
  const std::size_t count = energies.size();
  out.patterns.assign(count, 0);
  out.assigned.assign(count, false);
  if (count == 0) return out;
  if (n_modes < 0 || n_modes > kMaxFreeModes) {
    throw std::invalid_argument("n_modes outside [0, " + std::to_string(kMaxFreeModes) + "]");
  }

  // Unassigned levels keyed by energy; equal keys keep insertion (index) order.
  std::multimap<double, std::size_t> open;
  for (std::size_t k = 0; k < count; ++k) {
    if (!std::isfinite(energies[k])) continue;
    open.emplace(energies[k], k);
  }
  if (open.empty()) return out;

  // Lowest-index level among those within tolerance of the window start.
  auto take_in_window = [&](double lo, double hi) -> std::optional<std::size_t> {
    auto best = open.end();
    for (auto it = open.lower_bound(lo); it != open.end() && it->first <= hi; ++it) {
      if (best == open.end() || it->second < best->second) best = it;
    }
    if (best == open.end()) return std::nullopt;
    const std::size_t k = best->second;
    open.erase(best);
    return k;
  };

  const double e_min = open.begin()->first;
  const double highest = std::prev(open.end())->first - e_min;
  const std::size_t vacuum = *take_in_window(e_min, e_min + tolerance);
  out.vacuum_energy = energies[vacuum];
  out.assigned[vacuum] = true;

  struct Level {
    double energy;
    State pattern;
  };
  std::vector<Level> labeled{{0.0, 0}};
  bool exact = true;

  for (int j = 0; j < n_modes && !open.empty(); ++j) {
    const double lowest = open.begin()->first;
    const std::size_t single = *take_in_window(lowest, lowest + tolerance);
    const double eps = energies[single] - out.vacuum_energy;
    out.epsilons.push_back(eps);
    const State bit = State{1} << j;
    out.patterns[single] = bit;
    out.assigned[single] = true;

    const std::size_t existing = labeled.size();
    labeled.push_back({eps, bit});
    for (std::size_t g = 1; g < existing; ++g) {
      const double target = labeled[g].energy + eps;
      const double absolute = out.vacuum_energy + target;
      auto k = take_in_window(absolute - tolerance, absolute + tolerance);
      if (!k && target > highest + tolerance) continue;  // partner lies beyond the listed levels
      if (!k) {
        exact = false;
        if (open.empty()) continue;
        // Nearest unassigned level stands in for the missing one.
        auto it = open.lower_bound(absolute);
        if (it == open.end() ||
            (it != open.begin() && absolute - std::prev(it)->first < it->first - absolute)) {
          --it;
        }
        k = it->second;
        open.erase(it);
      }
      const State pattern = labeled[g].pattern | bit;
      out.patterns[*k] = pattern;
      out.assigned[*k] = true;
      labeled.push_back({energies[*k] - out.vacuum_energy, pattern});
    }
  }
  out.exact = exact && open.empty();
  return out;
}

}  // namespace intdist
