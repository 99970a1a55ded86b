#pragma once

#include <functional>
#include <span>
#include <vector>

namespace intdist {

struct SimplexOptions {
  int max_iter = 5000;
  /// Converged once f(worst) - f(best) over the simplex drops below this.
  double f_tolerance = 1e-12;
};

struct SimplexResult {
  std::vector<double> x;
  double f = 0.0;
  int iterations = 0;
  int evaluations = 0;
  double simplex_size = 0.0;  // max vertex distance from the best vertex
  bool converged = false;
};

using Objective = std::function<double(std::span<const double>)>;

/// Nelder-Mead downhill simplex (reflection 1, expansion 2, contraction 1/2,
/// shrink 1/2). The initial simplex is x0 plus steps[i] along each axis.
/// After convergence the simplex is rebuilt once around the best point; the
/// run ends when that restart no longer improves f by more than f_tolerance.
SimplexResult nelder_mead(const Objective& f, std::vector<double> x0, std::span<const double> steps,
                          const SimplexOptions& options = {});

}  // namespace intdist
