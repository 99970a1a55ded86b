#include "intdist/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace intdist {

namespace {

struct Vertex {
  std::vector<double> x;
  double f;
};

class Simplex {
 public:
  Simplex(const Objective& f, int& evaluations) : f_(f), evaluations_(evaluations) {}

  double eval(std::span<const double> x) {
    ++evaluations_;
    const double v = f_(x);
    return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
  }

  void build(const std::vector<double>& origin, std::span<const double> steps) {
    const std::size_t n = origin.size();
    vertices_.clear();
    vertices_.push_back({origin, eval(origin)});
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<double> x = origin;
      x[i] += steps[i];
      const double fx = eval(x);
      vertices_.push_back({std::move(x), fx});
    }
    order();
  }

  void order() {
    std::stable_sort(vertices_.begin(), vertices_.end(),
                     [](const Vertex& a, const Vertex& b) { return a.f < b.f; });
  }

  double spread() const { return vertices_.back().f - vertices_.front().f; }

  double size() const {
    double out = 0.0;
    const auto& best = vertices_.front().x;
    for (std::size_t v = 1; v < vertices_.size(); ++v) {
      double d2 = 0.0;
      for (std::size_t i = 0; i < best.size(); ++i) {
        const double d = vertices_[v].x[i] - best[i];
        d2 += d * d;
      }
      out = std::max(out, std::sqrt(d2));
    }
    return out;
  }

  const Vertex& best() const { return vertices_.front(); }

  // One Nelder-Mead update; vertices stay sorted afterwards.
  void step() {
    const std::size_t n = vertices_.size() - 1;
    std::vector<double> centroid(n, 0.0);
    for (std::size_t v = 0; v < n; ++v) {
      for (std::size_t i = 0; i < n; ++i) centroid[i] += vertices_[v].x[i];
    }
    for (double& c : centroid) c /= static_cast<double>(n);

    Vertex& worst = vertices_.back();
    auto along = [&](double t) {
      std::vector<double> x(n);
      for (std::size_t i = 0; i < n; ++i) x[i] = centroid[i] + t * (worst.x[i] - centroid[i]);
      return x;
    };

    auto reflected = along(-1.0);
    const double f_reflected = eval(reflected);
    if (f_reflected < vertices_.front().f) {
      auto expanded = along(-2.0);
      const double f_expanded = eval(expanded);
      if (f_expanded < f_reflected) {
        worst = {std::move(expanded), f_expanded};
      } else {
        worst = {std::move(reflected), f_reflected};
      }
    } else if (f_reflected < vertices_[n - 1].f) {
      worst = {std::move(reflected), f_reflected};
    } else {
      const bool outside = f_reflected < worst.f;
      auto contracted = along(outside ? -0.5 : 0.5);
      const double f_contracted = eval(contracted);
      if (f_contracted < (outside ? f_reflected : worst.f)) {
        worst = {std::move(contracted), f_contracted};
      } else {
        shrink();
      }
    }
    order();
  }

 private:
  void shrink() {
    const auto& best = vertices_.front().x;
    for (std::size_t v = 1; v < vertices_.size(); ++v) {
      for (std::size_t i = 0; i < best.size(); ++i) {
        vertices_[v].x[i] = best[i] + 0.5 * (vertices_[v].x[i] - best[i]);
      }
      vertices_[v].f = eval(vertices_[v].x);
    }
  }

  const Objective& f_;
  int& evaluations_;
  std::vector<Vertex> vertices_;
};

}  // namespace

SimplexResult nelder_mead(const Objective& f, std::vector<double> x0, std::span<const double> steps,
                          const SimplexOptions& options) {
  if (steps.size() != x0.size()) throw std::invalid_argument("steps and x0 differ in length");
  SimplexResult result;
  if (x0.empty()) {
    result.f = f(x0);
    result.x = std::move(x0);
    result.evaluations = 1;
    result.converged = true;
    return result;
  }

  Simplex simplex(f, result.evaluations);
  simplex.build(x0, steps);
  double previous_best = std::numeric_limits<double>::infinity();
  bool restarted = false;
  int it = 0;
  while (it < options.max_iter) {
    if (simplex.spread() <= options.f_tolerance) {
      const double current = simplex.best().f;
      if (restarted && previous_best - current <= options.f_tolerance) {
        result.converged = true;
        break;
      }
      // Guard against a collapsed simplex by rebuilding around the best point.
      previous_best = current;
      restarted = true;
      std::vector<double> rebuilt_steps(steps.begin(), steps.end());
      const double scale = std::max(simplex.size(), 1e-6);
      for (std::size_t i = 0; i < rebuilt_steps.size(); ++i) {
        rebuilt_steps[i] = std::copysign(std::min(std::abs(steps[i]), scale * 10.0), steps[i]);
      }
      const auto origin = simplex.best().x;
      simplex.build(origin, rebuilt_steps);
      continue;
    }
    simplex.step();
    ++it;
  }

  result.iterations = it;
  result.x = simplex.best().x;
  result.f = simplex.best().f;
  result.simplex_size = simplex.size();
  return result;
}

}  // namespace intdist
