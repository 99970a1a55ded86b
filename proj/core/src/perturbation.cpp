#include "intdist/perturbation.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "intdist/free_fermion.hpp"

namespace intdist {

namespace {

constexpr double kLabelTolerance = 1e-8;
constexpr double kCouplingTolerance = 1e-10;
// Entanglement levels below this are too noisy to label and form the tail.
constexpr double kEntanglementFloor = 1e-12;
constexpr double kEntanglementLabelTolerance = 1e-6;

const double kSqrt2 = std::sqrt(2.0);

struct Block {
  std::size_t begin;
  std::size_t end;
};

std::vector<Block> degenerate_blocks(std::span<const double> energies, double tol) {
  std::vector<Block> blocks;
  std::size_t start = 0;
  for (std::size_t k = 1; k <= energies.size(); ++k) {
    const bool split = k == energies.size() ||
                       energies[k] - energies[start] > tol * std::max(1.0, std::abs(energies[start]));
    if (split) {
      blocks.push_back({start, k});
      start = k;
    }
  }
  return blocks;
}

Eigen::VectorXd diagonal_elements(const Eigen::MatrixXd& vectors, const Eigen::MatrixXd& v) {
  return (vectors.transpose() * v * vectors).diagonal();
}

int mode_count(std::size_t dim) {
  if (dim == 0 || !std::has_single_bit(dim)) {
    throw std::runtime_error("unperturbed dimension " + std::to_string(dim) +
                             " is not a power of two, so it has no free labeling");
  }
  return std::countr_zero(dim);
}

void check_beta(double beta) {
  if (!std::isfinite(beta) || beta <= 0.0) {
    throw std::invalid_argument("beta must be finite and positive");
  }
}

std::vector<double> free_energies(const PerturbativeDecomposition& d) {
  std::vector<double> out(d.pattern.size());
  for (std::size_t k = 0; k < out.size(); ++k) {
    double e = 0.0;
    for (std::size_t j = 0; j < d.epsilons_tilde.size(); ++j) {
      if ((d.pattern[k] >> j) & 1u) e += d.epsilons_tilde[j];
    }
    out[k] = e;
  }
  return out;
}

std::vector<double> boltzmann(std::span<const double> energies, double beta) {
  const double e_min = *std::min_element(energies.begin(), energies.end());
  std::vector<double> w(energies.size());
  std::transform(energies.begin(), energies.end(), w.begin(),
                 [&](double e) { return std::exp(-beta * (e - e_min)); });
  const double z = std::accumulate(w.begin(), w.end(), 0.0);
  for (double& x : w) x /= z;
  return w;
}

}  // namespace

EigenSystem adapt_degenerate_subspaces(const EigenSystem& h0, const ManyBodyOperator& v,
                                       double degeneracy_tol) {
  const auto& vectors = h0.eigenvectors();
  if (vectors.rows() != v.matrix.rows()) {
    throw std::invalid_argument("perturbation and eigenvectors differ in dimension");
  }
  EigenSystem out = h0;
  Eigen::MatrixXd& rotated = *out.vectors;
  for (const auto& block : degenerate_blocks(h0.energies, degeneracy_tol)) {
    const auto size = static_cast<Eigen::Index>(block.end - block.begin);
    if (size < 2) continue;
    const auto first = static_cast<Eigen::Index>(block.begin);
    const Eigen::MatrixXd u = vectors.middleCols(first, size);
    const Eigen::MatrixXd projected = u.transpose() * v.matrix * u;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(projected);
    rotated.middleCols(first, size) = u * solver.eigenvectors();
  }
  return out;
}

std::vector<double> first_order_energies(const EigenSystem& h0, const ManyBodyOperator& v,
                                         double lambda, bool rotate_degenerate) {
  EigenSystem adapted = rotate_degenerate ? adapt_degenerate_subspaces(h0, v) : h0;
  const auto& vectors = adapted.eigenvectors();
  if (!rotate_degenerate) {
    for (const auto& block : degenerate_blocks(h0.energies, 1e-9)) {
      const auto size = static_cast<Eigen::Index>(block.end - block.begin);
      if (size < 2) continue;
      const Eigen::MatrixXd u = vectors.middleCols(static_cast<Eigen::Index>(block.begin), size);
      Eigen::MatrixXd projected = u.transpose() * v.matrix * u;
      projected.diagonal().setZero();
      if (projected.cwiseAbs().maxCoeff() > kCouplingTolerance) {
        throw std::runtime_error("perturbation couples degenerate unperturbed states");
      }
    }
  }
  const Eigen::VectorXd expectation = diagonal_elements(vectors, v.matrix);
  std::vector<double> out(adapted.energies);
  for (std::size_t k = 0; k < out.size(); ++k) {
    out[k] += lambda * expectation(static_cast<Eigen::Index>(k));
  }
  return out;
}

Eigen::VectorXd first_order_state(const EigenSystem& h0, const ManyBodyOperator& v, double lambda,
                                  std::size_t k, double degeneracy_tol) {
  const auto& vectors = h0.eigenvectors();
  if (k >= h0.size()) throw std::out_of_range("eigenstate index out of range");
  const auto col = static_cast<Eigen::Index>(k);
  const Eigen::VectorXd coupling = vectors.transpose() * (v.matrix * vectors.col(col));
  Eigen::VectorXd out = vectors.col(col);
  const double e_k = h0.energies[k];
  for (std::size_t m = 0; m < h0.size(); ++m) {
    const double gap = e_k - h0.energies[m];
    if (m == k || std::abs(gap) <= degeneracy_tol * std::max(1.0, std::abs(e_k))) continue;
    const auto mcol = static_cast<Eigen::Index>(m);
    out += lambda * coupling(mcol) / gap * vectors.col(mcol);
  }
  return out;
}

double first_order_mixing(const EigenSystem& h0, const ManyBodyOperator& v, double lambda,
                          std::size_t k, double degeneracy_tol) {
  const auto& vectors = h0.eigenvectors();
  if (k >= h0.size()) throw std::out_of_range("eigenstate index out of range");
  const Eigen::VectorXd coupling =
      vectors.transpose() * (v.matrix * vectors.col(static_cast<Eigen::Index>(k)));
  const double e_k = h0.energies[k];
  double worst = 0.0;
  for (std::size_t m = 0; m < h0.size(); ++m) {
    const double gap = e_k - h0.energies[m];
    if (m == k || std::abs(gap) <= degeneracy_tol * std::max(1.0, std::abs(e_k))) continue;
    worst = std::max(worst, std::abs(lambda * coupling(static_cast<Eigen::Index>(m)) / gap));
  }
  return worst;
}

bool ground_state_within_first_order_regime(const EigenSystem& h0, const ManyBodyOperator& v,
                                            double lambda) {
  const auto e1 = first_order_energies(h0, v, lambda);
  const auto ground = degenerate_blocks(h0.energies, 1e-9).front();
  if (ground.end - ground.begin != 1) return false;
  for (std::size_t k = 1; k < e1.size(); ++k) {
    if (e1[k] <= e1[0]) return false;
  }
  return first_order_mixing(h0, v, lambda, 0) <= 0.5;
}

PerturbativeDecomposition perturbative_free_decomposition(const EigenSystem& h0,
                                                          const ManyBodyOperator& v,
                                                          double lambda) {
  const int n = mode_count(h0.size());
  const auto adapted = adapt_degenerate_subspaces(h0, v);
  const auto& e = adapted.energies;
  const double range = e.back() - e.front();
  const auto labeling = label_free_spectrum(e, n, kLabelTolerance * std::max(1.0, range));
  if (!labeling.exact || static_cast<int>(labeling.epsilons.size()) != n) {
    throw std::runtime_error("unperturbed spectrum is not free within tolerance");
  }
  return perturbative_free_decomposition(adapted, v, lambda, labeling.patterns);
}

PerturbativeDecomposition perturbative_free_decomposition(const EigenSystem& h0,
                                                          const ManyBodyOperator& v, double lambda,
                                                          std::span<const State> pattern) {
  const int n = mode_count(h0.size());
  if (pattern.size() != h0.size()) throw std::invalid_argument("one pattern per level required");
  std::vector<std::size_t> level_of(h0.size(), h0.size());
  for (std::size_t k = 0; k < pattern.size(); ++k) {
    if (pattern[k] >= h0.size() || level_of[pattern[k]] != h0.size()) {
      throw std::invalid_argument("patterns must be a permutation of all occupation bitstrings");
    }
    level_of[pattern[k]] = k;
  }

  PerturbativeDecomposition d;
  d.unperturbed = h0.energies;
  d.first_order = first_order_energies(h0, v, lambda, false);
  d.pattern.assign(pattern.begin(), pattern.end());

  const double vacuum = d.first_order[level_of[0]];
  d.vacuum_energy = vacuum;
  for (int j = 0; j < n; ++j) {
    d.epsilons_tilde.push_back(d.first_order[level_of[State{1} << j]] - vacuum);
  }
  d.delta_e.resize(h0.size());
  for (std::size_t k = 0; k < h0.size(); ++k) {
    double residual = d.first_order[k] - vacuum;
    for (int j = 0; j < n; ++j) {
      if ((pattern[k] >> j) & 1u) residual -= d.epsilons_tilde[static_cast<std::size_t>(j)];
    }
    d.delta_e[k] = std::popcount(pattern[k]) <= 1 ? 0.0 : residual;
  }
  return d;
}

double perturbative_dth(const PerturbativeDecomposition& decomp, double beta) {
  check_beta(beta);
  const auto s = boltzmann(free_energies(decomp), beta);
  double mean = 0.0;
  for (std::size_t k = 0; k < s.size(); ++k) mean += s[k] * beta * decomp.delta_e[k];
  double sum = 0.0;
  for (std::size_t k = 0; k < s.size(); ++k) sum += s[k] * std::abs(beta * decomp.delta_e[k] - mean);
  return 0.5 * sum;
}

double perturbative_dth_unexpanded(const PerturbativeDecomposition& decomp, double beta) {
  check_beta(beta);
  const auto ef = free_energies(decomp);
  std::vector<double> e(ef);
  for (std::size_t k = 0; k < e.size(); ++k) e[k] += decomp.delta_e[k];
  const auto rho = boltzmann(e, beta);
  const auto sigma = boltzmann(ef, beta);
  double sum = 0.0;
  for (std::size_t k = 0; k < rho.size(); ++k) sum += std::abs(rho[k] - sigma[k]);
  return 0.5 * sum;
}

double max_scaled_residual(const PerturbativeDecomposition& decomp, double beta) {
  double out = 0.0;
  for (double de : decomp.delta_e) out = std::max(out, std::abs(beta * de));
  return out;
}

std::array<double, 4> dimer_perturbative_rdm(double v) {
  const double slope_vacuum = -(8.0 + 5.0 * kSqrt2) / 128.0;
  const double slope_single = 5.0 * kSqrt2 / 128.0;
  const double slope_double = (8.0 - 5.0 * kSqrt2) / 128.0;
  const double single = 0.125 + slope_single * v;
  return {(3.0 + 2.0 * kSqrt2) / 8.0 + slope_vacuum * v, single, single,
          (3.0 - 2.0 * kSqrt2) / 8.0 + slope_double * v};
}

double dimer_perturbative_entanglement_energy(double v) {
  const auto rho = dimer_perturbative_rdm(v);
  return std::log(rho[0] / rho[1]);
}

double dimer_perturbative_dent(double v) {
  const auto rho = dimer_perturbative_rdm(v);
  if (!(rho[0] > rho[1]) || !(rho[1] > rho[3]) || rho[3] < 0.0) {
    throw std::domain_error("V = " + std::to_string(v) +
                            " reorders the reduced-density levels; first order does not apply");
  }
  const double eps = std::log(rho[0] / rho[1]);
  const double x = std::exp(-eps);
  const double zf = 1.0 + 2.0 * x + x * x;
  return 0.5 * (std::abs(rho[0] - 1.0 / zf) + std::abs(rho[1] - x / zf) +
                std::abs(rho[2] - x / zf) + std::abs(rho[3] - x * x / zf));
}

double perturbative_dent(const EigenSystem& h0, const ManyBodyOperator& v, double lambda,
                         std::vector<int> region_a) {
  const auto adapted = adapt_degenerate_subspaces(h0, v);
  if (adapted.size() > 1 &&
      adapted.energies[1] - adapted.energies[0] <= 1e-9 * std::max(1.0, std::abs(adapted.energies[0]))) {
    throw std::runtime_error("unperturbed ground state is degenerate");
  }
  const auto full = OccupationBasis::build(v.basis.n_modes());
  auto spectrum_of = [&](const Eigen::VectorXd& state) {
    Eigen::VectorXd embedded = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(full.size()));
    for (std::size_t k = 0; k < v.basis.size(); ++k) {
      embedded(static_cast<Eigen::Index>(*full.index_of(v.basis.state(k)))) =
          state(static_cast<Eigen::Index>(k));
    }
    embedded.normalize();
    return reduced_density_spectrum(embedded, full, region_a);
  };

  const auto rho0 = spectrum_of(adapted.eigenvectors().col(0));
  const auto rho1 = spectrum_of(first_order_state(adapted, v, lambda, 0));

  std::vector<double> levels;
  for (double p : rho0.probs()) {
    if (p < kEntanglementFloor) break;
    levels.push_back(-std::log(p));
  }
  const int n = static_cast<int>(region_a.size());
  const auto labeling = label_free_spectrum(levels, n, kEntanglementLabelTolerance);
  if (!labeling.exact) throw std::runtime_error("unperturbed entanglement spectrum is not free");

  // Single-occupancy ratios against the vacuum give eps~.
  const std::size_t modes = labeling.epsilons.size();
  std::vector<double> eps(modes);
  for (std::size_t j = 0; j < modes; ++j) {
    const auto single = static_cast<std::size_t>(
        std::find(labeling.patterns.begin(), labeling.patterns.end(), State{1} << j) -
        labeling.patterns.begin());
    eps[j] = std::log(rho1[0] / rho1[single]);
  }
  std::vector<double> sigma(std::size_t{1} << modes);
  free_probabilities_by_pattern(eps, 1.0, sigma);

  std::vector<bool> used(sigma.size(), false);
  double sum = 0.0;
  for (std::size_t k = 0; k < rho1.size(); ++k) {
    if (k < levels.size()) {
      const State pat = labeling.patterns[k];
      sum += std::abs(rho1[k] - sigma[pat]);
      used[pat] = true;
    } else {
      sum += rho1[k];
    }
  }
  for (std::size_t p = 0; p < sigma.size(); ++p) {
    if (!used[p]) sum += sigma[p];
  }
  return 0.5 * sum;
}

}  // namespace intdist
