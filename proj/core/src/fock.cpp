#include "intdist/fock.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <stdexcept>
#include <string>

namespace intdist {

namespace {

constexpr double kSymmetryTol = 1e-12;

// Parity of occupied modes strictly below `mode`.
int sign_below(State s, int mode) noexcept {
  const State below = s & ((State{1} << mode) - 1u);
  return (std::popcount(below) & 1) ? -1 : 1;
}

void check_mode(int mode, int n_modes) {
  if (mode < 0 || mode >= n_modes) {
    throw std::out_of_range("mode index " + std::to_string(mode) + " outside [0, " +
                            std::to_string(n_modes) + ")");
  }
}

void check_square(const Eigen::MatrixXd& m, const OccupationBasis& basis, const char* what) {
  if (m.rows() != basis.n_modes() || m.cols() != basis.n_modes()) {
    throw std::invalid_argument(std::string(what) + " must be " +
                                std::to_string(basis.n_modes()) + "x" +
                                std::to_string(basis.n_modes()) + ", got " +
                                std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
  if (hermiticity_defect(m) > kSymmetryTol) {
    throw std::invalid_argument(std::string(what) + " is not symmetric");
  }
}

}  // namespace

int particle_count(State s) noexcept { return std::popcount(s); }

int twice_spin_z(State s, int n_modes) noexcept {
  int up = 0;
  int down = 0;
  for (int m = 0; m < n_modes; ++m) {
    if ((s >> m) & 1u) (m % 2 == 0 ? up : down)++;
  }
  return up - down;
}

bool Sector::admits(State s, int n_modes) const noexcept {
  if (particles && particle_count(s) != *particles) return false;
  if (twice_sz && twice_spin_z(s, n_modes) != *twice_sz) return false;
  return true;
}

OccupationBasis OccupationBasis::build(int n_modes, Sector sector) {
  if (n_modes < 1 || n_modes > kMaxModes) {
    throw std::invalid_argument("n_modes must lie in [1, " + std::to_string(kMaxModes) +
                                "], got " + std::to_string(n_modes));
  }
  if (sector.twice_sz && n_modes % 2 != 0) {
    throw std::invalid_argument("spin sector requires an even number of modes (2 per site)");
  }

  OccupationBasis basis;
  basis.n_modes_ = n_modes;
  basis.sector_ = sector;
  const State end = State{1} << n_modes;
  for (State s = 0; s < end; ++s) {
    if (!sector.admits(s, n_modes)) continue;
    basis.index_.emplace(s, basis.states_.size());
    basis.states_.push_back(s);
  }
  if (basis.states_.empty()) {
    throw std::invalid_argument("sector admits no states for n_modes = " +
                                std::to_string(n_modes));
  }
  return basis;
}

std::optional<std::size_t> OccupationBasis::index_of(State s) const {
  if (auto it = index_.find(s); it != index_.end()) return it->second;
  return std::nullopt;
}

std::optional<HopResult> hopping_element(State state, int i, int j, int n_modes) {
  check_mode(i, n_modes);
  check_mode(j, n_modes);
  const State bit_j = State{1} << j;
  const State bit_i = State{1} << i;
  if (!(state & bit_j)) return std::nullopt;
  int sign = sign_below(state, j);
  const State removed = state & ~bit_j;
  if (removed & bit_i) return std::nullopt;
  sign *= sign_below(removed, i);
  return HopResult{removed | bit_i, sign};
}

double hermiticity_defect(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  if (m.size() == 0) return 0.0;
  return (m - m.transpose()).cwiseAbs().maxCoeff();
}

ManyBodyOperator build_quadratic(const OccupationBasis& basis, const Eigen::MatrixXd& kernel) {
  check_square(kernel, basis, "quadratic kernel");
  const auto n = basis.n_modes();
  const auto dim = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim, dim);

  for (Eigen::Index col = 0; col < dim; ++col) {
    const State s = basis.state(static_cast<std::size_t>(col));
    for (int j = 0; j < n; ++j) {
      if (!((s >> j) & 1u)) continue;
      for (int i = 0; i < n; ++i) {
        const double h = kernel(i, j);
        if (h == 0.0) continue;
        const auto hop = hopping_element(s, i, j, n);
        if (!hop) continue;
        // Quadratic terms preserve particle number, so a missing target can
        // only arise from a spin constraint; such terms leave the sector.
        const auto row = basis.index_of(hop->target);
        if (!row) {
          throw std::invalid_argument("quadratic kernel couples states outside the basis sector");
        }
        m(static_cast<Eigen::Index>(*row), col) += h * hop->sign;
      }
    }
  }
  return ManyBodyOperator{basis, std::move(m)};
}

ManyBodyOperator build_density_density(const OccupationBasis& basis,
                                       const Eigen::MatrixXd& couplings) {
  check_square(couplings, basis, "density-density couplings");
  const auto n = basis.n_modes();
  const auto dim = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim, dim);
  for (Eigen::Index k = 0; k < dim; ++k) {
    const State s = basis.state(static_cast<std::size_t>(k));
    double diag = 0.0;
    for (int i = 0; i < n; ++i) {
      if (!((s >> i) & 1u)) continue;
      for (int j = 0; j < n; ++j) {
        if ((s >> j) & 1u) diag += couplings(i, j);
      }
    }
    m(k, k) = diag;
  }
  return ManyBodyOperator{basis, std::move(m)};
}

ManyBodyOperator operator+(const ManyBodyOperator& a, const ManyBodyOperator& b) {
  if (a.basis.n_modes() != b.basis.n_modes() || a.basis.size() != b.basis.size() ||
      !std::equal(a.basis.states().begin(), a.basis.states().end(), b.basis.states().begin())) {
    throw std::invalid_argument("operators live on different bases");
  }
  return ManyBodyOperator{a.basis, a.matrix + b.matrix};
}

ManyBodyOperator operator*(double scale, const ManyBodyOperator& op) {
  return ManyBodyOperator{op.basis, scale * op.matrix};
}

}  // namespace intdist
