#include "intdist/spectra.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include <Eigen/SVD>

namespace intdist {

namespace {

constexpr double kClampBelow = 1e-14;

// Packs the bits of `s` found at `modes` into consecutive low bits.
State compress(State s, std::span<const int> modes) noexcept {
  State out = 0;
  for (std::size_t r = 0; r < modes.size(); ++r) out |= ((s >> modes[r]) & 1u) << r;
  return out;
}

}  // namespace

const Eigen::MatrixXd& EigenSystem::eigenvectors() const {
  if (!vectors) throw std::logic_error("eigenvectors were not retained");
  return *vectors;
}

std::vector<SpectralBlock> diagonalize_blocks(const ManyBodyOperator& op, bool keep_vectors) {
  const auto dim = op.dim();
  if (dim > kMaxDenseDim) {
    throw std::invalid_argument("dense diagonalization capped at " +
                                std::to_string(kMaxDenseDim) + " states, got " +
                                std::to_string(dim));
  }
  if (static_cast<std::size_t>(op.matrix.rows()) != dim || op.matrix.rows() != op.matrix.cols()) {
    throw std::invalid_argument("operator matrix does not match its basis");
  }

  // Union-find over the nonzero couplings.
  std::vector<std::size_t> parent(dim);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t c = 0; c < dim; ++c) {
    for (std::size_t r = c + 1; r < dim; ++r) {
      const auto ri = static_cast<Eigen::Index>(r), ci = static_cast<Eigen::Index>(c);
      if (op.matrix(ri, ci) != 0.0 || op.matrix(ci, ri) != 0.0) {
        const auto a = find(r), b = find(c);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
    }
  }
  std::vector<std::size_t> block_of(dim, dim);
  std::vector<SpectralBlock> blocks;
  for (std::size_t k = 0; k < dim; ++k) {
    const auto root = find(k);
    if (block_of[root] == dim) {
      block_of[root] = blocks.size();
      blocks.emplace_back();
    }
    blocks[block_of[root]].indices.push_back(k);
  }

  for (auto& block : blocks) {
    const auto n = static_cast<Eigen::Index>(block.indices.size());
    Eigen::MatrixXd sub(n, n);
    for (Eigen::Index r = 0; r < n; ++r)
      for (Eigen::Index c = 0; c < n; ++c)
        sub(r, c) = op.matrix(static_cast<Eigen::Index>(block.indices[static_cast<std::size_t>(r)]),
                              static_cast<Eigen::Index>(block.indices[static_cast<std::size_t>(c)]));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
        sub, keep_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw std::runtime_error("eigensolver did not converge");
    const auto& ev = solver.eigenvalues();
    block.energies.assign(ev.data(), ev.data() + ev.size());
    if (keep_vectors) block.vectors = solver.eigenvectors();
  }
  return blocks;
}

EigenSystem exact_diagonalize(const ManyBodyOperator& op, bool keep_vectors) {
  const auto blocks = diagonalize_blocks(op, keep_vectors);
  struct Entry {
    double energy;
    std::size_t block;
    Eigen::Index column;
  };
  std::vector<Entry> entries;
  entries.reserve(op.dim());
  for (std::size_t b = 0; b < blocks.size(); ++b)
    for (std::size_t k = 0; k < blocks[b].energies.size(); ++k)
      entries.push_back({blocks[b].energies[k], b, static_cast<Eigen::Index>(k)});
  // Ties keep block order, so the result is deterministic.
  std::stable_sort(entries.begin(), entries.end(),
                   [](const Entry& a, const Entry& b) { return a.energy < b.energy; });

  EigenSystem out;
  out.energies.reserve(entries.size());
  for (const auto& e : entries) out.energies.push_back(e.energy);
  if (keep_vectors) {
    const auto dim = static_cast<Eigen::Index>(op.dim());
    Eigen::MatrixXd vectors = Eigen::MatrixXd::Zero(dim, dim);
    for (Eigen::Index col = 0; col < dim; ++col) {
      const auto& e = entries[static_cast<std::size_t>(col)];
      const auto& block = blocks[e.block];
      for (std::size_t r = 0; r < block.indices.size(); ++r)
        vectors(static_cast<Eigen::Index>(block.indices[r]), col) =
            block.vectors(static_cast<Eigen::Index>(r), e.column);
    }
    out.vectors = std::move(vectors);
  }
  return out;
}

ProbabilitySpectrum thermal_probabilities(std::span<const double> energies, double beta) {
  if (energies.empty()) throw std::invalid_argument("energy list is empty");
  if (!std::isfinite(beta) || beta <= 0.0) {
    throw std::invalid_argument("beta must be finite and positive");
  }
  for (double e : energies) {
    if (!std::isfinite(e)) throw std::invalid_argument("energies must be finite");
  }
  const double e_min = *std::min_element(energies.begin(), energies.end());
  std::vector<double> weights(energies.size());
  std::transform(energies.begin(), energies.end(), weights.begin(),
                 [&](double e) { return std::exp(-beta * (e - e_min)); });
  return ProbabilitySpectrum::from_weights(std::move(weights), ThermalOrigin{beta});
}

ProbabilitySpectrum reduced_density_spectrum(std::span<const double> amplitudes,
                                             const OccupationBasis& basis,
                                             std::vector<int> region_a) {
  const int n = basis.n_modes();
  if (amplitudes.size() != basis.size()) {
    throw std::invalid_argument("state length " + std::to_string(amplitudes.size()) +
                                " does not match basis size " + std::to_string(basis.size()));
  }
  std::sort(region_a.begin(), region_a.end());
  if (std::adjacent_find(region_a.begin(), region_a.end()) != region_a.end()) {
    throw std::invalid_argument("region lists a mode twice");
  }
  if (region_a.empty() || static_cast<int>(region_a.size()) >= n) {
    throw std::invalid_argument("region must be a nonempty proper subset of the modes");
  }
  if (region_a.front() < 0 || region_a.back() >= n) {
    throw std::invalid_argument("region mode outside [0, " + std::to_string(n) + ")");
  }

  double norm2 = 0.0;
  for (double a : amplitudes) norm2 += a * a;
  if (std::abs(norm2 - 1.0) > 1e-10) {
    throw std::invalid_argument("state is not normalized (|psi|^2 = " + std::to_string(norm2) +
                                ")");
  }

  State mask_a = 0;
  for (int m : region_a) mask_a |= State{1} << m;
  std::vector<int> region_b;
  for (int m = 0; m < n; ++m) {
    if (!((mask_a >> m) & 1u)) region_b.push_back(m);
  }
  const State mask_b = ~mask_a & ((State{1} << n) - 1u);

  const auto dim_a = Eigen::Index{1} << region_a.size();
  const auto dim_b = Eigen::Index{1} << region_b.size();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim_a, dim_b);
  for (std::size_t k = 0; k < basis.size(); ++k) {
    const double amp = amplitudes[k];
    if (amp == 0.0) continue;
    const State s = basis.state(k);
    // Transpositions needed to move every occupied A mode ahead of the
    // occupied B modes that precede it.
    int swaps = 0;
    for (int a : region_a) {
      if ((s >> a) & 1u) swaps += std::popcount(s & mask_b & ((State{1} << a) - 1u));
    }
    const double sign = (swaps & 1) ? -1.0 : 1.0;
    m(compress(s, region_a), compress(s, region_b)) += sign * amp;
  }

  Eigen::BDCSVD<Eigen::MatrixXd> svd(m);
  const auto& sv = svd.singularValues();
  std::vector<double> probs(static_cast<std::size_t>(dim_a), 0.0);
  for (Eigen::Index r = 0; r < sv.size(); ++r) {
    const double p = sv(r) * sv(r);
    probs[static_cast<std::size_t>(r)] = p < kClampBelow ? 0.0 : p;
  }
  return ProbabilitySpectrum::from_probabilities(std::move(probs),
                                                 EntanglementOrigin{std::move(region_a)});
}

}  // namespace intdist
