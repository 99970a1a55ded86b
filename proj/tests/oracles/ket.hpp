#pragma once

// Fermionic kets as ordered lists of occupied modes. Operators act by
// moving the target mode to the front with adjacent swaps, one sign flip
// per swap, which is the canonical-ordering definition of the sign.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "jacobi.hpp"

namespace oracle {

struct Ket {
  std::vector<int> modes;  // ascending
  double amplitude = 1.0;
};

inline Ket ket_from_bits(std::uint32_t bits, int n_modes) {
  Ket k;
  for (int m = 0; m < n_modes; ++m)
    if ((bits >> m) & 1u) k.modes.push_back(m);
  return k;
}

inline std::uint32_t bits_of(const Ket& k) {
  std::uint32_t b = 0;
  for (int m : k.modes) b |= 1u << m;
  return b;
}

inline std::optional<Ket> annihilate(int mode, Ket k) {
  auto it = std::find(k.modes.begin(), k.modes.end(), mode);
  if (it == k.modes.end()) return std::nullopt;
  // Bubble the mode to the front.
  for (auto pos = it; pos != k.modes.begin(); --pos) {
    std::iter_swap(pos, pos - 1);
    k.amplitude = -k.amplitude;
  }
  k.modes.erase(k.modes.begin());
  return k;
}

inline std::optional<Ket> create(int mode, Ket k) {
  if (std::find(k.modes.begin(), k.modes.end(), mode) != k.modes.end()) return std::nullopt;
  k.modes.insert(k.modes.begin(), mode);
  // Bubble it back into ascending position.
  for (std::size_t i = 0; i + 1 < k.modes.size() && k.modes[i] > k.modes[i + 1]; ++i) {
    std::swap(k.modes[i], k.modes[i + 1]);
    k.amplitude = -k.amplitude;
  }
  return k;
}

/// <bits_out| c_i^dag c_j |bits_in> over an explicit list of basis states.
inline Matrix quadratic_matrix(const std::vector<std::uint32_t>& basis, int n_modes,
                               const Matrix& h) {
  std::map<std::uint32_t, std::size_t> index;
  for (std::size_t k = 0; k < basis.size(); ++k) index[basis[k]] = k;
  Matrix out(basis.size(), std::vector<double>(basis.size(), 0.0));
  for (std::size_t col = 0; col < basis.size(); ++col) {
    for (int i = 0; i < n_modes; ++i) {
      for (int j = 0; j < n_modes; ++j) {
        if (h[i][j] == 0.0) continue;
        auto a = annihilate(j, ket_from_bits(basis[col], n_modes));
        if (!a) continue;
        auto c = create(i, *a);
        if (!c) continue;
        auto row = index.find(bits_of(*c));
        if (row == index.end()) continue;
        out[row->second][col] += h[i][j] * c->amplitude;
      }
    }
  }
  return out;
}

/// sum_{i<j} w_ij n_i n_j with w_ij = v[i][j] + v[j][i].
inline void add_density_density(Matrix& m, const std::vector<std::uint32_t>& basis,
                                const Matrix& v) {
  const int n = static_cast<int>(v.size());
  for (std::size_t k = 0; k < basis.size(); ++k) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (((basis[k] >> i) & 1u) && ((basis[k] >> j) & 1u) && i != j) m[k][k] += v[i][j];
  }
}

}  // namespace oracle
