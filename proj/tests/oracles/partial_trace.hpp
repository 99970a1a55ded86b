#pragma once

// Reduced density matrix by explicit contraction. Each basis ket is
// reordered as (A modes ascending)(B modes ascending) with bubble-sort
// signs, then rho_A[a][a'] = sum_b psi(a, b) psi(a', b).

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "jacobi.hpp"

namespace oracle {

inline std::vector<double> entanglement_spectrum(const std::vector<double>& psi,
                                                 const std::vector<std::uint32_t>& basis,
                                                 int n_modes, const std::vector<int>& region_a) {
  auto in_a = [&](int m) {
    for (int a : region_a)
      if (a == m) return true;
    return false;
  };
  std::map<std::uint32_t, std::size_t> a_index;
  std::map<std::uint32_t, std::map<std::uint32_t, double>> by_b;  // b -> (a -> amp)
  for (std::size_t k = 0; k < basis.size(); ++k) {
    std::vector<int> order;
    for (int m = 0; m < n_modes; ++m)
      if ((basis[k] >> m) & 1u) order.push_back(m);
    // Stable bubble sort on key (in_a ? 0 : 1), counting swaps.
    int swaps = 0;
    for (std::size_t i = 0; i < order.size(); ++i)
      for (std::size_t j = 0; j + 1 < order.size() - i; ++j)
        if (!in_a(order[j]) && in_a(order[j + 1])) {
          std::swap(order[j], order[j + 1]);
          ++swaps;
        }
    std::uint32_t a = 0, b = 0;
    for (int m : order) (in_a(m) ? a : b) |= 1u << m;
    a_index.emplace(a, 0);
    by_b[b][a] += (swaps % 2 ? -1.0 : 1.0) * psi[k];
  }
  // All A occupations, so the spectrum is padded to 2^|A|.
  std::vector<std::uint32_t> a_states;
  for (std::uint32_t s = 0; s < (1u << n_modes); ++s) {
    bool only_a = true;
    for (int m = 0; m < n_modes; ++m)
      if (((s >> m) & 1u) && !in_a(m)) only_a = false;
    if (only_a) a_states.push_back(s);
  }
  std::map<std::uint32_t, std::size_t> pos;
  for (std::size_t i = 0; i < a_states.size(); ++i) pos[a_states[i]] = i;
  Matrix rho(a_states.size(), std::vector<double>(a_states.size(), 0.0));
  for (const auto& [b, row] : by_b)
    for (const auto& [a1, x] : row)
      for (const auto& [a2, y] : row) rho[pos[a1]][pos[a2]] += x * y;
  auto values = jacobi_eigenvalues(rho);
  std::sort(values.rbegin(), values.rend());
  return values;
}

}  // namespace oracle
