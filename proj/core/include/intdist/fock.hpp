#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

namespace intdist {

/// Occupation bitstring. Bit m holds n_m; mode 0 is the least significant bit.
using State = std::uint32_t;

inline constexpr int kMaxModes = 20;

/// Optional symmetry constraint on a Fock basis.
///
/// `twice_sz` is 2*S_z and only makes sense for the spinful layout where
/// site j carries modes (2j, 2j+1) = (up, down).
struct Sector {
  std::optional<int> particles;
  std::optional<int> twice_sz;

  bool admits(State s, int n_modes) const noexcept;
  bool unconstrained() const noexcept { return !particles && !twice_sz; }
};

/// Enumerated fermionic Fock basis, states in ascending bitstring order.
class OccupationBasis {
 public:
  /// Throws std::invalid_argument for n_modes outside [1, 20], for a
  /// spin constraint on an odd mode count, or when the sector is empty.
  static OccupationBasis build(int n_modes, Sector sector = {});

  int n_modes() const noexcept { return n_modes_; }
  std::size_t size() const noexcept { return states_.size(); }
  std::span<const State> states() const noexcept { return states_; }
  State state(std::size_t index) const { return states_.at(index); }
  const Sector& sector() const noexcept { return sector_; }

  std::optional<std::size_t> index_of(State s) const;

 private:
  OccupationBasis() = default;

  int n_modes_ = 0;
  Sector sector_;
  std::vector<State> states_;
  std::unordered_map<State, std::size_t> index_;
};

struct HopResult {
  State target;
  int sign;

  friend bool operator==(const HopResult&, const HopResult&) = default;
};

/// Action of c_i^dagger c_j on a basis ket.
///
/// Each leg contributes (-1)^(number of occupied modes below it). Returns
/// nullopt when the ket is annihilated. Throws std::out_of_range when a mode
/// index is outside [0, n_modes).
std::optional<HopResult> hopping_element(State state, int i, int j, int n_modes);

/// Dense real symmetric operator over an OccupationBasis.
struct ManyBodyOperator {
  OccupationBasis basis;
  Eigen::MatrixXd matrix;

  std::size_t dim() const noexcept { return basis.size(); }
};

/// Lifts sum_ij h_ij c_i^dagger c_j into the many-body basis.
/// Throws std::invalid_argument on dimension mismatch or a non-symmetric kernel.
ManyBodyOperator build_quadratic(const OccupationBasis& basis, const Eigen::MatrixXd& kernel);

/// Lifts sum_ij V_ij n_i n_j. Diagonal entries V_ii act as V_ii n_i.
ManyBodyOperator build_density_density(const OccupationBasis& basis,
                                       const Eigen::MatrixXd& couplings);

/// Sum of two operators on the same basis.
ManyBodyOperator operator+(const ManyBodyOperator& a, const ManyBodyOperator& b);
ManyBodyOperator operator*(double scale, const ManyBodyOperator& op);

/// Largest |M - M^T| entry.
double hermiticity_defect(const Eigen::MatrixXd& m);

int particle_count(State s) noexcept;

/// 2*S_z for the spinful layout: (#up) - (#down).
int twice_spin_z(State s, int n_modes) noexcept;

}  // namespace intdist
