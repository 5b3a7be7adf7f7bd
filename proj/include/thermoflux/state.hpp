#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "thermoflux/error.hpp"

namespace thermoflux {

// Absolute tolerance used for all probability/normalization comparisons.
inline constexpr double kTol = 1e-9;

/// Classical population vector over energy levels. Immutable once built;
/// construct through validate_state() so the invariants (entries >= 0,
/// sum == 1 within kTol) always hold.
class State {
 public:
  const Eigen::VectorXd& populations() const { return p_; }
  Eigen::Index dim() const { return p_.size(); }
  double operator[](Eigen::Index i) const { return p_[i]; }

  friend State validate_state(const Eigen::VectorXd& populations);

 private:
  explicit State(Eigen::VectorXd p) : p_(std::move(p)) {}
  Eigen::VectorXd p_;
};

/// Energy levels plus inverse temperature. Noisy-Operations mode is the
/// special case of all energies equal; kT = 1 units are beta = 1.
class System {
 public:
  System(Eigen::VectorXd energies, double beta);

  const Eigen::VectorXd& energies() const { return energies_; }
  double beta() const { return beta_; }
  Eigen::Index dim() const { return energies_.size(); }

  /// Per-level Gibbs weights e^{-beta E_i}.
  Eigen::VectorXd gibbs_weights() const;

  /// True when all energy levels coincide (Noisy-Operations mode).
  bool is_uniform() const;

 private:
  Eigen::VectorXd energies_;
  double beta_;
};

/// Small complex Hermitian matrix with unit trace; input form for states
/// carrying coherences. Validated on construction (Hermitian, trace one,
/// positive semidefinite, all within kTol).
class DensityMatrix {
 public:
  const Eigen::MatrixXcd& matrix() const { return m_; }
  Eigen::Index dim() const { return m_.rows(); }

  friend DensityMatrix validate_density_matrix(const Eigen::MatrixXcd& entries);

 private:
  explicit DensityMatrix(Eigen::MatrixXcd m) : m_(std::move(m)) {}
  Eigen::MatrixXcd m_;
};

/// Permutation sorting levels by eta_i e^{beta E_i} in descending order,
/// ties broken by ascending original index.
struct BetaOrder {
  std::vector<Eigen::Index> perm;

  Eigen::Index dim() const { return static_cast<Eigen::Index>(perm.size()); }
};

State validate_state(const Eigen::VectorXd& populations);

DensityMatrix validate_density_matrix(const Eigen::MatrixXcd& entries);

/// Z = sum_i e^{-beta E_i}.
double partition_function(const System& system);

/// Gibbs state g_i = e^{-beta E_i} / Z.
State gibbs_state(const System& system);

/// d-dimensional state with the first j entries 1/j and the rest zero.
/// Carries nonuniformity log2(d/j).
State sharp_state(Eigen::Index d, Eigen::Index j);

BetaOrder beta_order(const State& state, const System& system);

/// Sorting keys eta_i e^{beta E_i} (the slopes of the curve segments).
Eigen::VectorXd beta_keys(const State& state, const System& system);

/// Diagonal of rho in the energy eigenbasis. For degenerate levels this is
/// full dephasing, which under-reports convertibility but is always a valid
/// Thermal Operation.
State decohere(const DensityMatrix& rho, const System& system);

/// Tensor product of two state/system pairs: populations as the row-major
/// flattened outer product, energies as pairwise sums. Betas must match.
std::pair<State, System> tensor(const State& a, const System& sys_a,
                                const State& b, const System& sys_b);

}  // namespace thermoflux
