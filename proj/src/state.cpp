#include "thermoflux/state.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "thermoflux/eig.hpp"

namespace thermoflux {

State validate_state(const Eigen::VectorXd& populations) {
  if (populations.size() == 0)
    throw Error(ErrorKind::EmptyVector, "state: empty population vector");
  Eigen::VectorXd p = populations;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    if (!std::isfinite(p[i]))
      throw Error(ErrorKind::InvalidInput, "state: non-finite population");
    if (p[i] < -1e-12)
      throw Error(ErrorKind::NegativePopulation, "state: negative population");
    if (p[i] < 0.0) p[i] = 0.0;
  }
  const double sum = p.sum();
  if (std::abs(sum - 1.0) > kTol)
    throw Error(ErrorKind::NotNormalized, "state: populations do not sum to 1");
  p /= sum;
  return State(std::move(p));
}

System::System(Eigen::VectorXd energies, double beta)
    : energies_(std::move(energies)), beta_(beta) {
  if (energies_.size() == 0)
    throw Error(ErrorKind::InvalidSystem, "system: empty energy list");
  if (!energies_.allFinite())
    throw Error(ErrorKind::InvalidSystem, "system: non-finite energy level");
  if (!(beta_ > 0.0) || !std::isfinite(beta_))
    throw Error(ErrorKind::InvalidSystem, "system: beta must be positive and finite");
}

Eigen::VectorXd System::gibbs_weights() const {
  return (-beta_ * energies_.array()).exp();
}

bool System::is_uniform() const {
  return energies_.maxCoeff() - energies_.minCoeff() <= 1e-12;
}

DensityMatrix validate_density_matrix(const Eigen::MatrixXcd& entries) {
  const Eigen::Index n = entries.rows();
  if (n == 0) throw Error(ErrorKind::EmptyVector, "density matrix: empty");
  if (entries.cols() != n)
    throw Error(ErrorKind::DimensionMismatch, "density matrix: not square");
  if ((entries - entries.adjoint()).cwiseAbs().maxCoeff() > 1e-9)
    throw Error(ErrorKind::NotHermitian, "density matrix: not Hermitian within 1e-9");
  if (std::abs(entries.trace().real() - 1.0) > 1e-9)
    throw Error(ErrorKind::NotNormalized, "density matrix: trace is not 1 within 1e-9");
  const HermitianEig eig = hermitian_eig(entries);
  if (eig.eigenvalues.minCoeff() < -1e-9)
    throw Error(ErrorKind::NotPositiveSemidefinite,
                "density matrix: negative eigenvalue beyond tolerance");
  return DensityMatrix(0.5 * (entries + entries.adjoint()));
}

double partition_function(const System& system) {
  return system.gibbs_weights().sum();
}

State gibbs_state(const System& system) {
  const Eigen::VectorXd w = system.gibbs_weights();
  return validate_state(w / w.sum());
}

State sharp_state(Eigen::Index d, Eigen::Index j) {
  if (d < 1 || j < 1 || j > d)
    throw Error(ErrorKind::InvalidRank, "sharp state: need 1 <= j <= d");
  Eigen::VectorXd p = Eigen::VectorXd::Zero(d);
  p.head(j).setConstant(1.0 / static_cast<double>(j));
  return validate_state(p);
}

Eigen::VectorXd beta_keys(const State& state, const System& system) {
  if (state.dim() != system.dim())
    throw Error(ErrorKind::DimensionMismatch, "beta_keys: state/system dimensions differ");
  return state.populations().array() * (system.beta() * system.energies().array()).exp();
}

BetaOrder beta_order(const State& state, const System& system) {
  const Eigen::VectorXd keys = beta_keys(state, system);
  BetaOrder order;
  order.perm.resize(static_cast<std::size_t>(keys.size()));
  std::iota(order.perm.begin(), order.perm.end(), 0);
  std::stable_sort(order.perm.begin(), order.perm.end(),
                   [&](Eigen::Index a, Eigen::Index b) { return keys[a] > keys[b]; });
  return order;
}

State decohere(const DensityMatrix& rho, const System& system) {
  if (rho.dim() != system.dim())
    throw Error(ErrorKind::DimensionMismatch, "decohere: state/system dimensions differ");
  Eigen::VectorXd diag = rho.matrix().diagonal().real();
  for (Eigen::Index i = 0; i < diag.size(); ++i)
    if (diag[i] < 0.0 && diag[i] >= -kTol) diag[i] = 0.0;
  return validate_state(diag);
}

std::pair<State, System> tensor(const State& a, const System& sys_a,
                                const State& b, const System& sys_b) {
  if (a.dim() != sys_a.dim() || b.dim() != sys_b.dim())
    throw Error(ErrorKind::DimensionMismatch, "tensor: state/system dimensions differ");
  if (std::abs(sys_a.beta() - sys_b.beta()) > 1e-12)
    throw Error(ErrorKind::BetaMismatch, "tensor: inverse temperatures differ");
  const Eigen::Index na = a.dim();
  const Eigen::Index nb = b.dim();
  Eigen::VectorXd p(na * nb);
  Eigen::VectorXd e(na * nb);
  for (Eigen::Index i = 0; i < na; ++i) {
    for (Eigen::Index j = 0; j < nb; ++j) {
      p[i * nb + j] = a[i] * b[j];
      e[i * nb + j] = sys_a.energies()[i] + sys_b.energies()[j];
    }
  }
  return {validate_state(p), System(std::move(e), sys_a.beta())};
}

}  // namespace thermoflux
