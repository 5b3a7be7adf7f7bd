#pragma once

#include <tuple>
#include <vector>

#include "thermoflux/curve.hpp"
#include "thermoflux/state.hpp"

namespace thermoflux {

/// Achievability certificate for the optimal probabilistic transition
/// rho -> p* sigma + (1 - p*) X. Block boundaries and ratios are indexed in
/// sigma's beta-order; states and the measurement diagonal are stored in
/// original level order. rho_sigma is the mixture the protocol reaches
/// before measuring, i.e. exactly p* sigma + (1 - p*) X.
struct Protocol {
  double pstar = 1.0;
  std::vector<Eigen::Index> boundaries;  // l_0 = 0 < l_1 < ... < l_k = n
  Eigen::VectorXd ratios;                // r^(1) < ... < r^(k), +inf allowed
  BetaOrder sigma_order;
  State x_state;
  Eigen::VectorXd m_diag;
  State rho_sigma;
};

/// p* = min over sigma's elbows of Vtilde_x(rho) / Vtilde_x(sigma), clamped
/// to [0, 1]; equals 1 exactly when rho thermo-majorizes sigma.
double max_transition_probability(const State& rho, const State& sigma,
                                  const System& system);

/// The state whose curve interpolates rho's curve at sigma's elbow
/// x-coordinates, with populations laid out along sigma's beta-order.
/// rho always thermo-majorizes the result.
State flatten_to_target_order(const State& rho, const State& sigma,
                              const System& system);

Protocol build_protocol(const State& rho, const State& sigma, const System& system);

/// Block unitary [[sqrt(M), sqrt(I-M)], [sqrt(I-M), -sqrt(M)]] realizing the
/// two-outcome measurement; orthogonal, self-inverse, and commuting with
/// diag(H, H) for any diagonal H.
Eigen::MatrixXd measurement_unitary(const Eigen::VectorXd& m_diag);

/// Work cost of erasing the measurement record, in kT (nats): ln 2 for a
/// single run, the binary entropy h(p) when the record is compressed over
/// many repetitions.
double erasure_cost(double p, bool repeated);

/// Switching-qubit embedding for transitions between different Hamiltonians
/// at equal beta: returns rho x |0><0| and sigma x |1><1| over the combined
/// level list (H1 levels, H2 levels) with Z = Z1 + Z2.
std::tuple<State, State, System> embed_changing_hamiltonian(const State& rho,
                                                            const System& sys1,
                                                            const State& sigma,
                                                            const System& sys2);

}  // namespace thermoflux
