#pragma once

#include <utility>

#include "thermoflux/state.hpp"

namespace thermoflux {

enum class Mode { NO, TO };

/// Work (TO) or nonuniformity (NO) of a transition. TO values are the
/// dimensionless beta W in natural-log units, NO values are bits; positive
/// means extractable, negative must be supplied. Infinite values are
/// representable for targets whose support could never be reached.
struct WorkValue {
  double beta_w = 0.0;
  Mode mode = Mode::TO;

  /// Value in natural-log units regardless of mode.
  double nats() const;
};

/// Finite elbow evaluation: e^{-beta W} is the largest ratio of the
/// horizontal monotones over the target's elbow heights.
WorkValue work_of_transition(const State& rho, const State& sigma, const System& system);

/// I_infty = -log2(eta_1 n) for uniform-energy systems.
double nonuniformity_of_formation(const State& state);

/// (lower, upper) with lower <= p* <= upper: lower = e^{beta W_{rho->sigma}}
/// clamped to 1, upper = min(1, e^{-beta W_{sigma->rho}}).
std::pair<double, double> pstar_bounds(const State& rho, const State& sigma,
                                       const System& system);

/// Maximum transition probability when beta_w (natural-log units) of work is
/// additionally supplied (beta_w < 0) or demanded back (beta_w > 0),
/// realized by appending a two-level work system and stretching the curve.
double pstar_with_work(const State& rho, const State& sigma, const System& system,
                       double beta_w);

/// Closed-form qubit tradeoff p*(W) under uniform energies; w is in bits.
double qubit_tradeoff_closed_form(double eta1, double zeta1, double w_bits);

/// For rho = Gibbs: returns (p*, p* e^{beta W_{sigma->tau}}); the product
/// never exceeds 1 and saturates when sigma's curve is a straight line.
std::pair<double, double> jarzynski_upper_check(const State& sigma, const System& system);

}  // namespace thermoflux
