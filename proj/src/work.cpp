#include "thermoflux/work.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "thermoflux/curve.hpp"
#include "thermoflux/transition.hpp"

namespace thermoflux {

namespace {

constexpr double kLn2 = 0.6931471805599453;

void check_dims(const State& rho, const State& sigma, const System& system) {
  if (rho.dim() != sigma.dim() || rho.dim() != system.dim())
    throw Error(ErrorKind::DimensionMismatch, "work: dimensions differ");
}

}  // namespace

double WorkValue::nats() const { return mode == Mode::NO ? beta_w * kLn2 : beta_w; }

WorkValue work_of_transition(const State& rho, const State& sigma, const System& system) {
  check_dims(rho, sigma, system);
  const Curve rho_curve = build_curve(rho, system);
  const Curve sigma_curve = build_curve(sigma, system);
  const ElbowSets sigma_elbows = elbow_sets(sigma, system);

  double max_ratio = 0.0;
  for (Eigen::Index k = 0; k < sigma_elbows.ys.size(); ++k) {
    const double y = sigma_elbows.ys[k];
    max_ratio = std::max(max_ratio, l_at(rho_curve, y) / l_at(sigma_curve, y));
  }

  WorkValue work;
  work.mode = system.is_uniform() ? Mode::NO : Mode::TO;
  work.beta_w = work.mode == Mode::NO ? -std::log2(max_ratio) : -std::log(max_ratio);
  return work;
}

double nonuniformity_of_formation(const State& state) {
  return -std::log2(state.populations().maxCoeff() * static_cast<double>(state.dim()));
}

std::pair<double, double> pstar_bounds(const State& rho, const State& sigma,
                                       const System& system) {
  check_dims(rho, sigma, system);
  const double lower = std::min(1.0, std::exp(work_of_transition(rho, sigma, system).nats()));
  const double upper = std::min(1.0, std::exp(-work_of_transition(sigma, rho, system).nats()));
  return {lower, upper};
}

double pstar_with_work(const State& rho, const State& sigma, const System& system,
                       double beta_w) {
  check_dims(rho, sigma, system);
  if (!std::isfinite(beta_w) || std::abs(beta_w) > 700.0)
    throw Error(ErrorKind::OutOfRange, "pstar_with_work: beta_w outside usable range");

  // Two-level work system with gap |W|: supplied work (beta_w <= 0) starts
  // in the excited level and ends in the ground state, demanded work ends
  // in the excited level.
  const System work_system(
      (Eigen::VectorXd(2) << 0.0, std::abs(beta_w) / system.beta()).finished(),
      system.beta());
  const State ground = validate_state((Eigen::VectorXd(2) << 1.0, 0.0).finished());
  const State excited = validate_state((Eigen::VectorXd(2) << 0.0, 1.0).finished());

  const auto [rho_emb, joint] =
      tensor(rho, system, beta_w <= 0.0 ? excited : ground, work_system);
  const auto [sigma_emb, joint2] =
      tensor(sigma, system, beta_w <= 0.0 ? ground : excited, work_system);
  (void)joint2;
  return max_transition_probability(rho_emb, sigma_emb, joint);
}

double qubit_tradeoff_closed_form(double eta1, double zeta1, double w_bits) {
  if (!(eta1 >= 0.5 && eta1 <= 1.0) || !(zeta1 >= 0.5 && zeta1 <= 1.0))
    throw Error(ErrorKind::OutOfRange,
                "qubit_tradeoff: ordered eigenvalues must lie in [1/2, 1]");

  const System uniform((Eigen::VectorXd(2) << 0.0, 0.0).finished(), 1.0);
  const State rho = validate_state((Eigen::VectorXd(2) << eta1, 1.0 - eta1).finished());
  const State sigma = validate_state((Eigen::VectorXd(2) << zeta1, 1.0 - zeta1).finished());
  const double w_transition = work_of_transition(rho, sigma, uniform).beta_w;  // bits

  if (w_bits <= w_transition) return 1.0;
  const double pow_w = std::exp2(-w_bits);
  if (eta1 < zeta1) {
    const double p0 = eta1 / zeta1;
    if (w_bits <= 0.0) return (2.0 - pow_w) * p0 + (pow_w - 1.0) / zeta1;
    return p0 * pow_w;
  }
  const double denom = 2.0 * eta1 * zeta1 - zeta1;
  const double crossover =
      denom > 0.0 ? std::log2((eta1 - 2.0 * zeta1 + 2.0 * eta1 * zeta1) / denom) : 0.0;
  if (w_bits <= crossover) return (2.0 * eta1 - 1.0) + 2.0 * (1.0 - eta1) * pow_w;
  return (eta1 / zeta1) * pow_w;
}

std::pair<double, double> jarzynski_upper_check(const State& sigma, const System& system) {
  const State tau = gibbs_state(system);
  const double pstar = max_transition_probability(tau, sigma, system);
  const double beta_w = work_of_transition(sigma, tau, system).nats();
  return {pstar, pstar * std::exp(beta_w)};
}

}  // namespace thermoflux
