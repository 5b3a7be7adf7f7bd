#pragma once

#include <doctest.h>

#include "thermoflux/oracle.hpp"
#include "thermoflux/state.hpp"

// Shared random draws for the property tests; everything is seeded through
// SplitMix64 so failures reproduce.
namespace tftest {

inline Eigen::VectorXd random_simplex(thermoflux::SplitMix64& rng, Eigen::Index n) {
  Eigen::VectorXd p(n);
  for (Eigen::Index i = 0; i < n; ++i) p[i] = -std::log(1.0 - rng.next_double());
  return p / p.sum();
}

inline thermoflux::State random_state(thermoflux::SplitMix64& rng, Eigen::Index n) {
  return thermoflux::validate_state(random_simplex(rng, n));
}

inline thermoflux::System random_system(thermoflux::SplitMix64& rng, Eigen::Index n,
                                        double max_energy = 3.0, double beta = 1.0) {
  Eigen::VectorXd e(n);
  for (Eigen::Index i = 0; i < n; ++i) e[i] = max_energy * rng.next_double();
  return thermoflux::System(e, beta);
}

inline thermoflux::System uniform_system(Eigen::Index n) {
  return thermoflux::System(Eigen::VectorXd::Zero(n), 1.0);
}

// Independent route to the work of transition: bisection on the work-qubit
// gap with LP feasibility at every probe. Returns beta W in nats, +-inf when
// the answer leaves [-50, 50].
inline double oracle_work_bisection(const thermoflux::State& rho,
                                    const thermoflux::State& sigma,
                                    const thermoflux::System& system,
                                    double resolution = 1e-8) {
  using namespace thermoflux;
  const auto feasible = [&](double beta_w) {
    const System work_system(
        (Eigen::VectorXd(2) << 0.0, std::abs(beta_w) / system.beta()).finished(),
        system.beta());
    const State ground = validate_state((Eigen::VectorXd(2) << 1.0, 0.0).finished());
    const State excited = validate_state((Eigen::VectorXd(2) << 0.0, 1.0).finished());
    const auto [rho_emb, joint] =
        tensor(rho, system, beta_w <= 0.0 ? excited : ground, work_system);
    const State sigma_emb =
        tensor(sigma, system, beta_w <= 0.0 ? ground : excited, work_system).first;
    return oracle_feasible(rho_emb, sigma_emb, joint);
  };
  double lo = -50.0, hi = 50.0;
  if (!feasible(lo)) return -std::numeric_limits<double>::infinity();
  if (feasible(hi)) return std::numeric_limits<double>::infinity();
  while (hi - lo > resolution) {
    const double mid = 0.5 * (lo + hi);
    (feasible(mid) ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace tftest

#define CHECK_ERROR_KIND(expr, kind_)                    \
  do {                                                   \
    try {                                                \
      (void)(expr);                                      \
      FAIL("expected thermoflux::Error, nothing thrown"); \
    } catch (const thermoflux::Error& e) {               \
      CHECK(e.kind() == (kind_));                        \
    }                                                    \
  } while (0)
