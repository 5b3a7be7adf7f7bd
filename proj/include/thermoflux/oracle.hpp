#pragma once

#include <cstdint>
#include <limits>

#include "thermoflux/curve.hpp"
#include "thermoflux/state.hpp"

namespace thermoflux {

/// splitmix64; fixed so the random corpora are reproducible across runs
/// and languages.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1).
  double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

/// Dense linear program: maximize objective . x subject to a_eq x = b_eq
/// and lower <= x <= upper (upper entries may be +infinity).
struct LpProblem {
  Eigen::VectorXd objective;
  Eigen::MatrixXd a_eq;
  Eigen::VectorXd b_eq;
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  Eigen::VectorXd values;
  double objective_value = 0.0;
};

/// Two-phase dense simplex with Bland's anti-cycling rule and a 1e-10 pivot
/// tolerance. Intended for the small problems the oracle builds (n <= 8).
LpSolution simplex_solve(const LpProblem& problem);

/// True iff a Gibbs-stochastic matrix maps rho's populations to sigma's:
/// exists G >= 0 with unit column sums, G g = g and G eta = zeta.
bool oracle_feasible(const State& rho, const State& sigma, const System& system);

/// Brute-force maximum transition probability: maximize p over
/// Gibbs-stochastic G and p in [0,1] subject to (G eta)_i >= p zeta_i. The
/// residual (G eta - p zeta)/(1-p) is then a valid failure state.
double oracle_pstar(const State& rho, const State& sigma, const System& system);

/// Curve dominance sampled at `samples` uniform x in [0, Z].
bool dense_curve_check(const State& rho, const State& sigma, const System& system,
                       int samples);

/// Random Gibbs-stochastic matrix: convex mixture of the identity, the
/// rank-one map onto the Gibbs state, and an LP vertex steered toward a
/// random stochastic matrix. Deterministic per seed.
Eigen::MatrixXd random_gibbs_stochastic(const System& system, std::uint64_t seed);

}  // namespace thermoflux
