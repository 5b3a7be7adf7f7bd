#include "thermoflux/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace thermoflux {

namespace {

constexpr double kPivotTol = 1e-10;
constexpr long kMaxPivots = 1000000;

struct Tableau {
  Eigen::MatrixXd t;              // (m+1) x (ncols+1), objective row last, rhs column last
  std::vector<Eigen::Index> basis;  // basic variable per constraint row

  Eigen::Index rows() const { return static_cast<Eigen::Index>(basis.size()); }
  Eigen::Index rhs() const { return t.cols() - 1; }
};

void pivot(Tableau& tab, Eigen::Index r, Eigen::Index j) {
  tab.t.row(r) /= tab.t(r, j);
  for (Eigen::Index i = 0; i < tab.t.rows(); ++i) {
    if (i == r) continue;
    const double f = tab.t(i, j);
    if (f != 0.0) tab.t.row(i) -= f * tab.t.row(r);
  }
  tab.basis[static_cast<std::size_t>(r)] = j;
}

// Minimizes the objective row over columns [0, limit) with Bland's rule.
// Returns false when the problem is unbounded below.
bool iterate(Tableau& tab, Eigen::Index limit, long& pivots) {
  const Eigen::Index m = tab.rows();
  const Eigen::Index obj = m;
  for (;;) {
    Eigen::Index entering = -1;
    for (Eigen::Index j = 0; j < limit; ++j) {
      if (tab.t(obj, j) < -kPivotTol) {
        entering = j;
        break;
      }
    }
    if (entering < 0) return true;

    Eigen::Index leaving = -1;
    double best = 0.0;
    for (Eigen::Index i = 0; i < m; ++i) {
      const double a = tab.t(i, entering);
      if (a <= kPivotTol) continue;
      const double ratio = tab.t(i, tab.rhs()) / a;
      if (leaving < 0 || ratio < best - 1e-12 * (1.0 + std::abs(best)) ||
          (std::abs(ratio - best) <= 1e-12 * (1.0 + std::abs(best)) &&
           tab.basis[static_cast<std::size_t>(i)] <
               tab.basis[static_cast<std::size_t>(leaving)])) {
        leaving = i;
        best = ratio;
      }
    }
    if (leaving < 0) return false;

    pivot(tab, leaving, entering);
    if (++pivots > kMaxPivots)
      throw Error(ErrorKind::NumericalFailure, "simplex: pivot limit exceeded");
  }
}

}  // namespace

LpSolution simplex_solve(const LpProblem& problem) {
  const Eigen::Index n = problem.objective.size();
  if (problem.lower.size() != n || problem.upper.size() != n ||
      (problem.a_eq.size() > 0 && problem.a_eq.cols() != n) ||
      problem.a_eq.rows() != problem.b_eq.size())
    throw Error(ErrorKind::DimensionMismatch, "simplex: inconsistent problem dimensions");
  for (Eigen::Index j = 0; j < n; ++j) {
    if (!std::isfinite(problem.lower[j]))
      throw Error(ErrorKind::InvalidInput, "simplex: lower bounds must be finite");
  }

  // Shift to y = x - lower >= 0 and turn finite upper bounds into slack rows.
  const Eigen::Index m0 = problem.a_eq.rows();
  Eigen::VectorXd b0 = problem.b_eq;
  if (m0 > 0) b0 -= problem.a_eq * problem.lower;
  std::vector<Eigen::Index> bounded;
  for (Eigen::Index j = 0; j < n; ++j)
    if (std::isfinite(problem.upper[j])) bounded.push_back(j);

  const Eigen::Index nb = static_cast<Eigen::Index>(bounded.size());
  const Eigen::Index nvars = n + nb;   // original vars + upper-bound slacks
  const Eigen::Index m = m0 + nb;
  const Eigen::Index ncols = nvars + m;  // + one artificial per row

  Tableau tab;
  tab.t = Eigen::MatrixXd::Zero(m + 1, ncols + 1);
  tab.basis.resize(static_cast<std::size_t>(m));
  if (m0 > 0) {
    tab.t.block(0, 0, m0, n) = problem.a_eq;
    tab.t.block(0, ncols, m0, 1) = b0;
  }
  for (Eigen::Index k = 0; k < nb; ++k) {
    const Eigen::Index r = m0 + k;
    tab.t(r, bounded[static_cast<std::size_t>(k)]) = 1.0;
    tab.t(r, n + k) = 1.0;
    tab.t(r, ncols) = problem.upper[bounded[static_cast<std::size_t>(k)]] -
                      problem.lower[bounded[static_cast<std::size_t>(k)]];
  }
  for (Eigen::Index i = 0; i < m; ++i) {
    if (tab.t(i, ncols) < 0.0) tab.t.row(i) = -tab.t.row(i);
    tab.t(i, nvars + i) = 1.0;
    tab.basis[static_cast<std::size_t>(i)] = nvars + i;
  }

  // Phase 1: minimize the sum of artificials.
  for (Eigen::Index i = 0; i < m; ++i) tab.t.row(m) -= tab.t.row(i);
  for (Eigen::Index i = 0; i < m; ++i) tab.t(m, nvars + i) = 0.0;

  long pivots = 0;
  iterate(tab, nvars, pivots);

  LpSolution solution;
  if (-tab.t(m, ncols) > 1e-8) {
    solution.status = LpStatus::Infeasible;
    return solution;
  }

  // Pivot leftover artificials out of the basis; drop redundant rows.
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < m; ++i) {
    if (tab.basis[static_cast<std::size_t>(i)] < nvars) {
      keep.push_back(i);
      continue;
    }
    Eigen::Index j = 0;
    for (; j < nvars; ++j)
      if (std::abs(tab.t(i, j)) > kPivotTol) break;
    if (j < nvars) {
      pivot(tab, i, j);
      keep.push_back(i);
    }
  }
  if (static_cast<Eigen::Index>(keep.size()) < m) {
    Tableau pruned;
    pruned.t.resize(static_cast<Eigen::Index>(keep.size()) + 1, tab.t.cols());
    for (std::size_t k = 0; k < keep.size(); ++k) {
      pruned.t.row(static_cast<Eigen::Index>(k)) = tab.t.row(keep[k]);
      pruned.basis.push_back(tab.basis[static_cast<std::size_t>(keep[k])]);
    }
    pruned.t.row(pruned.rows()) = tab.t.row(m);
    tab = std::move(pruned);
  }

  // Phase 2: minimize -objective over the feasible basis.
  const Eigen::Index m2 = tab.rows();
  tab.t.row(m2).setZero();
  tab.t.block(m2, 0, 1, n) = -problem.objective.transpose();
  for (Eigen::Index i = 0; i < m2; ++i) {
    const Eigen::Index bv = tab.basis[static_cast<std::size_t>(i)];
    const double cost = tab.t(m2, bv);
    if (cost != 0.0) tab.t.row(m2) -= cost * tab.t.row(i);
  }
  if (!iterate(tab, nvars, pivots)) {
    solution.status = LpStatus::Unbounded;
    return solution;
  }

  solution.status = LpStatus::Optimal;
  solution.values = problem.lower;
  for (Eigen::Index i = 0; i < m2; ++i) {
    const Eigen::Index bv = tab.basis[static_cast<std::size_t>(i)];
    if (bv < n) solution.values[bv] += tab.t(i, tab.rhs());
  }
  solution.objective_value = problem.objective.dot(solution.values);
  return solution;
}

namespace {

void check_oracle_inputs(const State& rho, const State& sigma, const System& system) {
  if (rho.dim() != sigma.dim() || rho.dim() != system.dim())
    throw Error(ErrorKind::DimensionMismatch, "oracle: dimensions differ");
}

// Rows shared by every Gibbs-stochastic LP: unit column sums and G g = g.
void gibbs_stochastic_rows(const System& system, Eigen::MatrixXd& a, Eigen::VectorXd& b,
                           Eigen::Index ncols) {
  const Eigen::Index n = system.dim();
  const Eigen::VectorXd g = gibbs_state(system).populations();
  a = Eigen::MatrixXd::Zero(2 * n, ncols);
  b.resize(2 * n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) a(j, i * n + j) = 1.0;
    b[j] = 1.0;
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) a(n + i, i * n + j) = g[j];
    b[n + i] = g[i];
  }
}

}  // namespace

bool oracle_feasible(const State& rho, const State& sigma, const System& system) {
  check_oracle_inputs(rho, sigma, system);
  const Eigen::Index n = rho.dim();

  LpProblem lp;
  Eigen::MatrixXd base;
  Eigen::VectorXd base_rhs;
  gibbs_stochastic_rows(system, base, base_rhs, n * n);
  lp.a_eq = Eigen::MatrixXd::Zero(3 * n, n * n);
  lp.b_eq.resize(3 * n);
  lp.a_eq.topRows(2 * n) = base;
  lp.b_eq.head(2 * n) = base_rhs;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) lp.a_eq(2 * n + i, i * n + j) = rho[j];
    lp.b_eq[2 * n + i] = sigma[i];
  }
  lp.objective = Eigen::VectorXd::Zero(n * n);
  lp.lower = Eigen::VectorXd::Zero(n * n);
  lp.upper = Eigen::VectorXd::Constant(n * n, std::numeric_limits<double>::infinity());
  return simplex_solve(lp).status == LpStatus::Optimal;
}

double oracle_pstar(const State& rho, const State& sigma, const System& system) {
  check_oracle_inputs(rho, sigma, system);
  const Eigen::Index n = rho.dim();
  const Eigen::Index nvars = n * n + 1 + n;  // G, p, surplus
  const Eigen::Index ip = n * n;

  LpProblem lp;
  Eigen::MatrixXd base;
  Eigen::VectorXd base_rhs;
  gibbs_stochastic_rows(system, base, base_rhs, nvars);
  lp.a_eq = Eigen::MatrixXd::Zero(3 * n, nvars);
  lp.b_eq.resize(3 * n);
  lp.a_eq.topRows(2 * n) = base;
  lp.b_eq.head(2 * n) = base_rhs;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) lp.a_eq(2 * n + i, i * n + j) = rho[j];
    lp.a_eq(2 * n + i, ip) = -sigma[i];
    lp.a_eq(2 * n + i, ip + 1 + i) = -1.0;
    lp.b_eq[2 * n + i] = 0.0;
  }
  lp.objective = Eigen::VectorXd::Zero(nvars);
  lp.objective[ip] = 1.0;
  lp.lower = Eigen::VectorXd::Zero(nvars);
  lp.upper = Eigen::VectorXd::Constant(nvars, std::numeric_limits<double>::infinity());
  lp.upper[ip] = 1.0;

  const LpSolution solution = simplex_solve(lp);
  if (solution.status != LpStatus::Optimal)
    throw Error(ErrorKind::NumericalFailure, "oracle_pstar: LP did not solve");
  return std::clamp(solution.objective_value, 0.0, 1.0);
}

bool dense_curve_check(const State& rho, const State& sigma, const System& system,
                       int samples) {
  check_oracle_inputs(rho, sigma, system);
  samples = std::max(samples, 2);
  const Curve rho_curve = build_curve(rho, system);
  const Curve sigma_curve = build_curve(sigma, system);
  for (int k = 0; k < samples; ++k) {
    const double x = rho_curve.z * static_cast<double>(k) / static_cast<double>(samples - 1);
    if (v_at(rho_curve, x) < v_at(sigma_curve, x) - kTol) return false;
  }
  return true;
}

Eigen::MatrixXd random_gibbs_stochastic(const System& system, std::uint64_t seed) {
  const Eigen::Index n = system.dim();
  SplitMix64 rng(seed);

  // Random column-stochastic target, then the Gibbs-stochastic vertex that
  // maximizes the inner product with it.
  Eigen::MatrixXd target(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    double colsum = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      target(i, j) = -std::log(1.0 - rng.next_double());
      colsum += target(i, j);
    }
    target.col(j) /= colsum;
  }

  LpProblem lp;
  gibbs_stochastic_rows(system, lp.a_eq, lp.b_eq, n * n);
  lp.objective.resize(n * n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) lp.objective[i * n + j] = target(i, j);
  lp.lower = Eigen::VectorXd::Zero(n * n);
  lp.upper = Eigen::VectorXd::Constant(n * n, std::numeric_limits<double>::infinity());
  const LpSolution solution = simplex_solve(lp);
  if (solution.status != LpStatus::Optimal)
    throw Error(ErrorKind::NumericalFailure, "random_gibbs_stochastic: projection LP failed");

  Eigen::MatrixXd vertex(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) vertex(i, j) = solution.values[i * n + j];

  Eigen::Vector3d weights;
  for (int k = 0; k < 3; ++k) weights[k] = -std::log(1.0 - rng.next_double());
  weights /= weights.sum();

  const Eigen::VectorXd g = gibbs_state(system).populations();
  return weights[0] * Eigen::MatrixXd::Identity(n, n) +
         weights[1] * (g * Eigen::RowVectorXd::Ones(n)) + weights[2] * vertex;
}

}  // namespace thermoflux
