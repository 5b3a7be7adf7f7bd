#include "thermoflux/catalytic.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace thermoflux {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kGapTol = 1e-11;    // feasibility slack on constraint gaps
constexpr double kEigFloor = 1e-13;  // eigenvalues below this count as zero

void append_log_spaced(std::vector<double>& values, int points) {
  for (int k = 0; k < points; ++k) {
    const double e = -3.0 + 6.0 * static_cast<double>(k) / static_cast<double>(points - 1);
    values.push_back(std::pow(10.0, e));
  }
}

// Largest p in [0,1] with gap(p) >= -kGapTol. The gap is sampled at 32
// points first: if it is monotone non-increasing, or feasibility flips sign
// exactly once, a bisection on the unique bracket suffices. Only gaps whose
// feasibility flips more than once fall back to a 10^4-point scan for the
// last feasible point before tightening.
double largest_feasible(const std::function<double(double)>& gap) {
  const auto feasible = [&](double p) { return gap(p) >= -kGapTol; };
  if (feasible(1.0)) return 1.0;
  if (!feasible(0.0)) return 0.0;

  constexpr int kSamples = 32;
  bool monotone = true;
  int flips = 0;
  int last_feasible = 0;
  double prev = gap(0.0);
  bool prev_ok = true;
  for (int k = 1; k < kSamples; ++k) {
    const double p = static_cast<double>(k) / (kSamples - 1);
    const double g = gap(p);
    if (g > prev + 1e-12) monotone = false;
    const bool ok = g >= -kGapTol;
    if (ok != prev_ok) ++flips;
    if (ok) last_feasible = k;
    prev = g;
    prev_ok = ok;
  }

  double lo = 0.0;
  double hi = 1.0;
  if (monotone || flips <= 1) {
    lo = static_cast<double>(last_feasible) / (kSamples - 1);
    hi = std::min(1.0, static_cast<double>(last_feasible + 1) / (kSamples - 1));
  } else {
    const int grid = 10000;
    int last = 0;
    for (int k = grid; k >= 0; --k) {
      if (feasible(static_cast<double>(k) / grid)) {
        last = k;
        break;
      }
    }
    lo = static_cast<double>(last) / grid;
    hi = std::min(1.0, static_cast<double>(last + 1) / grid);
  }
  while (hi - lo > 1e-10) {
    const double mid = 0.5 * (lo + hi);
    (feasible(mid) ? lo : hi) = mid;
  }
  return lo;
}

}  // namespace

AlphaGrid AlphaGrid::standard(bool refined) {
  // Dense enough that halving the log spacing moves heralded bounds by well
  // under 1e-3 on thermal instances.
  std::vector<double> values{0.0, 0.5, 1.0, 2.0};
  append_log_spaced(values, refined ? 385 : 193);
  values.push_back(kInf);
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  AlphaGrid grid;
  grid.values = std::move(values);
  return grid;
}

AlphaGrid AlphaGrid::with(std::vector<double> extra) {
  for (double a : extra)
    if (a < 0.0 || std::isnan(a))
      throw Error(ErrorKind::OutOfRange, "alpha grid: alpha must be >= 0");
  extra.insert(extra.end(), {0.0, 0.5, 1.0, 2.0, kInf});
  std::sort(extra.begin(), extra.end());
  extra.erase(std::unique(extra.begin(), extra.end()), extra.end());
  AlphaGrid grid;
  grid.values = std::move(extra);
  return grid;
}

double renyi_divergence(const State& p, const State& q, double alpha) {
  if (p.dim() != q.dim())
    throw Error(ErrorKind::DimensionMismatch, "renyi_divergence: dimensions differ");
  if (alpha < 0.0 || std::isnan(alpha))
    throw Error(ErrorKind::OutOfRange, "renyi_divergence: alpha must be >= 0");
  const Eigen::Index n = p.dim();

  if (alpha == 0.0) {
    double mass = 0.0;
    for (Eigen::Index i = 0; i < n; ++i)
      if (p[i] > 0.0) mass += q[i];
    return -std::log(mass);
  }
  if (alpha == 1.0) {
    double sum = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (p[i] <= 0.0) continue;
      if (q[i] <= 0.0) return kInf;
      sum += p[i] * std::log(p[i] / q[i]);
    }
    return sum;
  }
  if (std::isinf(alpha)) {
    double max_ratio = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (p[i] <= 0.0) continue;
      if (q[i] <= 0.0) return kInf;
      max_ratio = std::max(max_ratio, p[i] / q[i]);
    }
    return std::log(max_ratio);
  }

  // log-sum-exp over alpha log p + (1-alpha) log q; direct powers overflow
  // for the large-alpha grid points.
  double max_exponent = -kInf;
  std::vector<double> exponents;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (p[i] <= 0.0) continue;
    if (q[i] <= 0.0) {
      if (alpha > 1.0) return kInf;
      continue;  // p^alpha q^{1-alpha} -> 0 for alpha < 1
    }
    const double e = alpha * std::log(p[i]) + (1.0 - alpha) * std::log(q[i]);
    exponents.push_back(e);
    max_exponent = std::max(max_exponent, e);
  }
  if (exponents.empty()) return kInf;  // disjoint supports
  double sum = 0.0;
  for (double e : exponents) sum += std::exp(e - max_exponent);
  return (max_exponent + std::log(sum)) / (alpha - 1.0);
}

double free_energy_alpha(const State& state, const System& system, double alpha) {
  if (state.dim() != system.dim())
    throw Error(ErrorKind::DimensionMismatch, "free_energy_alpha: dimensions differ");
  return renyi_divergence(state, gibbs_state(system), alpha) -
         std::log(partition_function(system));
}

double heralded_bound_cto(const State& rho, const State& sigma, const System& system,
                          const AlphaGrid& grid) {
  if (rho.dim() != sigma.dim() || rho.dim() != system.dim())
    throw Error(ErrorKind::DimensionMismatch, "heralded_bound_cto: dimensions differ");

  const System flag((Eigen::VectorXd(2) << 0.0, 0.0).finished(), system.beta());
  const State ground = validate_state((Eigen::VectorXd(2) << 1.0, 0.0).finished());
  const State excited = validate_state((Eigen::VectorXd(2) << 0.0, 1.0).finished());
  const State tau = gibbs_state(system);

  const auto [rho_hat, joint] = tensor(rho, system, ground, flag);
  const Eigen::VectorXd sigma_branch = tensor(sigma, system, ground, flag).first.populations();
  const Eigen::VectorXd tau_branch = tensor(tau, system, excited, flag).first.populations();
  const State tau_joint = gibbs_state(joint);

  double bound = 1.0;
  for (double alpha : grid.values) {
    const double lhs = renyi_divergence(rho_hat, tau_joint, alpha);
    const auto gap = [&](double p) {
      const State mix = validate_state(p * sigma_branch + (1.0 - p) * tau_branch);
      return lhs - renyi_divergence(mix, tau_joint, alpha);
    };
    bound = std::min(bound, largest_feasible(gap));
    if (bound <= 0.0) break;
  }
  return bound;
}

namespace {

// Entropy-style sums ignore eigenvalues below kEigFloor; density-matrix
// spectra are clamped there to absorb Jacobi dust around exact zeros.
double entropy_nats(const Eigen::VectorXd& spectrum) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < spectrum.size(); ++i)
    if (spectrum[i] > kEigFloor) s -= spectrum[i] * std::log(spectrum[i]);
  return s;
}

bool has_off_support_mass(const Eigen::MatrixXcd& rho, const Eigen::VectorXd& diag) {
  for (Eigen::Index i = 0; i < diag.size(); ++i) {
    if (diag[i] > kEigFloor) continue;
    for (Eigen::Index j = 0; j < diag.size(); ++j)
      if (std::abs(rho(i, j)) > 1e-10) return true;
  }
  return false;
}

}  // namespace

double free_coherence(const DensityMatrix& rho, const System& system, double alpha) {
  if (rho.dim() != system.dim())
    throw Error(ErrorKind::DimensionMismatch, "free_coherence: dimensions differ");
  if (alpha < 0.0 || std::isnan(alpha))
    throw Error(ErrorKind::OutOfRange, "free_coherence: alpha must be >= 0");
  const Eigen::Index n = rho.dim();
  const Eigen::MatrixXcd& m = rho.matrix();
  const Eigen::VectorXd diag = m.diagonal().real().cwiseMax(0.0);

  if (alpha == 1.0) {
    if (has_off_support_mass(m, diag)) return kInf;
    const HermitianEig eig = hermitian_eig(m);
    return entropy_nats(diag) - entropy_nats(eig.eigenvalues.cwiseMax(0.0));
  }

  if (std::isinf(alpha)) {
    if (has_off_support_mass(m, diag)) return kInf;
    Eigen::VectorXd scale(n);
    for (Eigen::Index i = 0; i < n; ++i)
      scale[i] = diag[i] > kEigFloor ? 1.0 / std::sqrt(diag[i]) : 0.0;
    const Eigen::MatrixXcd c = scale.asDiagonal() * m * scale.asDiagonal();
    const HermitianEig eig = hermitian_eig(c);
    return std::log(std::max(eig.eigenvalues.maxCoeff(), 0.0));
  }

  if (alpha < 1.0) {
    const HermitianEig eig = hermitian_eig(m);
    // tr[rho^alpha rho_D^{1-alpha}] with both powers taken on supports.
    double sum = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (diag[i] <= kEigFloor) continue;
      double a_ii = 0.0;
      for (Eigen::Index k = 0; k < n; ++k) {
        const double lambda = eig.eigenvalues[k];
        if (lambda <= kEigFloor) continue;
        a_ii += (alpha == 0.0 ? 1.0 : std::pow(lambda, alpha)) *
                std::norm(eig.eigenvectors(i, k));
      }
      sum += a_ii * std::pow(diag[i], 1.0 - alpha);
    }
    return std::log(sum) / (alpha - 1.0);
  }

  // Sandwiched form for alpha > 1, with tr[C^alpha] taken in log space so
  // large grid alphas do not overflow.
  if (has_off_support_mass(m, diag)) return kInf;
  Eigen::VectorXd scale(n);
  for (Eigen::Index i = 0; i < n; ++i)
    scale[i] = diag[i] > kEigFloor ? std::pow(diag[i], (1.0 - alpha) / (2.0 * alpha)) : 0.0;
  const Eigen::MatrixXcd c = scale.asDiagonal() * m * scale.asDiagonal();
  const HermitianEig eig = hermitian_eig(c);
  double max_exponent = -kInf;
  std::vector<double> exponents;
  for (Eigen::Index k = 0; k < n; ++k) {
    if (eig.eigenvalues[k] <= kEigFloor) continue;
    const double e = alpha * std::log(eig.eigenvalues[k]);
    exponents.push_back(e);
    max_exponent = std::max(max_exponent, e);
  }
  if (exponents.empty()) return kInf;
  double sum = 0.0;
  for (double e : exponents) sum += std::exp(e - max_exponent);
  return (max_exponent + std::log(sum)) / (alpha - 1.0);
}

double heralded_coherence_bound(const DensityMatrix& rho, const DensityMatrix& sigma,
                                const System& system, const AlphaGrid& grid) {
  if (rho.dim() != sigma.dim() || rho.dim() != system.dim())
    throw Error(ErrorKind::DimensionMismatch, "heralded_coherence_bound: dimensions differ");
  const Eigen::Index n = system.dim();

  // Joint level list (E_i, E_i): flag qubit with trivial Hamiltonian.
  Eigen::VectorXd joint_energies(2 * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    joint_energies[2 * i] = system.energies()[i];
    joint_energies[2 * i + 1] = system.energies()[i];
  }
  const System joint(joint_energies, system.beta());

  const auto flagged = [&](const Eigen::MatrixXcd& block, int flag_level) {
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j)
        out(2 * i + flag_level, 2 * j + flag_level) = block(i, j);
    return out;
  };

  const Eigen::VectorXd tau = gibbs_state(system).populations();
  const Eigen::MatrixXcd rho_hat = flagged(rho.matrix(), 0);
  const Eigen::MatrixXcd sigma_branch = flagged(sigma.matrix(), 0);
  const Eigen::MatrixXcd tau_branch =
      flagged(tau.cast<std::complex<double>>().asDiagonal(), 1);

  const DensityMatrix rho_hat_dm = validate_density_matrix(rho_hat);
  double bound = 1.0;
  for (double alpha : grid.values) {
    const double lhs = free_coherence(rho_hat_dm, joint, alpha);
    const auto gap = [&](double p) {
      const DensityMatrix mix =
          validate_density_matrix(p * sigma_branch + (1.0 - p) * tau_branch);
      return lhs - free_coherence(mix, joint, alpha);
    };
    bound = std::min(bound, largest_feasible(gap));
    if (bound <= 0.0) break;
  }
  return bound;
}

}  // namespace thermoflux
