#include "thermoflux/transition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace thermoflux {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_dims(const State& rho, const State& sigma, const System& system) {
  if (rho.dim() != sigma.dim() || rho.dim() != system.dim())
    throw Error(ErrorKind::DimensionMismatch, "transition: dimensions differ");
}

// rho's curve heights sampled at sigma's elbow x-coordinates, together with
// sigma's own cumulative populations at those elbows.
struct ElbowProfile {
  Eigen::VectorXd t;        // sigma's elbow x values, ascending
  Eigen::VectorXd v_rho;    // Vtilde_t(rho)
  Eigen::VectorXd v_sigma;  // Vtilde_t(sigma), exact partial sums
  BetaOrder order;          // sigma's beta-order
};

ElbowProfile profile_against_target(const State& rho, const State& sigma,
                                    const System& system) {
  ElbowProfile prof;
  prof.order = beta_order(sigma, system);
  const Curve sigma_curve = build_curve(sigma, system);
  const Curve rho_curve = build_curve(rho, system);
  const Eigen::Index n = sigma.dim();
  prof.t = sigma_curve.xs.tail(n);
  prof.v_sigma = sigma_curve.ys.tail(n);
  prof.v_rho.resize(n);
  for (Eigen::Index k = 0; k < n; ++k) prof.v_rho[k] = v_at(rho_curve, prof.t[k]);
  return prof;
}

}  // namespace

double max_transition_probability(const State& rho, const State& sigma,
                                  const System& system) {
  check_dims(rho, sigma, system);
  if (thermo_majorizes(rho, sigma, system)) return 1.0;
  const ElbowProfile prof = profile_against_target(rho, sigma, system);
  double pstar = kInf;
  for (Eigen::Index k = 0; k < prof.t.size(); ++k) {
    if (prof.v_sigma[k] <= 0.0) continue;  // cannot occur for x > 0
    pstar = std::min(pstar, prof.v_rho[k] / prof.v_sigma[k]);
  }
  return std::clamp(pstar, 0.0, 1.0);
}

State flatten_to_target_order(const State& rho, const State& sigma,
                              const System& system) {
  check_dims(rho, sigma, system);
  const ElbowProfile prof = profile_against_target(rho, sigma, system);
  const Eigen::Index n = rho.dim();
  Eigen::VectorXd populations = Eigen::VectorXd::Zero(n);
  double prev = 0.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    const double mass = std::max(prof.v_rho[k] - prev, 0.0);
    populations[prof.order.perm[static_cast<std::size_t>(k)]] = mass;
    prev = prof.v_rho[k];
  }
  return validate_state(populations);
}

Protocol build_protocol(const State& rho, const State& sigma, const System& system) {
  check_dims(rho, sigma, system);
  const Eigen::Index n = rho.dim();
  const ElbowProfile prof = profile_against_target(rho, sigma, system);

  // Cumulative masses in sigma's beta-order: va follows rho's curve sampled
  // at sigma's elbows, vz is sigma's own curve.
  const Eigen::VectorXd& va = prof.v_rho;
  const Eigen::VectorXd& vz = prof.v_sigma;

  double pstar = kInf;
  for (Eigen::Index k = 0; k < n; ++k)
    if (vz[k] > 0.0) pstar = std::min(pstar, va[k] / vz[k]);
  pstar = std::clamp(pstar, 0.0, 1.0);

  const auto in_original_order = [&](const Eigen::VectorXd& v) {
    Eigen::VectorXd out(n);
    for (Eigen::Index k = 0; k < n; ++k)
      out[prof.order.perm[static_cast<std::size_t>(k)]] = v[k];
    return out;
  };

  if (pstar >= 1.0 - 1e-12) {
    // Deterministic conversion; X is arbitrary and fixed to sigma.
    return Protocol{1.0,
                    {0, n},
                    Eigen::VectorXd::Ones(1),
                    prof.order,
                    sigma,
                    Eigen::VectorXd::Ones(n),
                    sigma};
  }

  std::vector<Eigen::Index> boundaries{0};
  std::vector<double> ratios;
  Eigen::VectorXd mixture(n);  // p* sigma + (1-p*) X, sigma's beta-order
  Eigen::VectorXd x_vec(n);
  Eigen::VectorXd m_vec(n);

  Eigen::Index prev = 0;
  while (prev < n) {
    const double va_prev = prev == 0 ? 0.0 : va[prev - 1];
    const double vz_prev = prev == 0 ? 0.0 : vz[prev - 1];

    if (vz[n - 1] - vz_prev <= 0.0) {
      // No sigma mass remains: the rest of rho's flattened mass goes to X.
      ratios.push_back(kInf);
      for (Eigen::Index j = prev; j < n; ++j) {
        const double a = va[j] - (j == 0 ? 0.0 : va[j - 1]);
        mixture[j] = a;
        x_vec[j] = a / (1.0 - pstar);
        m_vec[j] = 0.0;
      }
      prev = n;
      break;
    }

    double r = kInf;
    for (Eigen::Index l = prev; l < n; ++l) {
      const double dz = vz[l] - vz_prev;
      if (dz <= 0.0) continue;
      r = std::min(r, (va[l] - va_prev) / dz);
    }
    Eigen::Index end = prev;
    for (Eigen::Index l = prev; l < n; ++l) {
      const double dz = vz[l] - vz_prev;
      if (dz <= 0.0) continue;
      if (std::abs((va[l] - va_prev) / dz - r) <= 1e-12 * (1.0 + r)) end = l + 1;
    }

    ratios.push_back(r);
    for (Eigen::Index j = prev; j < end; ++j) {
      const Eigen::Index i = prof.order.perm[static_cast<std::size_t>(j)];
      const double zeta = sigma[i];
      mixture[j] = r * zeta;
      x_vec[j] = (r - pstar) * zeta / (1.0 - pstar);
      m_vec[j] = pstar / r;
    }
    boundaries.push_back(end);
    prev = end;
  }
  if (boundaries.back() != n) boundaries.push_back(n);

  return Protocol{
      pstar,
      std::move(boundaries),
      Eigen::Map<Eigen::VectorXd>(ratios.data(), static_cast<Eigen::Index>(ratios.size())),
      prof.order,
      validate_state(in_original_order(x_vec)),
      in_original_order(m_vec),
      validate_state(in_original_order(mixture))};
}

Eigen::MatrixXd measurement_unitary(const Eigen::VectorXd& m_diag) {
  const Eigen::Index n = m_diag.size();
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!(m_diag[i] >= 0.0 && m_diag[i] <= 1.0))
      throw Error(ErrorKind::OutOfRangeEntry,
                  "measurement_unitary: diagonal entries must lie in [0, 1]");
  }
  Eigen::MatrixXd u = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double root_m = std::sqrt(m_diag[i]);
    const double root_rest = std::sqrt(1.0 - m_diag[i]);
    u(i, i) = root_m;
    u(i, n + i) = root_rest;
    u(n + i, i) = root_rest;
    u(n + i, n + i) = -root_m;
  }
  return u;
}

double erasure_cost(double p, bool repeated) {
  if (!(p >= 0.0 && p <= 1.0))
    throw Error(ErrorKind::OutOfRange, "erasure_cost: p must lie in [0, 1]");
  if (!repeated) return std::log(2.0);
  const auto xlogx = [](double x) { return x > 0.0 ? x * std::log(x) : 0.0; };
  return -xlogx(p) - xlogx(1.0 - p);
}

std::tuple<State, State, System> embed_changing_hamiltonian(const State& rho,
                                                            const System& sys1,
                                                            const State& sigma,
                                                            const System& sys2) {
  if (rho.dim() != sys1.dim() || sigma.dim() != sys2.dim())
    throw Error(ErrorKind::DimensionMismatch, "embed: state/system dimensions differ");
  if (std::abs(sys1.beta() - sys2.beta()) > 1e-12)
    throw Error(ErrorKind::BetaMismatch, "embed: inverse temperatures differ");

  const Eigen::Index n1 = rho.dim();
  const Eigen::Index n2 = sigma.dim();
  Eigen::VectorXd energies(n1 + n2);
  energies.head(n1) = sys1.energies();
  energies.tail(n2) = sys2.energies();

  Eigen::VectorXd rho_emb = Eigen::VectorXd::Zero(n1 + n2);
  rho_emb.head(n1) = rho.populations();
  Eigen::VectorXd sigma_emb = Eigen::VectorXd::Zero(n1 + n2);
  sigma_emb.tail(n2) = sigma.populations();

  return {validate_state(rho_emb), validate_state(sigma_emb),
          System(std::move(energies), sys1.beta())};
}

}  // namespace thermoflux
