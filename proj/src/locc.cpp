#include "thermoflux/locc.hpp"

#include <algorithm>
#include <cmath>

#include "thermoflux/curve.hpp"
#include "thermoflux/eig.hpp"

namespace thermoflux {

PureBipartite validate_pure_bipartite(const Eigen::MatrixXcd& amplitudes) {
  if (amplitudes.size() == 0)
    throw Error(ErrorKind::EmptyVector, "pure bipartite: empty amplitude matrix");
  if (std::abs(amplitudes.squaredNorm() - 1.0) > kTol)
    throw Error(ErrorKind::NotNormalized, "pure bipartite: squared norm is not 1");
  return PureBipartite(amplitudes);
}

State schmidt_spectrum(const PureBipartite& psi) {
  // Eigenvalues of the smaller Gram matrix are the squared singular values.
  const Eigen::MatrixXcd& a = psi.amplitudes();
  const Eigen::MatrixXcd gram =
      psi.dim_a() <= psi.dim_b() ? Eigen::MatrixXcd(a * a.adjoint())
                                 : Eigen::MatrixXcd(a.adjoint() * a);
  const HermitianEig eig = hermitian_eig(gram);
  return validate_state(eig.eigenvalues.cwiseMax(0.0));
}

double entanglement_of_transition(const PureBipartite& psi, const PureBipartite& phi) {
  const State spec_psi = schmidt_spectrum(psi);
  const State spec_phi = schmidt_spectrum(phi);
  const Eigen::Index m = std::max(spec_psi.dim(), spec_phi.dim());

  const auto padded = [m](const State& s) {
    Eigen::VectorXd p = Eigen::VectorXd::Zero(m);
    p.head(s.dim()) = s.populations();
    return validate_state(p);
  };
  const State initial = padded(spec_psi);
  const State target = padded(spec_phi);
  const System uniform(Eigen::VectorXd::Zero(m), 1.0);

  const Curve initial_curve = build_curve(initial, uniform);
  const Curve target_curve = build_curve(target, uniform);
  const ElbowSets initial_elbows = elbow_sets(initial, uniform);

  double max_ratio = 0.0;
  for (Eigen::Index k = 0; k < initial_elbows.ys.size(); ++k) {
    const double y = initial_elbows.ys[k];
    max_ratio = std::max(max_ratio, l_at(target_curve, y) / l_at(initial_curve, y));
  }
  return -std::log2(max_ratio);
}

}  // namespace thermoflux
