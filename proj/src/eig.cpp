#include "thermoflux/eig.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <vector>

namespace thermoflux {

namespace {

double off_diagonal_norm(const Eigen::MatrixXcd& a) {
  double sum = 0.0;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      if (i != j) sum += std::norm(a(i, j));
  return std::sqrt(sum);
}

}  // namespace

HermitianEig hermitian_eig(const Eigen::MatrixXcd& matrix) {
  const Eigen::Index n = matrix.rows();
  if (n == 0 || matrix.cols() != n)
    throw Error(ErrorKind::DimensionMismatch, "hermitian_eig: matrix must be square and non-empty");
  if ((matrix - matrix.adjoint()).cwiseAbs().maxCoeff() > 1e-9)
    throw Error(ErrorKind::NotHermitian, "hermitian_eig: input not Hermitian within 1e-9");

  Eigen::MatrixXcd a = 0.5 * (matrix + matrix.adjoint());
  Eigen::MatrixXcd v = Eigen::MatrixXcd::Identity(n, n);

  constexpr double kOffTarget = 1e-12;
  constexpr int kMaxSweeps = 100;

  int sweep = 0;
  while (off_diagonal_norm(a) > kOffTarget) {
    if (++sweep > kMaxSweeps)
      throw Error(ErrorKind::NumericalFailure, "hermitian_eig: Jacobi sweeps did not converge");
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const std::complex<double> apq = a(p, q);
        const double g = std::abs(apq);
        if (g < 1e-18) continue;

        // Phase factor taking a_pq to |a_pq|, then a real Jacobi rotation
        // on the resulting symmetric 2x2 block.
        const std::complex<double> phase = apq / g;  // e^{i phi}
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double tau = (aqq - app) / (2.0 * g);
        const double t = (tau >= 0.0) ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                      : -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;

        // G restricted to (p,q): [[c, s], [-s/phase, c/phase]].
        const std::complex<double> gqp = -s / phase;
        const std::complex<double> gqq = c / phase;

        // A <- G^dagger A G, applied as column then row updates.
        for (Eigen::Index k = 0; k < n; ++k) {
          const std::complex<double> akp = a(k, p);
          const std::complex<double> akq = a(k, q);
          a(k, p) = c * akp + gqp * akq;
          a(k, q) = s * akp + gqq * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const std::complex<double> apk = a(p, k);
          const std::complex<double> aqk = a(q, k);
          a(p, k) = c * apk + std::conj(gqp) * aqk;
          a(q, k) = s * apk + std::conj(gqq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = std::complex<double>(a(p, p).real(), 0.0);
        a(q, q) = std::complex<double>(a(q, q).real(), 0.0);

        for (Eigen::Index k = 0; k < n; ++k) {
          const std::complex<double> vkp = v(k, p);
          const std::complex<double> vkq = v(k, q);
          v(k, p) = c * vkp + gqp * vkq;
          v(k, q) = s * vkp + gqq * vkq;
        }
      }
    }
  }

  std::vector<Eigen::Index> idx(static_cast<std::size_t>(n));
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](Eigen::Index i, Eigen::Index j) {
    return a(i, i).real() > a(j, j).real();
  });

  HermitianEig out;
  out.eigenvalues.resize(n);
  out.eigenvectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    out.eigenvalues[k] = a(idx[static_cast<std::size_t>(k)], idx[static_cast<std::size_t>(k)]).real();
    out.eigenvectors.col(k) = v.col(idx[static_cast<std::size_t>(k)]);
  }
  return out;
}

}  // namespace thermoflux
