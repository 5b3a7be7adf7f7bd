#pragma once

#include <Eigen/Dense>

#include "thermoflux/error.hpp"

namespace thermoflux {

/// Spectral decomposition A = V diag(lambda) V^dagger with real eigenvalues
/// sorted descending and unitary eigenvector columns.
struct HermitianEig {
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXcd eigenvectors;
};

/// Cyclic Jacobi diagonalization of a Hermitian matrix, sweeping until the
/// off-diagonal Frobenius norm drops below 1e-12. Throws NotHermitian when
/// the input is not Hermitian within 1e-9.
HermitianEig hermitian_eig(const Eigen::MatrixXcd& matrix);

}  // namespace thermoflux
