#pragma once

#include "thermoflux/state.hpp"

namespace thermoflux {

/// Bipartite pure state |Psi_AB> as its dA x dB amplitude matrix,
/// Frobenius-normalized within kTol.
class PureBipartite {
 public:
  const Eigen::MatrixXcd& amplitudes() const { return a_; }
  Eigen::Index dim_a() const { return a_.rows(); }
  Eigen::Index dim_b() const { return a_.cols(); }

  friend PureBipartite validate_pure_bipartite(const Eigen::MatrixXcd& amplitudes);

 private:
  explicit PureBipartite(Eigen::MatrixXcd a) : a_(std::move(a)) {}
  Eigen::MatrixXcd a_;
};

PureBipartite validate_pure_bipartite(const Eigen::MatrixXcd& amplitudes);

/// Descending squared singular values of the amplitude matrix (the spectrum
/// of the reduced state), zero-padded to min(dA, dB).
State schmidt_spectrum(const PureBipartite& psi);

/// Ebits gained (positive) or consumed (negative) converting psi to phi
/// under LOCC; the ratio maximization runs over the elbows of the initial
/// state's Lorenz curve.
double entanglement_of_transition(const PureBipartite& psi, const PureBipartite& phi);

}  // namespace thermoflux
