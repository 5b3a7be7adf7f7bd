#pragma once

#include <vector>

#include "thermoflux/eig.hpp"
#include "thermoflux/state.hpp"

namespace thermoflux {

/// Finite surrogate for the continuous family alpha in [0, inf]. Always
/// contains {0, 1/2, 1, 2, inf}; the refined grid doubles the log-spaced
/// interior density.
struct AlphaGrid {
  std::vector<double> values;  // ascending, +inf last

  static AlphaGrid standard(bool refined = false);
  static AlphaGrid with(std::vector<double> extra);
};

/// Classical Renyi divergence D_alpha(p || q) in nats, evaluated on
/// populations. Support violations surface as +inf, never as exceptions.
double renyi_divergence(const State& p, const State& q, double alpha);

/// Generalized free energy in kT units: D_alpha(rho || tau) - log Z.
double free_energy_alpha(const State& state, const System& system, double alpha);

/// Largest p such that the flagged mixture p sigma x |0><0| +
/// (1-p) tau x |1><1| passes every F_alpha constraint on the grid. For
/// block-diagonal targets this is the maximum heralded probability under
/// catalytic thermal operations, up to grid refinement.
double heralded_bound_cto(const State& rho, const State& sigma, const System& system,
                          const AlphaGrid& grid);

/// Free coherence A_alpha(rho) = S_alpha(rho || rho_D) with the three-branch
/// quantum Renyi divergence; alpha = inf is the max-relative entropy.
double free_coherence(const DensityMatrix& rho, const System& system, double alpha);

/// Upper bound on the heralded probability for coherent targets from the
/// A_alpha monotones. Never claimed achievable.
double heralded_coherence_bound(const DensityMatrix& rho, const DensityMatrix& sigma,
                                const System& system, const AlphaGrid& grid);

}  // namespace thermoflux
