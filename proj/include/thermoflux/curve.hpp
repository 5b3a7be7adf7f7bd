#pragma once

#include <iosfwd>
#include <string>

#include "thermoflux/state.hpp"

namespace thermoflux {

/// Beta-ordered thermo-majorization (Lorenz) curve: piecewise-linear concave
/// graph through (0,0) and the cumulative points (sum of Gibbs weights,
/// sum of populations). x runs over [0, Z] in raw Gibbs-weight units.
struct Curve {
  Eigen::VectorXd xs;   // breakpoint x-coordinates, xs[0] = 0, xs[n] = Z
  Eigen::VectorXd ys;   // breakpoint heights, ys[0] = 0, ys[n] = 1
  double z = 0.0;       // total x-extent (partition function)
  Eigen::Index rank = 0;  // number of nonzero populations
};

/// The finite criteria sets of the theory: L(sigma) is the full list of
/// elbow x-coordinates, D(sigma) the elbow heights truncated at the rank.
struct ElbowSets {
  Eigen::VectorXd xs;  // dim entries, ascending
  Eigen::VectorXd ys;  // rank entries, ascending, last = 1
};

Curve build_curve(const State& state, const System& system);

/// Height of the curve at x (the vertical monotone). x is clamped into
/// [0, Z] when within kTol of the ends, otherwise OutOfRange.
double v_at(const Curve& curve, double x);

/// Horizontal monotone: the leftmost x at which the curve reaches height y.
/// At y = 1 this returns the cumulative Gibbs weight of the first rank
/// levels (the rank convention).
double l_at(const Curve& curve, double y);

ElbowSets elbow_sets(const State& state, const System& system);

/// Deterministic convertibility: true iff the curve of rho is at least that
/// of sigma (within kTol) at every elbow of sigma. strict = true drops the
/// tolerance for exact rational fixtures.
bool thermo_majorizes(const State& rho, const State& sigma, const System& system,
                      bool strict = false);

/// Breakpoints as CSV with header "x,y", 17 significant digits.
void write_curve_csv(const Curve& curve, std::ostream& os);

/// Re-reads the exact breakpoints written by write_curve_csv.
Curve read_curve_csv(std::istream& is);

/// Single polyline in a 640x480 viewBox with light axes, 6 significant digits.
void write_curve_svg(const Curve& curve, std::ostream& os);

}  // namespace thermoflux
