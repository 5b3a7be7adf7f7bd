#include "thermoflux/curve.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

namespace thermoflux {

namespace {

std::string fmt(double v, int significant) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", significant, v);
  return buf;
}

}  // namespace

Curve build_curve(const State& state, const System& system) {
  const BetaOrder order = beta_order(state, system);
  const Eigen::VectorXd w = system.gibbs_weights();
  const Eigen::Index n = state.dim();

  Curve curve;
  curve.xs.resize(n + 1);
  curve.ys.resize(n + 1);
  curve.xs[0] = 0.0;
  curve.ys[0] = 0.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    const Eigen::Index i = order.perm[static_cast<std::size_t>(k)];
    curve.xs[k + 1] = curve.xs[k] + w[i];
    curve.ys[k + 1] = curve.ys[k] + state[i];
  }
  curve.z = curve.xs[n];
  curve.rank = (state.populations().array() > 0.0).count();
  return curve;
}

double v_at(const Curve& curve, double x) {
  if (x < -kTol || x > curve.z + kTol)
    throw Error(ErrorKind::OutOfRange, "v_at: x outside [0, Z]");
  x = std::clamp(x, 0.0, curve.z);

  const double* begin = curve.xs.data();
  const double* end = begin + curve.xs.size();
  const double* it = std::lower_bound(begin, end, x);
  const Eigen::Index k = it - begin;
  if (k < curve.xs.size() && curve.xs[k] == x) return curve.ys[k];
  const double slope = (curve.ys[k] - curve.ys[k - 1]) / (curve.xs[k] - curve.xs[k - 1]);
  return curve.ys[k - 1] + (x - curve.xs[k - 1]) * slope;
}

double l_at(const Curve& curve, double y) {
  if (y < -kTol || y > 1.0 + kTol)
    throw Error(ErrorKind::OutOfRange, "l_at: y outside [0, 1]");
  y = std::clamp(y, 0.0, 1.0);
  if (y == 1.0) return curve.xs[curve.rank];  // rank convention

  const double* begin = curve.ys.data();
  const double* end = begin + curve.ys.size();
  const double* it = std::lower_bound(begin, end, y);
  const Eigen::Index k = it - begin;
  if (k >= curve.ys.size()) return curve.xs[curve.rank];  // y within rounding of 1
  if (curve.ys[k] == y) return curve.xs[k];
  const double slope = (curve.ys[k] - curve.ys[k - 1]) / (curve.xs[k] - curve.xs[k - 1]);
  return curve.xs[k - 1] + (y - curve.ys[k - 1]) / slope;
}

ElbowSets elbow_sets(const State& state, const System& system) {
  const Curve curve = build_curve(state, system);
  ElbowSets sets;
  sets.xs = curve.xs.tail(curve.xs.size() - 1);
  sets.ys = curve.ys.segment(1, curve.rank);
  return sets;
}

bool thermo_majorizes(const State& rho, const State& sigma, const System& system,
                      bool strict) {
  if (rho.dim() != sigma.dim() || rho.dim() != system.dim())
    throw Error(ErrorKind::DimensionMismatch, "thermo_majorizes: dimensions differ");
  const double tol = strict ? 0.0 : kTol;
  const Curve rho_curve = build_curve(rho, system);
  const Curve sigma_curve = build_curve(sigma, system);
  for (Eigen::Index k = 1; k < sigma_curve.xs.size(); ++k) {
    if (v_at(rho_curve, sigma_curve.xs[k]) < sigma_curve.ys[k] - tol) return false;
  }
  return true;
}

void write_curve_csv(const Curve& curve, std::ostream& os) {
  os << "x,y\n";
  for (Eigen::Index k = 0; k < curve.xs.size(); ++k)
    os << fmt(curve.xs[k], 17) << ',' << fmt(curve.ys[k], 17) << '\n';
}

Curve read_curve_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != "x,y")
    throw Error(ErrorKind::InvalidInput, "curve csv: missing x,y header");
  std::vector<double> xs, ys;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos)
      throw Error(ErrorKind::InvalidInput, "curve csv: malformed row");
    xs.push_back(std::stod(line.substr(0, comma)));
    ys.push_back(std::stod(line.substr(comma + 1)));
  }
  if (xs.size() < 2 || xs.front() != 0.0 || ys.front() != 0.0)
    throw Error(ErrorKind::InvalidInput, "curve csv: breakpoints must start at (0,0)");
  Curve curve;
  curve.xs = Eigen::Map<Eigen::VectorXd>(xs.data(), static_cast<Eigen::Index>(xs.size()));
  curve.ys = Eigen::Map<Eigen::VectorXd>(ys.data(), static_cast<Eigen::Index>(ys.size()));
  curve.z = curve.xs[curve.xs.size() - 1];
  curve.rank = 0;
  for (Eigen::Index k = 1; k < curve.ys.size(); ++k)
    if (curve.ys[k] > curve.ys[k - 1]) ++curve.rank;
  return curve;
}

void write_curve_svg(const Curve& curve, std::ostream& os) {
  // Plot area [40, 620] x [20, 440] inside the 640x480 viewBox, y flipped.
  const auto px = [&](double x) { return 40.0 + 580.0 * x / curve.z; };
  const auto py = [&](double y) { return 440.0 - 420.0 * y; };

  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"480\" "
        "viewBox=\"0 0 640 480\">\n";
  os << "<line x1=\"40\" y1=\"440\" x2=\"620\" y2=\"440\" stroke=\"#cccccc\" "
        "stroke-width=\"1\"/>\n";
  os << "<line x1=\"40\" y1=\"440\" x2=\"40\" y2=\"20\" stroke=\"#cccccc\" "
        "stroke-width=\"1\"/>\n";
  os << "<polyline fill=\"none\" stroke=\"#2266aa\" stroke-width=\"1.5\" points=\"";
  for (Eigen::Index k = 0; k < curve.xs.size(); ++k) {
    if (k > 0) os << ' ';
    os << fmt(px(curve.xs[k]), 6) << ',' << fmt(py(curve.ys[k]), 6);
  }
  os << "\"/>\n</svg>\n";
}

}  // namespace thermoflux
