// Command-line front end: JSON problems in, JSON results out. See the
// README for the problem-file schema.

#include <CLI11.hpp>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>
#include <string>

#include "thermoflux/catalytic.hpp"
#include "thermoflux/curve.hpp"
#include "thermoflux/locc.hpp"
#include "thermoflux/oracle.hpp"
#include "thermoflux/transition.hpp"
#include "thermoflux/work.hpp"

namespace tf = thermoflux;
using nlohmann::json;

namespace {

// All numbers are serialized with 17 significant digits; infinities as the
// strings "inf"/"-inf" so outputs stay valid JSON.
std::string num(double v) {
  if (std::isinf(v)) return v > 0 ? "\"inf\"" : "\"-inf\"";
  if (v == 0.0) v = 0.0;  // no negative zero in output
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string num(const Eigen::VectorXd& v) {
  std::string out = "[";
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i > 0) out += ",";
    out += num(v[i]);
  }
  return out + "]";
}

std::string boolean(bool b) { return b ? "true" : "false"; }

struct Field {
  std::string key;
  std::string value;
};

std::string object(const std::vector<Field>& fields) {
  std::string out = "{";
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) out += ",";
    out += "\"" + fields[i].key + "\":" + fields[i].value;
  }
  return out + "}";
}

struct StateEntry {
  tf::State state;          // populations (decohered if needed)
  tf::DensityMatrix matrix;  // diagonal embedding when input was classical
  bool coherent = false;
};

Eigen::MatrixXcd parse_complex_matrix(const json& rows) {
  if (!rows.is_array() || rows.empty())
    throw tf::Error(tf::ErrorKind::InvalidInput, "matrix must be a non-empty array of rows");
  const Eigen::Index n = static_cast<Eigen::Index>(rows.size());
  Eigen::MatrixXcd m(n, static_cast<Eigen::Index>(rows[0].size()));
  for (Eigen::Index i = 0; i < n; ++i) {
    const json& row = rows[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != m.cols())
      throw tf::Error(tf::ErrorKind::InvalidInput, "matrix rows must have equal length");
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      const json& cell = row[static_cast<std::size_t>(j)];
      if (!cell.is_array() || cell.size() != 2)
        throw tf::Error(tf::ErrorKind::InvalidInput,
                        "matrix entries must be [re, im] pairs");
      m(i, j) = std::complex<double>(cell[0].get<double>(), cell[1].get<double>());
    }
  }
  return m;
}

StateEntry parse_state_entry(const json& j, const tf::System& system) {
  if (j.contains("populations")) {
    const auto values = j.at("populations").get<std::vector<double>>();
    const tf::State state = tf::validate_state(
        Eigen::Map<const Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size())));
    Eigen::MatrixXcd diag = Eigen::MatrixXcd::Zero(state.dim(), state.dim());
    diag.diagonal() = state.populations().cast<std::complex<double>>();
    return {state, tf::validate_density_matrix(diag), false};
  }
  if (j.contains("density_matrix")) {
    const tf::DensityMatrix dm =
        tf::validate_density_matrix(parse_complex_matrix(j.at("density_matrix")));
    Eigen::MatrixXcd off = dm.matrix();
    off.diagonal().setZero();
    const bool coherent = off.cwiseAbs().maxCoeff() > 1e-12;
    return {tf::decohere(dm, system), dm, coherent};
  }
  throw tf::Error(tf::ErrorKind::InvalidInput,
                  "state needs either \"populations\" or \"density_matrix\"");
}

struct Problem {
  tf::System system;
  StateEntry rho;
  StateEntry sigma;
};

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw tf::Error(tf::ErrorKind::InvalidInput, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw tf::Error(tf::ErrorKind::InvalidInput, std::string("bad JSON: ") + e.what());
  }
}

Problem load_problem(const std::string& path, std::optional<double> beta_override) {
  const json j = load_json(path);
  try {
    const json& sys = j.at("system");
    const auto energies = sys.at("energies").get<std::vector<double>>();
    const double beta = beta_override.value_or(sys.value("beta", 1.0));  // kT = 1 default
    tf::System system(
        Eigen::Map<const Eigen::VectorXd>(energies.data(),
                                          static_cast<Eigen::Index>(energies.size())),
        beta);
    if (j.contains("mode")) {
      const std::string mode = j.at("mode").get<std::string>();
      if (mode == "NO") {
        if (!system.is_uniform())
          throw tf::Error(tf::ErrorKind::InvalidInput,
                          "mode \"NO\" requires uniform energies");
      } else if (mode != "TO") {
        throw tf::Error(tf::ErrorKind::InvalidInput, "mode must be \"NO\" or \"TO\"");
      }
    }
    return {system, parse_state_entry(j.at("rho"), system),
            parse_state_entry(j.at("sigma"), system)};
  } catch (const json::exception& e) {
    throw tf::Error(tf::ErrorKind::InvalidInput, std::string("bad problem file: ") + e.what());
  }
}

tf::PureBipartite load_amplitudes(const json& j, const std::string& key) {
  if (!j.contains(key))
    throw tf::Error(tf::ErrorKind::InvalidInput, "missing \"" + key + "\" amplitude matrix");
  return tf::validate_pure_bipartite(parse_complex_matrix(j.at(key)));
}

void emit(const std::string& body) { std::cout << body << "\n"; }

std::vector<double> parse_alpha_list(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string token;
  while (std::getline(ss, token, ',')) {
    if (token.empty()) continue;
    if (token == "inf") {
      out.push_back(std::numeric_limits<double>::infinity());
    } else {
      out.push_back(std::stod(token));
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"thermo-majorization transition calculator"};
  app.require_subcommand(1);

  std::string input;
  std::optional<double> beta_override;
  const auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("-i,--input", input, "problem JSON file")->required();
    cmd->add_option("--beta", beta_override, "override the file's inverse temperature");
  };

  CLI::App* cmd_check = app.add_subcommand("check", "deterministic convertibility");
  add_common(cmd_check);
  CLI::App* cmd_pstar = app.add_subcommand("pstar", "maximum transition probability");
  add_common(cmd_pstar);
  CLI::App* cmd_protocol = app.add_subcommand("protocol", "achieving protocol");
  add_common(cmd_protocol);
  CLI::App* cmd_work = app.add_subcommand("work", "work of transition");
  add_common(cmd_work);
  CLI::App* cmd_bounds = app.add_subcommand("bounds", "work bounds on pstar");
  add_common(cmd_bounds);

  CLI::App* cmd_tradeoff = app.add_subcommand("tradeoff", "pstar against supplied work");
  add_common(cmd_tradeoff);
  double wmin = -1.0, wmax = 1.0;
  int steps = 21;
  cmd_tradeoff->add_option("--wmin", wmin, "sweep start (bits in NO mode, beta W in TO)");
  cmd_tradeoff->add_option("--wmax", wmax, "sweep end");
  cmd_tradeoff->add_option("--steps", steps, "number of sweep points")
      ->check(CLI::Range(1, 100000));

  CLI::App* cmd_catalytic = app.add_subcommand("catalytic", "heralded bounds");
  add_common(cmd_catalytic);
  std::string alphas;
  bool refine = false;
  cmd_catalytic->add_option("--alphas", alphas, "extra alpha values, comma separated");
  cmd_catalytic->add_flag("--refine", refine, "double the alpha grid density");

  CLI::App* cmd_locc = app.add_subcommand("locc", "entanglement of transition");
  cmd_locc->add_option("-i,--input", input, "problem JSON with psi/phi amplitudes")
      ->required();
  std::string psi_path, phi_path;
  cmd_locc->add_option("--psi", psi_path, "separate amplitude file for psi");
  cmd_locc->add_option("--phi", phi_path, "separate amplitude file for phi");

  CLI::App* cmd_curve = app.add_subcommand("curve", "export a thermo-majorization curve");
  add_common(cmd_curve);
  std::string which = "rho", csv_path, svg_path;
  cmd_curve->add_option("--state", which, "rho or sigma")
      ->check(CLI::IsMember({"rho", "sigma"}));
  cmd_curve->add_option("--csv", csv_path, "write breakpoints as CSV");
  cmd_curve->add_option("--svg", svg_path, "write the curve as SVG");

  CLI::App* cmd_oracle = app.add_subcommand("oracle", "brute-force LP verification");
  add_common(cmd_oracle);
  std::string oracle_what;
  cmd_oracle->add_option("what", oracle_what, "pstar or feasible")
      ->required()
      ->check(CLI::IsMember({"pstar", "feasible"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (*cmd_check) {
      const Problem p = load_problem(input, beta_override);
      const bool ok = tf::thermo_majorizes(p.rho.state, p.sigma.state, p.system);
      emit(object({{"convertible", boolean(ok)},
                   {"upper_bound_only", boolean(p.sigma.coherent)}}));
    } else if (*cmd_pstar) {
      const Problem p = load_problem(input, beta_override);
      const double pstar = tf::max_transition_probability(p.rho.state, p.sigma.state, p.system);
      emit(object({{"pstar", num(pstar)},
                   {"upper_bound_only", boolean(p.sigma.coherent)}}));
    } else if (*cmd_protocol) {
      const Problem p = load_problem(input, beta_override);
      const tf::Protocol protocol = tf::build_protocol(p.rho.state, p.sigma.state, p.system);
      std::string boundaries = "[";
      for (std::size_t i = 0; i < protocol.boundaries.size(); ++i) {
        if (i > 0) boundaries += ",";
        boundaries += std::to_string(protocol.boundaries[i]);
      }
      boundaries += "]";
      std::string order = "[";
      for (std::size_t i = 0; i < protocol.sigma_order.perm.size(); ++i) {
        if (i > 0) order += ",";
        order += std::to_string(protocol.sigma_order.perm[i]);
      }
      order += "]";
      emit(object({{"pstar", num(protocol.pstar)},
                   {"boundaries", boundaries},
                   {"ratios", num(protocol.ratios)},
                   {"sigma_beta_order", order},
                   {"x_state", num(protocol.x_state.populations())},
                   {"m_diag", num(protocol.m_diag)},
                   {"rho_sigma", num(protocol.rho_sigma.populations())},
                   {"upper_bound_only", boolean(p.sigma.coherent)}}));
    } else if (*cmd_work) {
      const Problem p = load_problem(input, beta_override);
      const tf::WorkValue w = tf::work_of_transition(p.rho.state, p.sigma.state, p.system);
      if (w.mode == tf::Mode::NO) {
        emit(object({{"mode", "\"NO\""},
                     {"bits", num(w.beta_w)},
                     {"upper_bound_only", boolean(p.sigma.coherent)}}));
      } else {
        emit(object({{"mode", "\"TO\""},
                     {"beta_w", num(w.beta_w)},
                     {"w_over_kt", num(w.beta_w)},
                     {"upper_bound_only", boolean(p.sigma.coherent)}}));
      }
    } else if (*cmd_bounds) {
      const Problem p = load_problem(input, beta_override);
      const auto [lower, upper] = tf::pstar_bounds(p.rho.state, p.sigma.state, p.system);
      emit(object({{"lower", num(lower)}, {"upper", num(upper)}}));
    } else if (*cmd_tradeoff) {
      const Problem p = load_problem(input, beta_override);
      const bool noisy = p.system.is_uniform();
      std::string points = "[";
      for (int k = 0; k < steps; ++k) {
        const double w =
            steps == 1 ? wmin : wmin + (wmax - wmin) * static_cast<double>(k) / (steps - 1);
        const double beta_w = noisy ? w * std::log(2.0) : w;
        const double pstar = tf::pstar_with_work(p.rho.state, p.sigma.state, p.system, beta_w);
        if (k > 0) points += ",";
        points += object({{"w", num(w)}, {"pstar", num(pstar)}});
      }
      points += "]";
      emit(object({{"mode", noisy ? "\"NO\"" : "\"TO\""},
                   {"unit", noisy ? "\"bits\"" : "\"beta_w\""},
                   {"points", points}}));
    } else if (*cmd_catalytic) {
      const Problem p = load_problem(input, beta_override);
      const tf::AlphaGrid grid = alphas.empty()
                                     ? tf::AlphaGrid::standard(refine)
                                     : tf::AlphaGrid::with(parse_alpha_list(alphas));
      const double cto =
          tf::heralded_bound_cto(p.rho.state, p.sigma.state, p.system, grid);
      const double coherence =
          tf::heralded_coherence_bound(p.rho.matrix, p.sigma.matrix, p.system, grid);
      emit(object({{"cto_bound", num(cto)},
                   {"coherence_bound", num(coherence)},
                   {"upper_bound", num(std::min(cto, coherence))}}));
    } else if (*cmd_locc) {
      const json j = load_json(input);
      const tf::PureBipartite psi =
          psi_path.empty() ? load_amplitudes(j, "psi") : load_amplitudes(load_json(psi_path), "psi");
      const tf::PureBipartite phi =
          phi_path.empty() ? load_amplitudes(j, "phi") : load_amplitudes(load_json(phi_path), "phi");
      emit(object({{"ebits", num(tf::entanglement_of_transition(psi, phi))}}));
    } else if (*cmd_curve) {
      const Problem p = load_problem(input, beta_override);
      const tf::State& state = which == "rho" ? p.rho.state : p.sigma.state;
      const tf::Curve curve = tf::build_curve(state, p.system);
      std::vector<Field> fields{{"state", "\"" + which + "\""},
                                {"z", num(curve.z)},
                                {"rank", std::to_string(curve.rank)},
                                {"breakpoints", std::to_string(curve.xs.size())}};
      if (!csv_path.empty()) {
        std::ofstream out(csv_path);
        if (!out) throw tf::Error(tf::ErrorKind::InvalidInput, "cannot write " + csv_path);
        tf::write_curve_csv(curve, out);
        fields.push_back({"csv", "\"" + csv_path + "\""});
      }
      if (!svg_path.empty()) {
        std::ofstream out(svg_path);
        if (!out) throw tf::Error(tf::ErrorKind::InvalidInput, "cannot write " + svg_path);
        tf::write_curve_svg(curve, out);
        fields.push_back({"svg", "\"" + svg_path + "\""});
      }
      emit(object(fields));
    } else if (*cmd_oracle) {
      const Problem p = load_problem(input, beta_override);
      if (oracle_what == "pstar") {
        emit(object({{"pstar", num(tf::oracle_pstar(p.rho.state, p.sigma.state, p.system))}}));
      } else {
        emit(object(
            {{"feasible", boolean(tf::oracle_feasible(p.rho.state, p.sigma.state, p.system))}}));
      }
    }
  } catch (const tf::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.kind() == tf::ErrorKind::NumericalFailure ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
