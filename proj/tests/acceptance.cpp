// Acceptance suite: one line per criterion, nonzero exit when any fails.
// THERMOFLUX_SEED overrides the corpus seed (default 1729).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "corpus.hpp"
#include "thermoflux/catalytic.hpp"
#include "thermoflux/curve.hpp"
#include "thermoflux/locc.hpp"
#include "thermoflux/oracle.hpp"
#include "thermoflux/transition.hpp"
#include "thermoflux/work.hpp"

using namespace thermoflux;
using tfcorpus::Instance;

namespace {

int g_failures = 0;

void report(int criterion, bool ok, const std::string& label, const std::string& detail) {
  std::printf("%s  %d  %s%s%s\n", ok ? "PASS" : "FAIL", criterion, label.c_str(),
              detail.empty() ? "" : ": ", detail.c_str());
  if (!ok) ++g_failures;
}

std::string fmt(const char* f, double v) {
  char buf[128];
  std::snprintf(buf, sizeof(buf), f, v);
  return buf;
}

// --- criterion 1: formula vs LP oracle ------------------------------------

void criterion_oracle(const std::vector<Instance>& corpus) {
  const auto start = std::chrono::steady_clock::now();
  double worst = 0.0;
  int mismatches = 0;
  for (const Instance& inst : corpus) {
    const double formula = max_transition_probability(inst.rho, inst.sigma, inst.system);
    const double lp = oracle_pstar(inst.rho, inst.sigma, inst.system);
    worst = std::max(worst, std::abs(formula - lp));
    if (thermo_majorizes(inst.rho, inst.sigma, inst.system) !=
        oracle_feasible(inst.rho, inst.sigma, inst.system))
      ++mismatches;
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool ok = worst < 1e-7 && mismatches == 0 && secs < 60.0;
  report(1, ok, "oracle equivalence on 500 instances",
         fmt("max |p*-LP| = %.2e", worst) + ", " + std::to_string(mismatches) +
             " feasibility mismatches, " + fmt("%.1f s", secs));
}

// --- criterion 2: the qubit tradeoff instance ------------------------------

void criterion_worked_qubit() {
  const System flat(Eigen::VectorXd::Zero(2), 1.0);
  const State rho = validate_state((Eigen::VectorXd(2) << 0.6, 0.4).finished());
  const State sigma = validate_state((Eigen::VectorXd(2) << 0.85, 0.15).finished());

  const double pstar = max_transition_probability(rho, sigma, flat);
  bool ok = std::abs(pstar - 12.0 / 17.0) <= 1e-12;

  double worst = 0.0;
  for (int k = 0; k < 50; ++k) {
    const double w_bits = (k - 25) / 8.0;
    const double closed = qubit_tradeoff_closed_form(0.6, 0.85, w_bits);
    const double curve = pstar_with_work(rho, sigma, flat, w_bits * std::log(2.0));
    worst = std::max(worst, std::abs(closed - curve));
  }
  ok = ok && worst <= 1e-9;

  const double delta = 1e-4;
  const double left = (qubit_tradeoff_closed_form(0.6, 0.85, 0.0) -
                       qubit_tradeoff_closed_form(0.6, 0.85, -delta)) / delta;
  const double right = (qubit_tradeoff_closed_form(0.6, 0.85, delta) -
                        qubit_tradeoff_closed_form(0.6, 0.85, 0.0)) / delta;
  const bool kink = right < left - 0.05;
  ok = ok && kink;

  report(2, ok, "worked qubit pair",
         fmt("|p*(0) - 12/17| = %.1e", std::abs(pstar - 12.0 / 17.0)) +
             fmt(", tradeoff dev %.1e over 50 W", worst) +
             std::string(kink ? ", kink at W=0" : ", NO kink at W=0"));
}

// --- criterion 3: work bounds sandwich --------------------------------------

void criterion_bounds(const std::vector<Instance>& corpus) {
  int violations = 0;
  int straight_pairs = 0;
  double worst_gap = 0.0;
  for (const Instance& inst : corpus) {
    const double pstar = max_transition_probability(inst.rho, inst.sigma, inst.system);
    const auto [lower, upper] = pstar_bounds(inst.rho, inst.sigma, inst.system);
    if (!(lower - 1e-9 <= pstar && pstar <= upper + 1e-9)) ++violations;
    if (inst.both_straight) {
      ++straight_pairs;
      worst_gap = std::max({worst_gap, std::abs(lower - pstar), std::abs(upper - pstar)});
    }
  }
  const bool ok = violations == 0 && straight_pairs > 0 && worst_gap <= 1e-9;
  report(3, ok, "bounds sandwich + reversible saturation",
         std::to_string(violations) + " violations, saturation dev " +
             fmt("%.1e", worst_gap) + " on " + std::to_string(straight_pairs) +
             " straight-line pairs");
}

// --- criterion 4: protocol reconstruction -----------------------------------

void criterion_protocol(const std::vector<Instance>& corpus) {
  double worst_rebuild = 0.0, worst_measure = 0.0, worst_unitary = 0.0;
  int majorization_failures = 0;
  for (const Instance& inst : corpus) {
    const Protocol protocol = build_protocol(inst.rho, inst.sigma, inst.system);
    const Eigen::VectorXd rebuilt =
        protocol.pstar * inst.sigma.populations() +
        (1.0 - protocol.pstar) * protocol.x_state.populations();
    worst_rebuild = std::max(
        worst_rebuild, (rebuilt - protocol.rho_sigma.populations()).cwiseAbs().maxCoeff());

    const Eigen::VectorXd measured =
        protocol.m_diag.array() * protocol.rho_sigma.populations().array();
    worst_measure = std::max(
        worst_measure,
        (measured - protocol.pstar * inst.sigma.populations()).cwiseAbs().maxCoeff());

    if (!thermo_majorizes(inst.rho, protocol.rho_sigma, inst.system))
      ++majorization_failures;

    const Eigen::Index n = inst.system.dim();
    const Eigen::MatrixXd u = measurement_unitary(protocol.m_diag);
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    h.diagonal().head(n) = inst.system.energies();
    h.diagonal().tail(n) = inst.system.energies();
    worst_unitary = std::max(
        worst_unitary,
        (u * u - Eigen::MatrixXd::Identity(2 * n, 2 * n)).cwiseAbs().maxCoeff());
    worst_unitary = std::max(worst_unitary, (u * h - h * u).cwiseAbs().maxCoeff());
  }
  const bool ok = worst_rebuild <= 1e-9 && worst_measure <= 1e-9 &&
                  majorization_failures == 0 && worst_unitary < 1e-12;
  report(4, ok, "protocol reconstruction + measurement",
         fmt("rebuild dev %.1e", worst_rebuild) + fmt(", measure dev %.1e", worst_measure) +
             fmt(", unitary dev %.1e", worst_unitary) + ", " +
             std::to_string(majorization_failures) + " majorization failures");
}

// --- criterion 5: finite criteria match dense scans -------------------------

void criterion_dense_scans(const std::vector<Instance>& corpus) {
  constexpr int kSamples = 10000;
  double worst_v = 0.0, worst_l = 0.0;
  int finite_set_mismatches = 0;
  for (const Instance& inst : corpus) {
    const Curve rho_curve = build_curve(inst.rho, inst.system);
    const Curve sigma_curve = build_curve(inst.sigma, inst.system);

    const double pstar = max_transition_probability(inst.rho, inst.sigma, inst.system);
    const double max_elbow = std::exp(-work_of_transition(inst.rho, inst.sigma, inst.system).nats());
    for (int k = 1; k <= kSamples; ++k) {
      const double x = rho_curve.z * k / static_cast<double>(kSamples);
      const double vr = v_at(rho_curve, x) / v_at(sigma_curve, x);
      worst_v = std::max(worst_v, pstar - vr);
      const double y = static_cast<double>(k) / kSamples;
      const double lr = l_at(rho_curve, y) / l_at(sigma_curve, y);
      worst_l = std::max(worst_l, lr - max_elbow);
    }
    if (thermo_majorizes(inst.rho, inst.sigma, inst.system) !=
        dense_curve_check(inst.rho, inst.sigma, inst.system, kSamples))
      ++finite_set_mismatches;
  }
  const bool ok = worst_v <= 1e-9 && worst_l <= 1e-9 && finite_set_mismatches == 0;
  report(5, ok, "elbow scans are sufficient (10^4-point scans)",
         fmt("min-ratio dev %.1e", worst_v) + fmt(", max-ratio dev %.1e", worst_l) + ", " +
             std::to_string(finite_set_mismatches) + " finite-criteria mismatches");
}

// --- criterion 6: Jarzynski bound -------------------------------------------

void criterion_jarzynski(std::uint64_t seed) {
  SplitMix64 rng(seed ^ 0x6a61727a796e7321ULL);
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const Eigen::Index n = 2 + trial % 3;
    Eigen::VectorXd e(n);
    for (Eigen::Index i = 0; i < n; ++i) e[i] = 3.0 * rng.next_double();
    const System sys(e, 1.0);
    Eigen::VectorXd p(n);
    for (Eigen::Index i = 0; i < n; ++i) p[i] = -std::log(1.0 - rng.next_double());
    const auto [pstar, product] = jarzynski_upper_check(validate_state(p / p.sum()), sys);
    worst = std::max(worst, product - 1.0);
  }

  // Two-level pure targets saturate the bound.
  double worst_saturation = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::VectorXd e(2);
    e << 3.0 * rng.next_double(), 3.0 * rng.next_double();
    const System sys(e, 1.0);
    for (int level = 0; level < 2; ++level) {
      Eigen::VectorXd pure = Eigen::VectorXd::Zero(2);
      pure[level] = 1.0;
      const auto [pstar, product] = jarzynski_upper_check(validate_state(pure), sys);
      worst_saturation = std::max(worst_saturation, std::abs(product - 1.0));
    }
  }
  const bool ok = worst <= 1e-9 && worst_saturation <= 1e-9;
  report(6, ok, "jarzynski consistency",
         fmt("max product-1 = %.1e", worst) +
             fmt(", pure-target saturation dev %.1e", worst_saturation));
}

// --- criterion 7: Renyi monotonicity and catalytic bounds --------------------

void criterion_catalytic(std::uint64_t seed) {
  SplitMix64 rng(seed ^ 0x63746f626f756e64ULL);
  const double alphas[] = {0.0, 0.25, 0.5, 1.0, 2.0, 4.0,
                           std::numeric_limits<double>::infinity()};
  int monotone_failures = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const Eigen::Index n = 2 + trial % 3;
    Eigen::VectorXd a(n), b(n);
    for (Eigen::Index i = 0; i < n; ++i) a[i] = -std::log(1.0 - rng.next_double());
    for (Eigen::Index i = 0; i < n; ++i) b[i] = -std::log(1.0 - rng.next_double());
    const State p = validate_state(a / a.sum());
    const State q = validate_state(b / b.sum());
    double prev = -1.0;
    for (double alpha : alphas) {
      const double d = renyi_divergence(p, q, alpha);
      if (d < prev - 1e-10) ++monotone_failures;
      prev = d;
    }
  }

  const AlphaGrid grid = AlphaGrid::standard();
  const AlphaGrid refined = AlphaGrid::standard(true);
  int dominance_failures = 0;
  double worst_halving = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const Eigen::Index n = 2 + trial % 3;
    Eigen::VectorXd e(n);
    for (Eigen::Index i = 0; i < n; ++i)
      e[i] = trial % 3 == 0 ? 0.0 : 3.0 * rng.next_double();
    const System sys(e, 1.0);
    Eigen::VectorXd a(n), b(n);
    for (Eigen::Index i = 0; i < n; ++i) a[i] = -std::log(1.0 - rng.next_double());
    for (Eigen::Index i = 0; i < n; ++i) b[i] = -std::log(1.0 - rng.next_double());
    const State rho = validate_state(a / a.sum());
    const State sigma = validate_state(b / b.sum());
    const double pstar = max_transition_probability(rho, sigma, sys);
    const double bound = heralded_bound_cto(rho, sigma, sys, grid);
    if (bound < pstar - 1e-9) ++dominance_failures;
    worst_halving =
        std::max(worst_halving, std::abs(bound - heralded_bound_cto(rho, sigma, sys, refined)));
  }
  const bool ok = monotone_failures == 0 && dominance_failures == 0 && worst_halving < 1e-3;
  report(7, ok, "renyi monotonicity + CTO bound",
         std::to_string(monotone_failures) + " monotonicity failures, " +
             std::to_string(dominance_failures) + " dominance failures, " +
             fmt("grid-halving dev %.1e", worst_halving));
}

// --- criterion 8: LOCC entanglement of transition ----------------------------

void criterion_locc(std::uint64_t seed) {
  const auto from_spectrum = [](const Eigen::VectorXd& spectrum) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(spectrum.size(), spectrum.size());
    for (Eigen::Index i = 0; i < spectrum.size(); ++i) m(i, i) = std::sqrt(spectrum[i]);
    return validate_pure_bipartite(m);
  };
  Eigen::MatrixXcd bell_amp(2, 2);
  bell_amp << 1.0 / std::sqrt(2.0), 0.0, 0.0, 1.0 / std::sqrt(2.0);
  const PureBipartite bell = validate_pure_bipartite(bell_amp);
  Eigen::MatrixXcd product_amp = Eigen::MatrixXcd::Zero(2, 2);
  product_amp(0, 0) = 1.0;
  const PureBipartite product = validate_pure_bipartite(product_amp);

  bool ok = entanglement_of_transition(bell, product) == 1.0 &&
            entanglement_of_transition(product, bell) == -1.0 &&
            entanglement_of_transition(bell, bell) == 0.0 &&
            entanglement_of_transition(product, product) == 0.0;

  SplitMix64 rng(seed ^ 0x6c6f636374726e73ULL);
  int sign_mismatches = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const Eigen::Index n = 2 + trial % 3;
    Eigen::VectorXd s1(n), s2(n);
    for (Eigen::Index i = 0; i < n; ++i) s1[i] = -std::log(1.0 - rng.next_double());
    for (Eigen::Index i = 0; i < n; ++i) s2[i] = -std::log(1.0 - rng.next_double());
    s1 /= s1.sum();
    s2 /= s2.sum();
    std::sort(s1.data(), s1.data() + n, std::greater<double>());
    std::sort(s2.data(), s2.data() + n, std::greater<double>());
    const double e = entanglement_of_transition(from_spectrum(s1), from_spectrum(s2));
    const bool nielsen = thermo_majorizes(validate_state(s2), validate_state(s1),
                                          System(Eigen::VectorXd::Zero(n), 1.0));
    if (nielsen != (e >= -1e-9)) ++sign_mismatches;
  }
  ok = ok && sign_mismatches == 0;
  report(8, ok, "LOCC entanglement of transition",
         "bell/product exact, " + std::to_string(sign_mismatches) + " sign mismatches");
}

// --- criterion 9: CLI golden files -------------------------------------------

std::string run_cli(const std::string& args, int& exit_code) {
  std::string out;
  const std::string cmd = std::string(THERMOFLUX_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) {
    exit_code = -1;
    return out;
  }
  char buf[4096];
  std::size_t got = 0;
  while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) out.append(buf, got);
  const int status = pclose(pipe);
  exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return out;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void criterion_cli() {
  const std::string data = THERMOFLUX_TEST_DATA;
  const std::string golden = THERMOFLUX_GOLDEN_DIR;
  int failures = 0;
  const auto check_golden = [&](const std::string& args, const std::string& golden_file) {
    int code = -1;
    const std::string out = run_cli(args, code);
    if (code != 0 || out != slurp(golden + "/" + golden_file)) ++failures;
  };
  check_golden("pstar -i " + data + "/no_qubit.json", "pstar_no_qubit.json");
  check_golden("pstar -i " + data + "/to_gibbs_excited.json", "pstar_to_gibbs_excited.json");
  check_golden("locc -i " + data + "/locc_bell_product.json", "locc_bell_product.json");

  // CSV round trip through the CLI, compared bitwise against the library.
  int code = -1;
  const std::string csv = "/tmp/thermoflux_acceptance_curve.csv";
  run_cli("curve -i " + data + "/to_gibbs_excited.json --state rho --csv " + csv, code);
  bool roundtrip = code == 0;
  if (roundtrip) {
    const System system((Eigen::VectorXd(2) << 0.0, 0.6931471805599453).finished(), 1.0);
    const Curve expected =
        build_curve(validate_state((Eigen::VectorXd(2) << 2.0 / 3.0, 1.0 / 3.0).finished()),
                    system);
    std::ifstream in(csv);
    try {
      const Curve parsed = read_curve_csv(in);
      roundtrip = parsed.xs.size() == expected.xs.size();
      for (Eigen::Index k = 0; roundtrip && k < expected.xs.size(); ++k)
        roundtrip = parsed.xs[k] == expected.xs[k] && parsed.ys[k] == expected.ys[k];
    } catch (const Error&) {
      roundtrip = false;
    }
    std::remove(csv.c_str());
  }
  const bool ok = failures == 0 && roundtrip;
  report(9, ok, "CLI golden outputs + CSV round trip",
         std::to_string(failures) + " golden mismatches, round trip " +
             (roundtrip ? "bit-exact" : "BROKEN"));
}

}  // namespace

int main() {
  const std::uint64_t seed = tfcorpus::seed_from_env();
  std::printf("acceptance corpus seed: %llu\n", static_cast<unsigned long long>(seed));
  const std::vector<Instance> corpus = tfcorpus::make_corpus(seed);

  criterion_oracle(corpus);
  criterion_worked_qubit();
  criterion_bounds(corpus);
  criterion_protocol(corpus);
  criterion_dense_scans(corpus);
  criterion_jarzynski(seed);
  criterion_catalytic(seed);
  criterion_locc(seed);
  criterion_cli();

  if (g_failures == 0) {
    std::printf("all acceptance criteria passed\n");
  } else {
    std::printf("%d criteria FAILED\n", g_failures);
  }
  return g_failures;
}
