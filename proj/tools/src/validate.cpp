#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "commands.hpp"
#include "qmimo/coherent.hpp"
#include "qmimo/covariance.hpp"
#include "qmimo/noncoherent.hpp"
#include "qmimo/orthant.hpp"
#include "qmimo/scalar.hpp"
#include "qmimo/simulator.hpp"

namespace qmimo::cli {

namespace {

struct Check {
  std::string name;
  double measured;
  double expected;
  double tolerance;
  bool pass;
};

void report(std::vector<Check>& out, const std::string& name, double measured,
            double expected, double tolerance, bool pass) {
  out.push_back({name, measured, expected, tolerance, pass});
}

void check_abs(std::vector<Check>& out, const std::string& name,
               double measured, double expected, double tol) {
  report(out, name, measured, expected, tol,
         std::fabs(measured - expected) <= tol);
}

void suite_fisher_coherent(const CommonArgs& args, std::vector<Check>& out) {
  uint64_t samples = resolve_samples(args.samples);
  for (int nt : {1, 2, 3}) {
    for (double r : {0.5, 2.0}) {
      std::vector<double> x(nt, 0.0);
      x[0] = r;
      Eigen::MatrixXd est = fisher_coherent_mc(x, samples, args.seed);
      double det_mc = est.determinant();
      double det_exact = fisher_det_coherent(r, nt);
      double rel = std::fabs(det_mc / det_exact - 1.0);
      report(out,
             "fisher-coherent det nt=" + std::to_string(nt) +
                 " r=" + format_double(r),
             det_mc, det_exact, 0.02 * det_exact, rel <= 0.02);
    }
  }
}

void suite_volume(const CommonArgs& args, std::vector<Check>& out) {
  int T = args.T ? args.T : 3;
  double gamma = args.gamma > 0.0 ? args.gamma : 1.0;
  uint64_t samples = resolve_samples(args.samples);
  McEstimate mc = vol_Q_mc(T, gamma, samples, args.seed);
  double exact = vol_Q_exact(T, gamma);
  report(out,
         "volume mc T=" + std::to_string(T) + " gamma=" + format_double(gamma),
         mc.estimate, exact, 3.0 * mc.std_err,
         std::fabs(mc.estimate - exact) <= 3.0 * mc.std_err);
}

void suite_estimator_mse(const CommonArgs& args, std::vector<Check>& out) {
  int T = args.T ? args.T : 3;
  double gamma = args.gamma > 0.0 ? args.gamma : 0.8;
  int trials = 500;
  double slack = 1.0 + 5.0 / std::sqrt(static_cast<double>(trials));
  std::vector<MseCell> cells =
      estimator_mse_sweep(T, gamma, {100, 1000}, trials, args.seed);
  for (const MseCell& c : cells) {
    report(out,
           "estimator-mse pair=" + std::to_string(c.pair) +
               " nr=" + std::to_string(c.nr),
           c.mse, c.bound, c.bound * slack, c.mse <= c.bound * slack);
  }
}

void suite_mi_t2(const CommonArgs& args, std::vector<Check>& out) {
  double gamma = args.gamma > 0.0 ? args.gamma : 0.5;
  auto prediction = [&](int nr) {
    return 0.5 * std::log2(nr / (kTwoPi * std::exp(1.0))) +
           std::log2(alpha_t2(gamma));
  };
  std::printf("# mi-t2 gap table (gamma=%s)\n", format_double(gamma).c_str());
  double gap_lo = 0.0, gap_hi = 0.0;
  std::vector<double> log_nr, mi_per_use;
  for (int e = 10; e <= 16; e += 2) {
    int nr = 1 << e;
    double mi = mi_exact_t2(nr, gamma, PriorKind::jeffreys);
    double gap = mi - prediction(nr);
    std::printf("#   nr=%-7d mi=%-10.6f gap=%.6f\n", nr, mi, gap);
    if (e == 10) gap_lo = gap;
    if (e == 16) gap_hi = gap;
    log_nr.push_back(e);
    mi_per_use.push_back(mi / 2.0);
  }
  check_abs(out, "mi-t2 gap at nr=2^16", gap_hi, 0.0, 0.05);
  report(out, "mi-t2 gap shrinks", gap_hi, gap_lo, gap_lo, gap_hi < gap_lo);
  double n = static_cast<double>(log_nr.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < log_nr.size(); ++i) {
    sx += log_nr[i];
    sy += mi_per_use[i];
    sxx += log_nr[i] * log_nr[i];
    sxy += log_nr[i] * mi_per_use[i];
  }
  double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  report(out, "mi-t2 per-use slope", slope, 0.25, 0.02,
         slope >= 0.23 && slope <= 0.27);
}

void suite_orthant(const CommonArgs& args, std::vector<Check>& out) {
  uint64_t samples = resolve_samples(args.samples);
  OutcomeDistribution exact = pmf_t2(0.5);
  OutcomeDistribution mc =
      pmf_mc(make_correlation_vector(2, {0.5}), samples, args.seed);
  report(out, "orthant pmf-mc TV T=2 q=0.5", total_variation(mc, exact), 0.0,
         0.003, total_variation(mc, exact) < 0.003);

  CorrelationVector q3 = make_correlation_vector(3, {0.3, -0.2, 0.4});
  OutcomeDistribution p3 = pmf_t3(q3);
  OutcomeDistribution p2 = pmf_t2(0.3);
  double marg_err = 0.0;
  for (int idx = 0; idx < 4; ++idx) {
    double m = p3.pmf[idx] + p3.pmf[idx | 0b100];
    marg_err = std::max(marg_err, std::fabs(m - p2.pmf[idx]));
  }
  check_abs(out, "orthant t3 marginal vs t2", marg_err, 0.0, 1e-14);

  Eigen::MatrixXd j =
      fisher_q_numeric(make_correlation_vector(3, {0.0, 0.0, 0.0}));
  double sqrt_det = std::sqrt(j.determinant());
  double expected = std::pow(kTwoOverPi, 3);
  report(out, "orthant sqrt det J at q=0", sqrt_det, expected, 0.01 * expected,
         std::fabs(sqrt_det / expected - 1.0) <= 0.01);
}

}  // namespace

int run_validate(const std::string& suite, CommonArgs args) {
  std::vector<Check> checks;
  bool all = suite == "all";
  if (all || suite == "fisher-coherent") suite_fisher_coherent(args, checks);
  if (all || suite == "volume") suite_volume(args, checks);
  if (all || suite == "estimator-mse") suite_estimator_mse(args, checks);
  if (all || suite == "mi-t2") suite_mi_t2(args, checks);
  if (all || suite == "orthant") suite_orthant(args, checks);
  if (checks.empty())
    throw unsupported_error(
        "unknown suite '" + suite +
        "' (use fisher-coherent, volume, estimator-mse, mi-t2, orthant, all)");
  int failures = 0;
  for (const Check& c : checks) {
    std::printf("%s  %s  measured=%s expected=%s tol=%s\n",
                c.pass ? "PASS" : "FAIL", c.name.c_str(),
                format_double(c.measured).c_str(),
                format_double(c.expected).c_str(),
                format_double(c.tolerance).c_str());
    if (!c.pass) ++failures;
  }
  std::printf("%d/%zu checks passed\n", static_cast<int>(checks.size()) - failures,
              checks.size());
  return failures ? 4 : 0;
}

}  // namespace qmimo::cli
