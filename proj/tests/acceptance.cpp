// Acceptance gate: ten numbered criteria, each printing one PASS/FAIL line
// per sub-check with pinned tolerances. Run with a criterion number 1..10,
// or with no argument to run all. Exit code is the number of failed checks.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>
#include <vector>

#include "qmimo/coherent.hpp"
#include "qmimo/covariance.hpp"
#include "qmimo/noncoherent.hpp"
#include "qmimo/orthant.hpp"
#include "qmimo/rng.hpp"
#include "qmimo/scalar.hpp"
#include "qmimo/simulator.hpp"
#include "qmimo/stats.hpp"

using namespace qmimo;

namespace {

int g_failures = 0;

void check(int criterion, const std::string& name, bool pass,
           const std::string& detail = "") {
  std::printf("%s criterion-%d: %s%s%s\n", pass ? "PASS" : "FAIL", criterion,
              name.c_str(), detail.empty() ? "" : " — ", detail.c_str());
  if (!pass) ++g_failures;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

// --- 1: scalar kernel constants ---------------------------------------------
void criterion_1() {
  auto t0 = std::chrono::steady_clock::now();
  double z0 = zeta(0, 0.0);
  double z2 = zeta(2, 0.0);
  check(1, "zeta0(0) = 2/pi to 1e-8", std::fabs(z0 - kTwoOverPi) < 1e-8,
        "value " + fmt(z0));
  check(1, "zeta2(0) = 2/pi to 1e-8", std::fabs(z2 - kTwoOverPi) < 1e-8,
        "value " + fmt(z2));
  const AConstants& a = a_constants();
  check(1, "A0 = 0.3842 +/- 0.0005", std::fabs(a.a0 - 0.3842) <= 0.0005,
        "computed A0 = " + fmt(a.a0));
  check(1, "A2 = 0.1390 +/- 0.0005", std::fabs(a.a2 - 0.1390) <= 0.0005,
        "computed A2 = " + fmt(a.a2));
  double limit = 50.0 * zeta(0, 50.0);
  check(1, "r zeta0(r) -> A0 within 0.5% at r = 50",
        std::fabs(limit / a.a0 - 1.0) < 0.005,
        "50 zeta0(50) = " + fmt(limit) + ", A0 = " + fmt(a.a0));
  double elapsed = seconds_since(t0);
  check(1, "runtime < 1 s", elapsed < 1.0, fmt(elapsed) + " s");
}

// --- 2: volumes of the feasible region ---------------------------------------
void criterion_2() {
  auto t0 = std::chrono::steady_clock::now();
  const double closed[3] = {2.0, kPi * kPi / 2.0, 32.0 * kPi * kPi / 27.0};
  for (int T = 2; T <= 4; ++T) {
    double v = vol_Q_exact(T, 1.0);
    check(2, "vol_Q_exact T=" + std::to_string(T) + " to 1e-10 relative",
          std::fabs(v / closed[T - 2] - 1.0) < 1e-10, fmt(v));
  }
  for (int T : {3, 4, 5}) {
    for (double g : {0.8, 1.0}) {
      McEstimate mc = vol_Q_mc(T, g, 1000000, 2026);
      double exact = vol_Q_exact(T, g);
      check(2,
            "vol_Q_mc within 3 std err, T=" + std::to_string(T) +
                " gamma=" + fmt(g),
            std::fabs(mc.estimate - exact) <= 3.0 * mc.std_err,
            "mc " + fmt(mc.estimate) + " exact " + fmt(exact) + " se " +
                fmt(mc.std_err));
    }
  }
  double fine = log_vol_Q_asymptotic_bits(60, VolPrecision::fine);
  double exact = log_vol_Q_exact(60, 1.0) * kLog2e;
  check(2, "fine asymptotic log-volume within 0.05 bits at T=60",
        std::fabs(fine - exact) < 0.05,
        "error " + fmt(std::fabs(fine - exact)) + " bits");
  double elapsed = seconds_since(t0);
  check(2, "runtime < 30 s", elapsed < 30.0, fmt(elapsed) + " s");
}

// --- 3: coherent Fisher determinant ------------------------------------------
void criterion_3() {
  auto t0 = std::chrono::steady_clock::now();
  for (int nt : {1, 2, 3}) {
    for (double r : {0.5, 2.0}) {
      std::vector<double> x(nt, 0.0);
      x[0] = r;
      Eigen::MatrixXd j = fisher_coherent_mc(x, 1000000, 3000 + nt);
      double det_mc = j.determinant();
      double det_exact = fisher_det_coherent(r, nt);
      check(3,
            "fisher det within 2%, nt=" + std::to_string(nt) + " r=" + fmt(r),
            std::fabs(det_mc / det_exact - 1.0) <= 0.02,
            "mc " + fmt(det_mc) + " exact " + fmt(det_exact));
    }
  }
  double elapsed = seconds_since(t0);
  check(3, "runtime < 60 s", elapsed < 60.0, fmt(elapsed) + " s");
}

// --- 4: coherent asymptotic regimes ------------------------------------------
void criterion_4() {
  {
    int nt = 2;
    double snr = 1e-4 / nt;
    double ratio = alpha_coherent(snr, nt) /
                   alpha_asymptotic(snr, nt, CoherentRegime::low_snr);
    check(4, "low-SNR regime within 5% (nt*snr = 1e-4)",
          std::fabs(ratio - 1.0) <= 0.05, "ratio " + fmt(ratio));
  }
  for (int nt : {2, 3}) {
    double ratio = std::exp(log_alpha_coherent(1e8, nt) -
                            log_alpha_asymptotic(1e8, nt,
                                                 CoherentRegime::high_snr));
    check(4, "high-SNR regime within 5%, nt=" + std::to_string(nt),
          std::fabs(ratio - 1.0) <= 0.05, "ratio " + fmt(ratio));
  }
  {
    double ratio = std::exp(log_alpha_coherent(1.0, 60) -
                            log_alpha_asymptotic(1.0, 60,
                                                 CoherentRegime::large_nt));
    check(4, "large-nt regime within 10% (nt=60, snr=1)",
          std::fabs(ratio - 1.0) <= 0.10, "ratio " + fmt(ratio));
  }
}

// --- 5: non-coherent T = 2 ----------------------------------------------------
void criterion_5() {
  auto t0 = std::chrono::steady_clock::now();
  bool in_envelope = true;
  for (int i = 1; i <= 100 && in_envelope; ++i) {
    double g = i / 101.0;
    double a = alpha_t2(g);
    in_envelope = a >= 4.0 * g / kPi - 1e-12 && a <= kPi * g + 1e-12;
  }
  check(5, "4 gamma/pi <= alpha_t2 <= pi gamma on a 100-point grid",
        in_envelope);

  double gamma = 0.5;
  auto prediction = [&](int nr) {
    return 0.5 * std::log2(nr / (kTwoPi * std::exp(1.0))) +
           std::log2(alpha_t2(gamma));
  };
  std::vector<double> exponents, per_use;
  double gap_lo = 0.0, gap_hi = 0.0;
  for (int e = 10; e <= 16; ++e) {
    int nr = 1 << e;
    double mi = mi_exact_t2(nr, gamma, PriorKind::jeffreys);
    double gap = mi - prediction(nr);
    if (e == 10) gap_lo = gap;
    if (e == 16) gap_hi = gap;
    exponents.push_back(e);
    per_use.push_back(mi / 2.0);
  }
  double n = exponents.size(), sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < exponents.size(); ++i) {
    sx += exponents[i];
    sy += per_use[i];
    sxx += exponents[i] * exponents[i];
    sxy += exponents[i] * per_use[i];
  }
  double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  check(5, "mi slope vs log2 nr in [0.23, 0.27] (per channel use)",
        slope >= 0.23 && slope <= 0.27, "slope " + fmt(slope));
  check(5, "|mi - prediction| < 0.05 bits at nr = 2^16",
        std::fabs(gap_hi) < 0.05, "gap " + fmt(gap_hi));
  check(5, "gap at 2^16 smaller than at 2^10",
        std::fabs(gap_hi) < std::fabs(gap_lo),
        fmt(std::fabs(gap_hi)) + " vs " + fmt(std::fabs(gap_lo)));
  double elapsed = seconds_since(t0);
  check(5, "runtime < 5 min", elapsed < 300.0, fmt(elapsed) + " s");
}

// --- 6: non-coherent T = 3 ----------------------------------------------------
void criterion_6() {
  std::vector<McEstimate> alphas;
  bool bounded = true;
  for (double g : {0.3, 0.6, 0.9}) {
    McEstimate a = alpha_t3(g, 1000000, 6000);
    alphas.push_back(a);
    bounded = bounded && a.estimate >= g * g * g / (4.0 * kPi) &&
              a.estimate <= kPi * kPi;
  }
  check(6, "gamma^3/(4 pi) <= alpha_t3 <= pi^2 at gamma in {0.3, 0.6, 0.9}",
        bounded);
  check(6, "alpha_t3 monotone in gamma",
        alphas[0].estimate < alphas[1].estimate &&
            alphas[1].estimate < alphas[2].estimate,
        fmt(alphas[0].estimate) + " < " + fmt(alphas[1].estimate) + " < " +
            fmt(alphas[2].estimate));

  Eigen::MatrixXd j =
      fisher_q_numeric(make_correlation_vector(3, {0.0, 0.0, 0.0}));
  double sd = std::sqrt(j.determinant());
  double target = std::pow(kTwoOverPi, 3);
  check(6, "sqrt det J(0) = (2/pi)^3 within 1%",
        std::fabs(sd / target - 1.0) <= 0.01,
        fmt(sd) + " vs " + fmt(target));

  Rng rng(6001);
  double worst = 0.0;
  for (int it = 0; it < 200; ++it) {
    CorrelationVector q = sample_uniform_Q(3, 0.9, rng);
    OutcomeDistribution p3 = pmf_t3(q);
    OutcomeDistribution p2 = pmf_t2(q.entries[0]);
    for (int idx = 0; idx < 4; ++idx)
      worst = std::max(
          worst, std::fabs(p3.pmf[idx] + p3.pmf[idx | 0b100] - p2.pmf[idx]));
  }
  check(6, "pmf_t3 marginals equal pmf_t2 to 1e-14", worst <= 1e-14,
        "worst " + fmt(worst));
}

// --- 7: bounds ordering -------------------------------------------------------
void criterion_7() {
  for (int T : {2, 3}) {
    for (double g : {0.3, 0.7}) {
      NoncoherentParams p{g / (1.0 - g), T, T, 1000000};
      double lb = capacity_lb_uniform(p).bits_per_use;
      double ex = capacity_noncoherent_exact(p, 1000000, 7000).bits_per_use;
      double ub = capacity_ub_genie(p).bits_per_use;
      check(7,
            "lb <= exact <= ub at nr=1e6, T=" + std::to_string(T) +
                " gamma=" + fmt(g),
            lb <= ex && ex <= ub,
            fmt(lb) + " <= " + fmt(ex) + " <= " + fmt(ub));
    }
  }
  NoncoherentParams t2{1.0, 2, 2, 10000};
  check(7, "independent-pair bound beats the uniform bound at T=2",
        capacity_lb_indep(t2).bits_per_use >
            capacity_lb_uniform(t2).bits_per_use);
  NoncoherentParams t6{1.0, 6, 6, 10000};
  check(7, "independent-pair bound loses at T=6",
        capacity_lb_indep(t6).bits_per_use <
            capacity_lb_uniform(t6).bits_per_use);
  NoncoherentParams big{1.0, 40, 40, 1000000000};
  CapacityWindow w = capacity_large_T_window(big);
  check(7, "large-T window lb <= ub at T=40", w.lb_bits <= w.ub_bits,
        fmt(w.lb_bits) + " <= " + fmt(w.ub_bits));
}

// --- 8: correlation estimator -------------------------------------------------
void criterion_8() {
  auto t0 = std::chrono::steady_clock::now();
  int trials = 500;
  double slack = 1.0 + 5.0 / std::sqrt(double(trials));
  std::vector<MseCell> cells =
      estimator_mse_sweep(3, 0.8, {100, 1000}, trials, 8000);
  for (const MseCell& c : cells) {
    check(8,
          "mse <= (pi^2/nr)(1 + 5/sqrt(trials)), pair " +
              std::to_string(c.pair) + " nr=" + std::to_string(c.nr),
          c.mse <= c.bound * slack,
          "mse " + fmt(c.mse) + " cap " + fmt(c.bound * slack));
  }
  double elapsed = seconds_since(t0);
  check(8, "runtime < 2 min", elapsed < 120.0, fmt(elapsed) + " s");
}

// --- 9: samplers ---------------------------------------------------------------
void criterion_9() {
  // chi-square uniformity over equal-volume boxes fully inside Q_gamma
  int T = 3;
  double gamma = 0.8;
  int m = 4;  // boxes per axis over [-gamma, gamma]
  double width = 2.0 * gamma / m;
  auto box_of = [&](double v) {
    int b = static_cast<int>((v + gamma) / width);
    return std::min(std::max(b, 0), m - 1);
  };
  // keep boxes whose 8 corners are all members (box subset of Q_gamma)
  std::vector<int> keep(m * m * m, -1);
  int kept = 0;
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int c = 0; c < m; ++c) {
        bool inside = true;
        for (int corner = 0; corner < 8 && inside; ++corner) {
          double qa = -gamma + (a + (corner & 1 ? 1 : 0)) * width;
          double qb = -gamma + (b + (corner & 2 ? 1 : 0)) * width;
          double qc = -gamma + (c + (corner & 4 ? 1 : 0)) * width;
          inside = is_member(make_correlation_vector(T, {qa, qb, qc}), gamma);
        }
        if (inside) keep[(a * m + b) * m + c] = kept++;
      }
  std::vector<double> counts(kept, 0.0);
  Rng rng(9000);
  for (int it = 0; it < 100000; ++it) {
    CorrelationVector q = sample_uniform_Q(T, gamma, rng);
    int cell = keep[(box_of(q.entries[0]) * m + box_of(q.entries[1])) * m +
                    box_of(q.entries[2])];
    if (cell >= 0) counts[cell] += 1.0;
  }
  double p = chi2_equal_cells_pvalue(counts);
  check(9,
        "uniform sampler chi-square p > 0.001 on " + std::to_string(kept) +
            " interior boxes, 1e5 samples",
        p > 0.001, "p = " + fmt(p));

  // round trip of the correlation map through the input construction
  double snr = 4.0;
  double g_in = snr / (1.0 + snr);
  Rng rng2(9001);
  double worst = 0.0;
  for (int it = 0; it < 1000; ++it) {
    CorrelationVector q = sample_uniform_Q(T, 0.95 * g_in, rng2);
    CorrelationVector back = rho_of_x(input_from_q(q, snr));
    for (int k = 0; k < pair_count(T); ++k)
      worst = std::max(worst, std::fabs(back.entries[k] - q.entries[k]));
  }
  check(9, "rho o input_from_q round-trips to 1e-10 on 10^3 points",
        worst <= 1e-10, "worst " + fmt(worst));
}

// --- 10: determinism -----------------------------------------------------------
void criterion_10() {
  struct Snapshot {
    double v[10];
    bool operator==(const Snapshot& o) const {
      return std::memcmp(v, o.v, sizeof(v)) == 0;
    }
  };
  auto take = [&]() {
    Snapshot s{};
    McEstimate vol = vol_Q_mc(4, 0.9, 200000, 10000);
    McEstimate a3 = alpha_t3(0.6, 200000, 10001);
    OutcomeDistribution pmf =
        pmf_mc(make_correlation_vector(3, {0.3, -0.2, 0.4}), 200000, 10002);
    Eigen::MatrixXd j = fisher_coherent_mc({1.0, 0.5}, 200000, 10003);
    MiMcResult mi = mi_mc_t3(512, 0.5, 200, 400, 10004);
    s.v[0] = vol.estimate;
    s.v[1] = vol.std_err;
    s.v[2] = a3.estimate;
    s.v[3] = a3.std_err;
    s.v[4] = pmf.pmf[0];
    s.v[5] = pmf.pmf[5];
    s.v[6] = j(0, 0);
    s.v[7] = j(0, 1);
    s.v[8] = mi.estimate;
    s.v[9] = mi.bias_diag;
    return s;
  };
  set_worker_count(1);
  Snapshot base = take();
  Snapshot rerun = take();
  check(10, "bit-identical across reruns with the same seed", base == rerun);
  for (int w : {4, 8}) {
    set_worker_count(w);
    Snapshot s = take();
    check(10,
          "bit-identical with " + std::to_string(w) + " workers", s == base);
  }
  set_worker_count(0);
}

}  // namespace

int main(int argc, char** argv) {
  void (*criteria[])() = {criterion_1, criterion_2, criterion_3, criterion_4,
                          criterion_5, criterion_6, criterion_7, criterion_8,
                          criterion_9, criterion_10};
  if (argc > 1) {
    int n = std::atoi(argv[1]);
    if (n < 1 || n > 10) {
      std::fprintf(stderr, "usage: %s [criterion 1..10]\n", argv[0]);
      return 2;
    }
    criteria[n - 1]();
  } else {
    for (auto* c : criteria) c();
  }
  if (g_failures)
    std::printf("%d check(s) failed\n", g_failures);
  else
    std::printf("all checks passed\n");
  return g_failures;
}
