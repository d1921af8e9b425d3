#include "qmimo/noncoherent.hpp"

#include <cmath>
#include <iostream>
#include <stdexcept>

#include "qmimo/coherent.hpp"
#include "qmimo/covariance.hpp"
#include "qmimo/orthant.hpp"
#include "qmimo/scalar.hpp"

namespace qmimo {

namespace {

const double kE = std::exp(1.0);

double dimension_term_bits(int T, int nr) {
  return 0.25 * (T - 1) * std::log2(nr / (kTwoPi * kE));
}

}  // namespace

double alpha_t2(double gamma) {
  if (!(gamma >= 0.0) || gamma >= 1.0)
    throw std::domain_error("alpha_t2: gamma must be in [0, 1)");
  return 4.0 * std::acos(std::sqrt(std::acos(gamma) / kPi)) - kPi;
}

McEstimate alpha_t3(double gamma, uint64_t n_samples, uint64_t seed) {
  if (!(gamma > 0.0) || gamma >= 1.0)
    throw std::domain_error("alpha_t3: gamma must be in (0, 1)");
  if (gamma > 0.95)
    std::cerr << "alpha_t3: integrand is near-singular at gamma = " << gamma
              << "\n";
  // alpha = Vol(Q_gamma) E_q[ (1/2) pi^{-3} prod_k mu_k^{-1/2}
  //                            prod_i (1 - q_i^2)^{-1/2} ], q ~ U(Q_gamma)
  MeanAccum acc = mc_run<MeanAccum>(
      seed, n_samples, [&](Rng& rng, uint64_t count, MeanAccum& a) {
        for (uint64_t s = 0; s < count; ++s) {
          CorrelationVector q = sample_uniform_Q(3, gamma, rng);
          MuVector m = mu_t3(q);
          double v = 0.5 / (kPi * kPi * kPi);
          for (double mu : m.mu) v /= std::sqrt(std::max(mu, 1e-300));
          for (double qi : q.entries) v /= std::sqrt(1.0 - qi * qi);
          a.add(v);
        }
      });
  double vol = vol_Q_exact(3, gamma);
  return {vol * acc.mean(), vol * acc.std_err()};
}

CapacityEstimate capacity_noncoherent_exact(const NoncoherentParams& params,
                                            uint64_t n_samples, uint64_t seed) {
  params.validate();
  if (params.T > 3)
    throw unsupported_error(
        "exact non-coherent capacity is available for T in {2, 3} only; "
        "use the lb-uniform / lb-indep / ub-genie bounds for larger T");
  CapacityEstimate est;
  est.terms.dimension_term = dimension_term_bits(params.T, params.nr);
  est.method = Method::exact_asymptotic;
  est.asymptotic = true;
  double gamma = params.gamma();
  if (params.T == 2) {
    est.terms.alpha_term = 0.5 * std::log2(alpha_t2(gamma));
  } else {
    McEstimate a = alpha_t3(gamma, n_samples, seed);
    est.terms.alpha_term = std::log2(a.estimate) / 3.0;
    est.std_err = a.std_err / (a.estimate * 3.0) * kLog2e;
    est.method = Method::mc;
  }
  est.bits_per_use = est.terms.dimension_term + est.terms.alpha_term;
  return est;
}

CapacityEstimate capacity_lb_uniform(const NoncoherentParams& params) {
  params.validate();
  double gamma = params.gamma();
  CapacityEstimate est;
  est.terms.dimension_term =
      0.25 * (params.T - 1) *
      std::log2(gamma * gamma * params.nr / (2.0 * kPi * kPi * kPi * kE));
  est.terms.volume_term = log_vol_Q_exact(params.T, 1.0) * kLog2e / params.T;
  est.bits_per_use = est.terms.dimension_term + est.terms.volume_term;
  est.method = Method::bound_lb;
  est.asymptotic = false;
  return est;
}

CapacityEstimate capacity_lb_indep(const NoncoherentParams& params) {
  params.validate();
  double gamma = params.gamma();
  CapacityEstimate est;
  est.terms.dimension_term =
      0.25 * (params.T - 1) *
      std::log2(8.0 * gamma * gamma * params.nr /
                (kPi * kPi * kPi * kE * (params.T - 1.0) * (params.T - 1.0)));
  est.bits_per_use = est.terms.dimension_term;
  est.method = Method::bound_lb;
  est.asymptotic = false;
  return est;
}

double capacity_lb_indep_exact_bits(const NoncoherentParams& params) {
  params.validate();
  // Per-pair signaling: each of the T-1 pairs sees an effective correlation
  // budget gamma/(T-1); its alpha is the T=2 constant at that budget.
  double g_eff = params.gamma() / (params.T - 1);
  double alpha = 4.0 * std::acos(std::sqrt(std::acos(g_eff) / kPi)) - kPi;
  return dimension_term_bits(params.T, params.nr) +
         0.5 * (params.T - 1) * std::log2(alpha);
}

double sum_log_gamma_exact_bits(int T) {
  if (T < 2) throw std::invalid_argument("sum_log_gamma: T must be >= 2");
  double s = 0.0;
  for (int i = 2; i <= T; ++i)
    s += 0.5 * i * std::log(kPi) - log_gamma_fn(0.5 * i);
  return s * kLog2e / T;
}

double sum_log_gamma_asymptotic_bits(int T) {
  if (T < 2) throw std::invalid_argument("sum_log_gamma: T must be >= 2");
  return 0.25 * (T - 1) * std::log2(kTwoPi * std::exp(1.5) / T) +
         0.125 * std::log2(kE / 16.0);
}

CapacityEstimate capacity_ub_genie(const NoncoherentParams& params) {
  params.validate();
  double z0 = zeta(0, std::sqrt(params.snr));
  CapacityEstimate est;
  est.terms.dimension_term =
      0.25 * (params.T - 1) *
      std::log2(params.snr * z0 * params.nr / (kTwoPi * kE));
  est.terms.volume_term = sum_log_gamma_exact_bits(params.T);
  est.bits_per_use = est.terms.dimension_term + est.terms.volume_term;
  est.method = Method::bound_ub;
  est.asymptotic = false;
  return est;
}

CapacityEstimate capacity_low_snr(const NoncoherentParams& params) {
  CapacityEstimate est = capacity_lb_uniform(params);
  est.method = Method::low_snr;
  est.asymptotic = true;
  if (params.snr > 0.5)
    std::cerr << "capacity_low_snr: expansion requested at snr = " << params.snr
              << "\n";
  return est;
}

CapacityWindow capacity_large_T_window(const NoncoherentParams& params) {
  params.validate();
  double gamma = params.gamma();
  double z0 = zeta(0, std::sqrt(params.snr));
  CapacityWindow w;
  w.lb_bits = 0.25 * (params.T - 1) *
                  std::log2(gamma * gamma * params.nr /
                            (kPi * kPi * std::sqrt(kE) * params.T)) -
              0.125 * std::log2(kE);
  w.ub_bits = 0.25 * (params.T - 1) *
                  std::log2(params.snr * z0 * std::sqrt(kE) * params.nr /
                            params.T) +
              0.125 * std::log2(kE / 16.0);
  if (w.lb_bits > w.ub_bits)
    throw std::logic_error("capacity_large_T_window: lb exceeded ub");
  return w;
}

}  // namespace qmimo
