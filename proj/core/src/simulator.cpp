#include "qmimo/simulator.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "qmimo/orthant.hpp"
#include "qmimo/quadrature.hpp"
#include "qmimo/scalar.hpp"

namespace qmimo {

ChannelBlock simulate_block(const Eigen::MatrixXd& X, int nr, uint64_t seed) {
  if (nr < 1) throw std::invalid_argument("simulate_block: nr must be >= 1");
  int nt = static_cast<int>(X.rows());
  int T = static_cast<int>(X.cols());
  ChannelBlock block;
  block.X = X;
  block.seed = seed;
  block.snr = 0.0;
  for (int j = 0; j < T; ++j)
    block.snr = std::max(block.snr, X.col(j).squaredNorm());
  block.Y.resize(nr, T);
  Rng rng(seed);
  Eigen::VectorXd h(nt);
  for (int k = 0; k < nr; ++k) {
    for (int i = 0; i < nt; ++i) h(i) = rng.next_normal();
    for (int j = 0; j < T; ++j) {
      double v = h.dot(X.col(j)) + rng.next_normal();
      block.Y(k, j) = v < 0.0 ? -1 : 1;
    }
  }
  return block;
}

CorrelationVector estimate_q_hat(const Eigen::MatrixXi& Y) {
  int nr = static_cast<int>(Y.rows());
  int T = static_cast<int>(Y.cols());
  if (nr < 1 || T < 2) throw std::invalid_argument("estimate_q_hat: bad Y");
  CorrelationVector q{T, std::vector<double>(pair_count(T))};
  for (int i = 0; i < T; ++i)
    for (int j = i + 1; j < T; ++j) {
      int disagreements = 0;
      for (int k = 0; k < nr; ++k)
        if (Y(k, i) != Y(k, j)) ++disagreements;
      q.entries[pair_index(i, j, T)] =
          std::cos(kPi * disagreements / static_cast<double>(nr));
    }
  return q;
}

std::vector<MseCell> estimator_mse_sweep(int T, double gamma,
                                         const std::vector<int>& nr_list,
                                         int trials, uint64_t seed) {
  if (trials < 100)
    throw std::invalid_argument("estimator_mse_sweep: need >= 100 trials");
  if (!(gamma > 0.0) || gamma >= 1.0)
    throw std::invalid_argument("estimator_mse_sweep: gamma must be in (0, 1)");
  double snr = gamma / (1.0 - gamma);
  int d = pair_count(T);
  std::vector<std::vector<double>> sq_err(nr_list.size(),
                                          std::vector<double>(d, 0.0));
  for (int t = 0; t < trials; ++t) {
    Rng rng(derive_seed(seed, t));
    CorrelationVector q = sample_uniform_Q(T, gamma, rng);
    Eigen::MatrixXd x = input_from_q(q, snr);
    for (size_t n = 0; n < nr_list.size(); ++n) {
      ChannelBlock block =
          simulate_block(x, nr_list[n], derive_seed(seed, (t + 1) * 1000003 + n));
      CorrelationVector q_hat = estimate_q_hat(block.Y);
      for (int i = 0; i < d; ++i) {
        double e = q_hat.entries[i] - q.entries[i];
        sq_err[n][i] += e * e;
      }
    }
  }
  std::vector<MseCell> cells;
  for (size_t n = 0; n < nr_list.size(); ++n)
    for (int i = 0; i < d; ++i) {
      MseCell c;
      c.pair = i;
      c.nr = nr_list[n];
      c.mse = sq_err[n][i] / trials;
      c.bound = kPi * kPi / nr_list[n];
      cells.push_back(c);
    }
  return cells;
}

double mi_exact_t2(int nr, double gamma, PriorKind prior, int quad_points) {
  if (nr < 1 || nr > (1 << 20))
    throw std::invalid_argument("mi_exact_t2: nr must be in [1, 2^20]");
  if (!(gamma >= 0.0) || gamma >= 1.0)
    throw std::invalid_argument("mi_exact_t2: gamma must be in [0, 1)");
  if (gamma == 0.0) return 0.0;  // prior degenerate at mu = 1/2
  double mu_min = std::acos(gamma) / kPi;
  double mu_max = 1.0 - mu_min;
  if (mu_max - mu_min < 1e-15) return 0.0;

  const GaussLegendreRule& rule = gauss_legendre_rule(quad_points);
  int m = quad_points;
  std::vector<double> mu(m), w(m);
  if (prior == PriorKind::jeffreys) {
    // mu = sin^2(theta) makes the truncated Beta(1/2,1/2) prior uniform in theta
    double t_lo = std::asin(std::sqrt(mu_min));
    double t_hi = std::asin(std::sqrt(mu_max));
    for (int i = 0; i < m; ++i) {
      double theta = 0.5 * (t_hi - t_lo) * rule.nodes[i] + 0.5 * (t_hi + t_lo);
      mu[i] = std::sin(theta) * std::sin(theta);
      w[i] = rule.weights[i];
    }
  } else {
    for (int i = 0; i < m; ++i) {
      mu[i] = 0.5 * (mu_max - mu_min) * rule.nodes[i] + 0.5 * (mu_max + mu_min);
      w[i] = rule.weights[i];
    }
  }
  double wsum = 0.0;
  for (double v : w) wsum += v;
  for (double& v : w) v /= wsum;

  std::vector<double> log_mu(m), log_1m_mu(m), log_w(m);
  for (int i = 0; i < m; ++i) {
    log_mu[i] = std::log(mu[i]);
    log_1m_mu[i] = std::log1p(-mu[i]);
    log_w[i] = std::log(w[i]);
  }
  double lg_nr = std::lgamma(nr + 1.0);
  double mi_nats = 0.0;
  std::vector<double> logp(m);
  for (int k = 0; k <= nr; ++k) {
    double lch = lg_nr - std::lgamma(k + 1.0) - std::lgamma(nr - k + 1.0);
    double peak = -1e300;
    for (int i = 0; i < m; ++i) {
      logp[i] = lch + k * log_mu[i] + (nr - k) * log_1m_mu[i];
      peak = std::max(peak, log_w[i] + logp[i]);
    }
    if (peak < -745.0) continue;  // whole column underflows
    double mix = 0.0;
    for (int i = 0; i < m; ++i) mix += std::exp(log_w[i] + logp[i] - peak);
    double log_mix = peak + std::log(mix);
    for (int i = 0; i < m; ++i)
      mi_nats += w[i] * std::exp(logp[i]) * (logp[i] - log_mix);
  }
  return mi_nats * kLog2e;
}

MiMcResult mi_mc_t3(int nr, double gamma, int n_outer, int n_inner,
                    uint64_t seed) {
  if (nr < 1 || n_outer < 2 || n_inner < 2)
    throw std::invalid_argument("mi_mc_t3: bad sample counts");
  if (!(gamma > 0.0) || gamma >= 1.0)
    throw std::invalid_argument("mi_mc_t3: gamma must be in (0, 1)");

  // shared inner reference set (first half used for the bias diagnostic)
  int n_inner2 = 2 * n_inner;
  std::vector<std::array<double, 4>> inner_log_mu(n_inner2);
  {
    Rng rng(derive_seed(seed, hash_tag("mi-t3-inner")));
    for (int j = 0; j < n_inner2; ++j) {
      MuVector m = mu_t3(sample_uniform_Q(3, gamma, rng));
      for (int c = 0; c < 4; ++c)
        inner_log_mu[j][c] = std::log(std::max(m.mu[c], 1e-300));
    }
  }

  struct Accum {
    MeanAccum mi_full;  // against all 2 n_inner
    MeanAccum mi_half;  // against the first n_inner
    void combine(const Accum& o) {
      mi_full.combine(o.mi_full);
      mi_half.combine(o.mi_half);
    }
  };
  int half = n_inner;
  Accum acc = mc_run<Accum>(
      derive_seed(seed, hash_tag("mi-t3-outer")), n_outer,
      [&](Rng& rng, uint64_t count, Accum& a) {
        for (uint64_t s = 0; s < count; ++s) {
          MuVector m = mu_t3(sample_uniform_Q(3, gamma, rng));
          double cum[4];
          cum[0] = m.mu[0];
          for (int c = 1; c < 4; ++c) cum[c] = cum[c - 1] + m.mu[c];
          double counts[4] = {0, 0, 0, 0};
          for (int k = 0; k < nr; ++k) {
            double u = rng.next_double() * cum[3];
            int c = 0;
            while (c < 3 && u >= cum[c]) ++c;
            counts[c] += 1.0;
          }
          double logp = 0.0;
          for (int c = 0; c < 4; ++c)
            logp += counts[c] * std::log(std::max(m.mu[c], 1e-300));
          double peak_h = -1e300, peak_f = -1e300;
          std::vector<double> lp(n_inner2);
          for (int j = 0; j < n_inner2; ++j) {
            double v = counts[0] * inner_log_mu[j][0] +
                       counts[1] * inner_log_mu[j][1] +
                       counts[2] * inner_log_mu[j][2] +
                       counts[3] * inner_log_mu[j][3];
            lp[j] = v;
            peak_f = std::max(peak_f, v);
            if (j < half) peak_h = std::max(peak_h, v);
          }
          double sum_h = 0.0, sum_f = 0.0;
          for (int j = 0; j < n_inner2; ++j) {
            sum_f += std::exp(lp[j] - peak_f);
            if (j < half) sum_h += std::exp(lp[j] - peak_h);
          }
          double log_ev_h = peak_h + std::log(sum_h / half);
          double log_ev_f = peak_f + std::log(sum_f / n_inner2);
          a.mi_full.add((logp - log_ev_f) * kLog2e);
          a.mi_half.add((logp - log_ev_h) * kLog2e);
        }
      });
  MiMcResult r;
  r.estimate = acc.mi_full.mean();
  r.std_err = acc.mi_full.std_err();
  r.bias_diag = acc.mi_half.mean() - acc.mi_full.mean();
  return r;
}

Eigen::MatrixXd fisher_coherent_mc(const std::vector<double>& x,
                                   uint64_t n_samples, uint64_t seed) {
  int nt = static_cast<int>(x.size());
  if (nt < 1) throw std::invalid_argument("fisher_coherent_mc: empty x");
  Eigen::VectorXd xv(nt);
  for (int i = 0; i < nt; ++i) xv(i) = x[i];
  struct Accum {
    Eigen::MatrixXd sum;
    uint64_t n = 0;
    void combine(const Accum& o) {
      if (sum.size() == 0) sum = o.sum;
      else sum += o.sum;
      n += o.n;
    }
  };
  Accum acc = mc_run<Accum>(
      seed, n_samples, [&](Rng& rng, uint64_t count, Accum& a) {
        a.sum = Eigen::MatrixXd::Zero(nt, nt);
        Eigen::VectorXd h(nt);
        for (uint64_t s = 0; s < count; ++s) {
          for (int i = 0; i < nt; ++i) h(i) = rng.next_normal();
          double w = xi(h.dot(xv));
          a.sum.selfadjointView<Eigen::Lower>().rankUpdate(h, w);
          ++a.n;
        }
      });
  Eigen::MatrixXd m = acc.sum.selfadjointView<Eigen::Lower>();
  return m / static_cast<double>(acc.n);
}

}  // namespace qmimo
