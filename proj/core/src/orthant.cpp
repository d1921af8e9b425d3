#include "qmimo/orthant.hpp"

#include <cmath>
#include <iostream>
#include <stdexcept>

#include "qmimo/scalar.hpp"

namespace qmimo {

namespace {

constexpr double kMuTol = 1e-12;

Eigen::MatrixXd chol_with_jitter(const Eigen::MatrixXd& sigma) {
  Eigen::MatrixXd m = sigma;
  for (int attempt = 0; attempt < 6; ++attempt) {
    Eigen::LLT<Eigen::MatrixXd> llt(m);
    if (llt.info() == Eigen::Success) return llt.matrixL();
    m.diagonal().array() += 1e-12 * std::pow(10.0, attempt);
  }
  throw std::domain_error("pmf_mc: Sigma(q) is not PSD");
}

}  // namespace

int pattern_index(const std::vector<int>& y) {
  int idx = 0;
  for (size_t k = 0; k < y.size(); ++k) {
    if (y[k] != 1 && y[k] != -1)
      throw std::invalid_argument("pattern_index: entries must be +-1");
    if (y[k] == -1) idx |= 1 << k;
  }
  return idx;
}

std::vector<int> pattern_from_index(int idx, int T) {
  if (idx < 0 || idx >= (1 << T)) throw std::out_of_range("pattern_from_index");
  std::vector<int> y(T);
  for (int k = 0; k < T; ++k) y[k] = (idx >> k) & 1 ? -1 : 1;
  return y;
}

OutcomeDistribution pmf_t2(double q) {
  if (q < -1.0 || q > 1.0) throw std::domain_error("pmf_t2: |q| must be <= 1");
  double mu1 = eta(q);  // P{y1 != y2}
  double mu0 = 1.0 - mu1;
  OutcomeDistribution d{2, std::vector<double>(4)};
  d.pmf[0b00] = 0.5 * mu0;  // (+,+)
  d.pmf[0b11] = 0.5 * mu0;  // (-,-)
  d.pmf[0b01] = 0.5 * mu1;  // (-,+)
  d.pmf[0b10] = 0.5 * mu1;  // (+,-)
  return d;
}

MuVector mu_t3(const CorrelationVector& q) {
  if (q.T != 3) throw std::invalid_argument("mu_t3: T must be 3");
  double q12 = q.entries[0], q13 = q.entries[1], q23 = q.entries[2];
  MuVector m;
  m.mu.resize(4);
  m.mu[1] = 0.5 * (eta(q12) + eta(q13) - eta(q23));
  m.mu[2] = 0.5 * (eta(q12) + eta(q23) - eta(q13));
  m.mu[3] = 0.5 * (eta(q13) + eta(q23) - eta(q12));
  m.mu[0] = 1.0 - m.mu[1] - m.mu[2] - m.mu[3];
  for (double& v : m.mu) {
    if (v < -kMuTol)
      throw std::domain_error("mu_t3: q is outside the valid correlation region");
    if (v < 0.0) v = 0.0;
  }
  return m;
}

OutcomeDistribution pmf_t3(const CorrelationVector& q) {
  MuVector m = mu_t3(q);
  OutcomeDistribution d{3, std::vector<double>(8)};
  d.pmf[0b000] = 0.5 * m.mu[0];  // (+,+,+)
  d.pmf[0b111] = 0.5 * m.mu[0];  // (-,-,-)
  d.pmf[0b001] = 0.5 * m.mu[1];  // y1 differs
  d.pmf[0b110] = 0.5 * m.mu[1];
  d.pmf[0b010] = 0.5 * m.mu[2];  // y2 differs
  d.pmf[0b101] = 0.5 * m.mu[2];
  d.pmf[0b100] = 0.5 * m.mu[3];  // y3 differs
  d.pmf[0b011] = 0.5 * m.mu[3];
  return d;
}

MuVector mu_from_pmf(const OutcomeDistribution& dist) {
  MuVector m;
  if (dist.T == 2) {
    m.mu = {dist.pmf[0b00] + dist.pmf[0b11], dist.pmf[0b01] + dist.pmf[0b10]};
  } else if (dist.T == 3) {
    m.mu = {dist.pmf[0b000] + dist.pmf[0b111],
            dist.pmf[0b001] + dist.pmf[0b110],
            dist.pmf[0b010] + dist.pmf[0b101],
            dist.pmf[0b100] + dist.pmf[0b011]};
  } else {
    throw std::invalid_argument("mu_from_pmf: T must be 2 or 3");
  }
  return m;
}

OutcomeDistribution pmf_mc(const CorrelationVector& q, uint64_t n_samples,
                           uint64_t seed) {
  Eigen::MatrixXd chol = chol_with_jitter(sigma_of_q(q));
  int T = q.T;
  int n_patterns = 1 << T;
  struct Accum {
    std::vector<double> counts;
    uint64_t n = 0;
    void combine(const Accum& o) {
      if (counts.empty()) counts = o.counts;
      else
        for (size_t i = 0; i < counts.size(); ++i) counts[i] += o.counts[i];
      n += o.n;
    }
  };
  Accum acc = mc_run<Accum>(
      seed, n_samples, [&](Rng& rng, uint64_t count, Accum& a) {
        a.counts.assign(n_patterns, 0.0);
        Eigen::VectorXd g(T), z(T);
        for (uint64_t s = 0; s < count; ++s) {
          for (int i = 0; i < T; ++i) g(i) = rng.next_normal();
          z.noalias() = chol * g;
          int idx = 0, idx_neg = 0;
          for (int k = 0; k < T; ++k) {
            if (z(k) < 0.0) idx |= 1 << k;
            else idx_neg |= 1 << k;
          }
          // antithetic pair (z, -z), half weight each
          a.counts[idx] += 0.5;
          a.counts[idx_neg] += 0.5;
          ++a.n;
        }
      });
  OutcomeDistribution d{T, std::vector<double>(n_patterns)};
  for (int i = 0; i < n_patterns; ++i) d.pmf[i] = acc.counts[i] / acc.n;
  return d;
}

double pmf_half_normal(const CorrelationVector& q, const std::vector<int>& y,
                       uint64_t n_samples, uint64_t seed) {
  if (static_cast<int>(y.size()) != q.T)
    throw std::invalid_argument("pmf_half_normal: pattern length mismatch");
  double max_abs = 0.0;
  for (double v : q.entries) max_abs = std::max(max_abs, std::fabs(v));
  if (max_abs > 0.9)
    std::cerr << "pmf_half_normal: max |q| = " << max_abs
              << "; the half-normal estimator has high variance near 1\n";
  Eigen::MatrixXd sigma = sigma_of_q(q);
  Eigen::LLT<Eigen::MatrixXd> llt(sigma);
  if (llt.info() != Eigen::Success)
    throw std::domain_error("pmf_half_normal: Sigma(q) must be positive definite");
  int T = q.T;
  Eigen::MatrixXd b =
      Eigen::MatrixXd::Identity(T, T) - sigma.llt().solve(Eigen::MatrixXd::Identity(T, T));
  double log_det = 0.0;
  for (int i = 0; i < T; ++i) log_det += 2.0 * std::log(llt.matrixL()(i, i));

  MeanAccum acc = mc_run<MeanAccum>(
      seed, n_samples, [&](Rng& rng, uint64_t count, MeanAccum& a) {
        Eigen::VectorXd v(T);
        for (uint64_t s = 0; s < count; ++s) {
          for (int i = 0; i < T; ++i)
            v(i) = std::fabs(rng.next_normal()) * y[i];
          double w = 0.5 * v.dot(b * v);
          a.add(std::exp(w));
        }
      });
  return std::exp(-T * std::log(2.0) - 0.5 * log_det) * acc.mean();
}

Eigen::MatrixXd fisher_mu(const MuVector& mu) {
  for (double v : mu.mu)
    if (!(v > 0.0))
      throw std::domain_error("fisher_mu: all class probabilities must be > 0");
  if (mu.mu.size() == 2) {
    Eigen::MatrixXd j(1, 1);
    j(0, 0) = 1.0 / (mu.mu[1] * (1.0 - mu.mu[1]));
    return j;
  }
  if (mu.mu.size() == 4) {
    Eigen::MatrixXd j(3, 3);
    for (int i = 0; i < 3; ++i)
      for (int k = 0; k < 3; ++k)
        j(i, k) = (i == k ? 1.0 / mu.mu[i + 1] : 0.0) + 1.0 / mu.mu[0];
    return j;
  }
  throw std::invalid_argument("fisher_mu: mu must have 2 or 4 entries");
}

double fisher_det_mu(const MuVector& mu) {
  for (double v : mu.mu)
    if (!(v > 0.0))
      throw std::domain_error("fisher_det_mu: all class probabilities must be > 0");
  if (mu.mu.size() == 2) return 1.0 / (mu.mu[1] * (1.0 - mu.mu[1]));
  if (mu.mu.size() == 4)
    return 1.0 / (mu.mu[0] * mu.mu[1] * mu.mu[2] * mu.mu[3]);
  throw std::invalid_argument("fisher_det_mu: mu must have 2 or 4 entries");
}

Eigen::MatrixXd fisher_q_numeric(const CorrelationVector& q, double step) {
  if (q.T != 2 && q.T != 3)
    throw std::invalid_argument("fisher_q_numeric: T must be 2 or 3");
  double max_abs = 0.0;
  for (double v : q.entries) max_abs = std::max(max_abs, std::fabs(v));
  if (max_abs >= 1.0)
    throw std::domain_error("fisher_q_numeric: q must be interior");
  if (step <= 0.0) step = 1e-4 * (1.0 - max_abs);

  auto pmf_at = [&](const CorrelationVector& p) {
    return (p.T == 2) ? pmf_t2(p.entries[0]) : pmf_t3(p);
  };
  int d = pair_count(q.T);
  OutcomeDistribution base = pmf_at(q);
  int n_patterns = 1 << q.T;
  std::vector<std::vector<double>> grad(d, std::vector<double>(n_patterns));
  for (int i = 0; i < d; ++i) {
    CorrelationVector lo = q, hi = q;
    lo.entries[i] -= step;
    hi.entries[i] += step;
    OutcomeDistribution plo = pmf_at(lo), phi = pmf_at(hi);
    for (int p = 0; p < n_patterns; ++p)
      grad[i][p] = (phi.pmf[p] - plo.pmf[p]) / (2.0 * step);
  }
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(d, d);
  for (int p = 0; p < n_patterns; ++p) {
    if (base.pmf[p] <= 0.0) continue;
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b)
        j(a, b) += grad[a][p] * grad[b][p] / base.pmf[p];
  }
  return j;
}

double total_variation(const OutcomeDistribution& a,
                       const OutcomeDistribution& b) {
  if (a.pmf.size() != b.pmf.size())
    throw std::invalid_argument("total_variation: size mismatch");
  double tv = 0.0;
  for (size_t i = 0; i < a.pmf.size(); ++i)
    tv += std::fabs(a.pmf[i] - b.pmf[i]);
  return 0.5 * tv;
}

}  // namespace qmimo
