#include "qmimo/covariance.hpp"

#include <cmath>
#include <stdexcept>

#include "qmimo/scalar.hpp"

namespace qmimo {

namespace {

constexpr double kPsdTol = 1e-10;
constexpr double kCholJitter = 1e-12;

void check_q(const CorrelationVector& q) {
  if (q.T < 2) throw std::invalid_argument("CorrelationVector: T must be >= 2");
  if (static_cast<int>(q.entries.size()) != pair_count(q.T))
    throw std::invalid_argument("CorrelationVector: wrong entry count");
}

double min_eigenvalue(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
      m, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

}  // namespace

int pair_index(int i, int j, int T) {
  if (i < 0 || j <= i || j >= T) throw std::out_of_range("pair_index");
  return i * T - i * (i + 1) / 2 + (j - i - 1);
}

std::pair<int, int> pair_from_index(int k, int T) {
  if (k < 0 || k >= pair_count(T)) throw std::out_of_range("pair_from_index");
  int i = 0;
  int row_len = T - 1;
  while (k >= row_len) {
    k -= row_len;
    ++i;
    --row_len;
  }
  return {i, i + 1 + k};
}

CorrelationVector make_correlation_vector(int T, std::vector<double> entries) {
  CorrelationVector q{T, std::move(entries)};
  check_q(q);
  return q;
}

Eigen::MatrixXd sigma_of_q(const CorrelationVector& q) {
  check_q(q);
  Eigen::MatrixXd sigma = Eigen::MatrixXd::Identity(q.T, q.T);
  for (int i = 0; i < q.T; ++i)
    for (int j = i + 1; j < q.T; ++j) {
      double v = q.entries[pair_index(i, j, q.T)];
      sigma(i, j) = v;
      sigma(j, i) = v;
    }
  return sigma;
}

CorrelationVector q_of_sigma(const Eigen::MatrixXd& sigma) {
  int T = static_cast<int>(sigma.rows());
  CorrelationVector q{T, std::vector<double>(pair_count(T))};
  for (int i = 0; i < T; ++i)
    for (int j = i + 1; j < T; ++j)
      q.entries[pair_index(i, j, T)] = sigma(i, j);
  return q;
}

bool is_member(const CorrelationVector& q, double gamma) {
  check_q(q);
  if (!(gamma > 0.0) || gamma > 1.0)
    throw std::invalid_argument("is_member: gamma must be in (0, 1]");
  return min_eigenvalue(sigma_of_q(q)) >= (1.0 - gamma) - kPsdTol;
}

bool is_member_scaled(const CorrelationVector& q, double gamma) {
  check_q(q);
  if (!(gamma > 0.0) || gamma > 1.0)
    throw std::invalid_argument("is_member_scaled: gamma must be in (0, 1]");
  CorrelationVector scaled = q;
  for (double& v : scaled.entries) v /= gamma;
  for (double v : scaled.entries)
    if (std::fabs(v) > 1.0 + kPsdTol) return false;
  return min_eigenvalue(sigma_of_q(scaled)) >= -kPsdTol;
}

CorrelationVector rho_of_x(const Eigen::MatrixXd& X) {
  int T = static_cast<int>(X.cols());
  if (T < 2) throw std::invalid_argument("rho_of_x: need >= 2 columns");
  std::vector<double> scale(T);
  for (int j = 0; j < T; ++j) scale[j] = 1.0 + X.col(j).squaredNorm();
  CorrelationVector q{T, std::vector<double>(pair_count(T))};
  for (int i = 0; i < T; ++i)
    for (int j = i + 1; j < T; ++j)
      q.entries[pair_index(i, j, T)] =
          X.col(i).dot(X.col(j)) / std::sqrt(scale[i] * scale[j]);
  return q;
}

Eigen::MatrixXd input_from_q(const CorrelationVector& q, double snr) {
  check_q(q);
  if (!(snr > 0.0)) throw std::invalid_argument("input_from_q: snr must be > 0");
  double gamma = snr / (1.0 + snr);
  CorrelationVector scaled = q;
  for (double& v : scaled.entries) v /= gamma;
  Eigen::MatrixXd m = sigma_of_q(scaled);
  // Chol(M) upper triangular with U^T U = M; near-singular boundary points
  // get a diagonal jitter, matching the limiting-decomposition convention.
  for (int attempt = 0; attempt < 4; ++attempt) {
    Eigen::LLT<Eigen::MatrixXd> llt(m);
    if (llt.info() == Eigen::Success) {
      Eigen::MatrixXd u = llt.matrixL().transpose();
      return std::sqrt(snr) * u;
    }
    m.diagonal().array() += kCholJitter * std::pow(10.0, attempt);
  }
  throw std::domain_error("input_from_q: Sigma(q/gamma) is not PSD");
}

double log_vol_Q_exact(int T, double gamma) {
  if (T < 2) throw std::invalid_argument("vol_Q_exact: T must be >= 2");
  if (!(gamma > 0.0) || gamma > 1.0)
    throw std::invalid_argument("vol_Q_exact: gamma must be in (0, 1]");
  int c2 = pair_count(T);
  double v = 0.5 * (c2 + 1) * std::log(kPi) + log_gamma_fn(T) -
             (T - 1) * std::log(2.0) - T * log_gamma_fn(0.5 * (T + 1));
  for (int j = 2; j <= T - 1; ++j) v += log_gamma_fn(0.5 * j);
  return v + c2 * std::log(gamma);
}

double vol_Q_exact(int T, double gamma) {
  return std::exp(log_vol_Q_exact(T, gamma));
}

McEstimate vol_Q_mc(int T, double gamma, uint64_t n_samples, uint64_t seed) {
  if (T < 2) throw std::invalid_argument("vol_Q_mc: T must be >= 2");
  if (n_samples < 1) throw std::invalid_argument("vol_Q_mc: need samples");
  int d = pair_count(T);
  struct Accum {
    uint64_t accepted = 0;
    uint64_t total = 0;
    void combine(const Accum& o) {
      accepted += o.accepted;
      total += o.total;
    }
  };
  Accum acc = mc_run<Accum>(seed, n_samples,
                            [&](Rng& rng, uint64_t count, Accum& a) {
                              CorrelationVector q{T, std::vector<double>(d)};
                              for (uint64_t s = 0; s < count; ++s) {
                                for (int i = 0; i < d; ++i)
                                  q.entries[i] =
                                      gamma * (2.0 * rng.next_double() - 1.0);
                                if (is_member(q, gamma)) ++a.accepted;
                                ++a.total;
                              }
                            });
  double cube = std::pow(2.0 * gamma, d);
  double p = static_cast<double>(acc.accepted) / acc.total;
  McEstimate out;
  out.estimate = p * cube;
  out.std_err = cube * std::sqrt(std::max(p * (1.0 - p), 0.0) / acc.total);
  return out;
}

double log_vol_Q_asymptotic_bits(int T, VolPrecision precision) {
  if (T < 2) throw std::invalid_argument("log_vol_Q_asymptotic: T must be >= 2");
  double lead_nats =
      0.25 * T * (T - 1) * std::log(kTwoPi * std::exp(0.5) / T) - T / 8.0;
  if (precision == VolPrecision::coarse) return lead_nats * kLog2e;
  double corr = -std::log(static_cast<double>(T)) / 24.0 +
                0.25 * std::log(2.0) + 0.125 - 0.5 * std::log(kGlaisher);
  return (lead_nats + corr) * kLog2e;
}

CorrelationVector sample_uniform_Q(int T, double gamma, Rng& rng) {
  if (T < 2) throw std::invalid_argument("sample_uniform_Q: T must be >= 2");
  if (!(gamma > 0.0) || gamma > 1.0)
    throw std::invalid_argument("sample_uniform_Q: gamma must be in (0, 1]");
  // Unit-norm triangular columns u_j; column j's first j-1 coordinates are a
  // point of the unit ball with density prop. to (1-|r|^2)^{(T-j-1)/2},
  // realized as the leading coordinates of a uniform point on S^T in R^{T+1}.
  Eigen::MatrixXd u = Eigen::MatrixXd::Zero(T, T);
  u(0, 0) = 1.0;
  std::vector<double> g(T + 1);
  for (int j = 1; j < T; ++j) {
    double norm2 = 0.0;
    for (int i = 0; i <= T; ++i) {
      g[i] = rng.next_normal();
      norm2 += g[i] * g[i];
    }
    double inv = 1.0 / std::sqrt(norm2);
    double r2 = 0.0;
    for (int i = 0; i < j; ++i) {
      double ri = g[i] * inv;
      u(i, j) = ri;
      r2 += ri * ri;
    }
    u(j, j) = std::sqrt(std::max(1.0 - r2, 0.0));
  }
  CorrelationVector q{T, std::vector<double>(pair_count(T))};
  for (int i = 0; i < T; ++i)
    for (int j = i + 1; j < T; ++j)
      q.entries[pair_index(i, j, T)] = gamma * u.col(i).dot(u.col(j));
  return q;
}

CorrelationVector sample_uniform_Q(int T, double gamma, uint64_t seed) {
  Rng rng(seed);
  return sample_uniform_Q(T, gamma, rng);
}

}  // namespace qmimo
