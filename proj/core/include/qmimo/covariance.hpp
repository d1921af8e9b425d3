#pragma once

// Non-coherent parameter space: pairwise correlation vectors q, covariance
// matrices Sigma(q), the feasible region Q_gamma, the rho map from inputs to
// correlations, Cholesky input construction, volumes of Q_gamma, and the
// exact uniform sampler over Q_gamma.

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "qmimo/rng.hpp"
#include "qmimo/types.hpp"

namespace qmimo {

struct CorrelationVector {
  int T = 2;
  std::vector<double> entries;  // length T(T-1)/2, lexicographic pairs
};

inline int pair_count(int T) { return T * (T - 1) / 2; }

// 0-based (i, j), i < j < T, lexicographic in (i, j)
int pair_index(int i, int j, int T);
std::pair<int, int> pair_from_index(int k, int T);

CorrelationVector make_correlation_vector(int T, std::vector<double> entries);

Eigen::MatrixXd sigma_of_q(const CorrelationVector& q);
CorrelationVector q_of_sigma(const Eigen::MatrixXd& sigma);

// q in Q_gamma iff Sigma(q) - (1-gamma) I is PSD (tolerance 1e-10)
bool is_member(const CorrelationVector& q, double gamma);
// equivalent scaled test: Sigma(q / gamma) PSD
bool is_member_scaled(const CorrelationVector& q, double gamma);

// rho_ij(X) = x_i . x_j / sqrt((1+|x_i|^2)(1+|x_j|^2)) over column pairs
CorrelationVector rho_of_x(const Eigen::MatrixXd& X);

// T x T upper-triangular X with column norms sqrt(snr), nonnegative diagonal,
// and rho_of_x(X) = q. Throws std::domain_error if q is outside Q_gamma.
Eigen::MatrixXd input_from_q(const CorrelationVector& q, double snr);

// Closed-form volume of Q_gamma
double vol_Q_exact(int T, double gamma);
double log_vol_Q_exact(int T, double gamma);  // nats

McEstimate vol_Q_mc(int T, double gamma, uint64_t n_samples, uint64_t seed);

enum class VolPrecision { coarse, fine };
// log2 Vol(Q_1): coarse keeps the per-symbol leading terms; fine adds the
// O(log T) and constant corrections.
double log_vol_Q_asymptotic_bits(int T, VolPrecision precision);

// Exact uniform sample from Q_gamma (rejection-free)
CorrelationVector sample_uniform_Q(int T, double gamma, Rng& rng);
CorrelationVector sample_uniform_Q(int T, double gamma, uint64_t seed);

}  // namespace qmimo
