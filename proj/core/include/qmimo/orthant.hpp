#pragma once

// Output-distribution layer: sign-pattern probability mass functions (exact
// for T = 2, 3; Monte Carlo for general T), the half-normal likelihood form,
// and Fisher information in the mu and q parameterizations.

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "qmimo/covariance.hpp"

namespace qmimo {

// pmf over sign patterns y in {-1,+1}^T; bit k of the index is 1 iff
// y_{k+1} = -1 (all +1 maps to index 0).
struct OutcomeDistribution {
  int T = 2;
  std::vector<double> pmf;  // length 2^T
};

int pattern_index(const std::vector<int>& y);
std::vector<int> pattern_from_index(int idx, int T);

// Class probabilities: T=2 stores (mu0, mu1) = P{equal}, P{different};
// T=3 stores (mu0, mu1, mu2, mu3) with mu_i = P{y_i differs}, mu0 = P{all equal}.
struct MuVector {
  std::vector<double> mu;
};

OutcomeDistribution pmf_t2(double q);
MuVector mu_t3(const CorrelationVector& q);
OutcomeDistribution pmf_t3(const CorrelationVector& q);
MuVector mu_from_pmf(const OutcomeDistribution& dist);

OutcomeDistribution pmf_mc(const CorrelationVector& q, uint64_t n_samples,
                           uint64_t seed);

// Half-normal Monte Carlo form of the pattern likelihood; exact mean is the
// orthant probability. High variance as gamma -> 1 (warns above 0.9).
double pmf_half_normal(const CorrelationVector& q, const std::vector<int>& y,
                       uint64_t n_samples, uint64_t seed);

Eigen::MatrixXd fisher_mu(const MuVector& mu);
double fisher_det_mu(const MuVector& mu);

// Finite-difference Fisher matrix in q (T in {2,3}); step <= 0 selects
// 1e-4 (1 - |q|_inf).
Eigen::MatrixXd fisher_q_numeric(const CorrelationVector& q, double step = 0.0);

double total_variation(const OutcomeDistribution& a,
                       const OutcomeDistribution& b);

}  // namespace qmimo
