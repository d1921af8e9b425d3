#pragma once

// End-to-end channel simulation and empirical validation: sign-output block
// generation, the plug-in correlation estimator and its MSE sweep, and
// mutual-information oracles for the T = 2 and T = 3 non-coherent channels.

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "qmimo/covariance.hpp"
#include "qmimo/types.hpp"

namespace qmimo {

struct ChannelBlock {
  Eigen::MatrixXd X;   // nt x T input
  Eigen::MatrixXi Y;   // nr x T signs in {-1, +1}
  uint64_t seed = 0;
  double snr = 0.0;
};

// Y = sign(H X + Z), rows (receive antennas) i.i.d., H and Z standard normal
ChannelBlock simulate_block(const Eigen::MatrixXd& X, int nr, uint64_t seed);

// q_hat per pair: cos(pi/nr * #{rows where the two columns disagree})
CorrelationVector estimate_q_hat(const Eigen::MatrixXi& Y);

struct MseCell {
  int pair = 0;
  int nr = 0;
  double mse = 0.0;
  double bound = 0.0;  // pi^2 / nr
};
std::vector<MseCell> estimator_mse_sweep(int T, double gamma,
                                         const std::vector<int>& nr_list,
                                         int trials, uint64_t seed);

enum class PriorKind { jeffreys, uniform };

// Exact I(q; Y-block) in bits for T = 2 via the binomial disagreement count;
// outer quadrature over the prior, inner sums in the log domain.
double mi_exact_t2(int nr, double gamma, PriorKind prior, int quad_points = 256);

struct MiMcResult {
  double estimate = 0.0;   // bits per block
  double std_err = 0.0;
  double bias_diag = 0.0;  // estimate(n_inner) - estimate(2 n_inner)
};
// Nested Monte Carlo I(q; class counts) for T = 3 under the uniform prior
MiMcResult mi_mc_t3(int nr, double gamma, int n_outer, int n_inner,
                    uint64_t seed);

// Monte Carlo estimate of E[xi(h.x) h h^T], h standard normal
Eigen::MatrixXd fisher_coherent_mc(const std::vector<double>& x,
                                   uint64_t n_samples, uint64_t seed);

}  // namespace qmimo
