#pragma once

// Non-coherent block-fading capacity: the alpha constants for T = 2, 3, the
// asymptotic capacity for T <= 3, lower/upper bounds for arbitrary T, and the
// large-T and low-SNR regimes.

#include <cstdint>

#include "qmimo/types.hpp"

namespace qmimo {

// alpha for T = 2, closed form in gamma = snr/(1+snr)
double alpha_t2(double gamma);

// alpha for T = 3: Monte Carlo over a uniform draw from Q_gamma of the
// sqrt-Fisher integrand, scaled by Vol(Q_gamma). Warns above gamma = 0.95.
McEstimate alpha_t3(double gamma, uint64_t n_samples, uint64_t seed);

// Capacity up to o(1) in nr, T in {2, 3}; throws unsupported_error otherwise.
CapacityEstimate capacity_noncoherent_exact(const NoncoherentParams& params,
                                            uint64_t n_samples = 1000000,
                                            uint64_t seed = 20260823);

// Non-asymptotic lower bound from a uniform correlation input
CapacityEstimate capacity_lb_uniform(const NoncoherentParams& params);

// Independent pairwise-signaling lower bound (large-T form)
CapacityEstimate capacity_lb_indep(const NoncoherentParams& params);
// Exact per-pair version of the same bound
double capacity_lb_indep_exact_bits(const NoncoherentParams& params);

// Genie-aided (coherent spherical) upper bound
CapacityEstimate capacity_ub_genie(const NoncoherentParams& params);

// (1/T) sum_{i=2}^T log2(pi^{i/2}/Gamma(i/2)) and its large-T equivalent
double sum_log_gamma_exact_bits(int T);
double sum_log_gamma_asymptotic_bits(int T);

// Low-SNR capacity expression (numerically the uniform lower bound)
CapacityEstimate capacity_low_snr(const NoncoherentParams& params);

struct CapacityWindow {
  double lb_bits = 0.0;
  double ub_bits = 0.0;
};
CapacityWindow capacity_large_T_window(const NoncoherentParams& params);

}  // namespace qmimo
