#pragma once

// Coherent channel (receiver knows H): the zeta moment integrals, the Fisher
// determinant of the output distribution, the asymptotic capacity in nr, its
// SNR / antenna-count regimes, and the spherical-input variant feeding the
// genie upper bound.

#include <cstdint>
#include <vector>

#include "qmimo/quadrature.hpp"
#include "qmimo/rng.hpp"
#include "qmimo/types.hpp"

namespace qmimo {

// zeta_k(t) = E[S^k xi(tS)], S ~ N(0,1), k in {0, 2}.
// Gauss-Hermite for t <= 1; substitution u = t s with adaptive quadrature for
// larger t, where the integrand concentrates on the 1/t scale.
double zeta(int k, double t);

struct AConstants {
  double a0;  // (1/sqrt(2 pi)) Int xi(u) du       = lim r zeta0(r)
  double a2;  // (1/sqrt(2 pi)) Int u^2 xi(u) du   = lim r^3 zeta2(r)
};
const AConstants& a_constants();

// Limit constant of the nt = 1 high-SNR regime: Int_0^inf sqrt(zeta2(r)) dr.
// The integrand tail decays like sqrt(a2) r^{-3/2}; the tail beyond the
// numeric cutoff is added analytically.
double high_snr_nt1_constant();

// det J(x) = zeta0(|x|)^{nt-1} zeta2(|x|)
double fisher_det_coherent(double r, int nt);
double log_fisher_det_coherent(double r, int nt);

// alpha = Int_0^sqrt(snr) zeta0^{(nt-1)/2} zeta2^{1/2} nt r^{nt-1} dr
double alpha_coherent(double snr, int nt);
double log_alpha_coherent(double snr, int nt);

enum class CoherentRegime { low_snr, high_snr, large_nt };
double alpha_asymptotic(double snr, int nt, CoherentRegime regime);
double log_alpha_asymptotic(double snr, int nt, CoherentRegime regime);

CapacityEstimate capacity_coherent(const CoherentParams& params);

// Optimal input sampler: isotropic direction times a radius drawn from the
// density proportional to the sqrt-Fisher radial profile on [0, sqrt(snr)].
class RadialInputSampler {
 public:
  RadialInputSampler(double snr, int nt, int table_knots = 4096);
  double sample_radius(Rng& rng) const;
  std::vector<double> sample(Rng& rng) const;
  double density(double r) const;  // normalized radial pdf
  double snr() const { return snr_; }
  int nt() const { return nt_; }

 private:
  double snr_;
  int nt_;
  std::vector<double> grid_, pdf_;
  MonotoneCubic inverse_cdf_;
};

std::vector<double> sample_optimal_coherent_input(double snr, int nt,
                                                  uint64_t seed);

// Spherical-input family (columns pinned to the power sphere), parameterized
// by the first nt-1 coordinates.
double fisher_det_spherical(const std::vector<double>& x_tilde, double snr,
                            int nt);
CapacityEstimate capacity_coherent_spherical(const CoherentParams& params);

}  // namespace qmimo
