#include <cmath>
#include <vector>

#include "doctest.h"
#include "qmimo/coherent.hpp"
#include "qmimo/quadrature.hpp"
#include "qmimo/rng.hpp"
#include "qmimo/scalar.hpp"
#include "qmimo/stats.hpp"

using namespace qmimo;

TEST_SUITE("coherent") {

TEST_CASE("zeta moments at zero and small t") {
  CHECK(zeta(0, 0.0) == doctest::Approx(kTwoOverPi).epsilon(1e-10));
  CHECK(zeta(2, 0.0) == doctest::Approx(kTwoOverPi).epsilon(1e-10));
  // both decrease away from t = 0
  CHECK(zeta(0, 0.5) < zeta(0, 0.0));
  CHECK(zeta(2, 0.5) < zeta(2, 0.0));
}

TEST_CASE("zeta scheme is continuous at the switch point") {
  for (int k : {0, 2}) {
    double below = zeta(k, 1.0 - 1e-7);
    double above = zeta(k, 1.0 + 1e-7);
    CHECK(std::fabs(below - above) < 1e-6 * below);
  }
}

TEST_CASE("zeta tails match the limit constants") {
  const AConstants& a = a_constants();
  CHECK(50.0 * zeta(0, 50.0) == doctest::Approx(a.a0).epsilon(0.005));
  CHECK(std::pow(50.0, 3) * zeta(2, 50.0) == doctest::Approx(a.a2).epsilon(0.005));
  // frozen values of the limit constants
  CHECK(a.a0 == doctest::Approx(0.7206471695142628).epsilon(1e-9));
  CHECK(a.a2 == doctest::Approx(0.8804401663647063).epsilon(1e-9));
  // frozen value of 50 zeta0(50)
  CHECK(50.0 * zeta(0, 50.0) == doctest::Approx(0.7204711432).epsilon(1e-7));
}

TEST_CASE("nt=1 high-snr limit constant") {
  CHECK(high_snr_nt1_constant() == doctest::Approx(2.3434).epsilon(2e-3));
}

TEST_CASE("fisher determinant") {
  CHECK(fisher_det_coherent(0.0, 1) == doctest::Approx(kTwoOverPi).epsilon(1e-10));
  CHECK(fisher_det_coherent(0.0, 4) ==
        doctest::Approx(std::pow(kTwoOverPi, 4)).epsilon(1e-9));
  for (double r : {0.3, 1.0, 2.5})
    CHECK(fisher_det_coherent(r, 1) == doctest::Approx(zeta(2, r)).epsilon(1e-12));
  CHECK(log_fisher_det_coherent(1.5, 3) ==
        doctest::Approx(std::log(fisher_det_coherent(1.5, 3))).epsilon(1e-12));
  // r^2 zeta0(r) increases in r (information per ray grows with radius)
  double prev = 0.0;
  for (double r = 0.25; r <= 100.0; r *= 2.0) {
    double v = r * r * zeta(0, r);
    CHECK(v > prev);
    prev = v;
  }
}

TEST_CASE("alpha frozen golden and monotonicity") {
  CHECK(alpha_coherent(1.0, 1) ==
        doctest::Approx(0.687623060638117).epsilon(1e-9));
  CHECK(log_alpha_coherent(1.0, 1) ==
        doctest::Approx(std::log(alpha_coherent(1.0, 1))).epsilon(1e-12));
  double prev = 0.0;
  for (double snr : {0.1, 0.5, 2.0, 10.0, 100.0}) {
    double a = alpha_coherent(snr, 2);
    CHECK(a > prev);
    prev = a;
  }
}

TEST_CASE("alpha asymptotic regimes") {
  // low SNR: alpha -> (2 snr / pi)^{nt/2}
  double low = alpha_coherent(1e-4, 1);
  CHECK(low / std::sqrt(2e-4 / kPi) == doctest::Approx(1.0).epsilon(0.01));
  CHECK(alpha_asymptotic(1e-4, 1, CoherentRegime::low_snr) ==
        doctest::Approx(std::sqrt(2e-4 / kPi)).epsilon(1e-10));
  CHECK(alpha_asymptotic(1e-5, 2, CoherentRegime::low_snr) ==
        doctest::Approx(2e-5 / kPi).epsilon(1e-10));
  CHECK(low / alpha_asymptotic(1e-4, 1, CoherentRegime::low_snr) ==
        doctest::Approx(1.0).epsilon(0.01));

  // high SNR, nt = 2 and 3
  for (int nt : {2, 3}) {
    double exact = alpha_coherent(1e8, nt);
    double asym = alpha_asymptotic(1e8, nt, CoherentRegime::high_snr);
    CHECK(exact / asym == doctest::Approx(1.0).epsilon(0.05));
  }

  // many antennas (Laplace regime)
  double exact = std::exp(log_alpha_coherent(1.0, 60));
  double asym = std::exp(log_alpha_asymptotic(1.0, 60, CoherentRegime::large_nt));
  CHECK(exact / asym == doctest::Approx(1.0).epsilon(0.10));
}

TEST_CASE("capacity golden and receive-antenna scaling") {
  CoherentParams p{1.0, 1, 4096};
  CapacityEstimate c = capacity_coherent(p);
  CHECK(c.bits_per_use == doctest::Approx(4.412594248853).epsilon(1e-9));
  CHECK(c.terms.dimension_term + c.terms.volume_term + c.terms.alpha_term ==
        doctest::Approx(c.bits_per_use).epsilon(1e-12));
  // doubling nr adds nt/2 bits
  for (int nt : {1, 3}) {
    CoherentParams a{2.0, nt, 1 << 14};
    CoherentParams b{2.0, nt, 1 << 15};
    double gain = capacity_coherent(b).bits_per_use -
                  capacity_coherent(a).bits_per_use;
    CHECK(gain == doctest::Approx(nt / 2.0).epsilon(1e-10));
  }
}

TEST_CASE("optimal input sampler") {
  double snr = 2.0;
  int nt = 3;
  RadialInputSampler sampler(snr, nt);
  Rng rng(11);
  int n = 20000;
  int bins = 20;
  double radius_cap = std::sqrt(snr);
  std::vector<double> counts(bins, 0.0);
  std::vector<double> mean(nt, 0.0);
  for (int i = 0; i < n; ++i) {
    std::vector<double> x = sampler.sample(rng);
    REQUIRE(x.size() == static_cast<size_t>(nt));
    double norm2 = 0.0;
    for (int k = 0; k < nt; ++k) {
      norm2 += x[k] * x[k];
      mean[k] += x[k];
    }
    double r = std::sqrt(norm2);
    CHECK(r <= radius_cap + 1e-9);
    int b = std::min(bins - 1, static_cast<int>(bins * r / radius_cap));
    counts[b] += 1.0;
  }
  // isotropic: coordinate means vanish
  for (int k = 0; k < nt; ++k)
    CHECK(std::fabs(mean[k] / n) < 4.0 * radius_cap / std::sqrt(double(n)));
  // radial marginal agrees with the reported density (chi-square)
  std::vector<double> expected(bins, 0.0);
  int fine = 64;
  for (int b = 0; b < bins; ++b) {
    double lo = radius_cap * b / bins, hi = radius_cap * (b + 1) / bins;
    double acc = 0.0;
    for (int j = 0; j < fine; ++j) {
      double r0 = lo + (hi - lo) * j / fine;
      double r1 = lo + (hi - lo) * (j + 1) / fine;
      acc += 0.5 * (sampler.density(r0) + sampler.density(r1)) * (r1 - r0);
    }
    expected[b] = acc * n;
  }
  CHECK(chi2_pvalue(counts, expected) > 0.001);
  // one-shot convenience wrapper is deterministic in the seed
  std::vector<double> s1 = sample_optimal_coherent_input(snr, nt, 77);
  std::vector<double> s2 = sample_optimal_coherent_input(snr, nt, 77);
  CHECK(s1 == s2);
}

TEST_CASE("spherical fisher integral identity for nt=2") {
  double snr = 3.0;
  double radius = std::sqrt(snr);
  // integrate sqrt(det J) over the coordinate chart via x = R sin(theta)
  double integral = integrate(
      [&](double th) {
        std::vector<double> x_tilde = {radius * std::sin(th)};
        return std::sqrt(fisher_det_spherical(x_tilde, snr, 2)) * radius *
               std::cos(th);
      },
      -kPi / 2 + 1e-9, kPi / 2 - 1e-9);
  double expected = kPi * radius * std::sqrt(zeta(0, radius));
  CHECK(integral == doctest::Approx(expected).epsilon(1e-6));
}

TEST_CASE("spherical capacity sits below the full capacity") {
  for (int nt : {2, 3}) {
    CoherentParams p{1.0, nt, 1000000};
    CHECK(capacity_coherent_spherical(p).bits_per_use <=
          capacity_coherent(p).bits_per_use);
  }
  // doubling nr adds (nt-1)/2 bits for the sphere family
  CoherentParams a{2.0, 3, 1 << 14};
  CoherentParams b{2.0, 3, 1 << 15};
  CHECK(capacity_coherent_spherical(b).bits_per_use -
            capacity_coherent_spherical(a).bits_per_use ==
        doctest::Approx(1.0).epsilon(1e-10));
}

}  // TEST_SUITE
