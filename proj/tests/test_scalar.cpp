#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "qmimo/quadrature.hpp"
#include "qmimo/scalar.hpp"
#include "qmimo/stats.hpp"

using namespace qmimo;

TEST_SUITE("scalar") {

TEST_CASE("gaussian pdf") {
  CHECK(gaussian_pdf(0.0) == doctest::Approx(0.3989422804014327).epsilon(1e-14));
  CHECK(gaussian_pdf(3.0) == doctest::Approx(0.0044318484119380075).epsilon(1e-13));
  for (double t : {0.3, 1.7, 4.2}) CHECK(gaussian_pdf(t) == gaussian_pdf(-t));
}

TEST_CASE("q function") {
  CHECK(q_function(0.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(q_function(1.0) == doctest::Approx(0.15865525393145707).epsilon(1e-13));
  CHECK(q_function(5.0) == doctest::Approx(2.8665157187919333e-07).epsilon(1e-11));
  for (double x = -8.0; x <= 8.0; x += 0.25)
    CHECK(std::fabs(q_function(x) + q_function(-x) - 1.0) < 1e-14);
  // log Q matches log(Q) where Q is representable, and stays finite far out
  for (double x : {0.5, 3.0, 10.0, 25.0})
    CHECK(log_q_function(x) ==
          doctest::Approx(std::log(q_function(x))).epsilon(1e-12));
  CHECK(std::isfinite(log_q_function(60.0)));
  CHECK(log_q_function(60.0) < -1700.0);
}

TEST_CASE("xi kernel") {
  CHECK(xi(0.0) == doctest::Approx(kTwoOverPi).epsilon(1e-14));
  for (double s : {0.4, 1.3, 3.7, 12.0}) CHECK(xi(s) == xi(-s));
  // tail: xi(s) ~ s phi(s) for large s
  CHECK(xi(10.0) / (10.0 * gaussian_pdf(10.0)) == doctest::Approx(1.0).epsilon(0.02));
  // xi itself underflows around s = 38; the log form keeps going
  for (double s = 0.0; s <= 37.0; s += 0.5) CHECK(xi(s) > 0.0);
  for (double s = 0.0; s <= 60.0; s += 0.5) CHECK(std::isfinite(log_xi(s)));
  CHECK(log_xi(2.0) == doctest::Approx(std::log(xi(2.0))).epsilon(1e-12));
}

TEST_CASE("eta map") {
  CHECK(eta(1.0) == doctest::Approx(0.0));
  CHECK(eta(-1.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(eta(0.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(eta(0.5) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(eta_prime(0.0) == doctest::Approx(-1.0 / kPi).epsilon(1e-14));
  // derivative consistency by central difference
  double h = 1e-6;
  CHECK(eta_prime(0.3) ==
        doctest::Approx((eta(0.3 + h) - eta(0.3 - h)) / (2 * h)).epsilon(1e-7));
}

TEST_CASE("ball and sphere volumes") {
  CHECK(vol_ball(1) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(vol_ball(2) == doctest::Approx(kPi).epsilon(1e-14));
  CHECK(vol_ball(3) == doctest::Approx(4.0 * kPi / 3.0).epsilon(1e-14));
  for (int n = 1; n <= 12; ++n) {
    CHECK(vol_sphere_surface(n) == doctest::Approx(n * vol_ball(n)).epsilon(1e-13));
    CHECK(log_vol_ball(n) == doctest::Approx(std::log(vol_ball(n))).epsilon(1e-13));
  }
  // recursion Vol(B_n) = Vol(B_{n-2}) 2 pi / n
  for (int n = 3; n <= 12; ++n)
    CHECK(vol_ball(n) == doctest::Approx(vol_ball(n - 2) * kTwoPi / n).epsilon(1e-13));
  // asymptotic expansion converges in bits
  double err200 = std::fabs(log_vol_ball_asymptotic_bits(200) -
                            log_vol_ball(200) * kLog2e);
  double err50 = std::fabs(log_vol_ball_asymptotic_bits(50) -
                           log_vol_ball(50) * kLog2e);
  CHECK(err200 < 0.01);
  CHECK(err200 < err50);
}

TEST_CASE("log gamma") {
  CHECK(log_gamma_fn(1.0) == doctest::Approx(0.0));
  CHECK(log_gamma_fn(0.5) == doctest::Approx(0.5 * std::log(kPi)).epsilon(1e-14));
  CHECK(log_gamma_fn(5.0) == doctest::Approx(std::log(24.0)).epsilon(1e-14));
}

TEST_CASE("gauss-hermite moments") {
  for (int n : {32, 64, 128}) {
    const GaussHermiteRule& rule = gauss_hermite_rule(n);
    REQUIRE(rule.nodes.size() == static_cast<size_t>(n));
    double m0 = 0, m1 = 0, m2 = 0, m4 = 0;
    for (int i = 0; i < n; ++i) {
      double x = rule.nodes[i], w = rule.weights[i];
      m0 += w;
      m1 += w * x;
      m2 += w * x * x;
      m4 += w * x * x * x * x;
    }
    CHECK(m0 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::fabs(m1) < 1e-12);
    CHECK(m2 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(m4 == doctest::Approx(3.0).epsilon(1e-11));
  }
  CHECK(expect_gaussian([](double s) { return s * s; }) ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("adaptive quadrature") {
  CHECK(integrate([](double x) { return x * x; }, 0.0, 1.0) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(integrate([](double x) { return std::exp(-x); }, 0.0, 40.0) ==
        doctest::Approx(1.0).epsilon(1e-12));
  // multi-scale integrand needs the breakpoint seed
  auto spike = [](double x) { return gaussian_pdf((x - 7.0) * 200.0) * 200.0; };
  CHECK(integrate(spike, 0.0, 40.0, {}, {6.9, 7.0, 7.1}) ==
        doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("monotone cubic interpolation") {
  std::vector<double> x = {0.0, 1.0, 2.0, 3.0, 4.0};
  std::vector<double> y = {0.0, 0.1, 0.5, 0.9, 1.0};
  MonotoneCubic f(x, y);
  for (size_t i = 0; i < x.size(); ++i)
    CHECK(f(x[i]) == doctest::Approx(y[i]).epsilon(1e-14));
  double prev = f(0.0);
  for (double t = 0.01; t <= 4.0; t += 0.01) {
    double v = f(t);
    CHECK(v >= prev - 1e-12);
    prev = v;
  }
}

TEST_CASE("chi-square helpers") {
  CHECK(gamma_p(1.0, 1.0) == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-12));
  CHECK(gamma_p(2.5, 1.3) + gamma_q(2.5, 1.3) == doctest::Approx(1.0).epsilon(1e-12));
  // chi2 with 2 dof is Exp(1/2)
  CHECK(chi2_sf(3.0, 2.0) == doctest::Approx(std::exp(-1.5)).epsilon(1e-12));
  // equal-cell test: perfectly balanced counts give p = 1
  CHECK(chi2_equal_cells_pvalue({100, 100, 100, 100}) == doctest::Approx(1.0));
  // grossly unbalanced counts give a tiny p
  CHECK(chi2_equal_cells_pvalue({400, 10, 10, 10}) < 1e-10);
}

}  // TEST_SUITE
