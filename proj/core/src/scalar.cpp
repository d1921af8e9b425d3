#include "qmimo/scalar.hpp"

#include <cmath>
#include <stdexcept>

namespace qmimo {

double gaussian_pdf(double t) {
  return std::exp(-0.5 * t * t) / std::sqrt(kTwoPi);
}

double q_function(double x) { return 0.5 * std::erfc(x / kSqrt2); }

double log_q_function(double x) {
  if (x < 30.0) {
    return std::log(0.5 * std::erfc(x / kSqrt2));
  }
  // Q(x) = phi(x)/x (1 - 1/x^2 + 3/x^4 - 15/x^6 + 105/x^8 + ...)
  double ix2 = 1.0 / (x * x);
  double series = 1.0 + ix2 * (-1.0 + ix2 * (3.0 + ix2 * (-15.0 + ix2 * 105.0)));
  return -0.5 * x * x - std::log(x) - 0.5 * std::log(kTwoPi) + std::log(series);
}

double log_xi(double s) {
  double a = std::fabs(s);
  double log_phi2 = -a * a - std::log(kTwoPi);
  // Q(a)(1-Q(a)); 1-Q(a) = Q(-a)
  double lq = log_q_function(a);
  double lq_neg;
  if (a < 30.0) {
    lq_neg = std::log1p(-q_function(a));
  } else {
    lq_neg = -std::exp(lq);  // log(1-Q) ~ -Q for tiny Q
  }
  return log_phi2 - lq - lq_neg;
}

double xi(double s) { return std::exp(log_xi(s)); }

double eta(double q) {
  if (q < -1.0 || q > 1.0) throw std::domain_error("eta: |q| must be <= 1");
  return std::acos(q) / kPi;
}

double eta_prime(double q) {
  if (q <= -1.0 || q >= 1.0)
    throw std::domain_error("eta_prime: singular at |q| = 1");
  return -1.0 / (kPi * std::sqrt(1.0 - q * q));
}

double log_gamma_fn(double x) {
  if (!(x > 0.0)) throw std::domain_error("log_gamma_fn: x must be > 0");
  return std::lgamma(x);
}

double log_vol_ball(int n) {
  if (n < 1) throw std::domain_error("vol_ball: n must be >= 1");
  return 0.5 * n * std::log(kPi) - log_gamma_fn(0.5 * n + 1.0);
}

double vol_ball(int n) { return std::exp(log_vol_ball(n)); }

double log_vol_sphere_surface(int n) {
  return std::log(static_cast<double>(n)) + log_vol_ball(n);
}

double vol_sphere_surface(int n) { return std::exp(log_vol_sphere_surface(n)); }

double log_vol_ball_asymptotic_bits(int n) {
  double e = std::exp(1.0);
  return 0.5 * n * std::log2(kTwoPi * e / n) - 0.5 * std::log2(kPi * n);
}

}  // namespace qmimo
