#pragma once

// Scalar special functions shared by every module: the standard normal
// pdf/tail, the quantizer information kernel xi, the arccos correlation map
// eta, and ball/sphere volumes.

namespace qmimo {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 6.28318530717958647692;
inline constexpr double kTwoOverPi = 0.63661977236758134308;
inline constexpr double kSqrt2 = 1.41421356237309504880;
inline constexpr double kLog2e = 1.44269504088896340736;  // 1/ln 2
inline constexpr double kGlaisher = 1.28242712910062263688;

// phi(t) = exp(-t^2/2)/sqrt(2 pi)
double gaussian_pdf(double t);

// Q(x) = P{N(0,1) > x}, accurate in relative terms for all finite x
double q_function(double x);

// log Q(x); switches to an asymptotic tail expansion where erfc underflows
double log_q_function(double x);

// xi(s) = phi(s)^2 / (Q(s) (1 - Q(s))), evaluated in the log domain
double xi(double s);
double log_xi(double s);

// eta(q) = arccos(q)/pi and its derivative; eta maps [-1,1] -> [0,1]
double eta(double q);
double eta_prime(double q);

// log Gamma(x) for x > 0
double log_gamma_fn(double x);

// Volume of the unit n-ball and the surface area of the unit sphere in R^n
double vol_ball(int n);
double log_vol_ball(int n);        // nats
double vol_sphere_surface(int n);  // Vol(S_{n-1}) = n Vol(B_n)
double log_vol_sphere_surface(int n);

// Two-term large-n expansion of log2 Vol(B_n):
// (n/2) log2(2 pi e / n) - log2 sqrt(pi n)
double log_vol_ball_asymptotic_bits(int n);

}  // namespace qmimo
