#pragma once

// 1-D quadrature: Gauss-Hermite rules for expectations under a standard
// normal weight and adaptive Gauss-Kronrod refinement on finite intervals.

#include <functional>
#include <vector>

namespace qmimo {

struct QuadratureSpec {
  enum class Kind { gauss_hermite, adaptive_interval };
  Kind kind = Kind::adaptive_interval;
  int node_count = 128;
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  int max_intervals = 20000;
};

struct QuadResult {
  double value = 0.0;
  double error = 0.0;
  bool converged = false;
};

// Nodes x_i and weights w_i such that E[f(S)] ~ sum w_i f(x_i), S ~ N(0,1).
struct GaussHermiteRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
const GaussHermiteRule& gauss_hermite_rule(int n);

// E[f(S)] by Gauss-Hermite
double expect_gaussian(const std::function<double(double)>& f, int nodes = 128);

// Adaptive Gauss-Kronrod 15(7) on [a, b]; optional interior breakpoints seed
// the initial subdivision (useful for integrands living on several scales).
QuadResult integrate_adaptive(const std::function<double(double)>& f, double a,
                              double b, const QuadratureSpec& spec = {},
                              const std::vector<double>& breakpoints = {});

// Convenience wrapper; throws std::runtime_error on non-convergence.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureSpec& spec = {},
                 const std::vector<double>& breakpoints = {});

// Gauss-Legendre nodes/weights on [-1, 1]
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
const GaussLegendreRule& gauss_legendre_rule(int n);

// Monotone cubic (Fritsch-Carlson) interpolant through (x_i, y_i), x strictly
// increasing; used for inverse-CDF tables.
class MonotoneCubic {
 public:
  MonotoneCubic() = default;
  MonotoneCubic(std::vector<double> x, std::vector<double> y);
  double operator()(double x) const;

 private:
  std::vector<double> x_, y_, m_;
};

}  // namespace qmimo
