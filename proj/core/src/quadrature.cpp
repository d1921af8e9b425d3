#include "qmimo/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <queue>
#include <stdexcept>

#include "qmimo/scalar.hpp"

namespace qmimo {

namespace {

// Roots/weights of the physicists' Hermite polynomial via Newton iteration,
// for the weight exp(-x^2); converted by the caller.
GaussHermiteRule build_hermite(int n) {
  std::vector<double> x(n), w(n);
  const double eps = 1e-15;
  int m = (n + 1) / 2;
  double z = 0.0, z_prev = 0.0, z_prev2 = 0.0, pp = 0.0;
  for (int i = 0; i < m; ++i) {
    if (i == 0) {
      z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -1.0 / 6.0);
    } else if (i == 1) {
      z -= 1.14 * std::pow(static_cast<double>(n), 0.426) / z;
    } else if (i == 2) {
      z = 1.86 * z - 0.86 * z_prev2;
    } else if (i == 3) {
      z = 1.91 * z - 0.91 * z_prev2;
    } else {
      z = 2.0 * z - z_prev2;
    }
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = std::pow(kPi, -0.25);
      double p2 = 0.0;
      for (int j = 1; j <= n; ++j) {
        double p3 = p2;
        p2 = p1;
        p1 = z * std::sqrt(2.0 / j) * p2 - std::sqrt((j - 1.0) / j) * p3;
      }
      pp = std::sqrt(2.0 * n) * p2;
      double dz = p1 / pp;
      z -= dz;
      if (std::fabs(dz) <= eps) break;
    }
    z_prev2 = z_prev;
    z_prev = z;
    x[i] = z;
    x[n - 1 - i] = -z;
    w[i] = 2.0 / (pp * pp);
    w[n - 1 - i] = w[i];
  }
  GaussHermiteRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  double inv_sqrt_pi = 1.0 / std::sqrt(kPi);
  for (int i = 0; i < n; ++i) {
    rule.nodes[i] = kSqrt2 * x[n - 1 - i];  // ascending order
    rule.weights[i] = w[n - 1 - i] * inv_sqrt_pi;
  }
  return rule;
}

GaussLegendreRule build_legendre(int n) {
  GaussLegendreRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double eps = 1e-15;
  int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      double dz = p1 / pp;
      z -= dz;
      if (std::fabs(dz) <= eps) break;
    }
    rule.nodes[i] = -z;
    rule.nodes[n - 1 - i] = z;
    rule.weights[i] = 2.0 / ((1.0 - z * z) * pp * pp);
    rule.weights[n - 1 - i] = rule.weights[i];
  }
  return rule;
}

std::mutex g_rule_mutex;

}  // namespace

const GaussHermiteRule& gauss_hermite_rule(int n) {
  if (n < 2) throw std::invalid_argument("gauss_hermite_rule: n must be >= 2");
  std::lock_guard<std::mutex> lock(g_rule_mutex);
  static std::map<int, GaussHermiteRule> cache;
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, build_hermite(n)).first;
  return it->second;
}

const GaussLegendreRule& gauss_legendre_rule(int n) {
  if (n < 2) throw std::invalid_argument("gauss_legendre_rule: n must be >= 2");
  std::lock_guard<std::mutex> lock(g_rule_mutex);
  static std::map<int, GaussLegendreRule> cache;
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, build_legendre(n)).first;
  return it->second;
}

double expect_gaussian(const std::function<double(double)>& f, int nodes) {
  const GaussHermiteRule& rule = gauss_hermite_rule(nodes);
  double acc = 0.0;
  for (size_t i = 0; i < rule.nodes.size(); ++i)
    acc += rule.weights[i] * f(rule.nodes[i]);
  return acc;
}

namespace {

// Gauss-Kronrod 15(7) nodes/weights on [-1, 1]
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a, b, value, error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

Segment gk15(const std::function<double(double)>& f, double a, double b) {
  double c = 0.5 * (a + b);
  double h = 0.5 * (b - a);
  double fc = f(c);
  double res_k = kWgk[7] * fc;
  double res_g = kWg[3] * fc;
  for (int i = 0; i < 7; ++i) {
    double x = h * kXgk[i];
    double fs = f(c - x) + f(c + x);
    res_k += kWgk[i] * fs;
    if (i % 2 == 1) res_g += kWg[i / 2] * fs;
  }
  Segment s;
  s.a = a;
  s.b = b;
  s.value = res_k * h;
  s.error = std::fabs((res_k - res_g) * h);
  return s;
}

}  // namespace

QuadResult integrate_adaptive(const std::function<double(double)>& f, double a,
                              double b, const QuadratureSpec& spec,
                              const std::vector<double>& breakpoints) {
  std::vector<double> pts;
  pts.push_back(a);
  for (double p : breakpoints)
    if (p > a && p < b) pts.push_back(p);
  pts.push_back(b);
  std::sort(pts.begin(), pts.end());

  std::priority_queue<Segment> heap;
  double total = 0.0, total_err = 0.0;
  for (size_t i = 0; i + 1 < pts.size(); ++i) {
    Segment s = gk15(f, pts[i], pts[i + 1]);
    total += s.value;
    total_err += s.error;
    heap.push(s);
  }
  int n_intervals = static_cast<int>(pts.size()) - 1;
  auto tol = [&] {
    return std::max(spec.abs_tol, spec.rel_tol * std::fabs(total));
  };
  while (total_err > tol() && n_intervals < spec.max_intervals) {
    Segment worst = heap.top();
    heap.pop();
    double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) break;  // cannot refine further
    Segment left = gk15(f, worst.a, mid);
    Segment right = gk15(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++n_intervals;
  }
  QuadResult r;
  r.value = total;
  r.error = total_err;
  r.converged = total_err <= tol();
  return r;
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureSpec& spec,
                 const std::vector<double>& breakpoints) {
  QuadResult r = integrate_adaptive(f, a, b, spec, breakpoints);
  if (!r.converged)
    throw std::runtime_error("integrate: adaptive refinement budget exceeded");
  return r.value;
}

MonotoneCubic::MonotoneCubic(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
  size_t n = x_.size();
  if (n < 2 || y_.size() != n)
    throw std::invalid_argument("MonotoneCubic: need >= 2 matching points");
  std::vector<double> d(n - 1);
  for (size_t i = 0; i + 1 < n; ++i) {
    double h = x_[i + 1] - x_[i];
    if (h <= 0.0)
      throw std::invalid_argument("MonotoneCubic: x must be increasing");
    d[i] = (y_[i + 1] - y_[i]) / h;
  }
  m_.resize(n);
  m_[0] = d[0];
  m_[n - 1] = d[n - 2];
  for (size_t i = 1; i + 1 < n; ++i) {
    m_[i] = (d[i - 1] * d[i] <= 0.0) ? 0.0 : 0.5 * (d[i - 1] + d[i]);
  }
  // Fritsch-Carlson limiter
  for (size_t i = 0; i + 1 < n; ++i) {
    if (d[i] == 0.0) {
      m_[i] = m_[i + 1] = 0.0;
      continue;
    }
    double alpha = m_[i] / d[i];
    double beta = m_[i + 1] / d[i];
    double s = alpha * alpha + beta * beta;
    if (s > 9.0) {
      double tau = 3.0 / std::sqrt(s);
      m_[i] = tau * alpha * d[i];
      m_[i + 1] = tau * beta * d[i];
    }
  }
}

double MonotoneCubic::operator()(double x) const {
  if (x <= x_.front()) return y_.front();
  if (x >= x_.back()) return y_.back();
  size_t hi = std::upper_bound(x_.begin(), x_.end(), x) - x_.begin();
  size_t lo = hi - 1;
  double h = x_[hi] - x_[lo];
  double t = (x - x_[lo]) / h;
  double t2 = t * t, t3 = t2 * t;
  double h00 = 2 * t3 - 3 * t2 + 1;
  double h10 = t3 - 2 * t2 + t;
  double h01 = -2 * t3 + 3 * t2;
  double h11 = t3 - t2;
  return h00 * y_[lo] + h10 * h * m_[lo] + h01 * y_[hi] + h11 * h * m_[hi];
}

}  // namespace qmimo
