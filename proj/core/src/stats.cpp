#include "qmimo/stats.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <thread>

#include "qmimo/rng.hpp"
#include "qmimo/scalar.hpp"

namespace qmimo {

namespace {

std::atomic<int> g_worker_override{0};

// Series expansion of P(a, x), valid for x < a + 1
double gamma_p_series(double a, double x) {
  double ap = a;
  double sum = 1.0 / a;
  double del = sum;
  for (int i = 0; i < 500; ++i) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::fabs(del) < std::fabs(sum) * 1e-16) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Continued fraction for Q(a, x), valid for x >= a + 1
double gamma_q_cf(double a, double x) {
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 500; ++i) {
    double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < 1e-16) break;
  }
  return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

}  // namespace

int worker_count() {
  int ov = g_worker_override.load(std::memory_order_relaxed);
  if (ov > 0) return ov;
  if (const char* env = std::getenv("QMIMO_WORKERS")) {
    int n = std::atoi(env);
    if (n > 0) return n;
  }
  return 1;
}

void set_worker_count(int n) {
  g_worker_override.store(n > 0 ? n : 0, std::memory_order_relaxed);
}

double gamma_p(double a, double x) {
  if (!(a > 0.0) || x < 0.0) throw std::domain_error("gamma_p: bad arguments");
  if (x == 0.0) return 0.0;
  return (x < a + 1.0) ? gamma_p_series(a, x) : 1.0 - gamma_q_cf(a, x);
}

double gamma_q(double a, double x) {
  if (!(a > 0.0) || x < 0.0) throw std::domain_error("gamma_q: bad arguments");
  if (x == 0.0) return 1.0;
  return (x < a + 1.0) ? 1.0 - gamma_p_series(a, x) : gamma_q_cf(a, x);
}

double chi2_sf(double x, double dof) {
  if (x <= 0.0) return 1.0;
  return gamma_q(0.5 * dof, 0.5 * x);
}

double chi2_equal_cells_pvalue(const std::vector<double>& counts) {
  size_t k = counts.size();
  if (k < 2) throw std::invalid_argument("chi2 test: need >= 2 cells");
  double total = 0.0;
  for (double c : counts) total += c;
  if (total <= 0.0) throw std::invalid_argument("chi2 test: empty sample");
  double expect = total / k;
  double stat = 0.0;
  for (double c : counts) stat += (c - expect) * (c - expect) / expect;
  return chi2_sf(stat, static_cast<double>(k - 1));
}

double chi2_pvalue(const std::vector<double>& counts,
                   const std::vector<double>& expected, int dof_reduction) {
  if (counts.size() != expected.size() || counts.size() < 2)
    throw std::invalid_argument("chi2 test: mismatched cells");
  double stat = 0.0;
  for (size_t i = 0; i < counts.size(); ++i) {
    if (expected[i] <= 0.0)
      throw std::invalid_argument("chi2 test: nonpositive expected count");
    double d = counts[i] - expected[i];
    stat += d * d / expected[i];
  }
  double dof = static_cast<double>(counts.size()) - dof_reduction;
  return chi2_sf(stat, dof);
}

}  // namespace qmimo
