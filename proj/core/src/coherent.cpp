#include "qmimo/coherent.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <stdexcept>

#include "qmimo/quadrature.hpp"
#include "qmimo/scalar.hpp"

namespace qmimo {

namespace {

constexpr double kXiCutoff = 45.0;  // xi(u) ~ u phi(u) is zero past this

QuadratureSpec inner_spec() {
  QuadratureSpec s;
  s.abs_tol = 1e-13;
  s.rel_tol = 1e-12;
  return s;
}

QuadratureSpec outer_spec() {
  QuadratureSpec s;
  s.abs_tol = 1e-12;
  s.rel_tol = 1e-9;
  return s;
}

std::vector<double> log_spaced_breakpoints(double upper) {
  std::vector<double> bp;
  for (double p : {0.25, 0.5, 1.0, 2.0, 5.0, 10.0, 30.0, 100.0, 300.0, 1000.0,
                   3000.0, 10000.0, 30000.0})
    if (p < upper) bp.push_back(p);
  return bp;
}

}  // namespace

double zeta(int k, double t) {
  if (k != 0 && k != 2) throw std::invalid_argument("zeta: k must be 0 or 2");
  if (t < 0.0) throw std::domain_error("zeta: t must be >= 0");
  if (t <= 1.0) {
    const GaussHermiteRule& rule = gauss_hermite_rule(128);
    double acc = 0.0;
    for (size_t i = 0; i < rule.nodes.size(); ++i) {
      double s = rule.nodes[i];
      double v = xi(t * s);
      if (k == 2) v *= s * s;
      acc += rule.weights[i] * v;
    }
    return acc;
  }
  // E[S^k xi(tS)] = (2/t) Int_0^inf (u/t)^k xi(u) phi(u/t) du, u = t s
  auto f = [k, t](double u) {
    double v = xi(u) * gaussian_pdf(u / t);
    if (k == 2) v *= (u / t) * (u / t);
    return v;
  };
  double val =
      integrate(f, 0.0, kXiCutoff, inner_spec(), {1.0, 3.0, 8.0, 20.0});
  return 2.0 * val / t;
}

const AConstants& a_constants() {
  static const AConstants c = [] {
    QuadratureSpec s = inner_spec();
    std::vector<double> bp = {1.0, 3.0, 8.0, 20.0};
    double i0 = integrate([](double u) { return xi(u); }, 0.0, kXiCutoff, s, bp);
    double i2 =
        integrate([](double u) { return u * u * xi(u); }, 0.0, kXiCutoff, s, bp);
    double norm = 2.0 / std::sqrt(kTwoPi);
    return AConstants{norm * i0, norm * i2};
  }();
  return c;
}

double high_snr_nt1_constant() {
  static const double c = [] {
    const double cutoff = 400.0;
    double head = integrate([](double r) { return std::sqrt(zeta(2, r)); }, 0.0,
                            cutoff, outer_spec(), log_spaced_breakpoints(cutoff));
    // zeta2(r) ~ a2 / r^3, so the tail integrates to 2 sqrt(a2 / cutoff)
    double tail = 2.0 * std::sqrt(a_constants().a2 / cutoff);
    return head + tail;
  }();
  return c;
}

double log_fisher_det_coherent(double r, int nt) {
  if (r < 0.0) throw std::domain_error("fisher_det_coherent: r must be >= 0");
  if (nt < 1) throw std::invalid_argument("fisher_det_coherent: nt must be >= 1");
  return (nt - 1) * std::log(zeta(0, r)) + std::log(zeta(2, r));
}

double fisher_det_coherent(double r, int nt) {
  return std::exp(log_fisher_det_coherent(r, nt));
}

namespace {

double log_radial_density(double r, double snr, int nt) {
  // log of zeta0^{(nt-1)/2} zeta2^{1/2} nt r^{nt-1}
  double lf = 0.5 * log_fisher_det_coherent(r, nt) +
              std::log(static_cast<double>(nt));
  if (nt > 1) lf += (nt - 1) * std::log(r);
  (void)snr;
  return lf;
}

// Peak of the log-integrand over (0, R], scanned on a mixed linear/log grid.
double scan_log_peak(double snr, int nt) {
  double R = std::sqrt(snr);
  double best = -1e300;
  int n = 512;
  for (int i = 1; i <= n; ++i) {
    double r_lin = R * i / n;
    best = std::max(best, log_radial_density(r_lin, snr, nt));
    if (R > 2.0) {
      double r_log = std::exp(std::log(R * 1e-3) +
                              (std::log(R) - std::log(R * 1e-3)) * i / n);
      best = std::max(best, log_radial_density(r_log, snr, nt));
    }
  }
  return best;
}

}  // namespace

double log_alpha_coherent(double snr, int nt) {
  if (!(snr > 0.0)) throw std::domain_error("alpha_coherent: snr must be > 0");
  if (nt < 1) throw std::invalid_argument("alpha_coherent: nt must be >= 1");
  double R = std::sqrt(snr);
  double shift = scan_log_peak(snr, nt);
  auto f = [&](double r) {
    if (r <= 0.0) return 0.0;
    return std::exp(log_radial_density(r, snr, nt) - shift);
  };
  double val = integrate(f, 0.0, R, outer_spec(), log_spaced_breakpoints(R));
  return shift + std::log(val);
}

double alpha_coherent(double snr, int nt) {
  return std::exp(log_alpha_coherent(snr, nt));
}

double log_alpha_asymptotic(double snr, int nt, CoherentRegime regime) {
  const AConstants& a = a_constants();
  switch (regime) {
    case CoherentRegime::low_snr: {
      if (nt * snr > 0.1)
        std::cerr << "alpha_asymptotic: low-snr regime requested with nt*snr = "
                  << nt * snr << " (expansion assumes nt*snr -> 0)\n";
      return 0.5 * nt * std::log(2.0 * snr / kPi);
    }
    case CoherentRegime::high_snr: {
      if (snr < 100.0)
        std::cerr << "alpha_asymptotic: high-snr regime requested with snr = "
                  << snr << "\n";
      if (nt == 1) return std::log(high_snr_nt1_constant());
      if (nt == 2) return 0.5 * std::log(a.a0 * a.a2) + std::log(std::log(snr));
      return std::log(2.0 * nt / (nt - 2.0)) + 0.5 * (nt - 1) * std::log(a.a0) +
             0.5 * std::log(a.a2) + 0.25 * (nt - 2) * std::log(snr);
    }
    case CoherentRegime::large_nt: {
      if (nt < 16)
        std::cerr << "alpha_asymptotic: large-nt regime requested with nt = "
                  << nt << "\n";
      double rs = std::sqrt(snr);
      double z0 = zeta(0, rs);
      double z2 = zeta(2, rs);
      double h = 1e-5 * std::max(1.0, rs);
      double z0p = (zeta(0, rs + h) - zeta(0, std::max(rs - h, 0.0))) /
                   (rs - h >= 0.0 ? 2.0 * h : h);
      double prefactor = std::sqrt(z0 * z2) / (z0 + 0.5 * rs * z0p);
      return std::log(prefactor) + 0.5 * nt * std::log(snr * z0);
    }
  }
  throw std::logic_error("alpha_asymptotic: unknown regime");
}

double alpha_asymptotic(double snr, int nt, CoherentRegime regime) {
  return std::exp(log_alpha_asymptotic(snr, nt, regime));
}

CapacityEstimate capacity_coherent(const CoherentParams& params) {
  params.validate();
  CapacityEstimate est;
  est.terms.dimension_term =
      0.5 * params.nt * std::log2(params.nr / (kTwoPi * std::exp(1.0)));
  est.terms.volume_term = log_vol_ball(params.nt) * kLog2e;
  est.terms.alpha_term = log_alpha_coherent(params.snr, params.nt) * kLog2e;
  est.bits_per_use =
      est.terms.dimension_term + est.terms.volume_term + est.terms.alpha_term;
  est.method = Method::exact_asymptotic;
  est.asymptotic = true;
  return est;
}

RadialInputSampler::RadialInputSampler(double snr, int nt, int table_knots)
    : snr_(snr), nt_(nt) {
  if (!(snr > 0.0) || nt < 1 || table_knots < 16)
    throw std::invalid_argument("RadialInputSampler: bad parameters");
  double R = std::sqrt(snr);
  double shift = scan_log_peak(snr, nt);
  grid_.resize(table_knots);
  pdf_.resize(table_knots);
  for (int i = 0; i < table_knots; ++i) {
    double r = R * i / (table_knots - 1);
    grid_[i] = r;
    pdf_[i] = (r > 0.0)
                  ? std::exp(log_radial_density(r, snr, nt) - shift)
                  : (nt == 1 ? std::exp(log_radial_density(1e-12, snr, nt) -
                                        shift)
                             : 0.0);
  }
  std::vector<double> cdf(table_knots, 0.0);
  for (int i = 1; i < table_knots; ++i) {
    cdf[i] = cdf[i - 1] +
             0.5 * (pdf_[i] + pdf_[i - 1]) * (grid_[i] - grid_[i - 1]);
  }
  double norm = cdf.back();
  for (int i = 0; i < table_knots; ++i) {
    cdf[i] /= norm;
    pdf_[i] /= norm;
  }
  // strictly increasing knots only, for the inverse interpolant
  std::vector<double> xs, ys;
  xs.reserve(table_knots);
  ys.reserve(table_knots);
  for (int i = 0; i < table_knots; ++i) {
    if (xs.empty() || cdf[i] > xs.back()) {
      xs.push_back(cdf[i]);
      ys.push_back(grid_[i]);
    }
  }
  inverse_cdf_ = MonotoneCubic(std::move(xs), std::move(ys));
}

double RadialInputSampler::sample_radius(Rng& rng) const {
  return inverse_cdf_(rng.next_double());
}

std::vector<double> RadialInputSampler::sample(Rng& rng) const {
  double r = sample_radius(rng);
  std::vector<double> x(nt_);
  double norm2 = 0.0;
  for (int i = 0; i < nt_; ++i) {
    x[i] = rng.next_normal();
    norm2 += x[i] * x[i];
  }
  double scale = r / std::sqrt(norm2);
  for (double& v : x) v *= scale;
  return x;
}

double RadialInputSampler::density(double r) const {
  if (r <= grid_.front() || r >= grid_.back()) {
    if (r == grid_.back()) return pdf_.back();
    if (r == grid_.front()) return pdf_.front();
    return 0.0;
  }
  size_t hi = std::upper_bound(grid_.begin(), grid_.end(), r) - grid_.begin();
  size_t lo = hi - 1;
  double t = (r - grid_[lo]) / (grid_[hi] - grid_[lo]);
  return (1.0 - t) * pdf_[lo] + t * pdf_[hi];
}

std::vector<double> sample_optimal_coherent_input(double snr, int nt,
                                                  uint64_t seed) {
  RadialInputSampler sampler(snr, nt);
  Rng rng(seed);
  return sampler.sample(rng);
}

double fisher_det_spherical(const std::vector<double>& x_tilde, double snr,
                            int nt) {
  if (!(snr > 0.0) || nt < 2)
    throw std::invalid_argument("fisher_det_spherical: bad parameters");
  if (static_cast<int>(x_tilde.size()) != nt - 1)
    throw std::invalid_argument("fisher_det_spherical: x_tilde must have nt-1 entries");
  double norm2 = 0.0;
  for (double v : x_tilde) norm2 += v * v;
  if (norm2 >= snr)
    throw std::domain_error("fisher_det_spherical: |x_tilde|^2 must be < snr");
  double z0 = zeta(0, std::sqrt(snr));
  return std::exp((nt - 1) * std::log(z0)) / (1.0 - norm2 / snr);
}

CapacityEstimate capacity_coherent_spherical(const CoherentParams& params) {
  params.validate();
  if (params.nt < 2)
    throw unsupported_error("spherical coherent capacity needs nt >= 2");
  double z0 = zeta(0, std::sqrt(params.snr));
  CapacityEstimate est;
  est.terms.dimension_term =
      0.5 * (params.nt - 1) * std::log2(params.nr / (kTwoPi * std::exp(1.0)));
  est.terms.volume_term = std::log2(vol_sphere_surface(params.nt) / 2.0);
  est.terms.alpha_term = 0.5 * (params.nt - 1) * std::log2(params.snr * z0);
  est.bits_per_use =
      est.terms.dimension_term + est.terms.volume_term + est.terms.alpha_term;
  est.method = Method::exact_asymptotic;
  est.asymptotic = true;
  return est;
}

const char* method_name(Method m) {
  switch (m) {
    case Method::exact_asymptotic: return "exact-asymptotic";
    case Method::low_snr: return "low-snr";
    case Method::high_snr: return "high-snr";
    case Method::large_nt: return "large-nt";
    case Method::bound_lb: return "bound-lb";
    case Method::bound_ub: return "bound-ub";
    case Method::mc: return "mc";
  }
  return "unknown";
}

}  // namespace qmimo
