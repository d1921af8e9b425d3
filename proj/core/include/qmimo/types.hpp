#pragma once

// Shared value types for capacity results and channel parameters.

#include <stdexcept>
#include <string>

namespace qmimo {

enum class Method {
  exact_asymptotic,
  low_snr,
  high_snr,
  large_nt,
  bound_lb,
  bound_ub,
  mc,
};

const char* method_name(Method m);

struct CapacityTerms {
  double dimension_term = 0.0;  // contribution growing with log nr
  double volume_term = 0.0;     // log of the parameter-space volume factor
  double alpha_term = 0.0;      // log of the Fisher-integral constant
};

struct CapacityEstimate {
  double bits_per_use = 0.0;
  CapacityTerms terms;
  Method method = Method::exact_asymptotic;
  bool asymptotic = true;  // valid up to o(1) in nr
  double std_err = 0.0;    // nonzero only for MC-backed values
};

struct CoherentParams {
  double snr = 1.0;
  int nt = 1;
  int nr = 1;
  void validate() const {
    if (!(snr > 0.0)) throw std::invalid_argument("snr must be > 0");
    if (nt < 1) throw std::invalid_argument("nt must be >= 1");
    if (nr < 1) throw std::invalid_argument("nr must be >= 1");
  }
};

struct SnrContext {
  double snr = 1.0;
  double gamma = 0.5;
  static SnrContext from_snr(double snr) {
    if (!(snr > 0.0)) throw std::invalid_argument("snr must be > 0");
    return {snr, snr / (1.0 + snr)};
  }
  static SnrContext from_gamma(double gamma) {
    if (!(gamma > 0.0) || !(gamma < 1.0))
      throw std::invalid_argument("gamma must be in (0,1)");
    return {gamma / (1.0 - gamma), gamma};
  }
};

struct NoncoherentParams {
  double snr = 1.0;
  int T = 2;
  int nt = 2;
  int nr = 1;
  double gamma() const { return snr / (1.0 + snr); }
  void validate() const {
    if (!(snr > 0.0)) throw std::invalid_argument("snr must be > 0");
    if (T < 2) throw std::invalid_argument("T must be >= 2");
    if (nt < T) throw std::invalid_argument("nt must be >= T");
    if (nr < 1) throw std::invalid_argument("nr must be >= 1");
  }
};

// Raised when a parameter combination is outside what the theory covers
// (e.g. exact non-coherent capacity for T >= 4).
class unsupported_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct McEstimate {
  double estimate = 0.0;
  double std_err = 0.0;
};

}  // namespace qmimo
